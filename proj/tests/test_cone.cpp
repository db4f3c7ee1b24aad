// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <skt/cone.hpp>
#include <skt/killing.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace skt;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

DenseTensor random_pair_tensor(int n, std::mt19937_64& rng) {
    return project(Tableau::normal(Shape{2, 2}), DenseTensor::random(n, 4, rng));
}

DenseTensor random_s21(int n, std::mt19937_64& rng) {
    return project(tableau_21(), DenseTensor::random(n, 3, rng));
}

ConeTriple random_triple(int n, std::mt19937_64& rng) {
    ConeTriple t;
    t.alpha = symmetrize_all(DenseTensor::random(n, 2, rng));
    t.beta = random_s21(n, rng);
    t.gamma = random_pair_tensor(n, rng);
    return t;
}

InnerProduct random_metric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = 0.3 * N(rng);
    return InnerProduct(Eigen::MatrixXd::Identity(n, n) + A * A.transpose());
}

DenseTensor metric_dense(const InnerProduct& ip) {
    const int n = ip.dim();
    DenseTensor g(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at({i, j}) = ip.g(i, j);
    return g;
}

// pull an ambient covariant tensor back along a linear map (columns = chart
// directions)
DenseTensor restrict_all(const DenseTensor& T, const Eigen::MatrixXd& dE) {
    const int n = static_cast<int>(dE.cols());
    const int d = T.valence();
    DenseTensor out(n, d);
    std::vector<int> oi(d), ai(d);
    for (std::size_t fo = 0; fo < out.size(); ++fo) {
        out.decode(fo, oi.data());
        double acc = 0.0;
        for (std::size_t fa = 0; fa < T.size(); ++fa) {
            const double tv = T[fa];
            if (tv == 0.0) continue;
            T.decode(fa, ai.data());
            double w = tv;
            for (int s = 0; s < d; ++s) w *= dE(ai[s], oi[s]);
            acc += w;
        }
        out[fo] = acc;
    }
    return out;
}

struct Embedded {
    Eigen::VectorXd p;
    Eigen::MatrixXd dE;
};

Embedded embed(const ManifoldModel& m, const GeometryAt& geo) {
    std::vector<Jet> E = embedding_jets(m, *geo.S, geo.u0);
    const int N = m.ambient_dim();
    Embedded e{Eigen::VectorXd(N), Eigen::MatrixXd(N, m.n)};
    for (int a = 0; a < N; ++a) {
        e.p(a) = E[a].value();
        for (int i = 0; i < m.n; ++i) e.dE(a, i) = E[a].derivative(i).value();
    }
    return e;
}

// chart components of a constant ambient tensor pulled back along the cone
// chart (u, r) ↦ r E(u) of the cone over a unit sphere
DenseTensor ambient_cone_pullback(const DenseTensor& S, const ManifoldModel& m,
                                  const GeometryAt& geo, double r) {
    const Embedded e = embed(m, geo);
    const int N = m.ambient_dim();
    Eigen::MatrixXd dPhi(N, N);
    dPhi.leftCols(m.n) = r * e.dE;
    dPhi.col(N - 1) = e.p;
    return restrict_all(S, dPhi);
}

TensorField zero_field(int n, int valence) {
    TensorField f;
    f.valence = valence;
    f.jets = [n, valence](const GeometryAt& geo) {
        return JetTensor(*geo.S, n, valence);
    };
    f.point_eval = [n, valence](const Eigen::VectorXd&) {
        return DenseTensor(n, valence);
    };
    return f;
}

JetTensor constant_jets(const GeometryAt& geo, const DenseTensor& t) {
    JetTensor out(*geo.S, t.dim(), t.valence());
    for (std::size_t f = 0; f < t.size(); ++f)
        out.c[f] = Jet::constant(*geo.S, t[f]);
    return out;
}

double triple_diff(const ConeTriple& a, const ConeTriple& b) {
    double d = (a.alpha - b.alpha).max_norm();
    d = std::max(d, (a.beta - b.beta).max_norm());
    d = std::max(d, (a.gamma - b.gamma).max_norm());
    return d;
}

double triple_norm(const ConeTriple& t) {
    return std::max({t.alpha.max_norm(), t.beta.max_norm(),
                     t.gamma.max_norm()});
}

} // namespace

TEST_CASE("triple components round trip through the assembled tensor") {
    std::mt19937_64 rng(42);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 3; ++trial) {
            ConeTriple t = random_triple(n, rng);
            CHECK(triple_residual(t) < 1e-12);

            DenseTensor S = assemble(t, 1.0, true);
            CHECK(S.dim() == n + 1);
            CHECK(projector_membership(tableau_22(), S) < 1e-12);

            ConeTriple back = decompose(S);
            CHECK(triple_diff(back, t) < 1e-12);
        }

        // the splitting is onto: random curvature-type tensors reassemble
        for (int trial = 0; trial < 3; ++trial) {
            DenseTensor Sc = random_pair_tensor(n + 1, rng);
            CHECK((assemble(decompose(Sc)) - Sc).max_norm() < 1e-12);
        }

        // zero in, zero out; junk is rejected
        ConeTriple z{DenseTensor(n, 2), DenseTensor(n, 3), DenseTensor(n, 4)};
        CHECK(assemble(z).max_norm() == 0.0);
        CHECK_THROWS_AS(decompose(DenseTensor::random(n + 1, 4, rng)),
                        const std::invalid_argument&);
    }
}

TEST_CASE("metric triple assembles to the product-metric pair tensor") {
    // (g, 0, g⊘g) must give ĝ⊘ĝ with ĝ = g + dr⊗dr
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4}) {
        InnerProduct ip = random_metric(n, rng);
        DenseTensor g = metric_dense(ip);
        ConeTriple t{g, DenseTensor(n, 3),
                     owedge(g, g, ProductKind::KulkarniNomizu)};
        DenseTensor dr = dr_form(n);
        DenseTensor ghat = lift(g) + 0.5 * owedge(dr, dr, ProductKind::Sym1x1);
        DenseTensor expect = owedge(ghat, ghat, ProductKind::KulkarniNomizu);
        CHECK((assemble(t) - expect).max_norm() < 1e-12);
    }
}

TEST_CASE("radial derivative rules") {
    std::mt19937_64 rng(3);
    ManifoldModel m = ManifoldModel::sphere(2);
    Eigen::VectorXd u = vec({0.21, -0.37});
    GeometryAt geo = geometry_at(m, u, 1);

    // dr is radially parallel
    ConeField ddr = cone_covd(geo, cone_dr(geo));
    CHECK(radial_insert(cone_eval(ddr, 0.8)).max_norm() == 0.0);

    for (int k : {2, 3, 4}) {
        DenseTensor t = DenseTensor::random(2, k, rng);
        JetTensor tj = constant_jets(geo, t);
        for (double r : {0.6, 1.0, 1.7}) {
            // plain pullback: −(k/r) t
            DenseTensor d0 =
                radial_insert(cone_eval(cone_covd(geo, cone_pullback(tj)), r));
            CHECK((d0 - lift(cone_nabla_radial(t, r))).max_norm() < 1e-12);
            // weight r^k makes it radially parallel, matching the scaling
            // (r²α, r³β, r⁴γ) of the assembled triple components
            DenseTensor dk = radial_insert(
                cone_eval(cone_covd(geo, cone_pullback(tj, k)), r));
            CHECK(dk.max_norm() == 0.0);
        }
    }
}

TEST_CASE("horizontal derivative rules") {
    std::mt19937_64 rng(5);
    ManifoldModel m = ManifoldModel::sphere(2);
    Eigen::VectorXd u = vec({-0.14, 0.32});
    GeometryAt geo = geometry_at(m, u, 1);
    InnerProduct ip = geo.metric();
    Eigen::VectorXd x = vec({0.7, -0.4});

    // ∇̂_x dr = r x♯
    ConeField ddr = cone_covd(geo, cone_dr(geo));
    for (double r : {0.9, 1.5}) {
        Eigen::VectorXd xl = vec({x(0), x(1), 0.0});
        DenseTensor got = insert(xl, cone_eval(ddr, r));
        CHECK((got - r * lift(flat(x, ip))).max_norm() < 1e-12);
    }

    // ∇̂_x κ = ∇_x κ − (1/r) Σ_s dr⊗_s (x⌟_s κ) for a pulled-back 2-tensor
    DenseTensor t = DenseTensor::random(2, 2, rng);
    JetTensor tj = constant_jets(geo, t);
    DenseTensor base_cd = covd(geo, tj).values();
    DenseTensor drf = dr_form(2);
    for (double r : {0.9, 1.5}) {
        DenseTensor got = cone_nabla_horizontal(geo, tj, x, r);
        DenseTensor expect = lift(insert(x, base_cd));
        expect -= (1.0 / r) * slot_product(drf, lift(insert_slot(x, t, 1)),
                                           {1}, {2});
        expect -= (1.0 / r) * slot_product(drf, lift(insert_slot(x, t, 2)),
                                           {2}, {1});
        CHECK((got - expect).max_norm() < 1e-12);
    }
}

TEST_CASE("product chart reproduces the closed-form connection") {
    // Γ̂ of r²g + dr²: base Christoffels, ∇̂_x y − ∇_x y = −r⟨x,y⟩∂_r, and
    // ∇̂_{∂_r} x = x/r
    for (auto mr : {std::pair<ManifoldModel, double>{ManifoldModel::scaled_sphere(2, 4.0), 1.0},
                    {ManifoldModel::sphere(3), 1.4}}) {
        const ManifoldModel m = mr.first;
        const double r = mr.second;
        const int n = m.n;
        Eigen::VectorXd u = 0.4 * Eigen::VectorXd::Random(n);
        GeometryAt base = geometry_at(m, u, 1);
        ConePoint p{u, r};
        GeometryAt hat =
            geometry_at_custom(n + 1, cone_chart_metric(m), p.chart(), 1);
        DenseTensor gh = hat.gamma.values();
        DenseTensor gb = base.gamma.values();
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    CHECK(gh.at({k, i, j}) ==
                          doctest::Approx(gb.at({k, i, j})).epsilon(1e-11));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(gh.at({n, i, j}) ==
                      doctest::Approx(-r * base.metric().g(i, j)).epsilon(1e-11));
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                const double expect = k == j ? 1.0 / r : 0.0;
                CHECK(gh.at({k, n, j}) == doctest::Approx(expect).epsilon(1e-11));
                CHECK(gh.at({k, j, n}) == doctest::Approx(expect).epsilon(1e-11));
            }
        for (int j = 0; j <= n; ++j) {
            CHECK(std::abs(gh.at({n, n, j})) < 1e-12);
            CHECK(std::abs(gh.at({n, j, n})) < 1e-12);
        }
        for (int k = 0; k <= n; ++k) CHECK(std::abs(gh.at({k, n, n})) < 1e-12);
    }
}

TEST_CASE("cone over a unit sphere is flat") {
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        Eigen::VectorXd u = 0.5 * Eigen::VectorXd::Random(n);
        CHECK(cone_curvature(m, u).max_norm() < 1e-12);
        for (double r : {0.8, 1.25}) {
            ConePoint p{u, r};
            GeometryAt hat =
                geometry_at_custom(n + 1, cone_chart_metric(m), p.chart(), 2);
            CHECK(curvature_jets(hat).values().max_norm() < 1e-8);
        }
    }
    Eigen::VectorXd u2 = vec({0.1, 0.2});
    CHECK_THROWS_AS(cone_curvature(ManifoldModel::flat(2), u2),
                    const std::domain_error&);
    CHECK_THROWS_AS(cone_chart_metric(ManifoldModel::flat(2)),
                    const std::domain_error&);
}

TEST_CASE("chart curvature matches the closed form on a curved model") {
    ManifoldModel m = ManifoldModel::scaled_sphere(2, 4.0);
    Eigen::VectorXd u = vec({0.17, -0.29});
    DenseTensor closed = cone_curvature(m, u);
    CHECK(closed.max_norm() > 1e-2); // genuinely curved
    for (double r : {1.0, 1.4}) {
        ConePoint p{u, r};
        GeometryAt hat =
            geometry_at_custom(3, cone_chart_metric(m), p.chart(), 2);
        DenseTensor ad = curvature_jets(hat).values();
        CHECK((ad - r * r * closed).max_norm() < 1e-9);
        DenseTensor fd = cone_chart_curvature_fd(m, p);
        CHECK((fd - r * r * closed).max_norm() < 1e-6);
        CHECK((fd - ad).max_norm() < 1e-6);
    }
}

TEST_CASE("difference of the two connections acts algebraically") {
    // ∇̂_x − ∇_x on an assembled tensor is the derivation action of
    // y ↦ −r⟨x,y⟩∂_r, ∂_r ↦ x/r, with the component form
    // (−(1/r) x⌟β, −(1/r) x⌟γ + 2r α⊘x♯, r β⊘x♯)
    std::mt19937_64 rng(19);
    for (int n : {2, 3}) {
        InnerProduct ip = random_metric(n, rng);
        ConeTriple t = random_triple(n, rng);
        Eigen::VectorXd x = Eigen::VectorXd::Random(n);
        DenseTensor xf = flat(x, ip);
        for (double r : {1.0, 1.6}) {
            DenseTensor S = assemble(t, r);
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
            A.row(n).head(n) = -r * (ip.g * x).transpose();
            A.col(n).head(n) = x / r;
            ConeTriple got = decompose(derive(A, S));

            ConeTriple s = radial_scale(t, r);
            ConeTriple expect;
            expect.alpha = (-1.0 / r) * insert(x, s.beta);
            expect.beta = (-1.0 / r) * insert(x, s.gamma) +
                          (2.0 * r) * owedge(s.alpha, xf,
                                             ProductKind::OneFormSym2);
            expect.gamma = r * owedge(s.beta, xf, ProductKind::OneFormS21);
            CHECK(triple_diff(got, expect) < 1e-12);
        }
    }
}

TEST_CASE("horizontal defect vanishes exactly for parallel tensors") {
    std::mt19937_64 rng(23);
    // the metric triple (g, 0, g⊘g) is parallel over any base
    for (ManifoldModel m : {ManifoldModel::scaled_sphere(2, 4.0),
                            ManifoldModel::sphere(3)}) {
        Eigen::VectorXd u = 0.4 * Eigen::VectorXd::Random(m.n);
        GeometryAt geo = geometry_at(m, u, 3);
        TripleJets t = associated_triple_jets(metric_field(), geo);
        CHECK(t.beta.values().max_norm() < 1e-12);
        for (int trial = 0; trial < 2; ++trial) {
            Eigen::VectorXd x = Eigen::VectorXd::Random(m.n);
            CHECK(triple_norm(horizontal_defect(t, geo, x)) < 1e-10);
        }
    }

    // Killing tensors on unit spheres give parallel associated tensors
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        Eigen::VectorXd u = 0.5 * Eigen::VectorXd::Random(n);
        GeometryAt geo = geometry_at(m, u, 4);
        DenseTensor S = random_pair_tensor(m.ambient_dim(), rng);
        TripleJets t = associated_triple_jets(ambient_curvature_field(S), geo);
        for (int trial = 0; trial < 3; ++trial) {
            Eigen::VectorXd x = Eigen::VectorXd::Random(n);
            CHECK(triple_norm(horizontal_defect(t, geo, x)) < 1e-7);
        }
    }

    // a generic symmetric field is not parallel
    {
        ManifoldModel m = ManifoldModel::sphere(2);
        Eigen::VectorXd u = vec({0.23, -0.11});
        GeometryAt geo = geometry_at(m, u, 3);
        TripleJets t = associated_triple_jets(bump_symmetric_field(2, 13), geo);
        Eigen::VectorXd x = vec({0.8, 0.5});
        CHECK(triple_norm(horizontal_defect(t, geo, x)) > 1e-3);
    }
}

TEST_CASE("associated triple matches the parallel ambient tensor") {
    // over a unit sphere the cone chart (u,r) ↦ r E(u) is an isometry onto
    // the ambient space; a constant pair tensor pulls back to the
    // assembled triple of its sphere restriction, with exponents (2,3,4)
    std::mt19937_64 rng(29);
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        Eigen::VectorXd u = 0.5 * Eigen::VectorXd::Random(n);
        GeometryAt geo = geometry_at(m, u, 3);
        DenseTensor S = random_pair_tensor(m.ambient_dim(), rng);
        TensorField f = ambient_curvature_field(S);
        ConeTriple slice = associated_triple(f, geo, 1.0);
        for (double r : {1.0, 1.3}) {
            ConeTriple got = decompose(ambient_cone_pullback(S, m, geo, r));
            ConeTriple expect = associated_triple(f, geo, r);
            CHECK(triple_diff(got, expect) < 1e-7);
            // assemble carries the radial weights (r², r³, r⁴) itself
            CHECK((assemble(slice, r) -
                   ambient_cone_pullback(S, m, geo, r)).max_norm() < 1e-7);
        }
    }
}

TEST_CASE("second derivative description of the associated tensor") {
    std::mt19937_64 rng(31);
    ManifoldModel m = ManifoldModel::sphere(2);
    Eigen::VectorXd u = vec({0.19, 0.27});

    GeometryAt geo3 = geometry_at(m, u, 3);
    CHECK(hessian_description_residual(metric_field(), geo3) < 1e-10);
    CHECK(hessian_description_residual(zero_field(2, 2), geo3) == 0.0);
    CHECK(hessian_description_residual(bump_symmetric_field(2, 17), geo3) <
          1e-8);

    GeometryAt geo4 = geometry_at(m, u, 4);
    DenseTensor S = random_pair_tensor(3, rng);
    CHECK(hessian_description_residual(ambient_curvature_field(S), geo4) <
          1e-8);

    // also on a curved, non-unit model
    ManifoldModel sc = ManifoldModel::scaled_sphere(2, 4.0);
    GeometryAt geos = geometry_at(sc, u, 3);
    CHECK(hessian_description_residual(bump_symmetric_field(2, 19), geos) <
          1e-8);
}
