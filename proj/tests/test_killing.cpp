// SPDX-License-Identifier: MIT
#include <doctest.h>

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

// pull an ambient covariant tensor back along a linear map (columns of dE)
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
    Eigen::VectorXd p;  // position in the ambient space
    Eigen::MatrixXd dE; // embedding differential, columns = chart directions
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

// chart oracles on the unit sphere: the restriction of S(p,·,·,·)-type
// contractions of a constant ambient pair tensor
struct SphereOracle {
    DenseTensor kappa, kappa1, restr; // ½S(p,p,·,·), S(p,·,·,·), ι*S
};

SphereOracle sphere_oracle(const DenseTensor& S, const ManifoldModel& m,
                           const GeometryAt& geo) {
    Embedded e = embed(m, geo);
    SphereOracle o;
    o.kappa = 0.5 * restrict_all(insert(e.p, insert(e.p, S)), e.dE);
    o.kappa1 = restrict_all(insert(e.p, S), e.dE);
    o.restr = restrict_all(S, e.dE);
    return o;
}

// R₁(x,y,z,w) = ⟨y,z⟩⟨x,w⟩ − ⟨x,z⟩⟨y,w⟩
DenseTensor r1_tensor(const InnerProduct& ip) {
    const int n = ip.dim();
    DenseTensor R(n, 4);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    R.at({i, j, k, l}) =
                        ip.g(j, k) * ip.g(i, l) - ip.g(i, k) * ip.g(j, l);
    return R;
}

DenseTensor metric_dense(const InnerProduct& ip) {
    const int n = ip.dim();
    DenseTensor g(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at({i, j}) = ip.g(i, j);
    return g;
}

// conformally flat chart with non-parallel curvature (shared test fixture)
ChartMetricFn conformal_metric() {
    return [](const JetSpace& S, const Eigen::VectorXd& u0) {
        const int n = static_cast<int>(u0.size());
        std::vector<Jet> x(n);
        for (int v = 0; v < n; ++v) x[v] = Jet::variable(S, v, u0(v));
        Jet phi = 0.3 * (x[0] * x[1]) + 0.1 * (x[0] * x[0]) - 0.2 * x[1];
        if (n >= 3) phi += 0.15 * (x[2] * x[0]) - 0.05 * (x[2] * x[2]);
        Jet c = jexp(2.0 * phi);
        std::vector<Jet> g(static_cast<std::size_t>(n) * n,
                           Jet::constant(S, 0.0));
        for (int a = 0; a < n; ++a) g[a * n + a] = c;
        return g;
    };
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

// κ₁₁ = a + b t on the line; Killing iff b = 0
TensorField affine_line_field(double a, double b) {
    TensorField f;
    f.valence = 2;
    f.jets = [a, b](const GeometryAt& geo) {
        JetTensor out(*geo.S, 1, 2);
        out.at({0, 0}) = Jet::constant(*geo.S, a) +
                         b * Jet::variable(*geo.S, 0, geo.u0(0));
        return out;
    };
    return f;
}

// the pair product g ⊘ g as a field
TensorField metric_pair_field() {
    TensorField f;
    f.valence = 4;
    f.jets = [](const GeometryAt& geo) {
        return jt_owedge(geo.g, geo.g, ProductKind::KulkarniNomizu);
    };
    return f;
}

} // namespace

TEST_CASE("fiber dimension formula") {
    // n(n+1)/2 + n(n²−1)/3 + n²(n²−1)/12 adds up to ⅓ C(n+2,2) C(n+1,2)
    for (int n = 1; n <= 6; ++n) {
        const int whole =
            (n + 2) * (n + 1) / 2 * ((n + 1) * n / 2) / 3;
        CHECK(prolongation_fiber_dim(n) == whole);
    }
    CHECK(prolongation_fiber_dim(2) == 6);
    CHECK(prolongation_fiber_dim(3) == 20);
}

TEST_CASE("ambient exchange identity") {
    // S(p,y,p,z) = −½ S(p,p,y,z) for pair tensors S
    std::mt19937_64 rng(11);
    for (int n : {3, 4}) {
        DenseTensor S = random_pair_tensor(n, rng);
        Eigen::VectorXd p = Eigen::VectorXd::Random(n);
        DenseTensor a = insert_slot(p, insert(p, S), 2); // S(p,·,p,·)
        DenseTensor b = insert(p, insert(p, S));         // S(p,p,·,·)
        CHECK((a + 0.5 * b).max_norm() < 1e-12);
    }
}

TEST_CASE("prolongation variables restrict from the ambient space") {
    std::mt19937_64 rng(42);
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        DenseTensor S = random_pair_tensor(m.ambient_dim(), rng);
        Eigen::VectorXd u = 0.5 * Eigen::VectorXd::Random(n);
        GeometryAt geo = geometry_at(m, u, 3);

        ProlongationTriple t =
            prolong_variables(ambient_curvature_field(S), geo);
        SphereOracle o = sphere_oracle(S, m, geo);
        DenseTensor g2 = metric_dense(geo.metric());

        CHECK((t.kappa - o.kappa).max_norm() < 1e-10);
        CHECK((t.kappa1 - o.kappa1).max_norm() < 1e-9);
        DenseTensor k2_want =
            o.restr - owedge(o.kappa, g2, ProductKind::KulkarniNomizu);
        CHECK((t.kappa2 - k2_want).max_norm() < 1e-8);

        // C recombines to the plain restriction, and the components have
        // the advertised symmetry types
        CHECK((C_of(t.kappa, t.kappa2, geo.metric()) - o.restr).max_norm() <
              1e-8);
        CHECK(triple_membership(t) < 1e-8);
    }
}

TEST_CASE("killing residual separates Killing from generic fields") {
    std::mt19937_64 rng(7);
    ManifoldModel m = ManifoldModel::sphere(2);
    GeometryAt geo = geometry_at(m, vec({0.3, -0.2}), 2);

    DenseTensor S = random_pair_tensor(3, rng);
    CHECK(killing_residual(ambient_curvature_field(S), geo, rng) < 1e-10);
    CHECK(killing_residual(metric_field(), geo, rng) < 1e-12);
    CHECK(killing_residual(bump_symmetric_field(2, 3), geo, rng) > 1e-3);
}

TEST_CASE("finite differences reproduce the analytic prolongation") {
    ManifoldModel m = ManifoldModel::sphere(2);
    GeometryAt geo = geometry_at(m, vec({0.15, 0.4}), 2);
    TensorField f = bump_symmetric_field(2, 9);
    ProlongationTriple a = prolong_variables(f, geo);
    ProlongationTriple d =
        prolong_variables(f, geo, DerivMode::FiniteDifference);
    CHECK((a.kappa - d.kappa).max_norm() < 1e-10);
    CHECK((a.kappa1 - d.kappa1).max_norm() < 1e-7);
    CHECK((a.kappa2 - d.kappa2).max_norm() < 1e-5);
}

TEST_CASE("curvature terms reduce to metric wedges for R = c R1") {
    // x⌟F¹(cR₁,κ) = c(x⌟(g⊘κ) − 2κ⊘x♭)
    // x⌟F²(cR₁,0;κ,κ¹) = c(−g⊘(x⌟κ¹) − κ¹⊘x♭)
    // for arbitrary fiber elements, not only Killing jets
    std::mt19937_64 rng(23);
    for (int n : {2, 3}) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Random(n, n);
        InnerProduct ip(Eigen::MatrixXd::Identity(n, n) + A * A.transpose());
        DenseTensor g2 = metric_dense(ip);
        const double c = 1.7;
        DenseTensor R = c * r1_tensor(ip);

        DenseTensor kap = symmetrize_all(DenseTensor::random(n, 2, rng));
        DenseTensor kap1 = random_s21(n, rng);
        Eigen::VectorXd x = Eigen::VectorXd::Random(n);
        DenseTensor xf = flat(x, ip);

        DenseTensor f1 = insert(x, F1(R, kap, ip));
        DenseTensor f1_want =
            c * (insert(x, owedge(g2, kap, ProductKind::KulkarniNomizu)) -
                 2.0 * owedge(kap, xf, ProductKind::OneFormSym2));
        CHECK((f1 - f1_want).max_norm() < 1e-12);

        DenseTensor f2 =
            insert(x, F2(R, DenseTensor(n, 5), kap, kap1, ip));
        DenseTensor f2_want =
            c * (-1.0 * owedge(g2, insert(x, kap1),
                               ProductKind::KulkarniNomizu) -
                 owedge(kap1, xf, ProductKind::OneFormS21));
        CHECK((f2 - f2_want).max_norm() < 1e-12);
    }
}

TEST_CASE("expanded and differentiated curvature terms agree") {
    // F² assembled from pointwise endomorphism algebra vs the covariant
    // derivative of the curvature-action field, on a chart with
    // non-parallel curvature and a generic non-Killing field
    for (int n : {2, 3}) {
        Eigen::VectorXd u = 0.3 * Eigen::VectorXd::Ones(n);
        GeometryAt geo = geometry_at_custom(n, conformal_metric(), u, 3);
        TensorField f = bump_symmetric_field(n, 31 + n);

        JetTensor Rj = curvature_jets(geo);
        JetTensor kj = field_jets(f, geo);
        DenseTensor gradR = covd(geo, Rj).values();
        DenseTensor dk = covd(geo, kj).values();
        DenseTensor expanded =
            F2(Rj.values(), gradR, kj.values(), dk, geo.metric());
        DenseTensor viaj = F2_compact(f, geo);
        CHECK((expanded - viaj).max_norm() < 1e-10);
    }
}

TEST_CASE("prolongation closes on sphere Killing tensors") {
    std::mt19937_64 rng(17);
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        DenseTensor S = random_pair_tensor(m.ambient_dim(), rng);
        for (int trial = 0; trial < 3; ++trial) {
            Eigen::VectorXd u = 0.5 * Eigen::VectorXd::Random(n);
            GeometryAt geo = geometry_at(m, u, 4);
            ProlongationDefect d =
                prolongation_defect(ambient_curvature_field(S), geo);
            CHECK(d.first < 1e-9);
            CHECK(d.second < 1e-8);
            CHECK(d.third < 1e-7);
        }
    }

    // scaling: the same closure on a sphere of sectional curvature 4
    ManifoldModel sc = ManifoldModel::scaled_sphere(2, 4.0);
    DenseTensor S = random_pair_tensor(3, rng);
    GeometryAt geo = geometry_at(sc, vec({0.2, -0.3}), 4);
    ProlongationDefect d =
        prolongation_defect(ambient_curvature_field(S), geo);
    CHECK(d.first < 1e-9);
    CHECK(d.second < 1e-8);
    CHECK(d.third < 1e-7);

    // negative control: a generic field does not close
    ProlongationDefect bad = prolongation_defect(bump_symmetric_field(2, 5),
                                                 geometry_at(sc, vec({0.2, -0.3}), 3));
    CHECK(bad.first > 1e-3);
}

TEST_CASE("pair equations hold for C of a Killing tensor") {
    std::mt19937_64 rng(29);
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        DenseTensor S = random_pair_tensor(m.ambient_dim(), rng);
        TensorField kap = ambient_curvature_field(S);
        GeometryAt geo = geometry_at(m, 0.4 * Eigen::VectorXd::Random(n), 4);
        PairDefect d = pair_defect(kap, C_kappa_field(kap), geo);
        CHECK(d.value_eq < 1e-8);
        CHECK(d.grad_eq < 1e-7);

        // C = 0 is wrong for a generic Killing tensor
        PairDefect bad = pair_defect(kap, zero_field(n, 4), geo);
        CHECK(bad.value_eq > 1e-3);
    }
}

TEST_CASE("nullity conditions on the unit sphere") {
    std::mt19937_64 rng(37);
    ManifoldModel m = ManifoldModel::sphere(3);
    DenseTensor S = random_pair_tensor(4, rng);
    TensorField kap = ambient_curvature_field(S);
    GeometryAt geo = geometry_at(m, vec({0.25, -0.1, 0.3}), 2);
    NullityDefect d = nullity_defect(kap, geo, rng);
    CHECK(d.kappa_eq < 1e-9);
    CHECK(d.grad_eq < 1e-9);

    // with sectional curvature 4 the combination R + x∧y no longer
    // annihilates a generic Killing tensor
    ManifoldModel sc = ManifoldModel::scaled_sphere(2, 4.0);
    DenseTensor S2 = random_pair_tensor(3, rng);
    NullityDefect bad = nullity_defect(ambient_curvature_field(S2),
                                       geometry_at(sc, vec({0.2, 0.1}), 2), rng);
    CHECK(bad.kappa_eq > 1e-3);
}

TEST_CASE("kappa recovered from its curvature tensor") {
    std::mt19937_64 rng(41);
    ManifoldModel m = ManifoldModel::sphere(3);
    DenseTensor S = random_pair_tensor(4, rng);
    TensorField kap = ambient_curvature_field(S);
    GeometryAt geo = geometry_at(m, vec({0.3, -0.25, 0.15}), 5);

    DenseTensor want = field_jets(kap, geo).values();
    DenseTensor got = kappa_from_C(C_kappa_field(kap), geo);
    CHECK((got - want).max_norm() / want.max_norm() < 1e-7);

    // C^g = g⊘g reproduces the metric itself
    DenseTensor gback = kappa_from_C(metric_pair_field(), geo);
    CHECK((gback - metric_dense(geo.metric())).max_norm() < 1e-8);

    // the reconstruction divides by n−1 and must refuse the line
    ManifoldModel line = ManifoldModel::flat(1);
    GeometryAt lgeo = geometry_at(line, vec({0.2}), 5);
    CHECK_THROWS_AS(kappa_from_C(zero_field(1, 4), lgeo),
                    const std::domain_error&);
}

TEST_CASE("ricci trace of the metric pair product") {
    // tr₍₃,₄₎(g⊘g) = 2(n−1) g pointwise
    for (int n : {2, 3, 4}) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Random(n, n);
        InnerProduct ip(Eigen::MatrixXd::Identity(n, n) + A * A.transpose());
        DenseTensor g2 = metric_dense(ip);
        DenseTensor gg = owedge(g2, g2, ProductKind::KulkarniNomizu);
        CHECK((ricci_of(gg, ip) - 2.0 * (n - 1) * g2).max_norm() < 1e-12);
    }
}

TEST_CASE("weitzenboeck and trace identities on spheres") {
    std::mt19937_64 rng(53);
    for (int n : {2, 3}) {
        ManifoldModel m = ManifoldModel::sphere(n);
        DenseTensor S = random_pair_tensor(m.ambient_dim(), rng);
        TensorField kap = ambient_curvature_field(S);
        GeometryAt geo = geometry_at(m, 0.4 * Eigen::VectorXd::Random(n), 4);

        CHECK(weitzenboeck_defect(kap, geo) < 1e-8);

        TraceIdentityResiduals r = trace_identities(kap, geo);
        CHECK(r.div_vs_dtr < 1e-9);
        CHECK(r.ricci_value < 1e-8);
        CHECK(r.ricci_laplace < 1e-8);
        CHECK(r.scalar_value < 1e-8);
        CHECK(r.ds_vs_dtr < 1e-7);
    }
}

TEST_CASE("q(R) does not depend on the orthonormal frame") {
    std::mt19937_64 rng(59);
    ManifoldModel m = ManifoldModel::sphere(3);
    GeometryAt geo = geometry_at(m, vec({0.1, 0.2, -0.3}), 2);
    DenseTensor R = curvature_jets(geo).values();
    DenseTensor kap = symmetrize_all(DenseTensor::random(3, 2, rng));

    // rotate the frame by a random orthogonal matrix; columns stay
    // g-orthonormal
    Eigen::MatrixXd M = Eigen::MatrixXd::Random(3, 3);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd Q = qr.householderQ();
    DenseTensor a = q_R(R, kap, geo.metric(), geo.frame);
    DenseTensor b = q_R(R, kap, geo.metric(), geo.frame * Q);
    CHECK((a - b).max_norm() < 1e-11);
}

TEST_CASE("one-dimensional counterexample") {
    ManifoldModel line = ManifoldModel::flat(1);
    GeometryAt geo = geometry_at(line, vec({0.6}), 3);
    std::mt19937_64 rng(61);

    TensorField kap = affine_line_field(0.4, 0.7);
    // both pair equations hold with C = 0 even though κ is not Killing
    PairDefect d = pair_defect(kap, zero_field(1, 4), geo);
    CHECK(d.value_eq < 1e-12);
    CHECK(d.grad_eq < 1e-12);
    CHECK(killing_residual(kap, geo, rng) > 1e-2);
}

TEST_CASE("triple basis is orthonormal with the right symmetry types") {
    for (int n : {2, 3}) {
        Eigen::MatrixXd B = triple_basis(n);
        const int D = prolongation_fiber_dim(n);
        CHECK(B.cols() == D);
        CHECK((B.transpose() * B - Eigen::MatrixXd::Identity(D, D)).norm() <
              1e-10);
        for (int c = 0; c < D; ++c) {
            DenseTensor k1(n, 3), k2(n, 4);
            for (std::size_t i = 0; i < k1.size(); ++i)
                k1[i] = B(n * n + static_cast<int>(i), c);
            for (std::size_t i = 0; i < k2.size(); ++i)
                k2[i] = B(n * n + n * n * n + static_cast<int>(i), c);
            CHECK(projector_membership(tableau_21(), k1) < 1e-10);
            CHECK(projector_membership(tableau_22(), k2) < 1e-10);
        }
    }
}

TEST_CASE("transport reproduces the Killing triple at the endpoint") {
    std::mt19937_64 rng(67);
    ManifoldModel m = ManifoldModel::sphere(2);
    DenseTensor S = random_pair_tensor(3, rng);
    TensorField kap = ambient_curvature_field(S);

    Eigen::VectorXd u0 = vec({0.3, -0.2});
    Eigen::VectorXd u1 = vec({-0.1, 0.25});
    ProlongationTriple start =
        prolong_variables(kap, geometry_at(m, u0, 3));
    ProlongationTriple want = prolong_variables(kap, geometry_at(m, u1, 3));

    ProlongationTriple direct = transport(start, {u0, u1}, m);
    CHECK((direct.kappa - want.kappa).max_norm() < 1e-8);
    CHECK((direct.kappa1 - want.kappa1).max_norm() < 1e-8);
    CHECK((direct.kappa2 - want.kappa2).max_norm() < 1e-7);

    // path independence through a detour corner
    ProlongationTriple dog =
        transport(start, {u0, vec({0.45, 0.3}), u1}, m);
    CHECK((dog.kappa - want.kappa).max_norm() < 1e-8);
    CHECK((dog.kappa2 - want.kappa2).max_norm() < 1e-7);
}

TEST_CASE("loop holonomy is trivial on models with maximal symmetry") {
    std::mt19937_64 rng(71);
    ManifoldModel m = ManifoldModel::sphere(2);
    Loop L = sample_loop(m, rng);
    Eigen::MatrixXd H = loop_holonomy(m, L);
    CHECK((H - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("killing dimension by loop holonomy") {
    CHECK(killing_dimension(ManifoldModel::flat(2), 2, 5) == 6);
    CHECK(killing_dimension(ManifoldModel::sphere(2), 4, 6) == 6);
    CHECK(killing_dimension(ManifoldModel::scaled_sphere(2, 4.0), 3, 7) == 6);
}
