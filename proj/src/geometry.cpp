// SPDX-License-Identifier: MIT

#include "skt/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <cassert>
#include <stdexcept>

namespace skt {

JetTensor::JetTensor(const JetSpace& S, int dim, int valence)
    : n(dim), d(valence) {
    std::size_t sz = 1;
    for (int k = 0; k < valence; ++k) sz *= static_cast<std::size_t>(dim);
    c.assign(sz, Jet(S));
}

DenseTensor JetTensor::values() const {
    DenseTensor out(n, d);
    for (std::size_t f = 0; f < c.size(); ++f) out[f] = c[f].value();
    return out;
}

JetTensor jt_permute(const JetTensor& t, const Permutation& s) {
    assert(s.degree() == t.d);
    if (s.is_identity()) return t;
    const Permutation inv = s.inverse();
    JetTensor out = t;
    std::vector<int> I(t.d), J(t.d);
    for (std::size_t f = 0; f < t.size(); ++f) {
        out.decode(f, I.data());
        for (int k = 0; k < t.d; ++k) J[k] = I[inv.img[k]];
        out.c[f] = t.c[t.encode(J.data())];
    }
    return out;
}

JetTensor jt_scale(JetTensor t, double s) {
    for (Jet& j : t.c) j *= s;
    return t;
}

JetTensor jt_add(const JetTensor& a, const JetTensor& b) {
    assert(a.n == b.n && a.d == b.d);
    JetTensor out = a;
    for (std::size_t f = 0; f < out.size(); ++f) out.c[f] += b.c[f];
    return out;
}

JetTensor jt_sub(const JetTensor& a, const JetTensor& b) {
    assert(a.n == b.n && a.d == b.d);
    JetTensor out = a;
    for (std::size_t f = 0; f < out.size(); ++f) out.c[f] -= b.c[f];
    return out;
}

JetTensor jt_slot_product(const JetTensor& a, const JetTensor& b,
                          const std::vector<int>& slots_a,
                          const std::vector<int>& slots_b) {
    assert(a.n == b.n);
    const int d = a.d + b.d;
    JetTensor out(a.c.empty() ? b.c[0].space() : a.c[0].space(), a.n, d);
    std::vector<int> I(d), Ia(a.d), Ib(b.d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, I.data());
        for (std::size_t k = 0; k < slots_a.size(); ++k)
            Ia[k] = I[slots_a[k] - 1];
        for (std::size_t k = 0; k < slots_b.size(); ++k)
            Ib[k] = I[slots_b[k] - 1];
        out.c[f] = a.c[a.encode(Ia.data())] * b.c[b.encode(Ib.data())];
    }
    return out;
}

namespace {

// mirrors the sweep in young.cpp, over jet entries
JetTensor jt_group_sum(const std::vector<std::vector<int>>& blocks,
                       const JetTensor& t, bool signed_sum) {
    JetTensor acc = t;
    for (const auto& block : blocks) {
        if (block.size() < 2) continue;
        std::vector<int> sorted = block;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> perm = sorted;
        JetTensor next(acc.c[0].space(), acc.n, acc.d);
        do {
            Permutation s(acc.d);
            for (std::size_t k = 0; k < sorted.size(); ++k)
                s.img[sorted[k] - 1] = perm[k] - 1;
            JetTensor term = jt_permute(acc, s);
            if (signed_sum && s.parity() < 0) term = jt_scale(term, -1.0);
            next = jt_add(next, term);
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc = std::move(next);
    }
    return acc;
}

} // namespace

JetTensor jt_young_symmetrize(const Tableau& T, const JetTensor& t,
                              bool adjoint) {
    assert(T.valid() && T.max_slot() <= t.d);
    if (adjoint)
        return jt_group_sum(T.columns(), jt_group_sum(T.filling, t, false),
                            true);
    return jt_group_sum(T.filling, jt_group_sum(T.columns(), t, true), false);
}

JetTensor jt_owedge(const JetTensor& a, const JetTensor& b, ProductKind kind) {
    switch (kind) {
    case ProductKind::Sym1x1: {
        assert(a.d == 1 && b.d == 1);
        return jt_add(jt_slot_product(a, b, {1}, {2}),
                      jt_slot_product(a, b, {2}, {1}));
    }
    case ProductKind::OneFormSym2: {
        if (a.d == 2) return jt_scale(jt_owedge(b, a, kind), -1.0);
        assert(a.d == 1 && b.d == 2);
        return jt_scale(jt_young_symmetrize(
                            tableau_21(), jt_slot_product(a, b, {2}, {1, 3})),
                        0.5);
    }
    case ProductKind::TwoFormTwoForm: {
        assert(a.d == 2 && b.d == 2);
        return jt_scale(
            jt_young_symmetrize(tableau_22(),
                                jt_slot_product(a, b, {1, 3}, {2, 4})),
            0.25);
    }
    case ProductKind::OneFormS21: {
        if (a.d == 3) return jt_scale(jt_owedge(b, a, kind), -1.0);
        assert(a.d == 1 && b.d == 3);
        return jt_scale(
            jt_young_symmetrize(tableau_22(),
                                jt_slot_product(a, b, {1}, {2, 3, 4})),
            -1.0 / 3.0);
    }
    case ProductKind::KulkarniNomizu: {
        assert(a.d == 2 && b.d == 2);
        return jt_scale(
            jt_young_symmetrize(tableau_22(),
                                jt_slot_product(a, b, {1, 2}, {3, 4})),
            0.25);
    }
    }
    throw std::logic_error("jt_owedge: unknown kind");
}

JetTensor jt_metric_trace(const GeometryAt& geo, const JetTensor& t, int i,
                          int j) {
    assert(t.d >= 2 && i != j);
    const int d = t.d;
    const int n = t.n;
    JetTensor out(t.c[0].space(), n, d - 2);
    std::vector<int> J(d - 2), I(d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, J.data());
        for (int k = 0, p = 0; k < d; ++k)
            if (k != i - 1 && k != j - 1) I[k] = J[p++];
        Jet acc(*geo.S);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                I[i - 1] = a;
                I[j - 1] = b;
                acc += geo.ginv.at({a, b}) * t.c[t.encode(I.data())];
            }
        out.c[f] = acc;
    }
    return out;
}

std::vector<Jet> embedding_jets(const ManifoldModel& m, const JetSpace& S,
                                const Eigen::VectorXd& u0) {
    assert(m.is_sphere());
    const int n = m.n;
    std::vector<Jet> x(n);
    Jet norm2 = Jet::constant(S, 0.0);
    for (int v = 0; v < n; ++v) {
        x[v] = Jet::variable(S, v, u0(v));
        norm2 += x[v] * x[v];
    }
    const Jet inv = (norm2 + 1.0).reciprocal();
    std::vector<Jet> E(n + 1);
    for (int r = 0; r < n; ++r) E[r] = (2.0 * m.rho) * x[r] * inv;
    E[n] = m.rho * ((norm2 - 1.0) * inv);
    return E;
}

namespace {

std::vector<Jet> model_metric_jets(const ManifoldModel& m, const JetSpace& S,
                                   const Eigen::VectorXd& u0) {
    const int n = m.n;
    std::vector<Jet> g(static_cast<std::size_t>(n) * n, Jet::constant(S, 0.0));
    if (!m.is_sphere()) {
        for (int a = 0; a < n; ++a) g[a * n + a] = Jet::constant(S, 1.0);
        return g;
    }
    Jet norm2 = Jet::constant(S, 0.0);
    for (int v = 0; v < n; ++v) {
        Jet x = Jet::variable(S, v, u0(v));
        norm2 += x * x;
    }
    Jet inv = (norm2 + 1.0).reciprocal();
    Jet conf = (4.0 * m.rho * m.rho) * inv * inv;
    for (int a = 0; a < n; ++a) g[a * n + a] = conf;
    return g;
}

// Gauss-Jordan over the jet ring; valid because the constant-term matrix is
// positive definite
JetTensor jet_inverse(const JetSpace& S, const JetTensor& G) {
    const int n = G.n;
    std::vector<std::vector<Jet>> A(n), B(n);
    for (int r = 0; r < n; ++r) {
        A[r].resize(n);
        B[r].assign(n, Jet::constant(S, 0.0));
        B[r][r] = Jet::constant(S, 1.0);
        for (int c = 0; c < n; ++c) A[r][c] = G.at({r, c});
    }
    for (int k = 0; k < n; ++k) {
        const Jet piv = A[k][k].reciprocal();
        for (int c = 0; c < n; ++c) {
            A[k][c] = A[k][c] * piv;
            B[k][c] = B[k][c] * piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == k) continue;
            const Jet f = A[r][k];
            if (f.value() == 0.0) {
                bool zero = true;
                for (int q = 0; q < S.count(); ++q)
                    if (f.coeff(q) != 0.0) { zero = false; break; }
                if (zero) continue;
            }
            for (int c = 0; c < n; ++c) {
                A[r][c] -= f * A[k][c];
                B[r][c] -= f * B[k][c];
            }
        }
    }
    JetTensor out(S, n, 2);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at({r, c}) = B[r][c];
    return out;
}

GeometryAt build_geometry(int n, const std::vector<Jet>& gj,
                          const JetSpace& S, const Eigen::VectorXd& u0,
                          const ManifoldModel* model) {
    GeometryAt geo;
    geo.n = n;
    geo.S = &S;
    geo.u0 = u0;
    if (model) {
        geo.model = *model;
        geo.has_model = true;
    }

    geo.g = JetTensor(S, n, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) geo.g.at({a, b}) = gj[a * n + b];

    geo.ginv = jet_inverse(S, geo.g);

    geo.gamma = JetTensor(S, n, 3);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet acc(S);
                for (int l = 0; l < n; ++l) {
                    Jet term = geo.g.at({j, l}).derivative(i) +
                               geo.g.at({i, l}).derivative(j) -
                               geo.g.at({i, j}).derivative(l);
                    acc += geo.ginv.at({k, l}) * term;
                }
                acc *= 0.5;
                geo.gamma.at({k, i, j}) = acc;
                geo.gamma.at({k, j, i}) = acc;
            }

    geo.g0.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) geo.g0(a, b) = geo.g.at({a, b}).value();

    Eigen::LLT<Eigen::MatrixXd> llt(geo.g0);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("metric not positive definite at the point");
    geo.frame = llt.matrixU().solve(Eigen::MatrixXd::Identity(n, n));
    return geo;
}

} // namespace

GeometryAt geometry_at(const ManifoldModel& m, const Eigen::VectorXd& u0,
                       int order) {
    assert(u0.size() == m.n);
    const JetSpace& S = JetSpace::get(m.n, order);
    return build_geometry(m.n, model_metric_jets(m, S, u0), S, u0, &m);
}

GeometryAt geometry_at_custom(int n, const ChartMetricFn& metric,
                              const Eigen::VectorXd& u0, int order) {
    const JetSpace& S = JetSpace::get(n, order);
    return build_geometry(n, metric(S, u0), S, u0, nullptr);
}

JetTensor covd(const GeometryAt& geo, const JetTensor& T) {
    const int n = geo.n;
    const int d = T.d;
    JetTensor out(*geo.S, n, d + 1);
    std::vector<int> I(d + 1), J(d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, I.data());
        const int a = I[0];
        for (int k = 0; k < d; ++k) J[k] = I[k + 1];
        Jet acc = T.c[T.encode(J.data())].derivative(a);
        for (int k = 0; k < d; ++k) {
            const int orig = J[k];
            for (int mm = 0; mm < n; ++mm) {
                J[k] = mm;
                acc -= geo.gamma.at({mm, a, orig}) * T.c[T.encode(J.data())];
            }
            J[k] = orig;
        }
        out.c[f] = acc;
    }
    return out;
}

JetTensor curvature_jets(const GeometryAt& geo) {
    const int n = geo.n;
    const JetSpace& S = *geo.S;
    // R^l_{ijk} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik}
    JetTensor up(S, n, 4); // slots (l,i,j,k)
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Jet acc = geo.gamma.at({l, j, k}).derivative(i) -
                              geo.gamma.at({l, i, k}).derivative(j);
                    for (int mm = 0; mm < n; ++mm)
                        acc += geo.gamma.at({l, i, mm}) * geo.gamma.at({mm, j, k}) -
                               geo.gamma.at({l, j, mm}) * geo.gamma.at({mm, i, k});
                    up.at({l, i, j, k}) = acc;
                }
    JetTensor low(S, n, 4); // slots (i,j,k,l): R(∂i,∂j,∂k,∂l)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Jet acc(S);
                    for (int mm = 0; mm < n; ++mm)
                        acc += geo.g.at({mm, l}) * up.at({mm, i, j, k});
                    low.at({i, j, k, l}) = acc;
                }
    return low;
}

DenseTensor to_frame(const DenseTensor& t, const Eigen::MatrixXd& F) {
    const int n = t.dim();
    assert(F.rows() == n && F.cols() == n);
    DenseTensor cur = t;
    for (int slot = 0; slot < t.valence(); ++slot) {
        DenseTensor next(n, t.valence());
        std::vector<int> I(t.valence());
        for (std::size_t f = 0; f < next.size(); ++f) {
            next.decode(f, I.data());
            const int i = I[slot];
            double acc = 0.0;
            for (int a = 0; a < n; ++a) {
                I[slot] = a;
                acc += F(a, i) * cur[cur.encode(I.data())];
            }
            I[slot] = i;
            next[f] = acc;
        }
        cur = std::move(next);
    }
    return cur;
}

InnerProduct metric_at(const ManifoldModel& m, const Eigen::VectorXd& u0) {
    GeometryAt geo = geometry_at(m, u0, 0);
    return InnerProduct(geo.g0);
}

DenseTensor christoffel_at(const ManifoldModel& m, const Eigen::VectorXd& u0) {
    GeometryAt geo = geometry_at(m, u0, 1);
    return geo.gamma.values();
}

DenseTensor curvature_at(const ManifoldModel& m, const Eigen::VectorXd& u0) {
    GeometryAt geo = geometry_at(m, u0, 2);
    return curvature_jets(geo).values();
}

// FD partial with one Richardson level per difference
namespace {

double fd_partial(const std::function<double(const Eigen::VectorXd&)>& f,
                  const Eigen::VectorXd& u, std::vector<int> alpha,
                  double h) {
    int v = -1;
    for (std::size_t k = 0; k < alpha.size(); ++k)
        if (alpha[k] > 0) { v = static_cast<int>(k); break; }
    if (v < 0) return f(u);
    --alpha[v];
    auto inner = [&](const Eigen::VectorXd& w) {
        return fd_partial(f, w, alpha, h);
    };
    auto central = [&](double hh) {
        Eigen::VectorXd up = u, dn = u;
        up(v) += hh;
        dn(v) -= hh;
        return (inner(up) - inner(dn)) / (2.0 * hh);
    };
    return (4.0 * central(h / 2) - central(h)) / 3.0;
}

} // namespace

Jet fd_jet(const std::function<double(const Eigen::VectorXd&)>& f,
           const JetSpace& S, const Eigen::VectorXd& u0, double base_step) {
    Jet j(S);
    for (int k = 0; k < S.count(); ++k) {
        const std::vector<int>& alpha = S.multi_index(k);
        double fact = 1.0;
        for (int a : alpha)
            for (int q = 2; q <= a; ++q) fact *= q;
        j.coeff(k) = fd_partial(f, u0, alpha, base_step) / fact;
    }
    return j;
}

JetTensor field_jets(const TensorField& f, const GeometryAt& geo,
                     DerivMode mode, double fd_step) {
    if (mode == DerivMode::Analytic) {
        assert(f.jets);
        return f.jets(geo);
    }
    assert(f.point_eval);
    JetTensor out(*geo.S, geo.n, f.valence);
    for (std::size_t e = 0; e < out.size(); ++e) {
        auto comp = [&](const Eigen::VectorXd& u) {
            return f.point_eval(u)[e];
        };
        out.c[e] = fd_jet(comp, *geo.S, geo.u0, fd_step);
    }
    return out;
}

DenseTensor covariant_derivative(const TensorField& f, const GeometryAt& geo,
                                 int order, DerivMode mode, double fd_step) {
    assert(order <= geo.S->order());
    JetTensor T = field_jets(f, geo, mode, fd_step);
    for (int k = 0; k < order; ++k) T = covd(geo, T);
    return T.values();
}

Eigen::MatrixXd one_nullity(const ManifoldModel& m, const Eigen::VectorXd& u0,
                            double svd_tol) {
    GeometryAt geo = geometry_at(m, u0, 2);
    DenseTensor R = to_frame(curvature_jets(geo).values(), geo.frame);
    const int n = m.n;
    // rows: (j,k,l); columns: i — entries R(e_i,...) − R₁(e_i,...)
    Eigen::MatrixXd M(n * n * n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i) {
                    // R₁(e_i,e_j,e_k,e_l) = δ_jk δ_il − δ_ik δ_jl
                    double r1v = 0.0;
                    if (j == k && i == l) r1v += 1.0;
                    if (i == k && j == l) r1v -= 1.0;
                    M((j * n + k) * n + l, i) = R.at({i, j, k, l}) - r1v;
                }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = std::max(svd_tol, svd_tol * (sv.size() ? sv(0) : 0.0));
    int null_dim = 0;
    for (int i = 0; i < n; ++i)
        if (i >= sv.size() || sv(i) <= cut) ++null_dim;
    return svd.matrixV().rightCols(null_dim);
}

PointFrame sample_point(const ManifoldModel& m, std::mt19937_64& rng,
                        double chart_radius) {
    std::uniform_real_distribution<double> U(-chart_radius, chart_radius);
    Eigen::VectorXd u(m.n);
    for (int i = 0; i < m.n; ++i) u(i) = U(rng);
    GeometryAt geo = geometry_at(m, u, 0);
    return {u, geo.frame};
}

Loop sample_loop(const ManifoldModel& m, std::mt19937_64& rng,
                 double diameter, double chart_radius) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> E(0.5, 1.0);
    Eigen::VectorXd p(m.n);
    for (int k = 0; k < m.n; ++k) p(k) = U(rng) * (chart_radius - diameter);
    int i = 0, j = 0;
    if (m.n >= 2) {
        std::uniform_int_distribution<int> axes(0, m.n - 1);
        i = axes(rng);
        do { j = axes(rng); } while (j == i);
    }
    const double da = E(rng) * diameter, db = E(rng) * diameter;
    Loop L;
    L.corners.push_back(p);
    Eigen::VectorXd q = p;
    q(i) += da;
    L.corners.push_back(q);
    q(j) += db;
    L.corners.push_back(q);
    q(i) -= da;
    L.corners.push_back(q);
    return L;
}

TensorField metric_field() {
    TensorField f;
    f.valence = 2;
    f.jets = [](const GeometryAt& geo) { return geo.g; };
    return f;
}

TensorField ambient_curvature_field(DenseTensor S_ambient) {
    TensorField f;
    f.valence = 2;
    f.jets = [S = std::move(S_ambient)](const GeometryAt& geo) {
        assert(geo.has_model && geo.model.is_sphere());
        const ManifoldModel& m = geo.model;
        const int n = geo.n, mm = m.ambient_dim();
        assert(S.dim() == mm && S.valence() == 4);
        std::vector<Jet> E = embedding_jets(m, *geo.S, geo.u0);
        std::vector<Jet> dE(static_cast<std::size_t>(n) * mm);
        for (int a = 0; a < n; ++a)
            for (int r = 0; r < mm; ++r) dE[a * mm + r] = E[r].derivative(a);
        // A_rs = S(p, p, e_r, e_s)
        std::vector<Jet> A(static_cast<std::size_t>(mm) * mm,
                           Jet(*geo.S));
        for (int r = 0; r < mm; ++r)
            for (int s = 0; s < mm; ++s) {
                Jet acc(*geo.S);
                for (int p = 0; p < mm; ++p)
                    for (int q = 0; q < mm; ++q) {
                        const double c = S.at({p, q, r, s});
                        if (c != 0.0) acc += c * (E[p] * E[q]);
                    }
                A[r * mm + s] = acc;
            }
        JetTensor out(*geo.S, n, 2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Jet acc(*geo.S);
                for (int r = 0; r < mm; ++r)
                    for (int s = 0; s < mm; ++s)
                        acc += A[r * mm + s] * dE[a * mm + r] * dE[b * mm + s];
                out.at({a, b}) = acc * 0.5;
            }
        return out;
    };
    return f;
}

TensorField ambient_linear_form_field(Eigen::MatrixXd A) {
    TensorField f;
    f.valence = 1;
    f.jets = [A = std::move(A)](const GeometryAt& geo) {
        assert(geo.has_model && geo.model.is_sphere());
        const ManifoldModel& m = geo.model;
        const int n = geo.n, mm = m.ambient_dim();
        std::vector<Jet> E = embedding_jets(m, *geo.S, geo.u0);
        std::vector<Jet> AE(mm, Jet(*geo.S));
        for (int r = 0; r < mm; ++r) {
            Jet acc(*geo.S);
            for (int s = 0; s < mm; ++s)
                if (A(r, s) != 0.0) acc += A(r, s) * E[s];
            AE[r] = acc;
        }
        JetTensor out(*geo.S, n, 1);
        for (int a = 0; a < n; ++a) {
            Jet acc(*geo.S);
            for (int r = 0; r < mm; ++r) acc += AE[r] * E[r].derivative(a);
            out.c[a] = acc;
        }
        return out;
    };
    return f;
}

TensorField ambient_scalar_field(double c, Eigen::VectorXd a,
                                 Eigen::MatrixXd Q) {
    TensorField f;
    f.valence = 0;
    f.jets = [c, a = std::move(a), Q = std::move(Q)](const GeometryAt& geo) {
        assert(geo.has_model && geo.model.is_sphere());
        const ManifoldModel& m = geo.model;
        const int mm = m.ambient_dim();
        std::vector<Jet> E = embedding_jets(m, *geo.S, geo.u0);
        Jet acc = Jet::constant(*geo.S, c);
        for (int r = 0; r < mm; ++r) {
            if (a(r) != 0.0) acc += a(r) * E[r];
            for (int s = 0; s < mm; ++s)
                if (Q(r, s) != 0.0) acc += Q(r, s) * (E[r] * E[s]);
        }
        JetTensor out(*geo.S, geo.n, 0);
        out.c[0] = acc;
        return out;
    };
    return f;
}

namespace {

template <class T, class Coords>
T bump_eval(const Coords& x, int n, const std::vector<double>& coef,
            const std::vector<double>& center, double width) {
    // quadratic polynomial times a Gaussian centred off the sample region
    T poly = 0.0 * x[0] + coef[0];
    int c = 1;
    for (int i = 0; i < n; ++i) {
        poly += coef[c++] * x[i];
        for (int j = i; j < n; ++j) poly += coef[c++] * (x[i] * x[j]);
    }
    T q = 0.0 * x[0];
    for (int i = 0; i < n; ++i) {
        T d = x[i] - center[i];
        q += d * d;
    }
    return poly * jexp(q * (-width));
}

} // namespace

TensorField bump_symmetric_field(int n, std::uint64_t seed) {
    // per-component coefficient tables, symmetric in (a,b)
    const int ncoef = 1 + n + n * (n + 1) / 2;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::vector<double>> coefs(n * n);
    std::vector<double> center(n);
    for (int i = 0; i < n; ++i) center[i] = 0.3 * U(rng);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            std::vector<double> cf(ncoef);
            for (double& x : cf) x = U(rng);
            coefs[a * n + b] = cf;
            coefs[b * n + a] = cf;
        }
    const double width = 0.5;

    TensorField f;
    f.valence = 2;
    f.jets = [=](const GeometryAt& geo) {
        std::vector<Jet> x(n);
        for (int v = 0; v < n; ++v) x[v] = Jet::variable(*geo.S, v, geo.u0(v));
        JetTensor out(*geo.S, n, 2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                out.at({a, b}) =
                    bump_eval<Jet>(x, n, coefs[a * n + b], center, width);
        return out;
    };
    f.point_eval = [=](const Eigen::VectorXd& u) {
        std::vector<double> x(n);
        for (int v = 0; v < n; ++v) x[v] = u(v);
        DenseTensor out(n, 2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                out.at({a, b}) =
                    bump_eval<double>(x, n, coefs[a * n + b], center, width);
        return out;
    };
    return f;
}

Jet bump_scalar_jet(const GeometryAt& geo, std::uint64_t seed) {
    const int n = geo.n;
    const int ncoef = 1 + n + n * (n + 1) / 2;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> cf(ncoef), center(n);
    for (int i = 0; i < n; ++i) center[i] = 0.3 * U(rng);
    for (double& x : cf) x = U(rng);
    std::vector<Jet> x(n);
    for (int v = 0; v < n; ++v) x[v] = Jet::variable(*geo.S, v, geo.u0(v));
    return bump_eval<Jet>(x, n, cf, center, 0.5);
}

} // namespace skt
