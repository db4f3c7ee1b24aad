// Killing prolongation, curvature terms, identity residuals, holonomy.
// Part of skt. SPDX-License-Identifier: MIT

#include "skt/killing.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "skt/young.hpp"

namespace skt {

namespace {

DenseTensor metric_tensor(const InnerProduct& ip) {
    const int n = ip.dim();
    DenseTensor g(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at({i, j}) = ip.g(i, j);
    return g;
}

// endomorphisms z ↦ R(e_i, e_j) z for all coordinate pairs, E[i*n+j]
std::vector<Eigen::MatrixXd> pair_endos(const DenseTensor& R,
                                        const InnerProduct& ip) {
    const int n = R.dim();
    std::vector<Eigen::MatrixXd> E(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Eigen::MatrixXd T(n, n); // T(k,l) = R(e_i,e_j,e_k,e_l)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) T(k, l) = R.at({i, j, k, l});
            E[static_cast<std::size_t>(i) * n + j] = ip.ginv * T.transpose();
        }
    return E;
}

// same for the derivative ∇R, Eh[(h*n+i)*n+j], derivative slot first
std::vector<Eigen::MatrixXd> grad_pair_endos(const DenseTensor& gradR,
                                             const InnerProduct& ip) {
    const int n = gradR.dim();
    std::vector<Eigen::MatrixXd> E(static_cast<std::size_t>(n) * n * n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Eigen::MatrixXd T(n, n);
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        T(k, l) = gradR.at({h, i, j, k, l});
                E[(static_cast<std::size_t>(h) * n + i) * n + j] =
                    ip.ginv * T.transpose();
            }
    return E;
}

// F¹ from precomputed pair endomorphisms
DenseTensor f1_from_endos(const std::vector<Eigen::MatrixXd>& E,
                          const DenseTensor& kappa) {
    const int n = kappa.dim();
    std::vector<DenseTensor> D(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::size_t f = static_cast<std::size_t>(i) * n + j;
            D[f] = derive(E[f], kappa);
        }
    auto d = [&](int i, int j) -> const DenseTensor& {
        return D[static_cast<std::size_t>(i) * n + j];
    };
    DenseTensor out(n, 4);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e)
                    out.at({a, b, c, e}) =
                        0.5 * d(a, b).at({c, e}) +
                        0.25 * (d(c, a).at({b, e}) + d(c, b).at({a, e}) +
                                d(e, a).at({b, c}) + d(e, b).at({a, c}));
    return out;
}

// expanded F² from precomputed endomorphisms; Eh may be empty when ∇R = 0
DenseTensor f2_from_endos(const std::vector<Eigen::MatrixXd>& E,
                          const std::vector<Eigen::MatrixXd>& Eh,
                          const DenseTensor& kappa,
                          const DenseTensor& grad_kappa) {
    const int n = kappa.dim();
    auto endo = [&](int i, int j) -> const Eigen::MatrixXd& {
        return E[static_cast<std::size_t>(i) * n + j];
    };
    DenseTensor G(n, 5);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e) {
                        double v = 0.0;
                        if (!Eh.empty()) {
                            const Eigen::MatrixXd& A1 =
                                Eh[(static_cast<std::size_t>(d) * n + a) * n +
                                   e];
                            const Eigen::MatrixXd& A2 =
                                Eh[(static_cast<std::size_t>(d) * n + b) * n +
                                   e];
                            for (int m = 0; m < n; ++m) {
                                v -= kappa.at({m, c}) * A1(m, b) +
                                     kappa.at({b, m}) * A1(m, c);
                                v -= 2.0 * (kappa.at({m, c}) * A2(m, a) +
                                            kappa.at({a, m}) * A2(m, c));
                            }
                        }
                        // R₁₅, R₂₅ act on the κ slots of ∇κ twice and three
                        // times, and once more on its derivative slot; the
                        // derivative-slot shares are the ∇_{R̃ x₄}κ terms.
                        const Eigen::MatrixXd& B1 = endo(a, e);
                        const Eigen::MatrixXd& B2 = endo(b, e);
                        for (int m = 0; m < n; ++m) {
                            v -= 2.0 * (grad_kappa.at({d, m, c}) * B1(m, b) +
                                        grad_kappa.at({d, b, m}) * B1(m, c));
                            v -= 3.0 * (grad_kappa.at({d, m, c}) * B2(m, a) +
                                        grad_kappa.at({d, a, m}) * B2(m, c));
                            v -= B1(m, d) * grad_kappa.at({m, b, c});
                            v -= B2(m, d) * grad_kappa.at({m, a, c});
                        }
                        G.at({a, b, c, d, e}) = v;
                    }
    return project(tableau_22_tail(), G);
}

} // namespace

int prolongation_fiber_dim(int n) {
    return n * (n + 1) / 2 + n * (n * n - 1) / 3 + n * n * (n * n - 1) / 12;
}

double triple_membership(const ProlongationTriple& t) {
    double r = (t.kappa - symmetrize_all(t.kappa)).max_norm();
    r = std::max(r, projector_membership(tableau_21(), t.kappa1));
    r = std::max(r, projector_membership(tableau_22(), t.kappa2));
    return r;
}

DenseTensor kappa1_of(const DenseTensor& grad_kappa) {
    assert(grad_kappa.valence() == 3);
    return project(tableau_21(), grad_kappa);
}

DenseTensor kappa2_of(const DenseTensor& grad2_kappa) {
    assert(grad2_kappa.valence() == 4);
    return project(tableau_22(), grad2_kappa);
}

DenseTensor C_of(const DenseTensor& kappa, const DenseTensor& kappa2,
                 const InnerProduct& ip) {
    return kappa2 +
           owedge(kappa, metric_tensor(ip), ProductKind::KulkarniNomizu);
}

ProlongationTriple prolong_variables(const TensorField& kappa,
                                     const GeometryAt& geo, DerivMode mode,
                                     double fd_step) {
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    JetTensor d1 = covd(geo, kj);
    JetTensor d2 = covd(geo, d1);
    return {kj.values(), kappa1_of(d1.values()), kappa2_of(d2.values())};
}

TensorField C_kappa_field(const TensorField& kappa) {
    TensorField f;
    f.valence = 4;
    f.jets = [kappa](const GeometryAt& geo) {
        JetTensor kj = field_jets(kappa, geo);
        JetTensor k2 = jt_scale(
            jt_young_symmetrize(tableau_22(), covd(geo, covd(geo, kj))),
            1.0 / 12.0);
        return jt_add(k2, jt_owedge(kj, geo.g, ProductKind::KulkarniNomizu));
    };
    return f;
}

double killing_residual(const TensorField& kappa, const GeometryAt& geo,
                        std::mt19937_64& rng, int samples, DerivMode mode,
                        double fd_step) {
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    DenseTensor d1 = covd(geo, kj).values();
    double r = symmetrize_all(d1).max_norm();
    std::normal_distribution<double> N(0.0, 1.0);
    const int n = geo.n;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(n);
        for (int k = 0; k < n; ++k) x(k) = N(rng);
        x.normalize();
        double v = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    v += d1.at({a, b, c}) * x(a) * x(b) * x(c);
        r = std::max(r, std::abs(v));
    }
    return r;
}

Eigen::MatrixXd curvature_endo(const DenseTensor& R, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y,
                               const InnerProduct& ip) {
    const int n = R.dim();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double w = x(i) * y(j);
            if (w == 0.0) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    T(k, l) += w * R.at({i, j, k, l});
        }
    return ip.ginv * T.transpose();
}

DenseTensor F1(const DenseTensor& R, const DenseTensor& kappa,
               const InnerProduct& ip) {
    return f1_from_endos(pair_endos(R, ip), kappa);
}

DenseTensor F2(const DenseTensor& R, const DenseTensor& gradR,
               const DenseTensor& kappa, const DenseTensor& grad_kappa,
               const InnerProduct& ip) {
    std::vector<Eigen::MatrixXd> Eh;
    if (gradR.max_norm() > 0.0) Eh = grad_pair_endos(gradR, ip);
    return f2_from_endos(pair_endos(R, ip), Eh, kappa, grad_kappa);
}

DenseTensor F2_compact(const TensorField& kappa, const GeometryAt& geo,
                       DerivMode mode, double fd_step) {
    JetTensor Rj = curvature_jets(geo);
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    DenseTensor dk = covd(geo, kj).values();

    // T(x₁,x₂,x₃,x₅) = (R_{x₁,x₅}·κ)(x₂,x₃) + 2 (R_{x₂,x₅}·κ)(x₁,x₃)
    JetTensor P1 =
        jt_metric_trace(geo, jt_slot_product(Rj, kj, {1, 4, 2, 5}, {6, 3}), 5, 6);
    JetTensor P2 =
        jt_metric_trace(geo, jt_slot_product(Rj, kj, {1, 4, 3, 5}, {2, 6}), 5, 6);
    JetTensor Q1 =
        jt_metric_trace(geo, jt_slot_product(Rj, kj, {2, 4, 1, 5}, {6, 3}), 5, 6);
    JetTensor Q2 =
        jt_metric_trace(geo, jt_slot_product(Rj, kj, {2, 4, 3, 5}, {1, 6}), 5, 6);
    JetTensor T = jt_scale(
        jt_add(jt_add(P1, P2), jt_scale(jt_add(Q1, Q2), 2.0)), -1.0);
    DenseTensor DT = covd(geo, T).values(); // slots (x₄, x₁, x₂, x₃, x₅)

    const InnerProduct ip = geo.metric();
    std::vector<Eigen::MatrixXd> E = pair_endos(Rj.values(), ip);
    const int n = geo.n;
    auto endo = [&](int i, int j) -> const Eigen::MatrixXd& {
        return E[static_cast<std::size_t>(i) * n + j];
    };
    DenseTensor G(n, 5);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e) {
                        // lone terms: R₁₅ and R₂₅ act on all three slots of
                        // ∇₄κ, the derivative slot included
                        double v = DT.at({d, a, b, c, e});
                        const Eigen::MatrixXd& B1 = endo(a, e);
                        const Eigen::MatrixXd& B2 = endo(b, e);
                        for (int m = 0; m < n; ++m) {
                            v -= dk.at({d, m, c}) * B1(m, b) +
                                 dk.at({d, b, m}) * B1(m, c);
                            v -= dk.at({d, m, c}) * B2(m, a) +
                                 dk.at({d, a, m}) * B2(m, c);
                            v -= B1(m, d) * dk.at({m, b, c});
                            v -= B2(m, d) * dk.at({m, a, c});
                        }
                        G.at({a, b, c, d, e}) = v;
                    }
    return project(tableau_22_tail(), G);
}

ProlongationDefect prolongation_defect(const TensorField& kappa,
                                       const GeometryAt& geo, DerivMode mode,
                                       double fd_step) {
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    JetTensor d1 = covd(geo, kj);
    JetTensor k1 = jt_scale(jt_young_symmetrize(tableau_21(), d1), 1.0 / 3.0);
    JetTensor dk1 = covd(geo, k1);
    JetTensor k2 = jt_scale(
        jt_young_symmetrize(tableau_22(), covd(geo, d1)), 1.0 / 12.0);
    JetTensor dk2 = covd(geo, k2);

    JetTensor Rj = curvature_jets(geo);
    DenseTensor R = Rj.values();
    DenseTensor gradR = covd(geo, Rj).values();
    const InnerProduct ip = geo.metric();

    ProlongationDefect out;
    out.first = (d1.values() - k1.values()).max_norm();
    out.second =
        (dk1.values() - k2.values() - F1(R, kj.values(), ip)).max_norm();
    out.third =
        (dk2.values() - F2(R, gradR, kj.values(), d1.values(), ip)).max_norm();
    return out;
}

PairDefect pair_defect(const TensorField& kappa, const TensorField& C,
                       const GeometryAt& geo, DerivMode mode, double fd_step) {
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    JetTensor d1 = covd(geo, kj);
    DenseTensor d2 = covd(geo, d1).values();
    DenseTensor k0 = kj.values(), dk = d1.values();

    JetTensor Cj = field_jets(C, geo, mode, fd_step);
    DenseTensor C0 = Cj.values();
    DenseTensor dC = covd(geo, Cj).values();

    const InnerProduct ip = geo.metric();
    const int n = geo.n;
    PairDefect out;
    for (int a = 0; a < n; ++a) {
        Eigen::VectorXd x = Eigen::VectorXd::Unit(n, a);
        DenseTensor xf = flat(x, ip);
        DenseTensor rhs1 = insert(x, d2) +
                           2.0 * owedge(k0, xf, ProductKind::OneFormSym2);
        out.value_eq = std::max(out.value_eq,
                                (insert(x, C0) - rhs1).max_norm());
        DenseTensor rhs2 = -1.0 * owedge(dk, xf, ProductKind::OneFormS21);
        out.grad_eq = std::max(out.grad_eq,
                               (insert(x, dC) - rhs2).max_norm());
    }
    return out;
}

NullityDefect nullity_defect(const TensorField& kappa, const GeometryAt& geo,
                             std::mt19937_64& rng, int samples, DerivMode mode,
                             double fd_step) {
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    DenseTensor k0 = kj.values();
    DenseTensor dk = covd(geo, kj).values();
    DenseTensor R = curvature_jets(geo).values();
    const InnerProduct ip = geo.metric();
    const int n = geo.n;

    std::normal_distribution<double> N(0.0, 1.0);
    NullityDefect out;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(n), y(n);
        for (int k = 0; k < n; ++k) {
            x(k) = N(rng);
            y(k) = N(rng);
        }
        Eigen::MatrixXd A = curvature_endo(R, x, y, ip) + wedge_endo(x, y, ip);
        out.kappa_eq = std::max(out.kappa_eq, derive(A, k0).max_norm());
        out.grad_eq = std::max(out.grad_eq, derive(A, dk).max_norm());
    }
    return out;
}

DenseTensor ricci_of(const DenseTensor& C, const InnerProduct& ip) {
    return metric_trace(C, ip, 3, 4);
}

DenseTensor kappa_from_C(const TensorField& C, const GeometryAt& geo,
                         DerivMode mode, double fd_step) {
    const int n = geo.n;
    if (n < 2) throw std::domain_error("kappa_from_C needs dimension >= 2");
    JetTensor Cj = field_jets(C, geo, mode, fd_step);
    JetTensor Ric = jt_metric_trace(geo, Cj, 3, 4);
    JetTensor s = jt_metric_trace(geo, Ric, 1, 2);
    DenseTensor hess = covd(geo, covd(geo, s)).values();
    const InnerProduct ip = geo.metric();
    const double s0 = s.values()[0];
    const double lap = -metric_trace(hess, ip, 1, 2)[0]; // ∇*∇ s
    DenseTensor out = -0.5 * (Ric.values() + 0.25 * hess);
    out += ((s0 - 0.25 * lap) / (2.0 * (n - 1))) * metric_tensor(ip);
    return out;
}

DenseTensor q_R(const DenseTensor& R, const DenseTensor& kappa,
                const InnerProduct& ip, const Eigen::MatrixXd& frame) {
    const int n = R.dim();
    DenseTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd e = frame.col(i);
        for (int a = 0; a < n; ++a) {
            Eigen::MatrixXd A =
                curvature_endo(R, Eigen::VectorXd::Unit(n, a), e, ip);
            DenseTensor D = derive(A, kappa);
            for (int b = 0; b < n; ++b) {
                double va = 0.0;
                for (int c = 0; c < n; ++c) va += D.at({b, c}) * e(c);
                // contributes −(R_{x_a,e_i}·κ)(x_b,e_i) to both slot orders
                out.at({a, b}) -= va;
                out.at({b, a}) -= va;
            }
        }
    }
    return out;
}

double weitzenboeck_defect(const TensorField& kappa, const GeometryAt& geo,
                           DerivMode mode, double fd_step) {
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    JetTensor d2 = covd(geo, covd(geo, kj));
    const InnerProduct ip = geo.metric();
    DenseTensor rough = -1.0 * metric_trace(d2.values(), ip, 1, 2); // ∇*∇κ
    JetTensor tr = jt_metric_trace(geo, kj, 1, 2);
    DenseTensor hess_tr = covd(geo, covd(geo, tr)).values();
    DenseTensor R = curvature_jets(geo).values();
    DenseTensor q = q_R(R, kj.values(), ip, geo.frame);
    return (rough - q + hess_tr).max_norm();
}

TraceIdentityResiduals trace_identities(const TensorField& kappa,
                                        const GeometryAt& geo, DerivMode mode,
                                        double fd_step) {
    const int n = geo.n;
    const InnerProduct ip = geo.metric();
    JetTensor kj = field_jets(kappa, geo, mode, fd_step);
    JetTensor d1 = covd(geo, kj);
    DenseTensor k0 = kj.values();

    JetTensor tr = jt_metric_trace(geo, kj, 1, 2);
    JetTensor dtr = covd(geo, tr);
    DenseTensor hess_tr = covd(geo, dtr).values();
    const double tr0 = tr.values()[0];
    const double lap_tr = -metric_trace(hess_tr, ip, 1, 2)[0];

    DenseTensor div = -1.0 * metric_trace(d1.values(), ip, 1, 2); // δκ
    DenseTensor rough = -1.0 * metric_trace(covd(geo, d1).values(), ip, 1, 2);

    JetTensor Cj = field_jets(C_kappa_field(kappa), geo);
    JetTensor Ric = jt_metric_trace(geo, Cj, 3, 4);
    JetTensor s = jt_metric_trace(geo, Ric, 1, 2);
    DenseTensor ds = covd(geo, s).values();

    TraceIdentityResiduals out;
    out.div_vs_dtr = (dtr.values() - 2.0 * div).max_norm();
    out.ricci_value =
        (Ric.values() - hess_tr - 2.0 * (tr0 * metric_tensor(ip) - k0))
            .max_norm();
    out.ricci_laplace =
        (Ric.values() + rough - 2.0 * (n - 1) * k0).max_norm();
    out.scalar_value = std::abs(s.values()[0] + lap_tr - 2.0 * (n - 1) * tr0);
    out.ds_vs_dtr = (ds + 4.0 * dtr.values()).max_norm();
    return out;
}

// transport ----------------------------------------------------------------

namespace {

struct StageData {
    Eigen::MatrixXd G;  // chart metric at the stage point
    DenseTensor g2;     // same, as a tensor
    DenseTensor gamma;  // Γ^k_{ij}, slot order (k,i,j)
};

StageData stage_at(const ManifoldModel& m, const Eigen::VectorXd& u) {
    GeometryAt geo = geometry_at(m, u, 1);
    StageData s;
    s.G = geo.g0;
    s.g2 = metric_tensor(geo.metric());
    s.gamma = geo.gamma.values();
    return s;
}

int pack_size(int n) { return n * n + n * n * n + n * n * n * n; }

Eigen::VectorXd pack(const ProlongationTriple& t) {
    const int n = t.dim();
    Eigen::VectorXd v(pack_size(n));
    int o = 0;
    for (std::size_t i = 0; i < t.kappa.size(); ++i) v(o++) = t.kappa[i];
    for (std::size_t i = 0; i < t.kappa1.size(); ++i) v(o++) = t.kappa1[i];
    for (std::size_t i = 0; i < t.kappa2.size(); ++i) v(o++) = t.kappa2[i];
    return v;
}

ProlongationTriple unpack(const Eigen::VectorXd& v, int n) {
    ProlongationTriple t{DenseTensor(n, 2), DenseTensor(n, 3),
                         DenseTensor(n, 4)};
    int o = 0;
    for (std::size_t i = 0; i < t.kappa.size(); ++i) t.kappa[i] = v(o++);
    for (std::size_t i = 0; i < t.kappa1.size(); ++i) t.kappa1[i] = v(o++);
    for (std::size_t i = 0; i < t.kappa2.size(); ++i) t.kappa2[i] = v(o++);
    return t;
}

// dT_I/dt = (∇_v T)_I + Σ_s v^a Γ^m_{a,I_s} T_{I,s→m}
void add_gamma_correction(DenseTensor& rhs, const DenseTensor& t,
                          const DenseTensor& gamma, const Eigen::VectorXd& v) {
    const int n = t.dim(), d = t.valence();
    // C(m, i) = Σ_a v^a Γ^m_{a,i}
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n; ++m)
        for (int a = 0; a < n; ++a)
            for (int i = 0; i < n; ++i) C(m, i) += v(a) * gamma.at({m, a, i});
    std::vector<int> idx(d);
    for (std::size_t f = 0; f < t.size(); ++f) {
        rhs.decode(f, idx.data());
        double acc = 0.0;
        for (int s = 0; s < d; ++s) {
            const int keep = idx[s];
            for (int m = 0; m < n; ++m) {
                idx[s] = m;
                acc += C(m, keep) * t.at(idx);
            }
            idx[s] = keep;
        }
        rhs[f] += acc;
    }
}

// Killing-connection derivative of the triple along v, in chart components.
// The built-in models have parallel R = c R₁, so the curvature terms reduce
// to the metric-wedge form; agreement with the general F¹/F² is covered by
// the test suite.
Eigen::VectorXd killing_rhs(const StageData& sd, double c,
                            const Eigen::VectorXd& v, const Eigen::VectorXd& y,
                            int n) {
    ProlongationTriple t = unpack(y, n);
    ProlongationTriple r;
    r.kappa = insert(v, t.kappa1);
    r.kappa1 = insert(v, t.kappa2);
    if (c != 0.0) {
        DenseTensor vflat = one_form(sd.G * v);
        r.kappa1 +=
            c * (insert(v, owedge(sd.g2, t.kappa, ProductKind::KulkarniNomizu)) -
                 2.0 * owedge(t.kappa, vflat, ProductKind::OneFormSym2));
        r.kappa2 =
            c * (-1.0 * owedge(sd.g2, insert(v, t.kappa1),
                               ProductKind::KulkarniNomizu) -
                 owedge(t.kappa1, vflat, ProductKind::OneFormS21));
    } else {
        r.kappa2 = DenseTensor(n, 4);
    }
    add_gamma_correction(r.kappa, t.kappa, sd.gamma, v);
    add_gamma_correction(r.kappa1, t.kappa1, sd.gamma, v);
    add_gamma_correction(r.kappa2, t.kappa2, sd.gamma, v);
    return pack(r);
}

// one RK4 pass over a straight chart segment, all columns of Y at once
void integrate_segment(const ManifoldModel& m, const Eigen::VectorXd& P,
                       const Eigen::VectorXd& Q, int steps,
                       Eigen::MatrixXd& Y) {
    const int n = m.n;
    const double c = m.sectional();
    const Eigen::VectorXd v = Q - P;
    // stage geometries at k/(2N), shared across RK stages and columns
    std::vector<StageData> sd;
    sd.reserve(2 * steps + 1);
    for (int k = 0; k <= 2 * steps; ++k)
        sd.push_back(stage_at(m, P + (static_cast<double>(k) / (2 * steps)) * v));
    const double h = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        const StageData& s0 = sd[2 * k];
        const StageData& sh = sd[2 * k + 1];
        const StageData& s1 = sd[2 * k + 2];
        for (int col = 0; col < Y.cols(); ++col) {
            const Eigen::VectorXd y = Y.col(col);
            Eigen::VectorXd k1 = killing_rhs(s0, c, v, y, n);
            Eigen::VectorXd k2 = killing_rhs(sh, c, v, y + 0.5 * h * k1, n);
            Eigen::VectorXd k3 = killing_rhs(sh, c, v, y + 0.5 * h * k2, n);
            Eigen::VectorXd k4 = killing_rhs(s1, c, v, y + h * k3, n);
            Y.col(col) = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
}

Eigen::MatrixXd transport_columns(const ManifoldModel& m,
                                  const std::vector<Eigen::VectorXd>& path,
                                  const Eigen::MatrixXd& Y0,
                                  const TransportOptions& opt) {
    assert(path.size() >= 2);
    Eigen::MatrixXd prev;
    for (int steps = opt.min_steps;; steps *= 2) {
        Eigen::MatrixXd Y = Y0;
        for (std::size_t s = 0; s + 1 < path.size(); ++s)
            integrate_segment(m, path[s], path[s + 1], steps, Y);
        if (prev.size() > 0 &&
            (Y - prev).cwiseAbs().maxCoeff() < opt.tol)
            return Y;
        if (steps >= opt.max_steps) {
            if (prev.size() == 0)
                throw std::runtime_error("transport: step budget exhausted");
            return Y;
        }
        prev = Y;
    }
}

} // namespace

ProlongationTriple transport(const ProlongationTriple& start,
                             const std::vector<Eigen::VectorXd>& path,
                             const ManifoldModel& m,
                             const TransportOptions& opt) {
    Eigen::MatrixXd Y = pack(start);
    Y = transport_columns(m, path, Y, opt);
    return unpack(Y.col(0), m.n);
}

Eigen::MatrixXd triple_basis(int n) {
    const int F = pack_size(n);
    const int d2 = n * (n + 1) / 2;
    const int d21 = n * (n * n - 1) / 3;
    const int d22 = n * n * (n * n - 1) / 12;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(F, d2 + d21 + d22);

    int col = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            DenseTensor t(n, 2);
            if (i == j) {
                t.at({i, i}) = 1.0;
            } else {
                t.at({i, j}) = t.at({j, i}) = 1.0 / std::sqrt(2.0);
            }
            ProlongationTriple tr{t, DenseTensor(n, 3), DenseTensor(n, 4)};
            B.col(col++) = pack(tr);
        }

    // orthonormal bases of the projector images via thin SVD
    auto image_basis = [&](const Tableau& T, int valence, int want, int off) {
        const std::size_t sz = DenseTensor(n, valence).size();
        Eigen::MatrixXd M(sz, sz);
        for (std::size_t j = 0; j < sz; ++j) {
            DenseTensor u(n, valence);
            u[j] = 1.0;
            DenseTensor p = project(T, u);
            for (std::size_t i = 0; i < sz; ++i) M(i, j) = p[i];
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
        for (int c = 0; c < want; ++c)
            B.block(off, col + c, static_cast<int>(sz), 1) =
                svd.matrixU().col(c);
        col += want;
    };
    image_basis(tableau_21(), 3, d21, n * n);
    image_basis(tableau_22(), 4, d22, n * n + n * n * n);
    return B;
}

Eigen::MatrixXd loop_holonomy(const ManifoldModel& m, const Loop& loop,
                              const TransportOptions& opt) {
    std::vector<Eigen::VectorXd> path = loop.corners;
    path.push_back(loop.corners.front());
    Eigen::MatrixXd B = triple_basis(m.n);
    Eigen::MatrixXd Y = transport_columns(m, path, B, opt);
    return B.transpose() * Y;
}

int killing_dimension(const ManifoldModel& m, int n_loops, std::uint64_t seed,
                      double sv_tol, const TransportOptions& opt) {
    std::mt19937_64 rng(seed);
    const int D = prolongation_fiber_dim(m.n);
    Eigen::MatrixXd stack(n_loops * D, D);
    for (int l = 0; l < n_loops; ++l) {
        Loop L = sample_loop(m, rng);
        stack.middleRows(l * D, D) =
            loop_holonomy(m, L, opt) - Eigen::MatrixXd::Identity(D, D);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
    int fixed = 0;
    for (int i = 0; i < D; ++i)
        if (svd.singularValues()(i) < sv_tol) ++fixed;
    return fixed;
}

} // namespace skt
