// Part of skt. SPDX-License-Identifier: MIT
#include <skt/gallot.hpp>

#include <skt/multilinear.hpp>

#include <cmath>
#include <random>

namespace skt {

namespace {

// ∇³f + 2 df⊗g + 𝔖₂₃ (g₁₂⊗df) as a tensor; linear in f
DenseTensor e2_tensor(const TensorField& f, const GeometryAt& geo,
                      DerivMode mode, double fd_step) {
    JetTensor fj = field_jets(f, geo, mode, fd_step);
    JetTensor df = covd(geo, fj);
    DenseTensor dfv = df.values();
    DenseTensor d3 = covd(geo, covd(geo, df)).values();
    DenseTensor gv = geo.g.values();
    DenseTensor T = d3;
    T += 2.0 * slot_product(dfv, gv, {1}, {2, 3});
    T += slot_product(gv, dfv, {1, 2}, {3});
    T += slot_product(gv, dfv, {1, 3}, {2});
    return T;
}

double dot(const DenseTensor& a, const DenseTensor& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

} // namespace

double e2_residual(const TensorField& f, const GeometryAt& geo,
                   DerivMode mode, double fd_step) {
    return e2_tensor(f, geo, mode, fd_step).max_norm();
}

DenseTensor kappa_f(const TensorField& f, const GeometryAt& geo,
                    DerivMode mode, double fd_step) {
    JetTensor fj = field_jets(f, geo, mode, fd_step);
    DenseTensor hess = covd(geo, covd(geo, fj)).values();
    return fj.values()[0] * geo.g.values() + 0.25 * hess;
}

TensorField kappa_f_field(const TensorField& f) {
    TensorField k;
    k.valence = 2;
    k.jets = [f](const GeometryAt& geo) {
        JetTensor fj = field_jets(f, geo);
        JetTensor hess = covd(geo, covd(geo, fj));
        return jt_add(jt_slot_product(fj, geo.g, {}, {1, 2}),
                      jt_scale(hess, 0.25));
    };
    return k;
}

TensorField gallot_pair_partner(const TensorField& f) {
    TensorField C;
    C.valence = 4;
    C.jets = [f](const GeometryAt& geo) {
        JetTensor fj = field_jets(f, geo);
        JetTensor hess = covd(geo, covd(geo, fj));
        JetTensor gg =
            jt_owedge(geo.g, geo.g, ProductKind::KulkarniNomizu);
        return jt_add(
            jt_slot_product(fj, gg, {}, {1, 2, 3, 4}),
            jt_scale(jt_owedge(hess, geo.g, ProductKind::KulkarniNomizu),
                     0.5));
    };
    return C;
}

GallotIdentities gallot_identities(const TensorField& f,
                                   const GeometryAt& geo, DerivMode mode,
                                   double fd_step) {
    const int n = geo.n;
    const InnerProduct ip = geo.metric();
    JetTensor fj = field_jets(f, geo, mode, fd_step);
    JetTensor df = covd(geo, fj);
    JetTensor hess = covd(geo, df);
    DenseTensor dfv = df.values();
    DenseTensor d3 = covd(geo, hess).values();

    GallotIdentities out;
    DenseTensor lap = -1.0 * metric_trace(d3, ip, 1, 2);
    out.laplacian = (lap - double(n + 3) * dfv).max_norm();

    JetTensor trk = jt_add(jt_scale(fj, double(n)),
                           jt_scale(jt_metric_trace(geo, hess, 1, 2), 0.25));
    DenseTensor dtrk = covd(geo, trk).values();
    out.trace_claim = (dtrk - 0.5 * double(3 * n + 1) * dfv).max_norm();

    const double den = dot(dfv, dfv);
    const double c = den > 1e-28 ? dot(dtrk, dfv) / den : 0.0;
    out.trace_fit = (dtrk - c * dfv).max_norm();
    out.trace_coefficient = c;
    return out;
}

ConeClosure gallot_cone_closure(const TensorField& f, const GeometryAt& geo,
                                double r) {
    const int n = geo.n;
    JetTensor fj = field_jets(f, geo);
    ConeField F = cone_pullback(fj, 2);
    ConeField qq = cone_covd(geo, cone_covd(geo, F)); // 2 q
    ConeClosure out;
    DenseTensor qv = cone_eval(qq, r);
    out.recovery = std::abs(0.5 * qv.at({n, n}) - fj.values()[0]);
    out.parallel = 0.5 * cone_eval(cone_covd(geo, qq), r).max_norm();
    return out;
}

int e2_solution_dimension(const std::vector<TensorField>& family,
                          const ManifoldModel& m, std::uint64_t seed,
                          int points, double rel_tol) {
    const int n = m.n;
    const int cand = static_cast<int>(family.size());
    if (cand == 0) return 0;
    std::mt19937_64 rng(seed);
    const int block = n * n * n;
    Eigen::MatrixXd M(cand, points * block);
    for (int p = 0; p < points; ++p) {
        PointFrame pf = sample_point(m, rng);
        GeometryAt geo = geometry_at(m, pf.point, 4);
        for (int k = 0; k < cand; ++k) {
            DenseTensor T =
                e2_tensor(family[k], geo, DerivMode::Analytic, 5e-3);
            for (std::size_t e = 0; e < T.size(); ++e)
                M(k, p * block + static_cast<int>(e)) = T[e];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const Eigen::VectorXd sv = svd.singularValues();
    // relative threshold against the largest response; an all-solution
    // family has only noise-level singular values
    const double scale = std::max(sv.size() ? sv(0) : 0.0, 1.0);
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * scale) ++rank;
    return cand - rank;
}

std::vector<TensorField> affine_linear_family(int n) {
    const int N = n + 1;
    std::vector<TensorField> fam;
    fam.push_back(ambient_scalar_field(1.0, Eigen::VectorXd::Zero(N),
                                       Eigen::MatrixXd::Zero(N, N)));
    for (int a = 0; a < N; ++a) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
        e(a) = 1.0;
        fam.push_back(
            ambient_scalar_field(0.0, e, Eigen::MatrixXd::Zero(N, N)));
    }
    return fam;
}

std::vector<TensorField> quadratic_family(int n) {
    const int N = n + 1;
    std::vector<TensorField> fam;
    for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) {
            Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
            Q(a, b) += 0.5;
            Q(b, a) += 0.5;
            fam.push_back(
                ambient_scalar_field(0.0, Eigen::VectorXd::Zero(N), Q));
        }
    return fam;
}

} // namespace skt
