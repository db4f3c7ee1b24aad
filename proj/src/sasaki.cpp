// Part of skt. SPDX-License-Identifier: MIT
#include <skt/sasaki.hpp>

#include <skt/multilinear.hpp>
#include <skt/young.hpp>

#include <algorithm>
#include <stdexcept>

namespace skt {

namespace {

Eigen::MatrixXd block_repeat(const Eigen::Matrix4d& B, int copies) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 * copies, 4 * copies);
    for (int c = 0; c < copies; ++c) M.block<4, 4>(4 * c, 4 * c) = B;
    return M;
}

void check_index(const SasakiStructure& S, int k) {
    if (k < 0 || k >= S.count())
        throw std::out_of_range("sasaki: structure index out of range");
}

double triple_max(const ConeTriple& t) {
    return std::max(
        {t.alpha.max_norm(), t.beta.max_norm(), t.gamma.max_norm()});
}

} // namespace

SasakiStructure SasakiStructure::hopf(int n) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("hopf: sphere dimension must be odd");
    const int N = n + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    for (int c = 0; c < N / 2; ++c) {
        J(2 * c + 1, 2 * c) = 1.0;
        J(2 * c, 2 * c + 1) = -1.0;
    }
    return SasakiStructure{ManifoldModel::sphere(n), {J}};
}

SasakiStructure SasakiStructure::quaternionic(int n) {
    if (n < 3 || (n + 1) % 4 != 0)
        throw std::invalid_argument(
            "quaternionic: sphere dimension must be 3 mod 4");
    const int m = (n + 1) / 4;
    // left multiplication by i, j, k in (a, b, c, d) = a + bi + cj + dk
    Eigen::Matrix4d Li, Lj, Lk;
    Li << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    Lj << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
    Lk << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
    return SasakiStructure{
        ManifoldModel::sphere(n),
        {block_repeat(Li, m), block_repeat(Lj, m), block_repeat(Lk, m)}};
}

double structure_residual(const SasakiStructure& S) {
    const int N = S.model.ambient_dim();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(N, N);
    double r = 0.0;
    for (const Eigen::MatrixXd& I : S.I) {
        if (I.rows() != N || I.cols() != N)
            throw std::invalid_argument("structure_residual: size mismatch");
        r = std::max(r, (I * I + id).cwiseAbs().maxCoeff());
        r = std::max(r, (I + I.transpose()).cwiseAbs().maxCoeff());
    }
    if (S.count() == 3) {
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                r = std::max(r, (S.I[a] * S.I[b] + S.I[b] * S.I[a])
                                    .cwiseAbs()
                                    .maxCoeff());
        const Eigen::MatrixXd P = S.I[0] * S.I[1];
        r = std::max(r, std::min((P - S.I[2]).cwiseAbs().maxCoeff(),
                                 (P + S.I[2]).cwiseAbs().maxCoeff()));
    }
    return r;
}

int quaternion_sign(const SasakiStructure& S, double tol) {
    if (S.count() != 3)
        throw std::logic_error("quaternion_sign: needs three structures");
    const Eigen::MatrixXd P = S.I[0] * S.I[1];
    const double dp = (P - S.I[2]).cwiseAbs().maxCoeff();
    const double dm = (P + S.I[2]).cwiseAbs().maxCoeff();
    if (std::min(dp, dm) > tol)
        throw std::invalid_argument("quaternion_sign: I1 I2 is not ±I3");
    return dp <= dm ? 1 : -1;
}

DenseTensor kaehler_form(const SasakiStructure& S, int k) {
    check_index(S, k);
    const int N = S.model.ambient_dim();
    DenseTensor w(N, 2);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) w.at({a, b}) = S.I[k](b, a);
    return w;
}

TensorField characteristic_form(const SasakiStructure& S, int k) {
    check_index(S, k);
    return ambient_linear_form_field(S.I[k]);
}

TensorField kaehler_pullback(const SasakiStructure& S, int k) {
    check_index(S, k);
    const Eigen::MatrixXd I = S.I[k];
    const ManifoldModel m = S.model;
    TensorField f;
    f.valence = 2;
    f.jets = [I, m](const GeometryAt& geo) {
        const int n = geo.n, N = m.ambient_dim();
        std::vector<Jet> E = embedding_jets(m, *geo.S, geo.u0);
        JetTensor out(*geo.S, n, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet acc(*geo.S);
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b)
                        if (I(a, b) != 0.0)
                            acc += I(a, b) *
                                   (E[b].derivative(i) * E[a].derivative(j));
                out.c[i * n + j] = acc;
            }
        return out;
    };
    return f;
}

TensorField sasaki_killing_tensor(const SasakiStructure& S, int i, int j) {
    TensorField a = characteristic_form(S, i);
    TensorField b = characteristic_form(S, j);
    TensorField f;
    f.valence = 2;
    f.jets = [a, b](const GeometryAt& geo) {
        return jt_owedge(a.jets(geo), b.jets(geo), ProductKind::Sym1x1);
    };
    return f;
}

TensorField sasaki_pair_partner(const SasakiStructure& S, int i, int j) {
    TensorField a = kaehler_pullback(S, i);
    TensorField b = kaehler_pullback(S, j);
    TensorField f;
    f.valence = 4;
    f.jets = [a, b](const GeometryAt& geo) {
        // ¼ dη_i⊘dη_j with dη = 2 ι*ω: the quarters cancel the twos
        return jt_owedge(a.jets(geo), b.jets(geo),
                         ProductKind::TwoFormTwoForm);
    };
    return f;
}

double CorrespondenceDefect::max() const {
    return std::max({splitting, pair_value, pair_grad, horizontal});
}

CorrespondenceDefect cone_correspondence_defect(const SasakiStructure& St,
                                                int i, int j,
                                                const Eigen::VectorXd& u0,
                                                std::mt19937_64& rng,
                                                int samples) {
    check_index(St, i);
    check_index(St, j);
    const ManifoldModel m = St.model;
    const int n = m.n, N = m.ambient_dim();
    TensorField kap = sasaki_killing_tensor(St, i, j);
    TensorField C = sasaki_pair_partner(St, i, j);
    CorrespondenceDefect d;

    // split the constant product tensor through the slice chart at r = 1
    // and compare with the field triple
    {
        GeometryAt geo = geometry_at(m, u0, 2);
        std::vector<Jet> E = embedding_jets(m, *geo.S, geo.u0);
        Eigen::MatrixXd dPhi(N, N);
        for (int a = 0; a < N; ++a) {
            dPhi(a, N - 1) = E[a].value();
            for (int q = 0; q < n; ++q)
                dPhi(a, q) = E[a].derivative(q).value();
        }
        DenseTensor Sw = owedge(kaehler_form(St, i), kaehler_form(St, j),
                                ProductKind::TwoFormTwoForm);
        ConeTriple got = decompose(to_frame(Sw, dPhi));
        JetTensor kj = field_jets(kap, geo);
        DenseTensor beta =
            jt_scale(jt_young_symmetrize(tableau_21(), covd(geo, kj)),
                     1.0 / 3.0)
                .values();
        ConeTriple expect{kj.values(), beta, field_jets(C, geo).values()};
        d.splitting = std::max({(got.alpha - expect.alpha).max_norm(),
                                (got.beta - expect.beta).max_norm(),
                                (got.gamma - expect.gamma).max_norm()});
    }

    {
        GeometryAt geo = geometry_at(m, u0, 3);
        PairDefect p = pair_defect(kap, C, geo);
        d.pair_value = p.value_eq;
        d.pair_grad = p.grad_eq;
    }

    {
        GeometryAt geo = geometry_at(m, u0, 4);
        TripleJets t = associated_triple_jets(kap, geo);
        std::normal_distribution<double> Nrm;
        for (int s = 0; s < samples; ++s) {
            Eigen::VectorXd x(n);
            for (int q = 0; q < n; ++q) x(q) = Nrm(rng);
            x.normalize();
            d.horizontal =
                std::max(d.horizontal, triple_max(horizontal_defect(t, geo, x)));
        }
    }
    return d;
}

int sasaki_span_dimension(const SasakiStructure& St, std::uint64_t seed,
                          int points, double rel_tol) {
    const int n = St.model.n;
    std::mt19937_64 rng(seed);
    std::vector<TensorField> fields;
    fields.push_back(metric_field());
    for (int i = 0; i < St.count(); ++i)
        for (int j = i; j < St.count(); ++j)
            fields.push_back(sasaki_killing_tensor(St, i, j));
    const int rows = static_cast<int>(fields.size());
    Eigen::MatrixXd M(rows, points * n * n);
    for (int p = 0; p < points; ++p) {
        PointFrame pf = sample_point(St.model, rng);
        GeometryAt geo = geometry_at(St.model, pf.point, 1);
        for (int f = 0; f < rows; ++f) {
            DenseTensor v = field_jets(fields[f], geo).values();
            for (std::size_t e = 0; e < v.size(); ++e)
                M(f, p * n * n + static_cast<int>(e)) = v[e];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * sv(0)) ++rank;
    return rank;
}

} // namespace skt
