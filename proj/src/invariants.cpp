// Part of skt. SPDX-License-Identifier: MIT
#include <skt/invariants.hpp>

#include <skt/multilinear.hpp>
#include <skt/young.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace skt {

namespace {

std::vector<Eigen::MatrixXd> skew_basis(int N) {
    std::vector<Eigen::MatrixXd> out;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
            X(a, b) = 1.0;
            X(b, a) = -1.0;
            out.push_back(std::move(X));
        }
    return out;
}

Eigen::VectorXd vec_mat(const Eigen::MatrixXd& M) {
    return Eigen::Map<const Eigen::VectorXd>(M.data(), M.size());
}

// kernel of the linear map given columnwise, as coefficient vectors
std::vector<Eigen::VectorXd> nullspace(const Eigen::MatrixXd& M,
                                       double rel_tol = 1e-9) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double scale = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * scale) ++rank;
    std::vector<Eigen::VectorXd> out;
    for (int k = rank; k < M.cols(); ++k)
        out.push_back(svd.matrixV().col(k));
    return out;
}

std::vector<Eigen::MatrixXd> combine(const std::vector<Eigen::MatrixXd>& basis,
                                     const std::vector<Eigen::VectorXd>& cs) {
    std::vector<Eigen::MatrixXd> out;
    for (const Eigen::VectorXd& c : cs) {
        Eigen::MatrixXd X =
            Eigen::MatrixXd::Zero(basis[0].rows(), basis[0].cols());
        for (int k = 0; k < c.size(); ++k) X += c(k) * basis[k];
        out.push_back(std::move(X));
    }
    return out;
}

// generators commuting with every listed structure
std::vector<Eigen::MatrixXd> commutant(const std::vector<Eigen::MatrixXd>& Is,
                                       int N) {
    std::vector<Eigen::MatrixXd> sk = skew_basis(N);
    const int K = static_cast<int>(sk.size());
    const int S = static_cast<int>(Is.size());
    Eigen::MatrixXd M(N * N * S, K);
    for (int k = 0; k < K; ++k)
        for (int s = 0; s < S; ++s)
            M.block(s * N * N, k, N * N, 1) =
                vec_mat(sk[k] * Is[s] - Is[s] * sk[k]);
    return combine(sk, nullspace(M));
}

Eigen::MatrixXd complex_structure(int N) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    for (int c = 0; c < N / 2; ++c) {
        J(2 * c + 1, 2 * c) = 1.0;
        J(2 * c, 2 * c + 1) = -1.0;
    }
    return J;
}

std::vector<Eigen::MatrixXd> quaternion_structures(int N) {
    Eigen::Matrix4d Li, Lj, Lk;
    Li << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    Lj << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
    Lk << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
    std::vector<Eigen::MatrixXd> Is(3, Eigen::MatrixXd::Zero(N, N));
    for (int c = 0; c < N / 4; ++c) {
        Is[0].block<4, 4>(4 * c, 4 * c) = Li;
        Is[1].block<4, 4>(4 * c, 4 * c) = Lj;
        Is[2].block<4, 4>(4 * c, 4 * c) = Lk;
    }
    return Is;
}

int perm_sign(std::vector<int> v) {
    int s = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                s = -s;
            }
    return s;
}

// antisymmetric extension of coefficients given on ascending index tuples
void put_antisym(DenseTensor& t, std::vector<int> idx, double coeff) {
    std::sort(idx.begin(), idx.end());
    std::vector<int> p(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) p[k] = static_cast<int>(k);
    do {
        std::vector<int> q(idx.size());
        std::vector<int> pv(p);
        for (std::size_t k = 0; k < idx.size(); ++k) q[k] = idx[p[k]];
        t.at(q) = perm_sign(pv) * coeff;
    } while (std::next_permutation(p.begin(), p.end()));
}

struct SignedTriple {
    int a, b, c;
    double s;
};

const std::vector<SignedTriple>& g2_triples() {
    static const std::vector<SignedTriple> T = {
        {0, 1, 2, 1.0},  {0, 3, 4, 1.0},  {0, 5, 6, 1.0}, {1, 3, 5, 1.0},
        {1, 4, 6, -1.0}, {2, 3, 6, -1.0}, {2, 4, 5, -1.0}};
    return T;
}

// action of the generators on a list of forms, columnwise
std::vector<Eigen::MatrixXd> stabilizer(const std::vector<DenseTensor>& forms,
                                        int N) {
    std::vector<Eigen::MatrixXd> sk = skew_basis(N);
    const int K = static_cast<int>(sk.size());
    std::size_t rows = 0;
    for (const DenseTensor& f : forms) rows += f.size();
    Eigen::MatrixXd M(static_cast<int>(rows), K);
    for (int k = 0; k < K; ++k) {
        int at = 0;
        for (const DenseTensor& f : forms) {
            DenseTensor d = derive(sk[k], f);
            for (std::size_t e = 0; e < d.size(); ++e) M(at + e, k) = d[e];
            at += static_cast<int>(f.size());
        }
    }
    return combine(sk, nullspace(M));
}

DenseTensor tensor_from_vec(const Eigen::VectorXd& v, int N, int d) {
    DenseTensor t(N, d);
    for (std::size_t e = 0; e < t.size(); ++e) t[e] = v(e);
    return t;
}

Eigen::VectorXd vec_tensor(const DenseTensor& t) {
    Eigen::VectorXd v(t.size());
    for (std::size_t e = 0; e < t.size(); ++e) v(e) = t[e];
    return v;
}

DenseTensor identity_metric(int N) {
    DenseTensor g(N, 2);
    for (int a = 0; a < N; ++a) g.at({a, a}) = 1.0;
    return g;
}

DenseTensor structure_two_form(const Eigen::MatrixXd& I) {
    const int N = static_cast<int>(I.rows());
    DenseTensor w(N, 2);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) w.at({a, b}) = I(b, a);
    return w;
}

} // namespace

int expected_algebra_dim(AlgebraKind kind, int N) {
    switch (kind) {
    case AlgebraKind::SO: return N * (N - 1) / 2;
    case AlgebraKind::U: return (N / 2) * (N / 2);
    case AlgebraKind::SU: return (N / 2) * (N / 2) - 1;
    case AlgebraKind::Sp: return (N / 4) * (N / 2 + 1);
    case AlgebraKind::G2: return 14;
    case AlgebraKind::Spin7: return 21;
    }
    return 0;
}

DenseTensor associative_form() {
    DenseTensor phi(7, 3);
    for (const SignedTriple& t : g2_triples())
        put_antisym(phi, {t.a, t.b, t.c}, t.s);
    return phi;
}

DenseTensor coassociative_form() {
    DenseTensor star(7, 4);
    for (const SignedTriple& t : g2_triples()) {
        std::vector<int> J;
        for (int k = 0; k < 7; ++k)
            if (k != t.a && k != t.b && k != t.c) J.push_back(k);
        std::vector<int> full = {t.a, t.b, t.c, J[0], J[1], J[2], J[3]};
        put_antisym(star, J, t.s * perm_sign(full));
    }
    return star;
}

DenseTensor cayley_form(int sign) {
    DenseTensor F(8, 4);
    // e₇ ∧ (3-form): coefficient on the ascending tuple (a, b, c, 7) is the
    // 3-form coefficient times the sign moving e₇ past three slots
    for (const SignedTriple& t : g2_triples())
        put_antisym(F, {t.a, t.b, t.c, 7}, -t.s);
    DenseTensor co = coassociative_form();
    std::vector<int> idx(4);
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c)
                for (int d = 0; d < 7; ++d) {
                    const double v = co.at({a, b, c, d});
                    if (v != 0.0) F.at({a, b, c, d}) += sign * v;
                }
    return F;
}

LieAlgebraSpec build_algebra(AlgebraKind kind, int N) {
    LieAlgebraSpec alg;
    alg.kind = kind;
    alg.N = N;
    switch (kind) {
    case AlgebraKind::SO:
        if (N < 2) throw std::invalid_argument("build_algebra: N too small");
        alg.generators = skew_basis(N);
        break;
    case AlgebraKind::U:
    case AlgebraKind::SU: {
        if (N < 2 || N % 2 != 0)
            throw std::invalid_argument("build_algebra: N must be even");
        Eigen::MatrixXd J = complex_structure(N);
        alg.structures = {J};
        alg.generators = commutant(alg.structures, N);
        if (kind == AlgebraKind::SU) {
            // cut the center: complex trace, i.e. tr(J X), must vanish
            Eigen::MatrixXd row(1, alg.dim());
            for (int k = 0; k < alg.dim(); ++k)
                row(0, k) = (J * alg.generators[k]).trace();
            alg.generators = combine(alg.generators, nullspace(row));
        }
        break;
    }
    case AlgebraKind::Sp:
        if (N < 4 || N % 4 != 0)
            throw std::invalid_argument(
                "build_algebra: N must be a multiple of 4");
        alg.structures = quaternion_structures(N);
        alg.generators = commutant(alg.structures, N);
        break;
    case AlgebraKind::G2:
        if (N != 7)
            throw std::invalid_argument("build_algebra: G2 needs N = 7");
        alg.generators = stabilizer({associative_form()}, 7);
        break;
    case AlgebraKind::Spin7: {
        if (N != 8)
            throw std::invalid_argument("build_algebra: Spin7 needs N = 8");
        for (int s : {1, -1}) {
            std::vector<Eigen::MatrixXd> gen =
                stabilizer({cayley_form(s)}, 8);
            if (static_cast<int>(gen.size()) ==
                expected_algebra_dim(kind, N)) {
                alg.generators = std::move(gen);
                alg.cayley_sign = s;
                break;
            }
        }
        break;
    }
    }
    if (alg.dim() != expected_algebra_dim(kind, N))
        throw std::runtime_error(
            "build_algebra: dimension validation failed");
    return alg;
}

double generator_closure_residual(const LieAlgebraSpec& alg) {
    const int G = alg.dim(), N = alg.N;
    Eigen::MatrixXd S(N * N, G);
    for (int k = 0; k < G; ++k) S.col(k) = vec_mat(alg.generators[k]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(S);
    Eigen::MatrixXd Q =
        qr.householderQ() * Eigen::MatrixXd::Identity(N * N, G);
    double r = 0.0;
    for (int a = 0; a < G; ++a)
        for (int b = a + 1; b < G; ++b) {
            Eigen::VectorXd c = vec_mat(alg.generators[a] * alg.generators[b] -
                                        alg.generators[b] * alg.generators[a]);
            r = std::max(r, (c - Q * (Q.transpose() * c)).cwiseAbs().maxCoeff());
        }
    return r;
}

const Eigen::MatrixXd& curvature_space_basis(int N) {
    static std::map<int, Eigen::MatrixXd> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;

    const int D = N * N * (N * N - 1) / 12;
    const std::size_t full = static_cast<std::size_t>(N) * N * N * N;
    Eigen::MatrixXd B(full, D);
    const Tableau tab = Tableau::normal(Shape{2, 2});
    int have = 0;
    for (std::size_t f = 0; f < full && have < D; ++f) {
        DenseTensor e(N, 4);
        e[f] = 1.0;
        Eigen::VectorXd v = vec_tensor(project(tab, e));
        // twice-through Gram-Schmidt against the accepted columns
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < have; ++k) v -= B.col(k).dot(v) * B.col(k);
        const double nrm = v.norm();
        if (nrm > 1e-9) B.col(have++) = v / nrm;
    }
    if (have != D)
        throw std::logic_error("curvature_space_basis: rank deficit");
    return cache.emplace(N, std::move(B)).first->second;
}

namespace {

// stacked coordinate matrices of every generator action on the curvature
// space basis
Eigen::MatrixXd stacked_action(const LieAlgebraSpec& alg) {
    const int N = alg.N;
    const Eigen::MatrixXd& B = curvature_space_basis(N);
    const int D = static_cast<int>(B.cols());
    const int G = alg.dim();
    Eigen::MatrixXd A(G * D, D);
    Eigen::MatrixXd W(B.rows(), D);
    for (int k = 0; k < G; ++k) {
        for (int j = 0; j < D; ++j)
            W.col(j) =
                vec_tensor(derive(alg.generators[k],
                                  tensor_from_vec(B.col(j), N, 4)));
        A.block(k * D, 0, D, D) = B.transpose() * W;
    }
    return A;
}

} // namespace

int curvature_trivial_multiplicity(const LieAlgebraSpec& alg,
                                   double svd_tol) {
    Eigen::MatrixXd A = stacked_action(alg);
    const int D = static_cast<int>(A.cols());
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return D;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > svd_tol * sv(0)) ++rank;
    return D - rank;
}

std::vector<DenseTensor> explicit_invariant_basis(const LieAlgebraSpec& alg) {
    std::vector<DenseTensor> out;
    DenseTensor g = identity_metric(alg.N);
    out.push_back(owedge(g, g, ProductKind::KulkarniNomizu));
    std::vector<DenseTensor> ws;
    for (const Eigen::MatrixXd& I : alg.structures)
        ws.push_back(structure_two_form(I));
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = i; j < ws.size(); ++j)
            out.push_back(owedge(ws[i], ws[j], ProductKind::TwoFormTwoForm));
    return out;
}

InvariantSpanCheck invariant_span_check(const LieAlgebraSpec& alg,
                                        double svd_tol) {
    const int N = alg.N;
    const Eigen::MatrixXd& B = curvature_space_basis(N);
    const int D = static_cast<int>(B.cols());

    Eigen::MatrixXd A = stacked_action(alg);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > svd_tol * (sv.size() ? sv(0) : 0.0)) ++rank;

    InvariantSpanCheck out;
    out.multiplicity = D - rank;
    Eigen::MatrixXd K = svd.matrixV().rightCols(out.multiplicity);

    std::vector<DenseTensor> ts = explicit_invariant_basis(alg);
    const int M = static_cast<int>(ts.size());
    Eigen::MatrixXd C(D, M);
    for (int m = 0; m < M; ++m) {
        for (const Eigen::MatrixXd& X : alg.generators)
            out.max_action_residual = std::max(
                out.max_action_residual, derive(X, ts[m]).max_norm());
        Eigen::VectorXd v = vec_tensor(ts[m]);
        C.col(m) = B.transpose() * v;
        Eigen::VectorXd res = C.col(m) - K * (K.transpose() * C.col(m));
        out.span_defect =
            std::max(out.span_defect, res.norm() / C.col(m).norm());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> csvd(C);
    const Eigen::VectorXd cs = csvd.singularValues();
    for (int k = 0; k < cs.size(); ++k)
        if (cs(k) > 1e-9 * cs(0)) ++out.span_rank;
    return out;
}

} // namespace skt
