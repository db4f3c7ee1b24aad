// SPDX-License-Identifier: MIT

#include "skt/multilinear.hpp"

#include <cassert>
#include <stdexcept>

namespace skt {

DenseTensor slot_product(const DenseTensor& a, const DenseTensor& b,
                         const std::vector<int>& slots_a,
                         const std::vector<int>& slots_b) {
    assert(a.dim() == b.dim());
    assert(static_cast<int>(slots_a.size()) == a.valence());
    assert(static_cast<int>(slots_b.size()) == b.valence());
    const int d = a.valence() + b.valence();
    DenseTensor out(a.dim(), d);
    std::vector<int> I(d), Ia(a.valence()), Ib(b.valence());
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, I.data());
        for (std::size_t k = 0; k < slots_a.size(); ++k)
            Ia[k] = I[slots_a[k] - 1];
        for (std::size_t k = 0; k < slots_b.size(); ++k)
            Ib[k] = I[slots_b[k] - 1];
        out[f] = a[a.encode(Ia.data())] * b[b.encode(Ib.data())];
    }
    return out;
}

DenseTensor tensor_product(const DenseTensor& a, const DenseTensor& b) {
    std::vector<int> sa(a.valence()), sb(b.valence());
    for (int k = 0; k < a.valence(); ++k) sa[k] = k + 1;
    for (int k = 0; k < b.valence(); ++k) sb[k] = a.valence() + k + 1;
    return slot_product(a, b, sa, sb);
}

Tableau tableau_21() {
    return Tableau::with_filling(Shape{2, 1}, {{2, 3}, {1}});
}

Tableau tableau_22() { return Tableau::normal(Shape{2, 2}); }

Tableau tableau_22_tail() {
    return Tableau::with_filling(Shape{2, 2}, {{2, 3}, {4, 5}});
}

double projector_membership(const Tableau& T, const DenseTensor& t,
                            bool adjoint) {
    return (project(T, t, adjoint) - t).max_norm();
}

namespace {

void check_strict(const DenseTensor& a, const DenseTensor& b,
                  ProductKind kind) {
    const double tol = 1e-9;
    auto sym_ok = [&](const DenseTensor& t) {
        return projector_membership(Tableau::normal(Shape{2}), t) < tol;
    };
    auto skew_ok = [&](const DenseTensor& t) {
        return projector_membership(Tableau::normal(Shape{1, 1}), t) < tol;
    };
    bool ok = true;
    switch (kind) {
    case ProductKind::Sym1x1:
        ok = a.valence() == 1 && b.valence() == 1;
        break;
    case ProductKind::OneFormSym2:
        ok = (a.valence() == 1) ? sym_ok(b) : sym_ok(a);
        break;
    case ProductKind::TwoFormTwoForm:
        ok = skew_ok(a) && skew_ok(b);
        break;
    case ProductKind::OneFormS21: {
        const DenseTensor& beta = (a.valence() == 1) ? b : a;
        ok = projector_membership(tableau_21(), beta) < tol;
        break;
    }
    case ProductKind::KulkarniNomizu:
        ok = sym_ok(a) && sym_ok(b);
        break;
    }
    if (!ok) throw std::invalid_argument("owedge: argument symmetry type");
}

} // namespace

DenseTensor owedge(const DenseTensor& a, const DenseTensor& b,
                   ProductKind kind, bool strict) {
    assert(a.dim() == b.dim());
    if (strict) check_strict(a, b, kind);

    switch (kind) {
    case ProductKind::Sym1x1: {
        assert(a.valence() == 1 && b.valence() == 1);
        return slot_product(a, b, {1}, {2}) + slot_product(a, b, {2}, {1});
    }
    case ProductKind::OneFormSym2: {
        // λ⊘α = ½ S_{(2,1),{2,3;1}} [λ(v₂) α(v₁,v₃)]; α⊘λ = −λ⊘α
        if (a.valence() == 2) {
            assert(b.valence() == 1);
            return -owedge(b, a, kind);
        }
        assert(a.valence() == 1 && b.valence() == 2);
        DenseTensor t = slot_product(a, b, {2}, {1, 3});
        DenseTensor s = young_symmetrize(tableau_21(), t);
        s *= 0.5;
        return s;
    }
    case ProductKind::TwoFormTwoForm: {
        assert(a.valence() == 2 && b.valence() == 2);
        DenseTensor t = slot_product(a, b, {1, 3}, {2, 4});
        DenseTensor s = young_symmetrize(tableau_22(), t);
        s *= 0.25;
        return s;
    }
    case ProductKind::OneFormS21: {
        // λ⊘β = −⅓ S_{(2,2)} [λ(v₁) β(v₂,v₃,v₄)]; β⊘λ = −λ⊘β
        if (a.valence() == 3) {
            assert(b.valence() == 1);
            return -owedge(b, a, kind);
        }
        assert(a.valence() == 1 && b.valence() == 3);
        DenseTensor t = slot_product(a, b, {1}, {2, 3, 4});
        DenseTensor s = young_symmetrize(tableau_22(), t);
        s *= -1.0 / 3.0;
        return s;
    }
    case ProductKind::KulkarniNomizu: {
        assert(a.valence() == 2 && b.valence() == 2);
        DenseTensor t = slot_product(a, b, {1, 2}, {3, 4});
        DenseTensor s = young_symmetrize(tableau_22(), t);
        s *= 0.25;
        return s;
    }
    }
    throw std::logic_error("owedge: unknown kind");
}

DenseTensor insert(const Eigen::VectorXd& x, const DenseTensor& t) {
    return insert_slot(x, t, 1);
}

DenseTensor insert_slot(const Eigen::VectorXd& x, const DenseTensor& t,
                        int slot) {
    assert(t.valence() >= 1);
    assert(slot >= 1 && slot <= t.valence());
    assert(x.size() == t.dim());
    const int d = t.valence();
    const int n = t.dim();
    DenseTensor out(n, d - 1);
    std::vector<int> J(d - 1), I(d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, J.data());
        for (int k = 0, p = 0; k < d; ++k)
            if (k != slot - 1) I[k] = J[p++];
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            I[slot - 1] = i;
            acc += x(i) * t[t.encode(I.data())];
        }
        out[f] = acc;
    }
    return out;
}

DenseTensor derive(const Eigen::MatrixXd& A, const DenseTensor& t) {
    assert(A.rows() == t.dim() && A.cols() == t.dim());
    const int d = t.valence();
    const int n = t.dim();
    DenseTensor out(n, d);
    std::vector<int> I(d), J(d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, I.data());
        double acc = 0.0;
        for (int k = 0; k < d; ++k) {
            J = I;
            for (int m = 0; m < n; ++m) {
                J[k] = m;
                acc -= A(m, I[k]) * t[t.encode(J.data())];
            }
        }
        out[f] = acc;
    }
    return out;
}

DenseTensor metric_trace(const DenseTensor& t, const InnerProduct& ip,
                         int i, int j) {
    assert(t.valence() >= 2 && i != j);
    assert(i >= 1 && i <= t.valence() && j >= 1 && j <= t.valence());
    const int d = t.valence();
    const int n = t.dim();
    DenseTensor out(n, d - 2);
    std::vector<int> J(d - 2), I(d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, J.data());
        for (int k = 0, p = 0; k < d; ++k)
            if (k != i - 1 && k != j - 1) I[k] = J[p++];
        double acc = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                I[i - 1] = a;
                I[j - 1] = b;
                acc += ip.ginv(a, b) * t[t.encode(I.data())];
            }
        out[f] = acc;
    }
    return out;
}

Eigen::VectorXd sharp(const DenseTensor& lam, const InnerProduct& ip) {
    assert(lam.valence() == 1);
    Eigen::VectorXd v(lam.dim());
    for (int i = 0; i < lam.dim(); ++i) v(i) = lam[i];
    return ip.ginv * v;
}

DenseTensor flat(const Eigen::VectorXd& x, const InnerProduct& ip) {
    Eigen::VectorXd v = ip.g * x;
    DenseTensor out(static_cast<int>(x.size()), 1);
    for (int i = 0; i < x.size(); ++i) out[i] = v(i);
    return out;
}

DenseTensor one_form(const Eigen::VectorXd& v) {
    DenseTensor out(static_cast<int>(v.size()), 1);
    for (int i = 0; i < v.size(); ++i) out[i] = v(i);
    return out;
}

Eigen::VectorXd to_vector(const DenseTensor& lam) {
    assert(lam.valence() == 1);
    Eigen::VectorXd v(lam.dim());
    for (int i = 0; i < lam.dim(); ++i) v(i) = lam[i];
    return v;
}

DenseTensor symmetrize_all(const DenseTensor& t) {
    const int d = t.valence();
    DenseTensor acc(t.dim(), d);
    Permutation s(d);
    std::vector<int> idx(d);
    for (int k = 0; k < d; ++k) idx[k] = k;
    long count = 0;
    do {
        s.img = idx;
        acc += permute(t, s);
        ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    acc *= 1.0 / static_cast<double>(count);
    return acc;
}

Eigen::MatrixXd wedge_endo(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const InnerProduct& ip) {
    return y * (x.transpose() * ip.g) - x * (y.transpose() * ip.g);
}

} // namespace skt
