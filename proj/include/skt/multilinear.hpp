// Products, insertions, traces, derivation actions on dense tensors.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>

#include "skt/tensor.hpp"
#include "skt/young.hpp"

namespace skt {

// Positive definite inner product on R^n, with its inverse cached.
struct InnerProduct {
    Eigen::MatrixXd g;
    Eigen::MatrixXd ginv;

    explicit InnerProduct(Eigen::MatrixXd m)
        : g(std::move(m)), ginv(g.inverse()) {}
    static InnerProduct euclidean(int n) {
        return InnerProduct(Eigen::MatrixXd::Identity(n, n));
    }
    int dim() const { return static_cast<int>(g.rows()); }
    double pair(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
        return x.dot(g * y);
    }
};

// The five product kinds: 1-form • 1-form, 1-form with a symmetric
// 2-tensor, two 2-forms, 1-form with a mixed-symmetry 3-tensor, and the
// symmetric-pair variant of the Kulkarni-Nomizu product.
enum class ProductKind {
    Sym1x1,
    OneFormSym2,
    TwoFormTwoForm,
    OneFormS21,
    KulkarniNomizu,
};

// out(v...) = a(v at slots_a) * b(v at slots_b); slots are 1-based positions
// in the output tensor and must partition 1..(a.valence+b.valence).
DenseTensor slot_product(const DenseTensor& a, const DenseTensor& b,
                         const std::vector<int>& slots_a,
                         const std::vector<int>& slots_b);

DenseTensor tensor_product(const DenseTensor& a, const DenseTensor& b);

// The symmetrized wedge for the supported kinds. The sign convention when
// the 1-form argument comes second (kinds OneFormSym2, OneFormS21) is
// a ⊘ λ = −λ ⊘ a. strict verifies argument symmetry types first.
DenseTensor owedge(const DenseTensor& a, const DenseTensor& b,
                   ProductKind kind, bool strict = false);

// γ(x, ·, ..., ·): contraction of the first slot with x.
DenseTensor insert(const Eigen::VectorXd& x, const DenseTensor& t);
// contraction of an arbitrary slot (1-based)
DenseTensor insert_slot(const Eigen::VectorXd& x, const DenseTensor& t,
                        int slot);

// A·γ(x_1,...,x_k) = −Σ_i γ(x_1,...,Ax_i,...,x_k)
DenseTensor derive(const Eigen::MatrixXd& A, const DenseTensor& t);

// g-trace over two slots (1-based), contracting with g^{-1}.
DenseTensor metric_trace(const DenseTensor& t, const InnerProduct& ip,
                         int i, int j);

// musical isomorphisms
Eigen::VectorXd sharp(const DenseTensor& lam, const InnerProduct& ip);
DenseTensor flat(const Eigen::VectorXd& x, const InnerProduct& ip);

DenseTensor one_form(const Eigen::VectorXd& v);
Eigen::VectorXd to_vector(const DenseTensor& lam);

// average over all slot permutations (the projector onto Sym^d)
DenseTensor symmetrize_all(const DenseTensor& t);

// x∧y as an endomorphism: u ↦ ⟨x,u⟩y − ⟨y,u⟩x
Eigen::MatrixXd wedge_endo(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const InnerProduct& ip);

// membership residual ‖P_T t − t‖_∞ for the projector of the given tableau
double projector_membership(const Tableau& T, const DenseTensor& t,
                            bool adjoint = false);

// tableau fillings used for the product/prolongation conventions
Tableau tableau_21();     // shape (2,1), filling {2,3},{1}
Tableau tableau_22();     // shape (2,2), normal filling
Tableau tableau_22_tail(); // shape (2,2) acting on slots {2,3},{4,5}

} // namespace skt
