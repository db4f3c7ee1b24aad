// Matrix Lie algebras acting on the symmetric curvature-tensor space:
// generator bases for the orthogonal, unitary, special unitary, symplectic
// and exceptional stabilizer algebras, and the multiplicity of the trivial
// component of their action on the image of the pair projector.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <skt/tensor.hpp>

#include <Eigen/Dense>

#include <vector>

namespace skt {

enum class AlgebraKind { SO, U, SU, Sp, G2, Spin7 };

struct LieAlgebraSpec {
    AlgebraKind kind = AlgebraKind::SO;
    int N = 0; // ambient dimension the generators act on
    std::vector<Eigen::MatrixXd> generators;
    // the fixed complex / quaternionic structures for U, SU, Sp
    std::vector<Eigen::MatrixXd> structures;
    // sign chosen in the 4-form defining Spin7 (0 otherwise)
    int cayley_sign = 0;

    int dim() const { return static_cast<int>(generators.size()); }
};

int expected_algebra_dim(AlgebraKind kind, int N);

// generator basis with the dimension validated against the closed form;
// the unitary and symplectic families arise as commutants of fixed
// structures, the exceptional ones as stabilizers of a 3-form (dim 7) and
// a 4-form (dim 8)
LieAlgebraSpec build_algebra(AlgebraKind kind, int N);

// the defining 3-form in dimension 7 used for the G2 stabilizer
DenseTensor associative_form();
// its euclidean dual 4-form
DenseTensor coassociative_form();
// the 4-form whose stabilizer is Spin7, with the chosen sign
DenseTensor cayley_form(int sign);

// max distance of a generator commutator from the generator span
double generator_closure_residual(const LieAlgebraSpec& alg);

// orthonormal basis (columns) of the image of the pair projector on
// 4-tensors over R^N; dimension N²(N²−1)/12
const Eigen::MatrixXd& curvature_space_basis(int N);

// dimension of the joint kernel of all generator actions on the curvature
// space
int curvature_trivial_multiplicity(const LieAlgebraSpec& alg,
                                   double svd_tol = 1e-8);

// the closed-form invariants: g⊘g always, plus ω_i⊘ω_j for the structure
// 2-forms when present
std::vector<DenseTensor> explicit_invariant_basis(const LieAlgebraSpec& alg);

struct InvariantSpanCheck {
    int multiplicity = 0;        // kernel dimension
    int span_rank = 0;           // rank of the explicit tensors
    double max_action_residual = 0; // largest ‖X·T‖ over generators, tensors
    double span_defect = 0;      // distance of the tensors from the kernel
};

// how well the explicit tensors describe the kernel; reported, not asserted
InvariantSpanCheck invariant_span_check(const LieAlgebraSpec& alg,
                                        double svd_tol = 1e-8);

} // namespace skt
