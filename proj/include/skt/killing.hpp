// The Killing operator and its prolongation: variables (κ, κ¹, κ²), the
// curvature terms of the Killing connection, pair/nullity condition
// residuals, trace and Weitzenboeck identities, reconstruction of κ from a
// curvature tensor, and loop-holonomy dimension counting.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "skt/geometry.hpp"
#include "skt/multilinear.hpp"
#include "skt/tensor.hpp"

namespace skt {

// (κ, κ¹, κ²) at a point, in chart components. κ¹ lives in the image of
// the (2,1) projector with filling {2,3},{1}; κ² in the image of the
// normal (2,2) projector.
struct ProlongationTriple {
    DenseTensor kappa;  // valence 2, symmetric
    DenseTensor kappa1; // valence 3
    DenseTensor kappa2; // valence 4

    int dim() const { return kappa.dim(); }
};

// fiber dimension n(n+1)/2 + n(n²−1)/3 + n²(n²−1)/12 of the triple bundle
int prolongation_fiber_dim(int n);

// max projector-membership residual over the three components
double triple_membership(const ProlongationTriple& t);

// pointwise projections of the derivative tensors (derivative slots first)
DenseTensor kappa1_of(const DenseTensor& grad_kappa);
DenseTensor kappa2_of(const DenseTensor& grad2_kappa);

// C = κ² + κ ⊘ g
DenseTensor C_of(const DenseTensor& kappa, const DenseTensor& kappa2,
                 const InnerProduct& ip);

ProlongationTriple prolong_variables(const TensorField& kappa,
                                     const GeometryAt& geo,
                                     DerivMode mode = DerivMode::Analytic,
                                     double fd_step = 1e-3);

// C^κ as a field; its jets need two covariant derivatives of κ, so build
// the geometry two orders up (plus one more for embedded κ).
TensorField C_kappa_field(const TensorField& kappa);

// max over random unit x of |∇_x κ(x,x)|, plus the max-norm of the full
// symmetrization of ∇κ
double killing_residual(const TensorField& kappa, const GeometryAt& geo,
                        std::mt19937_64& rng, int samples = 16,
                        DerivMode mode = DerivMode::Analytic,
                        double fd_step = 1e-3);

// endomorphism z ↦ R(x,y)z of the lowered curvature-like tensor R
Eigen::MatrixXd curvature_endo(const DenseTensor& R, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y,
                               const InnerProduct& ip);

// F¹(R,κ)(x₁,x₂,x₃,x₄) = ½ (R_{x₁,x₂}·κ)(x₃,x₄)
//                        + ¼ 𝔖₃₄𝔖₁₂ (R_{x₃,x₁}·κ)(x₂,x₄).
// The relative sign of the two groups is fixed by requiring that
// ∇κ¹ − x⌟κ² = F¹ closes on constant-curvature models.
DenseTensor F1(const DenseTensor& R, const DenseTensor& kappa,
               const InnerProduct& ip);

// F²(R,∇R;κ,∇κ): expanded pointwise form, valence 5. Derivative slots of
// gradR and grad_kappa come first.
DenseTensor F2(const DenseTensor& R, const DenseTensor& gradR,
               const DenseTensor& kappa, const DenseTensor& grad_kappa,
               const InnerProduct& ip);

// F² recomputed by differentiating the curvature-action field through the
// jet machinery; independent cross-check of F2. Needs geometry order ≥ 3.
DenseTensor F2_compact(const TensorField& kappa, const GeometryAt& geo,
                       DerivMode mode = DerivMode::Analytic,
                       double fd_step = 1e-3);

struct ProlongationDefect {
    double first = 0;  // ‖∇κ − κ¹‖
    double second = 0; // ‖∇κ¹ − x⌟κ² − F¹‖
    double third = 0;  // ‖∇κ² − F²‖
};
ProlongationDefect prolongation_defect(const TensorField& kappa,
                                       const GeometryAt& geo,
                                       DerivMode mode = DerivMode::Analytic,
                                       double fd_step = 1e-3);

struct PairDefect {
    double value_eq = 0; // ‖C(x,·,·,·) − ∇_x∇κ − 2 κ⊘x♯‖
    double grad_eq = 0;  // ‖∇_x C + ∇κ⊘x♯‖
};
PairDefect pair_defect(const TensorField& kappa, const TensorField& C,
                       const GeometryAt& geo,
                       DerivMode mode = DerivMode::Analytic,
                       double fd_step = 1e-3);

struct NullityDefect {
    double kappa_eq = 0; // ‖R_{x,y}·κ + x∧y·κ‖
    double grad_eq = 0;  // ‖R_{x,y}·∇κ + x∧y·∇κ‖
};
NullityDefect nullity_defect(const TensorField& kappa, const GeometryAt& geo,
                             std::mt19937_64& rng, int samples = 8,
                             DerivMode mode = DerivMode::Analytic,
                             double fd_step = 1e-3);

// algebraic Ricci trace of a pair-symmetric curvature tensor over slots
// 3,4, and its scalar trace
DenseTensor ricci_of(const DenseTensor& C, const InnerProduct& ip);

// κ^C = −½ (Ric^C + ¼ ∇²s^C) + (s^C − ¼ ∇*∇s^C) / (2(n−1)) · g.
// Needs two covariant derivatives of C; n ≥ 2.
DenseTensor kappa_from_C(const TensorField& C, const GeometryAt& geo,
                         DerivMode mode = DerivMode::Analytic,
                         double fd_step = 1e-3);

// q(R)κ(x,y) = −Σ_i (R_{x,e_i}·κ)(y,e_i) + (R_{y,e_i}·κ)(x,e_i) over a
// g-orthonormal frame (columns of `frame`)
DenseTensor q_R(const DenseTensor& R, const DenseTensor& kappa,
                const InnerProduct& ip, const Eigen::MatrixXd& frame);

// ‖∇*∇κ − q(R)κ + ∇² tr κ‖ for a Killing field κ
double weitzenboeck_defect(const TensorField& kappa, const GeometryAt& geo,
                           DerivMode mode = DerivMode::Analytic,
                           double fd_step = 1e-3);

struct TraceIdentityResiduals {
    double div_vs_dtr = 0;    // d tr κ − 2 δκ
    double ricci_value = 0;   // Ric^C − ∇² tr κ − 2(⟨,⟩ tr κ − κ)
    double ricci_laplace = 0; // Ric^C + ∇*∇κ − 2(n−1)κ
    double scalar_value = 0;  // s^C + ∇*∇ tr κ − 2(n−1) tr κ
    double ds_vs_dtr = 0;     // d s^C + 4 d tr κ
};
// identities relating κ, its trace and divergence, and traces of C^κ
TraceIdentityResiduals trace_identities(const TensorField& kappa,
                                        const GeometryAt& geo,
                                        DerivMode mode = DerivMode::Analytic,
                                        double fd_step = 1e-3);

// parallel transport in the Killing connection -----------------------------

struct TransportOptions {
    int min_steps = 8;    // initial RK4 steps per polyline segment
    int max_steps = 512;  // doubling cap
    double tol = 1e-10;   // step-doubling convergence target (max-norm)
};

// transport the triple along a piecewise-linear chart path; linear in the
// initial value
ProlongationTriple transport(const ProlongationTriple& start,
                             const std::vector<Eigen::VectorXd>& path,
                             const ManifoldModel& m,
                             const TransportOptions& opt = {});

// orthonormal basis of the triple fiber, as columns of full components
// (κ | κ¹ | κ²), length n² + n³ + n⁴
Eigen::MatrixXd triple_basis(int n);

// holonomy of one loop in the basis coordinates of triple_basis
Eigen::MatrixXd loop_holonomy(const ManifoldModel& m, const Loop& loop,
                              const TransportOptions& opt = {});

// dimension of the joint fixed space of n_loops loop holonomies; singular
// values of the stacked (H_i − I) thresholded at sv_tol
int killing_dimension(const ManifoldModel& m, int n_loops, std::uint64_t seed,
                      double sv_tol = 1e-5, const TransportOptions& opt = {});

} // namespace skt
