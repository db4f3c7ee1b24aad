// The third-order equation on scalar functions whose canonical 2-tensor
// extends parallel to the metric cone: pointwise residuals, the associated
// Killing tensor and its curvature-type partner, derived trace and
// Laplacian identities, the cone closure, and solution-space ranks inside
// finite candidate families.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <skt/cone.hpp>
#include <skt/killing.hpp>

#include <cstdint>
#include <vector>

namespace skt {

// max-norm of ∇³f + 2 df⊗g + 𝔖₂₃ (g₁₂⊗df) at the point. Scalar fields are
// tensor fields of valence 0; the geometry needs jet order 3 above what the
// field consumes.
double e2_residual(const TensorField& f, const GeometryAt& geo,
                   DerivMode mode = DerivMode::Analytic,
                   double fd_step = 5e-3);

// κ^f = f g + ¼ ∇²f at the point
DenseTensor kappa_f(const TensorField& f, const GeometryAt& geo,
                    DerivMode mode = DerivMode::Analytic,
                    double fd_step = 5e-3);

// κ^f as a field (two covariant derivatives of f per evaluation)
TensorField kappa_f_field(const TensorField& f);

// the curvature-type partner f g⊘g + ½ ∇²f⊘g of κ^f
TensorField gallot_pair_partner(const TensorField& f);

struct GallotIdentities {
    double laplacian = 0;         // ‖∇*∇ df − (n+3) df‖
    double trace_claim = 0;       // ‖d tr κ^f − (3n+1)/2 df‖
    double trace_fit = 0;         // ‖d tr κ^f − c df‖ for the fitted c
    double trace_coefficient = 0; // the fitted c
};

GallotIdentities gallot_identities(const TensorField& f,
                                   const GeometryAt& geo,
                                   DerivMode mode = DerivMode::Analytic,
                                   double fd_step = 5e-3);

struct ConeClosure {
    double recovery = 0; // |q(∂_r,∂_r) − f| for q = ½ ∇̂²(r²f)
    double parallel = 0; // ‖∇̂ q‖ at the slice radius
};

// q = ½ ∇̂²(r²f) through the closed-form cone rules; the parallelism of q
// is equivalent to the third-order equation on f
ConeClosure gallot_cone_closure(const TensorField& f, const GeometryAt& geo,
                                double r = 1.0);

// kernel dimension of the (linear) third-order residual map on the span of
// the candidate fields, sampled across chart points
int e2_solution_dimension(const std::vector<TensorField>& family,
                          const ManifoldModel& m, std::uint64_t seed = 42,
                          int points = 4, double rel_tol = 1e-8);

// {1, p₁, …, p_{n+1}} restricted to the sphere
std::vector<TensorField> affine_linear_family(int n);
// the p_a p_b basis of ambient quadratic restrictions, (n+1)(n+2)/2 fields
std::vector<TensorField> quadratic_family(int n);

} // namespace skt
