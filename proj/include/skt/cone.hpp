// The metric cone r²g + dr² over a model manifold: splitting of
// curvature-type tensors into base components, closed-form covariant
// derivative rules for radially weighted pulled-back tensors, the cone
// curvature with its product-chart oracle, and the parallelism defects of
// the curvature triple associated with a symmetric 2-tensor.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "skt/geometry.hpp"
#include "skt/multilinear.hpp"
#include "skt/tensor.hpp"

namespace skt {

// Point of the cone: base chart coordinates plus a radius r > 0.
struct ConePoint {
    Eigen::VectorXd u;
    double r = 1.0;

    // stacked coordinates (u, r) of the product chart
    Eigen::VectorXd chart() const;
};

// Base components of a curvature-type tensor on the cone. alpha is
// symmetric, beta lies in the (2,1) projector image with filling
// {2,3},{1}, gamma in the normal (2,2) image.
struct ConeTriple {
    DenseTensor alpha; // valence 2
    DenseTensor beta;  // valence 3
    DenseTensor gamma; // valence 4

    int dim() const { return alpha.dim(); }
};

// max projector-membership residual over the three components
double triple_residual(const ConeTriple& t);

// dr as a 1-form on n+1 dims; the radial index is the last one throughout
DenseTensor dr_form(int n);

// extend a base tensor by zero to n+1 dims
DenseTensor lift(const DenseTensor& t);

// restriction to the base: keep horizontal index values only
DenseTensor restrict_horizontal(const DenseTensor& T);

// contraction of the first slot with the radial unit vector
DenseTensor radial_insert(const DenseTensor& T);

// the radially parallel extension of an r = 1 triple: (r²α, r³β, r⁴γ)
ConeTriple radial_scale(const ConeTriple& t, double r);

// α⊘(dr•dr) + β⊘dr + γ on n+1 dims. The triple is the r = 1 slice of its
// radially parallel extension, which is evaluated at radius r. strict
// verifies the component symmetry types first.
DenseTensor assemble(const ConeTriple& t, double r = 1.0,
                     bool strict = false);

// inverse of assemble at r = 1: α = ½ ∂_r⌟∂_r⌟S, β = ι*(∂_r⌟S), γ = ι*S.
// Throws std::invalid_argument when S is outside the curvature symmetry
// class by more than membership_tol.
ConeTriple decompose(const DenseTensor& S, double membership_tol = 1e-6);

// Homogeneous summand coeff · r^rpow · (dr in the listed slots) ⊗ (pulled
// back base tensor); the base jets live on the base geometry.
struct ConeTerm {
    double coeff = 1.0;
    int rpow = 0;
    std::vector<int> dr_slots; // ascending, 0-based slot positions
    JetTensor base;
};

// Sum of homogeneous terms. The closed-form derivative rules of the cone
// map this shape to itself, so repeated derivatives stay exact.
struct ConeField {
    int n = 0;       // base dimension
    int valence = 0; // total slots, dr slots included
    std::vector<ConeTerm> terms;
};

ConeField cone_pullback(const JetTensor& base, int rpow = 0);
ConeField cone_dr(const GeometryAt& geo);

// full covariant derivative on the cone, new slot first
ConeField cone_covd(const GeometryAt& geo, const ConeField& f);

// chart components on n+1 dims at radius r
DenseTensor cone_eval(const ConeField& f, double r);

// −(k/r)·t: radial derivative of a pulled-back k-tensor, base components
DenseTensor cone_nabla_radial(const DenseTensor& t, double r);

// ∇̂_x of a pulled-back tensor with the given base jets, on n+1 dims:
// ∇_x t minus (1/r) Σ_s dr⊗_s (x⌟_s t)
DenseTensor cone_nabla_horizontal(const GeometryAt& geo, const JetTensor& t,
                                  const Eigen::VectorXd& x, double r = 1.0);

// classical lowered curvature of the cone in base chart components,
// lifted to n+1 dims: R − R₁ of the base. It is purely horizontal and the
// ĝ-lowered chart value at radius r is r² times this. Throws
// std::domain_error for flat base models.
DenseTensor cone_curvature(const ManifoldModel& m, const Eigen::VectorXd& u0);

// metric jets of the product chart (u, r) ↦ diag(r² g(u), 1)
ChartMetricFn cone_chart_metric(const ManifoldModel& m);

// lowered chart curvature of the cone metric by central differences of
// plain metric values with one Richardson pass; independent of the jet
// machinery
DenseTensor cone_chart_curvature_fd(const ManifoldModel& m,
                                    const ConePoint& p, double step = 1e-2);

// jets of the triple components (κ, κ¹, κ² + κ⊘g) of a symmetric 2-tensor
// field; the geometry needs order 3 (4 for embedded fields) when the
// result feeds horizontal_defect
struct TripleJets {
    JetTensor alpha, beta, gamma;
};
TripleJets associated_triple_jets(const TensorField& kappa,
                                  const GeometryAt& geo,
                                  DerivMode mode = DerivMode::Analytic,
                                  double fd_step = 1e-3);

// (r²κ, r³κ¹, r⁴(κ² + κ⊘g)) at the point of geo
ConeTriple associated_triple(const TensorField& kappa, const GeometryAt& geo,
                             double r = 1.0,
                             DerivMode mode = DerivMode::Analytic,
                             double fd_step = 1e-3);

// components of ∇̂_x(assemble(triple)) at r = 1 for the radially parallel
// extension of a triple field:
// (∇_xα − x⌟β, ∇_xβ − x⌟γ + 2 α⊘x♯, ∇_xγ + β⊘x♯).
// Zero for every x exactly when the extension is parallel at the point.
ConeTriple horizontal_defect(const TripleJets& t, const GeometryAt& geo,
                             const Eigen::VectorXd& x);

// max-norm residual between the assembled associated tensor and the
// (2,2)-projected second cone derivative of r⁴κ at r = 1
double hessian_description_residual(const TensorField& kappa,
                                    const GeometryAt& geo,
                                    DerivMode mode = DerivMode::Analytic,
                                    double fd_step = 1e-3);

} // namespace skt
