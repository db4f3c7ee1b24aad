// Analytic model manifolds and pointwise Riemannian data via jets.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <vector>

#include "skt/jet.hpp"
#include "skt/multilinear.hpp"
#include "skt/tensor.hpp"

namespace skt {

enum class ModelKind { RoundSphere, FlatSpace, ScaledSphere };

// Round spheres carry the stereographic chart of radius rho; flat space the
// Cartesian chart. ScaledSphere(n, c) is the round sphere of sectional
// curvature c, i.e. radius 1/sqrt(c).
struct ManifoldModel {
    ModelKind kind = ModelKind::FlatSpace;
    int n = 0;
    double rho = 1.0; // sphere radius; unused for flat space

    static ManifoldModel sphere(int n, double radius = 1.0) {
        return {ModelKind::RoundSphere, n, radius};
    }
    static ManifoldModel flat(int n) { return {ModelKind::FlatSpace, n, 1.0}; }
    static ManifoldModel scaled_sphere(int n, double curvature) {
        return {ModelKind::ScaledSphere, n, 1.0 / std::sqrt(curvature)};
    }

    bool is_sphere() const { return kind != ModelKind::FlatSpace; }
    int ambient_dim() const { return n + 1; }
    double sectional() const { return is_sphere() ? 1.0 / (rho * rho) : 0.0; }
};

// Covariant tensor with jet entries, same layout as DenseTensor.
struct JetTensor {
    int n = 0, d = 0;
    std::vector<Jet> c;

    JetTensor() = default;
    JetTensor(const JetSpace& S, int dim, int valence);

    std::size_t size() const { return c.size(); }
    std::size_t encode(const int* idx) const {
        std::size_t f = 0;
        for (int k = 0; k < d; ++k) f = f * n + idx[k];
        return f;
    }
    void decode(std::size_t flat, int* idx) const {
        for (int k = d - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(flat % n);
            flat /= n;
        }
    }
    Jet& at(std::initializer_list<int> idx) { return c[encode(idx.begin())]; }
    const Jet& at(std::initializer_list<int> idx) const {
        return c[encode(idx.begin())];
    }

    DenseTensor values() const; // constant terms
};

// Everything jet-expanded at one chart point: metric, inverse, Christoffel
// symbols, plus the orthonormal frame at the point.
struct GeometryAt {
    int n = 0;
    const JetSpace* S = nullptr;
    Eigen::VectorXd u0;
    ManifoldModel model{};   // meaningful only when has_model
    bool has_model = false;  // custom charts carry no model

    JetTensor g;     // g_{ab}
    JetTensor ginv;  // g^{ab}
    JetTensor gamma; // Γ^k_{ij}, slot order (k,i,j)

    Eigen::MatrixXd g0;    // metric at u0
    Eigen::MatrixXd frame; // columns = orthonormal tangent vectors

    InnerProduct metric() const { return InnerProduct(g0); }
};

// metric component jets of a chart at u0: n*n entries, row major
using ChartMetricFn = std::function<std::vector<Jet>(
    const JetSpace& S, const Eigen::VectorXd& u0)>;

GeometryAt geometry_at(const ManifoldModel& m, const Eigen::VectorXd& u0,
                       int order);
GeometryAt geometry_at_custom(int n, const ChartMetricFn& metric,
                              const Eigen::VectorXd& u0, int order);

// ∇T with the new (derivative) slot first.
JetTensor covd(const GeometryAt& geo, const JetTensor& T);

// lowered curvature R(x,y,z,w) = ⟨R(x,y)z, w⟩ with
// R(x,y) = ∇_x∇_y − ∇_y∇_x − ∇_{[x,y]}
JetTensor curvature_jets(const GeometryAt& geo);

// constant-coefficient slot operations lifted to jet tensors
JetTensor jt_permute(const JetTensor& t, const Permutation& s);
JetTensor jt_scale(JetTensor t, double s);
JetTensor jt_add(const JetTensor& a, const JetTensor& b);
JetTensor jt_sub(const JetTensor& a, const JetTensor& b);
JetTensor jt_slot_product(const JetTensor& a, const JetTensor& b,
                          const std::vector<int>& slots_a,
                          const std::vector<int>& slots_b);
JetTensor jt_young_symmetrize(const Tableau& T, const JetTensor& t,
                              bool adjoint = false);
JetTensor jt_owedge(const JetTensor& a, const JetTensor& b, ProductKind kind);
// g-trace over two slots (1-based) with the jet metric inverse of geo
JetTensor jt_metric_trace(const GeometryAt& geo, const JetTensor& t, int i,
                          int j);

// contract every slot with the columns of F (frame change of a covariant
// tensor given in coordinate components)
DenseTensor to_frame(const DenseTensor& t, const Eigen::MatrixXd& F);

// stereographic embedding of the radius-rho sphere: component jets of
// E(u) = rho (2u, |u|² − 1)/(1 + |u|²) in R^{n+1}
std::vector<Jet> embedding_jets(const ManifoldModel& m, const JetSpace& S,
                                const Eigen::VectorXd& u0);

// pointwise APIs
InnerProduct metric_at(const ManifoldModel& m, const Eigen::VectorXd& u0);
DenseTensor christoffel_at(const ManifoldModel& m, const Eigen::VectorXd& u0);
DenseTensor curvature_at(const ManifoldModel& m, const Eigen::VectorXd& u0);

// A tensor field in chart components. `jets` is the analytic path;
// `point_eval` (optional) backs the finite-difference path.
struct TensorField {
    int valence = 0;
    std::function<JetTensor(const GeometryAt&)> jets;
    std::function<DenseTensor(const Eigen::VectorXd&)> point_eval;
};

enum class DerivMode { Analytic, FiniteDifference };

// jets of the field at geo.u0, by the chosen mode
JetTensor field_jets(const TensorField& f, const GeometryAt& geo,
                     DerivMode mode = DerivMode::Analytic,
                     double fd_step = 1e-3);

// central differences with one Richardson level, assembled into a jet
Jet fd_jet(const std::function<double(const Eigen::VectorXd&)>& f,
           const JetSpace& S, const Eigen::VectorXd& u0, double base_step);

// ∇^order f in coordinate components, derivative slots first. The geometry
// must have been built with jet order ≥ order.
DenseTensor covariant_derivative(const TensorField& f, const GeometryAt& geo,
                                 int order,
                                 DerivMode mode = DerivMode::Analytic,
                                 double fd_step = 1e-3);

// basis (columns) of {x : R(x,y,z,·) = R₁(x,y,z,·) for all y,z}, computed
// in the orthonormal frame at the point
Eigen::MatrixXd one_nullity(const ManifoldModel& m, const Eigen::VectorXd& u0,
                            double svd_tol = 1e-8);

struct PointFrame {
    Eigen::VectorXd point;
    Eigen::MatrixXd frame;
};

// closed piecewise-linear curve through the listed chart points
struct Loop {
    std::vector<Eigen::VectorXd> corners;
};

PointFrame sample_point(const ManifoldModel& m, std::mt19937_64& rng,
                        double chart_radius = 0.8);
Loop sample_loop(const ManifoldModel& m, std::mt19937_64& rng,
                 double diameter = 0.3, double chart_radius = 0.6);

// fields ------------------------------------------------------------------

// the metric itself as a field
TensorField metric_field();

// Fields pulled back through the embedding differential consume one jet
// order; build the geometry one order above the number of covariant
// derivatives to be taken of them.

// κ(x,y) = ½ S(p, p, x, y) restricted to a sphere, S a constant ambient
// 4-tensor with symmetric-pair curvature symmetry
TensorField ambient_curvature_field(DenseTensor S_ambient);

// ambient 1-form field x ↦ ⟨A p, x⟩ for a constant ambient matrix A
TensorField ambient_linear_form_field(Eigen::MatrixXd A);

// scalar field from ambient polynomial c + ⟨a, p⟩ + Q(p,p)
TensorField ambient_scalar_field(double c, Eigen::VectorXd a,
                                 Eigen::MatrixXd Q);

// seeded smooth symmetric 2-tensor field that is not Killing (negative
// control): polynomial coefficients modulated by a Gaussian bump
TensorField bump_symmetric_field(int n, std::uint64_t seed);

// jet of a scalar chart function (Gaussian bump times polynomial), shared
// with the gallot negative control
Jet bump_scalar_jet(const GeometryAt& geo, std::uint64_t seed);

} // namespace skt
