// Hopf structures on odd-dimensional unit spheres: ambient complex
// structures, their characteristic 1-forms, the symmetric products of those
// forms (which are Killing), and the identification of the products with
// constant 2-form wedges of the surrounding flat space.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <skt/cone.hpp>
#include <skt/killing.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace skt {

// One or three orthogonal anticommuting complex structures on the ambient
// space of a unit sphere; the sphere dimension is odd (resp. 3 mod 4).
struct SasakiStructure {
    ManifoldModel model = ManifoldModel::sphere(3);
    std::vector<Eigen::MatrixXd> I;

    int count() const { return static_cast<int>(I.size()); }

    // left multiplication by i on C^{(n+1)/2}
    static SasakiStructure hopf(int n);
    // left multiplication by i, j, k on H^{(n+1)/4}
    static SasakiStructure quaternionic(int n);
};

// max violation of I_k² = −id, skewness, and (for three structures) the
// anticommutation and product relations
double structure_residual(const SasakiStructure& S);

// s ∈ {+1, −1} with I₁I₂ = s·I₃; throws when neither sign fits
int quaternion_sign(const SasakiStructure& S, double tol = 1e-12);

// the constant ambient 2-form ω_k(u, v) = ⟨I_k u, v⟩
DenseTensor kaehler_form(const SasakiStructure& S, int k);

// η_k(x) = ⟨I_k p, x⟩ on the sphere: the radial insertion of ω_k, a
// unit-length Killing 1-form
TensorField characteristic_form(const SasakiStructure& S, int k);

// the sphere restriction of ω_k; equals ½ dη_k
TensorField kaehler_pullback(const SasakiStructure& S, int k);

// κ = η_i • η_j
TensorField sasaki_killing_tensor(const SasakiStructure& S, int i, int j);

// ¼ dη_i ⊘ dη_j, the curvature-type partner of κ in the pair equations
TensorField sasaki_pair_partner(const SasakiStructure& S, int i, int j);

struct CorrespondenceDefect {
    // split pullback of ω_i⊘ω_j against (κ, κ¹, ¼ dη_i⊘dη_j) at r = 1
    double splitting = 0;
    double pair_value = 0; // pair equation, value part
    double pair_grad = 0;  // pair equation, gradient part
    double horizontal = 0; // parallelism defect of the associated triple
    double max() const;
};

// the full numerical chain behind "η_i•η_j corresponds to the parallel
// tensor ω_i⊘ω_j": splitting, pair equations, horizontal parallelism, all
// at one chart point
CorrespondenceDefect cone_correspondence_defect(const SasakiStructure& S,
                                                int i, int j,
                                                const Eigen::VectorXd& u0,
                                                std::mt19937_64& rng,
                                                int samples = 2);

// rank of span{g} ∪ {η_i•η_j : i ≤ j} sampled across chart points
int sasaki_span_dimension(const SasakiStructure& S, std::uint64_t seed = 42,
                          int points = 6, double rel_tol = 1e-9);

} // namespace skt
