// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <skt/sasaki.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace skt;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

} // namespace

TEST_CASE("structure factories satisfy the quaternion algebra") {
    for (int n : {1, 3, 7, 9}) CHECK(structure_residual(SasakiStructure::hopf(n)) == 0.0);
    for (int n : {3, 7, 11}) {
        SasakiStructure S = SasakiStructure::quaternionic(n);
        CHECK(structure_residual(S) == 0.0);
        CHECK(quaternion_sign(S) == 1);
        // the relations are cyclic
        CHECK((S.I[1] * S.I[2] - S.I[0]).cwiseAbs().maxCoeff() == 0.0);
        CHECK((S.I[2] * S.I[0] - S.I[1]).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(SasakiStructure::hopf(2), const std::invalid_argument&);
    CHECK_THROWS_AS(SasakiStructure::quaternionic(5),
                    const std::invalid_argument&);
    CHECK_THROWS_AS(characteristic_form(SasakiStructure::hopf(3), 1),
                    const std::out_of_range&);
    CHECK_THROWS_AS(quaternion_sign(SasakiStructure::hopf(3)),
                    const std::logic_error&);
}

TEST_CASE("characteristic forms are unit-length Killing 1-forms") {
    std::mt19937_64 rng(42);
    for (const SasakiStructure& S :
         {SasakiStructure::hopf(3), SasakiStructure::quaternionic(7)}) {
        Eigen::VectorXd u = 0.4 * Eigen::VectorXd::Random(S.model.n);
        GeometryAt geo = geometry_at(S.model, u, 2);
        InnerProduct ip = geo.metric();
        for (int k = 0; k < S.count(); ++k) {
            TensorField eta = characteristic_form(S, k);
            DenseTensor ev = field_jets(eta, geo).values();
            // unit length, evaluated through its own metric dual
            Eigen::VectorXd xi = sharp(ev, ip);
            CHECK(insert(xi, ev)[0] == doctest::Approx(1.0).epsilon(1e-12));

            // ∇η is antisymmetric and dη restricts the ambient 2-form
            DenseTensor D = covd(geo, field_jets(eta, geo)).values();
            DenseTensor P = field_jets(kaehler_pullback(S, k), geo).values();
            const int n = S.model.n;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    CHECK(std::abs(D.at({a, b}) + D.at({b, a})) < 1e-12);
                    CHECK(std::abs(D.at({a, b}) - D.at({b, a}) -
                                   2.0 * P.at({a, b})) < 1e-12);
                }

            // parallel along its own dual direction
            CHECK(insert(xi, D).max_norm() < 1e-11);
        }
    }
}

TEST_CASE("products of characteristic forms are Killing with constant trace") {
    std::mt19937_64 rng(42);

    SasakiStructure Sh = SasakiStructure::hopf(3);
    Eigen::VectorXd u3 = vec({0.21, -0.33, 0.12});
    GeometryAt geo3 = geometry_at(Sh.model, u3, 2);
    TensorField kap = sasaki_killing_tensor(Sh, 0, 0);
    CHECK(killing_residual(kap, geo3, rng) < 1e-7);
    {
        // κ = 2 η⊗η for a single structure
        DenseTensor ev = field_jets(characteristic_form(Sh, 0), geo3).values();
        DenseTensor kv = field_jets(kap, geo3).values();
        CHECK((kv - 2.0 * tensor_product(ev, ev)).max_norm() < 1e-12);
    }

    SasakiStructure Sq = SasakiStructure::quaternionic(7);
    Eigen::VectorXd u7 = 0.35 * Eigen::VectorXd::Random(7);
    GeometryAt geo7 = geometry_at(Sq.model, u7, 2);
    for (auto ij : {std::pair<int, int>{0, 0}, {0, 1}, {1, 2}}) {
        TensorField k7 = sasaki_killing_tensor(Sq, ij.first, ij.second);
        CHECK(killing_residual(k7, geo7, rng, 6) < 1e-7);
        // tr κ = 2 ⟨ξ_i, ξ_j⟩ = 2 δ_ij at every point
        for (const Eigen::VectorXd& u :
             {u7, Eigen::VectorXd(0.3 * Eigen::VectorXd::Random(7))}) {
            GeometryAt g = geometry_at(Sq.model, u, 1);
            double tr =
                metric_trace(field_jets(k7, g).values(), g.metric(), 1, 2)[0];
            const double expect = ij.first == ij.second ? 2.0 : 0.0;
            CHECK(std::abs(tr - expect) < 1e-12);
        }
    }
}

TEST_CASE("products correspond to constant 2-form wedges on the flat space") {
    std::mt19937_64 rng(42);

    SasakiStructure Sh = SasakiStructure::hopf(3);
    Eigen::VectorXd u3 = vec({0.18, -0.27, 0.09});
    CorrespondenceDefect d3 = cone_correspondence_defect(Sh, 0, 0, u3, rng, 3);
    CHECK(d3.splitting < 1e-6);
    CHECK(d3.pair_value < 1e-6);
    CHECK(d3.pair_grad < 1e-6);
    CHECK(d3.horizontal < 1e-6);

    SasakiStructure Sq = SasakiStructure::quaternionic(7);
    Eigen::VectorXd u7 = 0.3 * Eigen::VectorXd::Random(7);
    CorrespondenceDefect d7 = cone_correspondence_defect(Sq, 0, 2, u7, rng, 2);
    CHECK(d7.max() < 1e-6);

    // the associated curvature-type tensor κ² + κ⊘g agrees with the wedge
    // of the restricted 2-forms
    {
        GeometryAt geo = geometry_at(Sh.model, u3, 3);
        TensorField kap = sasaki_killing_tensor(Sh, 0, 0);
        DenseTensor gamma = associated_triple_jets(kap, geo).gamma.values();
        DenseTensor Cv =
            field_jets(sasaki_pair_partner(Sh, 0, 0), geo).values();
        CHECK((gamma - Cv).max_norm() < 1e-6);
    }

    // bilinearity: scaling one structure scales κ and its partner linearly
    {
        SasakiStructure Ss = Sq;
        Ss.I[0] *= 2.0;
        GeometryAt geo = geometry_at(Sq.model, u7, 1);
        DenseTensor k1 =
            field_jets(sasaki_killing_tensor(Sq, 0, 1), geo).values();
        DenseTensor k2 =
            field_jets(sasaki_killing_tensor(Ss, 0, 1), geo).values();
        CHECK((k2 - 2.0 * k1).max_norm() == 0.0);
        DenseTensor c1 =
            field_jets(sasaki_pair_partner(Sq, 0, 1), geo).values();
        DenseTensor c2 =
            field_jets(sasaki_pair_partner(Ss, 0, 1), geo).values();
        CHECK((c2 - 2.0 * c1).max_norm() == 0.0);
    }
}

TEST_CASE("span of the metric and the products has the expected rank") {
    CHECK(sasaki_span_dimension(SasakiStructure::hopf(3)) == 2);
    CHECK(sasaki_span_dimension(SasakiStructure::hopf(7)) == 2);
    CHECK(sasaki_span_dimension(SasakiStructure::quaternionic(7)) == 7);

    // on the 3-sphere the three duals form an orthonormal frame, so
    // Σ η_i•η_i = 2g collapses one dimension
    CHECK(sasaki_span_dimension(SasakiStructure::quaternionic(3)) == 6);

    // duplicate structures collapse the span further
    SasakiStructure dup = SasakiStructure::quaternionic(7);
    dup.I[1] = dup.I[0];
    CHECK(sasaki_span_dimension(dup) == 4);
}
