// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <skt/tensor.hpp>
#include <skt/young.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace skt;

namespace {

// value of t at the argument list (v_{args[0]}, v_{args[1]}, ...) where the
// outer multi-index is I (args are 1-based slot labels)
double at_args(const DenseTensor& t, const std::vector<int>& I,
               const std::vector<int>& args) {
    std::vector<int> J(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) J[k] = I[args[k] - 1];
    return t.at(J);
}

} // namespace

TEST_CASE("permutation algebra") {
    Permutation s = Permutation::transposition(4, 0, 2);
    CHECK(s.parity() == -1);
    CHECK((s * s).is_identity());
    Permutation c(3); // 3-cycle 0->1->2->0
    c.img = {1, 2, 0};
    CHECK(c.parity() == 1);
    CHECK((c * c.inverse()).is_identity());

    // right action: (t * s)(v1, v2) = t(v2, v1) for the swap
    std::mt19937_64 rng(42);
    DenseTensor t = DenseTensor::random(3, 2, rng);
    DenseTensor p = permute(t, Permutation::transposition(2, 0, 1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(p.at({i, j}) == t.at({j, i}));

    // action property: (t * a) * b == t * (a ∘ b)
    Permutation a(4), b(4);
    a.img = {2, 0, 3, 1};
    b.img = {1, 3, 0, 2};
    DenseTensor u = DenseTensor::random(2, 4, rng);
    DenseTensor lhs = permute(permute(u, a), b);
    DenseTensor rhs = permute(u, a * b);
    CHECK((lhs - rhs).max_norm() < 1e-15);
}

TEST_CASE("hook products") {
    CHECK(hook_product(Shape{2}) == 2);
    CHECK(hook_product(Shape{2, 1}) == 3);
    CHECK(hook_product(Shape{2, 2}) == 12);
    CHECK(hook_product(Shape{3, 1}) == 8);
    CHECK(hook_product(Shape{1, 1, 1}) == 6);
}

TEST_CASE("four-term expansion of the (2,1) symmetrizer, filling {2,3},{1}") {
    // S_T b (v1,v2,v3) = b(123) - b(213) + b(132) - b(312)
    std::mt19937_64 rng(42);
    DenseTensor b = DenseTensor::random(3, 3, rng);
    Tableau T = Tableau::with_filling(Shape{2, 1}, {{2, 3}, {1}});
    DenseTensor s = young_symmetrize(T, b);
    std::vector<int> I(3);
    for (std::size_t f = 0; f < s.size(); ++f) {
        s.decode(f, I.data());
        const double want = at_args(b, I, {1, 2, 3}) - at_args(b, I, {2, 1, 3}) +
                            at_args(b, I, {1, 3, 2}) - at_args(b, I, {3, 1, 2});
        CHECK(std::abs(s[f] - want) < 1e-13);
    }
}

TEST_CASE("sixteen-term expansion of the (2,2) symmetrizer, normal filling") {
    std::mt19937_64 rng(43);
    DenseTensor b = DenseTensor::random(2, 4, rng);
    Tableau T = Tableau::normal(Shape{2, 2});
    DenseTensor s = young_symmetrize(T, b);
    // (sign, argument order) pairs of S_T b (v1,v2,v3,v4)
    struct Term { int sign; std::vector<int> args; };
    const std::vector<Term> terms = {
        {+1, {1, 2, 3, 4}}, {-1, {3, 2, 1, 4}}, {-1, {1, 4, 3, 2}}, {+1, {3, 4, 1, 2}},
        {+1, {2, 1, 3, 4}}, {-1, {3, 1, 2, 4}}, {-1, {2, 4, 3, 1}}, {+1, {3, 4, 2, 1}},
        {+1, {1, 2, 4, 3}}, {-1, {4, 2, 1, 3}}, {-1, {1, 3, 4, 2}}, {+1, {4, 3, 1, 2}},
        {+1, {2, 1, 4, 3}}, {-1, {4, 1, 2, 3}}, {-1, {2, 3, 4, 1}}, {+1, {4, 3, 2, 1}},
    };
    std::vector<int> I(4);
    for (std::size_t f = 0; f < s.size(); ++f) {
        s.decode(f, I.data());
        double want = 0.0;
        for (const Term& t : terms) want += t.sign * at_args(b, I, t.args);
        CHECK(std::abs(s[f] - want) < 1e-13);
    }
}

TEST_CASE("symmetrizers act on slot subsets") {
    std::mt19937_64 rng(44);
    DenseTensor t = DenseTensor::random(3, 3, rng);
    Tableau T = Tableau::with_filling(Shape{2}, {{2, 3}});
    DenseTensor s = young_symmetrize(T, t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(s.at({i, j, k}) ==
                      doctest::Approx(t.at({i, j, k}) + t.at({i, k, j})));
}

TEST_CASE("projectors are idempotent and scale by the hook product") {
    std::mt19937_64 rng(45);
    for (const Shape& sh : {Shape{2, 1}, Shape{2, 2}, Shape{3, 1}}) {
        Tableau T = Tableau::normal(sh);
        DenseTensor t = DenseTensor::random(3, sh.boxes(), rng);
        DenseTensor p = project(T, t);
        DenseTensor pp = project(T, p);
        CHECK((pp - p).max_norm() < 1e-12 * (1.0 + p.max_norm()));
        // S_T on its own image multiplies by h
        DenseTensor sp = young_symmetrize(T, p);
        DenseTensor scaled = p * static_cast<double>(hook_product(sh));
        CHECK((sp - scaled).max_norm() < 1e-12 * (1.0 + scaled.max_norm()));
        // adjoint projector likewise
        DenseTensor q = project(T, t, true);
        DenseTensor qq = project(T, q, true);
        CHECK((qq - q).max_norm() < 1e-12 * (1.0 + q.max_norm()));
    }
}

TEST_CASE("(2,2) image: pair symmetries and vanishing triple symmetrization") {
    std::mt19937_64 rng(46);
    const int n = 3;
    DenseTensor g = project(Tableau::normal(Shape{2, 2}),
                            DenseTensor::random(n, 4, rng));
    // symmetric in (1,2) and (3,4), symmetric under pair exchange
    Permutation p12 = Permutation::transposition(4, 0, 1);
    Permutation p34 = Permutation::transposition(4, 2, 3);
    Permutation pex(4);
    pex.img = {2, 3, 0, 1};
    CHECK((permute(g, p12) - g).max_norm() < 1e-12);
    CHECK((permute(g, p34) - g).max_norm() < 1e-12);
    CHECK((permute(g, pex) - g).max_norm() < 1e-12);
    // g(u,u,u,v) = 0
    std::normal_distribution<double> nd;
    std::vector<double> u(n), v(n);
    for (int i = 0; i < n; ++i) { u[i] = nd(rng); v[i] = nd(rng); }
    double val = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    val += g.at({i, j, k, l}) * u[i] * u[j] * u[k] * v[l];
    CHECK(std::abs(val) < 1e-11);
}

TEST_CASE("projector ranks match the Weyl dimensions") {
    CHECK(irrep_dimension(Shape{2}, 3) == 6);
    CHECK(irrep_dimension(Shape{1, 1}, 3) == 3);
    CHECK(irrep_dimension(Shape{2, 1}, 3) == 8);
    CHECK(irrep_dimension(Shape{2, 2}, 2) == 1);
    CHECK(irrep_dimension(Shape{2, 2}, 3) == 6);
    CHECK(irrep_dimension(Shape{2, 2}, 4) == 20);
    // adjoint (column-first) symmetrizer spans a copy of the same module
    CHECK(irrep_dimension(Shape{2, 1}, 3, true) == 8);
    CHECK(irrep_dimension(Shape{2, 2}, 3, true) == 6);
}

TEST_CASE("module dimensions branch like the prolongation fiber") {
    // dim (2,2) over n+1 = dim (2) + dim (2,1) + dim (2,2) over n
    for (int n = 2; n <= 3; ++n) {
        const int lhs = irrep_dimension(Shape{2, 2}, n + 1);
        const int rhs = irrep_dimension(Shape{2}, n) +
                        irrep_dimension(Shape{2, 1}, n) +
                        irrep_dimension(Shape{2, 2}, n);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exchange rules cut out the projector images") {
    std::mt19937_64 rng(47);
    const int n = 3;

    // (2,2): the row rule between rows 1,2 is the cyclic sum over slots 1,2,3
    DenseTensor t = DenseTensor::random(n, 4, rng);
    DenseTensor g = project(Tableau::normal(Shape{2, 2}), t);
    CHECK(exchange_defect(g, Shape{2, 2}, 1, 2) < 1e-12);
    CHECK(g.max_norm() > 1e-3); // the projection did not collapse

    // on a fully symmetric tensor the same sum returns 3t
    DenseTensor sym(n, 4);
    {
        DenseTensor r = DenseTensor::random(n, 4, rng);
        std::vector<int> I(4);
        for (std::size_t f = 0; f < sym.size(); ++f) {
            sym.decode(f, I.data());
            std::vector<int> J = I;
            std::sort(J.begin(), J.end());
            sym[f] = r.at(J);
        }
    }
    CHECK(exchange_defect(sym, Shape{2, 2}, 1, 2) ==
          doctest::Approx(3.0 * sym.max_norm()));

    // (2,1) with its normal tableau
    DenseTensor b = project(Tableau::normal(Shape{2, 1}),
                            DenseTensor::random(n, 3, rng));
    CHECK(exchange_defect(b, Shape{2, 1}, 1, 2) < 1e-12);
    CHECK(b.max_norm() > 1e-3);
}

namespace {

// the two presentations of an algebraic curvature tensor: symmetric pairs
// (normal-tableau image) vs. antisymmetric pairs (classical index layout)
DenseTensor classical_from_pairs(const DenseTensor& g) {
    // ρ(x,y,z,w) = γ(x,z,y,w) − γ(y,z,x,w)
    DenseTensor t1 = permute(g, Permutation::transposition(4, 1, 2));
    Permutation s(4);
    s.img = {2, 0, 1, 3};
    DenseTensor t2 = permute(g, s);
    return t1 - t2;
}

DenseTensor pairs_from_classical(const DenseTensor& r) {
    // Φ(x,y,z,w) = ½[R(x,z,y,w) + R(x,w,y,z)]
    DenseTensor t1 = permute(r, Permutation::transposition(4, 1, 2));
    Permutation s(4); // args (x,w,y,z): position of x₁..x₄ in the new list
    s.img = {0, 2, 3, 1};
    DenseTensor t2 = permute(r, s);
    return 0.5 * (t1 + t2);
}

} // namespace

TEST_CASE("conjugating a tableau filling matches permuting the tensor") {
    std::mt19937_64 rng(48);
    const int n = 3;
    DenseTensor t = DenseTensor::random(n, 4, rng);
    Permutation sig = Permutation::transposition(4, 1, 2); // swaps slots 2,3
    Tableau Tn = Tableau::normal(Shape{2, 2});
    Tableau Tc = Tableau::with_filling(Shape{2, 2}, {{1, 3}, {2, 4}});
    for (bool adjoint : {false, true}) {
        DenseTensor lhs = young_symmetrize(Tc, permute(t, sig), adjoint);
        DenseTensor rhs = permute(young_symmetrize(Tn, t, adjoint), sig);
        CHECK((lhs - rhs).max_norm() < 1e-12);
    }
}

TEST_CASE("presentations of algebraic curvature tensors") {
    std::mt19937_64 rng(49);
    const int n = 3;
    DenseTensor g = project(Tableau::normal(Shape{2, 2}),
                            DenseTensor::random(n, 4, rng));
    DenseTensor r = classical_from_pairs(g);
    CHECK(r.max_norm() > 1e-3);

    // classical symmetries: antisymmetric pairs, pair exchange, cyclic sum
    Permutation p12 = Permutation::transposition(4, 0, 1);
    Permutation p34 = Permutation::transposition(4, 2, 3);
    Permutation pex(4);
    pex.img = {2, 3, 0, 1};
    CHECK((permute(r, p12) + r).max_norm() < 1e-12);
    CHECK((permute(r, p34) + r).max_norm() < 1e-12);
    CHECK((permute(r, pex) - r).max_norm() < 1e-12);
    Permutation cyc(4);
    cyc.img = {2, 0, 1, 3};
    DenseTensor bianchi = r + permute(r, cyc) + permute(r, cyc * cyc);
    CHECK(bianchi.max_norm() < 1e-12);

    // reordering slots 2,3 moves the classical layout into the adjoint image
    DenseTensor rr = permute(r, Permutation::transposition(4, 1, 2));
    Tableau T = Tableau::normal(Shape{2, 2});
    CHECK((project(T, rr, true) - rr).max_norm() < 1e-11);
    CHECK(exchange_defect(rr, Shape{2, 2}, 1, 2, true) < 1e-11);

    // round trip is multiplication by 3/2
    DenseTensor back = pairs_from_classical(r);
    CHECK((back - 1.5 * g).max_norm() < 1e-11);
}
