// Young frames, tableaux, symmetrizers and the associated projectors.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <utility>
#include <vector>

#include "skt/tensor.hpp"

namespace skt {

// Permutation of tensor slots, stored 0-based: img[i] = image of slot i.
struct Permutation {
    std::vector<int> img;

    explicit Permutation(int d = 0) : img(d) {
        for (int i = 0; i < d; ++i) img[i] = i;
    }
    static Permutation transposition(int d, int a, int b) {
        Permutation s(d);
        std::swap(s.img[a], s.img[b]);
        return s;
    }
    int degree() const { return static_cast<int>(img.size()); }
    Permutation inverse() const {
        Permutation s(degree());
        for (int i = 0; i < degree(); ++i) s.img[img[i]] = i;
        return s;
    }
    // (a ∘ b)(i) = a(b(i))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        Permutation s(a.degree());
        for (int i = 0; i < a.degree(); ++i) s.img[i] = a.img[b.img[i]];
        return s;
    }
    int parity() const; // +1 or -1
    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img[i] != i) return false;
        return true;
    }
};

// result(v_1,...,v_d) = t(v_{s^-1(1)},...,v_{s^-1(d)}); the right action of
// the symmetric group on covariant tensors.
DenseTensor permute(const DenseTensor& t, const Permutation& s);

// A partition given by weakly decreasing row lengths.
struct Shape {
    std::vector<int> rows;

    Shape() = default;
    Shape(std::initializer_list<int> r) : rows(r) {}
    int boxes() const {
        int b = 0;
        for (int r : rows) b += r;
        return b;
    }
    bool valid() const;
    std::vector<int> conjugate() const; // column lengths
};

// A frame together with a filling by distinct slot numbers (1-based).
// Slot k of a tensor corresponds to the box containing the number k; the
// filling need not exhaust 1..valence, so a tableau can act on a subset of
// the slots of a larger tensor.
struct Tableau {
    Shape shape;
    std::vector<std::vector<int>> filling; // filling[r][c], 1-based entries

    // rows filled 1..d left to right, top to bottom
    static Tableau normal(const Shape& sh);
    // explicit filling, e.g. {{2,3},{1}}
    static Tableau with_filling(const Shape& sh,
                                std::vector<std::vector<int>> f);

    int boxes() const { return shape.boxes(); }
    int max_slot() const;
    bool valid() const;
    std::vector<std::vector<int>> columns() const;
};

// Product of hook lengths over all boxes of the frame.
long hook_product(const Shape& sh);

// Sum of t over the row-preserving permutations (no normalization).
DenseTensor row_symmetrize(const Tableau& T, const DenseTensor& t);

// Signed sum of t over the column-preserving permutations.
DenseTensor column_antisymmetrize(const Tableau& T, const DenseTensor& t);

// S_T = r_T ∘ c_T (column pass first); adjoint gives S*_T = c_T ∘ r_T.
DenseTensor young_symmetrize(const Tableau& T, const DenseTensor& t,
                             bool adjoint = false);

// P_T = S_T / h_λ, an idempotent.
DenseTensor project(const Tableau& T, const DenseTensor& t,
                    bool adjoint = false);

// Numerical rank of the projector of the normal tableau of `sh` acting on
// ⊗^d (R^n)*, with singular values cut at `rel_tol` times the largest.
int irrep_dimension(const Shape& sh, int n, bool adjoint = false,
                    double rel_tol = 1e-9);

// Residual of the exchange rule between rows i<j (adjoint=false) or columns
// i<j (adjoint=true) of the normal tableau of `sh`; slots taken from that
// tableau. Zero exactly on the corresponding projector image.
double exchange_defect(const DenseTensor& t, const Shape& sh, int i, int j,
                       bool adjoint = false);

} // namespace skt
