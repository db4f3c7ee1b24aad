// SPDX-License-Identifier: MIT

#include "skt/young.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cassert>
#include <numeric>

namespace skt {

int Permutation::parity() const {
    int inv = 0;
    for (int i = 0; i < degree(); ++i)
        for (int j = i + 1; j < degree(); ++j)
            if (img[i] > img[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

DenseTensor permute(const DenseTensor& t, const Permutation& s) {
    assert(s.degree() == t.valence());
    if (s.is_identity()) return t;
    const Permutation inv = s.inverse();
    const int d = t.valence();
    DenseTensor out(t.dim(), d);
    std::vector<int> I(d), J(d);
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, I.data());
        for (int k = 0; k < d; ++k) J[k] = I[inv.img[k]];
        out[f] = t[t.encode(J.data())];
    }
    return out;
}

bool Shape::valid() const {
    if (rows.empty()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 1) return false;
        if (i > 0 && rows[i] > rows[i - 1]) return false;
    }
    return true;
}

std::vector<int> Shape::conjugate() const {
    if (rows.empty()) return {};
    std::vector<int> mu(rows[0], 0);
    for (int r : rows)
        for (int j = 0; j < r; ++j) ++mu[j];
    return mu;
}

Tableau Tableau::normal(const Shape& sh) {
    Tableau T;
    T.shape = sh;
    int next = 1;
    for (int r : sh.rows) {
        std::vector<int> row(r);
        std::iota(row.begin(), row.end(), next);
        next += r;
        T.filling.push_back(std::move(row));
    }
    return T;
}

Tableau Tableau::with_filling(const Shape& sh,
                              std::vector<std::vector<int>> f) {
    Tableau T;
    T.shape = sh;
    T.filling = std::move(f);
    assert(T.valid());
    return T;
}

int Tableau::max_slot() const {
    int m = 0;
    for (const auto& row : filling)
        for (int e : row) m = std::max(m, e);
    return m;
}

bool Tableau::valid() const {
    if (!shape.valid()) return false;
    if (filling.size() != shape.rows.size()) return false;
    std::vector<int> seen;
    for (std::size_t r = 0; r < filling.size(); ++r) {
        if (static_cast<int>(filling[r].size()) != shape.rows[r]) return false;
        for (int e : filling[r]) {
            if (e < 1) return false;
            seen.push_back(e);
        }
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

std::vector<std::vector<int>> Tableau::columns() const {
    std::vector<std::vector<int>> cols(shape.rows.empty() ? 0 : shape.rows[0]);
    for (const auto& row : filling)
        for (std::size_t j = 0; j < row.size(); ++j)
            cols[j].push_back(row[j]);
    return cols;
}

long hook_product(const Shape& sh) {
    assert(sh.valid());
    const std::vector<int> mu = sh.conjugate();
    long h = 1;
    for (std::size_t i = 0; i < sh.rows.size(); ++i)
        for (int j = 0; j < sh.rows[i]; ++j) {
            // arm + leg + 1, all 0-based offsets
            const int hook = (sh.rows[i] - 1 - j) + (mu[j] - 1 - static_cast<int>(i)) + 1;
            h *= hook;
        }
    return h;
}

namespace {

// All bijections of the slot set `slots` (1-based entries) as global
// permutations of degree d, paired with their parity.
std::vector<std::pair<Permutation, int>> slot_bijections(
    const std::vector<int>& slots, int d) {
    std::vector<int> sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> perm = sorted;
    std::vector<std::pair<Permutation, int>> out;
    do {
        Permutation s(d);
        for (std::size_t k = 0; k < sorted.size(); ++k)
            s.img[sorted[k] - 1] = perm[k] - 1;
        out.emplace_back(s, s.parity());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Sum over the product group generated by disjoint blocks, with optional
// signs. `blocks` is a list of slot sets.
DenseTensor group_sum(const std::vector<std::vector<int>>& blocks,
                      const DenseTensor& t, bool signed_sum) {
    DenseTensor acc = t; // start from the identity term, then fold blocks in
    const int d = t.valence();
    for (const auto& block : blocks) {
        if (block.size() < 2) continue;
        auto group = slot_bijections(block, d);
        DenseTensor next(t.dim(), d);
        for (const auto& [s, par] : group) {
            DenseTensor term = permute(acc, s);
            if (signed_sum && par < 0) term *= -1.0;
            next += term;
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace

DenseTensor row_symmetrize(const Tableau& T, const DenseTensor& t) {
    assert(T.valid() && T.max_slot() <= t.valence());
    return group_sum(T.filling, t, /*signed_sum=*/false);
}

DenseTensor column_antisymmetrize(const Tableau& T, const DenseTensor& t) {
    assert(T.valid() && T.max_slot() <= t.valence());
    return group_sum(T.columns(), t, /*signed_sum=*/true);
}

DenseTensor young_symmetrize(const Tableau& T, const DenseTensor& t,
                             bool adjoint) {
    if (adjoint) return column_antisymmetrize(T, row_symmetrize(T, t));
    return row_symmetrize(T, column_antisymmetrize(T, t));
}

DenseTensor project(const Tableau& T, const DenseTensor& t, bool adjoint) {
    DenseTensor s = young_symmetrize(T, t, adjoint);
    s *= 1.0 / static_cast<double>(hook_product(T.shape));
    return s;
}

int irrep_dimension(const Shape& sh, int n, bool adjoint, double rel_tol) {
    const Tableau T = Tableau::normal(sh);
    const int d = sh.boxes();
    std::size_t N = 1;
    for (int k = 0; k < d; ++k) N *= static_cast<std::size_t>(n);

    Eigen::MatrixXd M(N, N);
    for (std::size_t c = 0; c < N; ++c) {
        DenseTensor e(n, d);
        e[c] = 1.0;
        DenseTensor p = project(T, e, adjoint);
        for (std::size_t r = 0; r < N; ++r) M(r, c) = p[r];
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

double exchange_defect(const DenseTensor& t, const Shape& sh, int i, int j,
                       bool adjoint) {
    assert(sh.valid() && i >= 1 && i < j);
    const Tableau T = Tableau::normal(sh);
    const std::vector<std::vector<int>> groups =
        adjoint ? T.columns() : T.filling;
    assert(j <= static_cast<int>(groups.size()));

    const std::vector<int>& gi = groups[i - 1];
    const std::vector<int>& gj = groups[j - 1];
    const int m = static_cast<int>(gi.size());
    const int q = gj[0] - 1; // first slot of group j, 0-based
    const int d = t.valence();
    assert(T.max_slot() <= d);

    DenseTensor u(t.dim(), d);
    std::vector<int> I(d), J(d), xs(m + 1);
    for (std::size_t f = 0; f < u.size(); ++f) {
        u.decode(f, I.data());
        for (int k = 0; k < m; ++k) xs[k] = I[gi[k] - 1];
        xs[m] = I[q];
        double acc = 0.0;
        for (int a = 0; a <= m; ++a) {
            J = I;
            int pos = 0;
            for (int k = 0; k <= m; ++k) {
                if (k == a) continue;
                J[gi[pos++] - 1] = xs[k];
            }
            J[q] = xs[a];
            double term = t[t.encode(J.data())];
            if (adjoint && ((a + m) % 2 != 0)) term = -term;
            acc += term;
        }
        u[f] = acc;
    }
    return u.max_norm();
}

} // namespace skt
