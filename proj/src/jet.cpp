// SPDX-License-Identifier: MIT

#include "skt/jet.hpp"

#include <map>
#include <memory>
#include <unordered_map>

namespace skt {

namespace {

// pack a multi-index into an integer key; entries stay below 16
std::uint64_t pack(const std::vector<int>& alpha) {
    std::uint64_t k = 0;
    for (int a : alpha) k = (k << 4) | static_cast<std::uint64_t>(a);
    return k;
}

// all multi-indices of the given total degree, lexicographic
void enumerate(int nv, int deg, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == nv - 1) {
        cur.push_back(deg);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = deg; a >= 0; --a) {
        cur.push_back(a);
        enumerate(nv, deg - a, cur, out);
        cur.pop_back();
    }
}

std::unordered_map<std::uint64_t, int>& lookup_for(const JetSpace* s) {
    static std::map<const JetSpace*, std::unordered_map<std::uint64_t, int>>
        tables;
    return tables[s];
}

} // namespace

JetSpace::JetSpace(int nv, int order) : nv_(nv), order_(order) {
    assert(nv >= 1 && order >= 0);
    for (int deg = 0; deg <= order; ++deg) {
        std::vector<int> cur;
        enumerate(nv, deg, cur, mi_);
    }
    auto& lookup = lookup_for(this);
    for (int k = 0; k < count(); ++k) lookup[pack(mi_[k])] = k;

    deg_.resize(count());
    for (int k = 0; k < count(); ++k) {
        int d = 0;
        for (int a : mi_[k]) d += a;
        deg_[k] = d;
    }

    prod_.assign(static_cast<std::size_t>(count()) * count(), -1);
    std::vector<int> sum(nv);
    for (int a = 0; a < count(); ++a)
        for (int b = 0; b < count(); ++b) {
            if (deg_[a] + deg_[b] > order) continue;
            for (int v = 0; v < nv; ++v) sum[v] = mi_[a][v] + mi_[b][v];
            prod_[static_cast<std::size_t>(a) * count() + b] = index_of(sum);
        }

    up_.assign(static_cast<std::size_t>(count()) * nv, -1);
    for (int a = 0; a < count(); ++a) {
        if (deg_[a] >= order) continue;
        for (int v = 0; v < nv; ++v) {
            std::vector<int> alpha = mi_[a];
            ++alpha[v];
            up_[static_cast<std::size_t>(a) * nv + v] = index_of(alpha);
        }
    }
}

int JetSpace::index_of(const std::vector<int>& alpha) const {
    const auto& lookup = lookup_for(this);
    auto it = lookup.find(pack(alpha));
    return it == lookup.end() ? -1 : it->second;
}

const JetSpace& JetSpace::get(int nv, int order) {
    static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
    auto key = std::make_pair(nv, order);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::unique_ptr<JetSpace>(new JetSpace(nv, order)))
                 .first;
    }
    return *it->second;
}

Jet Jet::variable(const JetSpace& S, int v, double x0) {
    assert(v >= 0 && v < S.nv());
    Jet j(S);
    j.c_[0] = x0;
    if (S.order() >= 1) {
        std::vector<int> alpha(S.nv(), 0);
        alpha[v] = 1;
        j.c_[S.index_of(alpha)] = 1.0;
    }
    return j;
}

double Jet::grad(int v) const {
    std::vector<int> alpha(S_->nv(), 0);
    alpha[v] = 1;
    const int k = S_->index_of(alpha);
    return k < 0 ? 0.0 : c_[k];
}

Jet& Jet::operator+=(const Jet& o) {
    assert(S_ == o.S_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    assert(S_ == o.S_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    assert(a.S_ == b.S_);
    const JetSpace& S = *a.S_;
    const int N = S.count();
    Jet out(S);
    for (int i = 0; i < N; ++i) {
        const double ai = a.c_[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < N; ++j) {
            const int k = S.prod(i, j);
            if (k >= 0) out.c_[k] += ai * b.c_[j];
        }
    }
    return out;
}

Jet Jet::reciprocal() const {
    const double c0 = c_[0];
    assert(c0 != 0.0);
    Jet e = *this * (1.0 / c0);
    e.c_[0] = 0.0;
    // geometric series in the nilpotent part, Horner style
    Jet r = Jet::constant(*S_, 1.0);
    for (int k = 0; k < S_->order(); ++k) r = 1.0 - (e * r);
    return r * (1.0 / c0);
}

Jet Jet::derivative(int v) const {
    Jet out(*S_);
    for (int k = 0; k < S_->count(); ++k) {
        const int u = S_->up(k, v);
        if (u >= 0)
            out.c_[k] = (S_->multi_index(k)[v] + 1) * c_[u];
    }
    return out;
}

Jet jexp(const Jet& a) {
    const JetSpace& S = a.space();
    Jet e = a;
    e.coeff(0) = 0.0;
    Jet r = Jet::constant(S, 1.0);
    for (int k = S.order(); k >= 1; --k) r = 1.0 + e * (1.0 / k) * r;
    return r * std::exp(a.value());
}

} // namespace skt
