// Dense covariant tensors of small valence over R^n.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <vector>

namespace skt {

// A covariant tensor of valence d over an n-dimensional real vector space,
// stored densely in row-major multi-index order: the entry for (i1,...,id)
// sits at ((i1*n + i2)*n + ...)*n + id, indices 0-based.
class DenseTensor {
public:
    DenseTensor() = default;
    DenseTensor(int dim, int valence)
        : n_(dim), d_(valence), a_(pow_(dim, valence), 0.0) {
        assert(dim >= 1 && valence >= 0);
    }

    int dim() const { return n_; }
    int valence() const { return d_; }
    std::size_t size() const { return a_.size(); }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    double& operator[](std::size_t flat) { return a_[flat]; }
    double operator[](std::size_t flat) const { return a_[flat]; }

    std::size_t encode(const int* idx) const {
        std::size_t f = 0;
        for (int k = 0; k < d_; ++k) f = f * n_ + idx[k];
        return f;
    }
    void decode(std::size_t flat, int* idx) const {
        for (int k = d_ - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(flat % n_);
            flat /= n_;
        }
    }

    double& at(std::initializer_list<int> idx) {
        return a_[encode(idx.begin())];
    }
    double at(std::initializer_list<int> idx) const {
        return a_[encode(idx.begin())];
    }
    double& at(const std::vector<int>& idx) { return a_[encode(idx.data())]; }
    double at(const std::vector<int>& idx) const { return a_[encode(idx.data())]; }

    DenseTensor& operator+=(const DenseTensor& o) {
        assert(same_type(o));
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    DenseTensor& operator-=(const DenseTensor& o) {
        assert(same_type(o));
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    DenseTensor& operator*=(double s) {
        for (double& x : a_) x *= s;
        return *this;
    }

    friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
    friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
    friend DenseTensor operator*(double s, DenseTensor t) { return t *= s; }
    friend DenseTensor operator*(DenseTensor t, double s) { return t *= s; }
    friend DenseTensor operator-(DenseTensor t) { return t *= -1.0; }

    double max_norm() const {
        double m = 0.0;
        for (double x : a_) m = std::max(m, std::abs(x));
        return m;
    }
    double frob_norm() const {
        double s = 0.0;
        for (double x : a_) s += x * x;
        return std::sqrt(s);
    }

    bool same_type(const DenseTensor& o) const {
        return n_ == o.n_ && d_ == o.d_;
    }

    // iid standard normal entries, for randomized property tests
    static DenseTensor random(int dim, int valence, std::mt19937_64& rng) {
        DenseTensor t(dim, valence);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (double& x : t.a_) x = nd(rng);
        return t;
    }

    static DenseTensor identity2(int dim) {
        DenseTensor t(dim, 2);
        for (int i = 0; i < dim; ++i) t.at({i, i}) = 1.0;
        return t;
    }

private:
    static std::size_t pow_(int n, int d) {
        std::size_t p = 1;
        for (int k = 0; k < d; ++k) p *= static_cast<std::size_t>(n);
        return p;
    }

    int n_ = 0, d_ = 0;
    std::vector<double> a_;
};

} // namespace skt
