// Truncated multivariate Taylor arithmetic (forward-mode jets).
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace skt {

// Shared tables for jets in `nv` variables truncated at total degree
// `order`: the multi-index list (graded lexicographic), the product pairing
// and the index shifts used by d/dx_v. Instances are interned; get() hands
// out stable references.
class JetSpace {
public:
    static const JetSpace& get(int nv, int order);

    int nv() const { return nv_; }
    int order() const { return order_; }
    int count() const { return static_cast<int>(mi_.size()); }
    const std::vector<int>& multi_index(int k) const { return mi_[k]; }
    int index_of(const std::vector<int>& alpha) const; // -1 if above order

    // index of alpha_a + alpha_b, or -1 when the sum exceeds the order
    int prod(int a, int b) const { return prod_[a * count() + b]; }
    // index of alpha + e_v, or -1
    int up(int a, int v) const { return up_[a * nv_ + v]; }
    int degree(int a) const { return deg_[a]; }

private:
    JetSpace(int nv, int order);

    int nv_, order_;
    std::vector<std::vector<int>> mi_;
    std::vector<int> prod_;
    std::vector<int> up_;
    std::vector<int> deg_;
};

// One truncated Taylor expansion. All arithmetic stays inside the space the
// jet was created in.
class Jet {
public:
    Jet() : S_(nullptr) {}
    explicit Jet(const JetSpace& S) : S_(&S), c_(S.count(), 0.0) {}

    static Jet constant(const JetSpace& S, double v) {
        Jet j(S);
        j.c_[0] = v;
        return j;
    }
    // the coordinate function x_v expanded at x0
    static Jet variable(const JetSpace& S, int v, double x0);

    const JetSpace& space() const { return *S_; }
    double value() const { return c_[0]; }
    double& coeff(int k) { return c_[k]; }
    double coeff(int k) const { return c_[k]; }
    // first-order coefficient of variable v
    double grad(int v) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator+(Jet a, double s) {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator+(double s, Jet a) {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator-(Jet a, double s) {
        a.c_[0] -= s;
        return a;
    }
    friend Jet operator-(double s, const Jet& a) {
        Jet r = -a;
        r.c_[0] += s;
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b);
    Jet reciprocal() const; // requires nonzero constant term
    friend Jet operator/(const Jet& a, const Jet& b) {
        return a * b.reciprocal();
    }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    // d/dx_v as a jet (top-degree coefficients of the result are zero; one
    // order of information is consumed)
    Jet derivative(int v) const;

    bool valid() const { return S_ != nullptr; }

private:
    const JetSpace* S_;
    std::vector<double> c_;
};

// exp of a jet (series in the nilpotent part)
Jet jexp(const Jet& a);
inline double jexp(double x) { return std::exp(x); }

} // namespace skt
