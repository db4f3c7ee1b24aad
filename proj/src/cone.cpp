// SPDX-License-Identifier: MIT

#include "skt/cone.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "skt/killing.hpp"
#include "skt/young.hpp"

namespace skt {

namespace {

DenseTensor metric_tensor(const InnerProduct& ip) {
    const int n = ip.dim();
    DenseTensor g(n, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.at({a, b}) = ip.g(a, b);
    return g;
}

// R₁(x,y,z,w) = ⟨y,z⟩⟨x,w⟩ − ⟨x,z⟩⟨y,w⟩, the unit-curvature model tensor
DenseTensor r1_tensor(const InnerProduct& ip) {
    const int n = ip.dim();
    DenseTensor t(n, 4);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    t.at({a, b, c, d}) =
                        ip.g(b, c) * ip.g(a, d) - ip.g(a, c) * ip.g(b, d);
    return t;
}

std::vector<int> shifted(const std::vector<int>& v, int by) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + by;
    return out;
}

bool holds_dr(const std::vector<int>& dr_slots, int s) {
    return std::find(dr_slots.begin(), dr_slots.end(), s) != dr_slots.end();
}

// move slot j of a jet tensor to the front, keeping the rest in order
JetTensor front_slot(const JetTensor& t, int j) {
    if (j == 0) return t;
    Permutation inv(t.d);
    for (int k = 0; k < t.d; ++k)
        inv.img[k] = k < j ? k + 1 : (k == j ? 0 : k);
    return jt_permute(t, inv.inverse());
}

} // namespace

Eigen::VectorXd ConePoint::chart() const {
    Eigen::VectorXd w(u.size() + 1);
    w << u, r;
    return w;
}

double triple_residual(const ConeTriple& t) {
    double res = (t.alpha - symmetrize_all(t.alpha)).max_norm();
    res = std::max(res, projector_membership(tableau_21(), t.beta));
    res = std::max(res, projector_membership(tableau_22(), t.gamma));
    return res;
}

DenseTensor dr_form(int n) {
    DenseTensor out(n + 1, 1);
    out.at({n}) = 1.0;
    return out;
}

DenseTensor lift(const DenseTensor& t) {
    const int n = t.dim();
    DenseTensor out(n + 1, t.valence());
    std::vector<int> idx(t.valence());
    for (std::size_t f = 0; f < t.size(); ++f) {
        t.decode(f, idx.data());
        out.at(idx) = t[f];
    }
    return out;
}

DenseTensor restrict_horizontal(const DenseTensor& T) {
    const int n = T.dim() - 1;
    assert(n >= 1);
    DenseTensor out(n, T.valence());
    std::vector<int> idx(T.valence());
    for (std::size_t f = 0; f < out.size(); ++f) {
        out.decode(f, idx.data());
        out[f] = T.at(idx);
    }
    return out;
}

DenseTensor radial_insert(const DenseTensor& T) {
    return insert(Eigen::VectorXd::Unit(T.dim(), T.dim() - 1), T);
}

ConeTriple radial_scale(const ConeTriple& t, double r) {
    assert(r > 0.0);
    const double r2 = r * r;
    return {r2 * t.alpha, r2 * r * t.beta, r2 * r2 * t.gamma};
}

DenseTensor assemble(const ConeTriple& t, double r, bool strict) {
    if (strict && triple_residual(t) >= 1e-9)
        throw std::invalid_argument("assemble: component symmetry violation");
    const int n = t.dim();
    const ConeTriple s = radial_scale(t, r);
    const DenseTensor dr = dr_form(n);
    const DenseTensor drdr = owedge(dr, dr, ProductKind::Sym1x1);
    DenseTensor S = owedge(lift(s.alpha), drdr, ProductKind::KulkarniNomizu);
    S += owedge(lift(s.beta), dr, ProductKind::OneFormS21);
    S += lift(s.gamma);
    return S;
}

ConeTriple decompose(const DenseTensor& S, double membership_tol) {
    assert(S.valence() == 4 && S.dim() >= 2);
    if (projector_membership(tableau_22(), S) >= membership_tol)
        throw std::invalid_argument(
            "decompose: tensor is outside the curvature symmetry class");
    const Eigen::VectorXd er = Eigen::VectorXd::Unit(S.dim(), S.dim() - 1);
    ConeTriple t;
    t.alpha = 0.5 * restrict_horizontal(insert(er, insert(er, S)));
    t.beta = restrict_horizontal(insert(er, S));
    t.gamma = restrict_horizontal(S);
    return t;
}

ConeField cone_pullback(const JetTensor& base, int rpow) {
    ConeField f;
    f.n = base.n;
    f.valence = base.d;
    f.terms.push_back({1.0, rpow, {}, base});
    return f;
}

ConeField cone_dr(const GeometryAt& geo) {
    JetTensor one(*geo.S, geo.n, 0);
    one.c[0] = Jet::constant(*geo.S, 1.0);
    ConeField f;
    f.n = geo.n;
    f.valence = 1;
    f.terms.push_back({1.0, 0, {0}, one});
    return f;
}

// Product rule over the factors of each term. Radial direction: dr is
// parallel and a pulled-back k-tensor contributes −k/r, so r^p Θ gives
// (p − k) r^{p−1} Θ. Horizontal direction x: the base factor follows
// ∇̂_xγ = ∇_xγ − (1/r) Σ_s dr⊗_s (x⌟_s γ), each dr factor follows
// ∇̂_x dr = r x♯.
ConeField cone_covd(const GeometryAt& geo, const ConeField& f) {
    ConeField out;
    out.n = f.n;
    out.valence = f.valence + 1;
    for (const ConeTerm& t : f.terms) {
        const int kpb = t.base.d;
        std::vector<int> base_pos;
        for (int s = 0; s < f.valence; ++s)
            if (!holds_dr(t.dr_slots, s)) base_pos.push_back(s);

        if (t.rpow != kpb) {
            ConeTerm a;
            a.coeff = t.coeff * (t.rpow - kpb);
            a.rpow = t.rpow - 1;
            a.dr_slots = shifted(t.dr_slots, 1);
            a.dr_slots.insert(a.dr_slots.begin(), 0);
            a.base = t.base;
            out.terms.push_back(std::move(a));
        }

        ConeTerm b;
        b.coeff = t.coeff;
        b.rpow = t.rpow;
        b.dr_slots = shifted(t.dr_slots, 1);
        b.base = covd(geo, t.base);
        out.terms.push_back(std::move(b));

        for (int s : t.dr_slots) {
            ConeTerm c;
            c.coeff = t.coeff;
            c.rpow = t.rpow + 1;
            for (int q : t.dr_slots)
                if (q != s) c.dr_slots.push_back(q + 1);
            // the freed slot s+1 becomes a base slot carrying x♯; its
            // position among the new base slots {0, s+1} ∪ (base_pos+1)
            int loc = 1;
            for (int p : base_pos)
                if (p < s) ++loc;
            std::vector<int> slots_a = {1, loc + 1};
            std::vector<int> slots_b;
            for (int q = 1; q <= kpb + 2; ++q)
                if (q != 1 && q != loc + 1) slots_b.push_back(q);
            c.base = jt_slot_product(geo.g, t.base, slots_a, slots_b);
            out.terms.push_back(std::move(c));
        }

        for (int j = 0; j < kpb; ++j) {
            ConeTerm d;
            d.coeff = -t.coeff;
            d.rpow = t.rpow - 1;
            d.dr_slots = shifted(t.dr_slots, 1);
            d.dr_slots.push_back(base_pos[j] + 1);
            std::sort(d.dr_slots.begin(), d.dr_slots.end());
            d.base = front_slot(t.base, j);
            out.terms.push_back(std::move(d));
        }
    }
    return out;
}

DenseTensor cone_eval(const ConeField& f, double r) {
    assert(r > 0.0);
    DenseTensor out(f.n + 1, f.valence);
    std::vector<int> bidx, idx(f.valence);
    for (const ConeTerm& t : f.terms) {
        const double w = t.coeff * std::pow(r, t.rpow);
        const DenseTensor v = t.base.values();
        std::vector<int> base_pos;
        for (int s = 0; s < f.valence; ++s)
            if (!holds_dr(t.dr_slots, s)) base_pos.push_back(s);
        std::fill(idx.begin(), idx.end(), f.n);
        bidx.assign(t.base.d, 0);
        for (std::size_t bf = 0; bf < v.size(); ++bf) {
            v.decode(bf, bidx.data());
            for (int k = 0; k < t.base.d; ++k) idx[base_pos[k]] = bidx[k];
            out.at(idx) += w * v[bf];
        }
    }
    return out;
}

DenseTensor cone_nabla_radial(const DenseTensor& t, double r) {
    assert(r > 0.0);
    return (-static_cast<double>(t.valence()) / r) * t;
}

DenseTensor cone_nabla_horizontal(const GeometryAt& geo, const JetTensor& t,
                                  const Eigen::VectorXd& x, double r) {
    const DenseTensor D = cone_eval(cone_covd(geo, cone_pullback(t)), r);
    Eigen::VectorXd xl = Eigen::VectorXd::Zero(geo.n + 1);
    xl.head(geo.n) = x;
    return insert(xl, D);
}

DenseTensor cone_curvature(const ManifoldModel& m,
                           const Eigen::VectorXd& u0) {
    if (!m.is_sphere())
        throw std::domain_error(
            "cone_curvature: flat base models are rejected; the flat case "
            "is the ambient space itself");
    GeometryAt geo = geometry_at(m, u0, 2);
    const DenseTensor R = curvature_jets(geo).values();
    return lift(R - r1_tensor(geo.metric()));
}

ChartMetricFn cone_chart_metric(const ManifoldModel& m) {
    if (!m.is_sphere())
        throw std::domain_error("cone_chart_metric: needs a sphere base");
    const int n = m.n;
    const double rho = m.rho;
    return [n, rho](const JetSpace& S, const Eigen::VectorXd& w0) {
        assert(w0.size() == n + 1 && w0(n) > 0.0);
        const int N = n + 1;
        std::vector<Jet> g(static_cast<std::size_t>(N) * N,
                           Jet::constant(S, 0.0));
        Jet norm2 = Jet::constant(S, 0.0);
        for (int v = 0; v < n; ++v) {
            Jet x = Jet::variable(S, v, w0(v));
            norm2 += x * x;
        }
        const Jet inv = (norm2 + 1.0).reciprocal();
        const Jet r = Jet::variable(S, n, w0(n));
        const Jet conf = (4.0 * rho * rho) * inv * inv * r * r;
        for (int a = 0; a < n; ++a) g[a * N + a] = conf;
        g[n * N + n] = Jet::constant(S, 1.0);
        return g;
    };
}

namespace {

using PlainMetric = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

Eigen::MatrixXd cone_metric_value(const ManifoldModel& m,
                                  const Eigen::VectorXd& w) {
    const int n = m.n;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n + 1, n + 1);
    const double s = w.head(n).squaredNorm();
    const double conf = 4.0 * m.rho * m.rho / ((1.0 + s) * (1.0 + s));
    for (int a = 0; a < n; ++a) G(a, a) = w(n) * w(n) * conf;
    G(n, n) = 1.0;
    return G;
}

// central difference with one Richardson pass, O(h⁴)
Eigen::MatrixXd fd1(const PlainMetric& f, const Eigen::VectorXd& w, int l,
                    double h) {
    auto central = [&](double hh) {
        Eigen::VectorXd wp = w, wm = w;
        wp(l) += hh;
        wm(l) -= hh;
        return Eigen::MatrixXd((f(wp) - f(wm)) / (2.0 * hh));
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

Eigen::MatrixXd fd2(const PlainMetric& f, const Eigen::VectorXd& w, int a,
                    int b, double h) {
    auto stencil = [&](double hh) -> Eigen::MatrixXd {
        if (a == b) {
            Eigen::VectorXd wp = w, wm = w;
            wp(a) += hh;
            wm(a) -= hh;
            return (f(wp) - 2.0 * f(w) + f(wm)) / (hh * hh);
        }
        Eigen::VectorXd pp = w, pm = w, mp = w, mm = w;
        pp(a) += hh; pp(b) += hh;
        pm(a) += hh; pm(b) -= hh;
        mp(a) -= hh; mp(b) += hh;
        mm(a) -= hh; mm(b) -= hh;
        return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * hh * hh);
    };
    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

} // namespace

DenseTensor cone_chart_curvature_fd(const ManifoldModel& m,
                                    const ConePoint& p, double step) {
    if (!m.is_sphere())
        throw std::domain_error("cone_chart_curvature_fd: needs a sphere base");
    assert(p.r > 0.0);
    const int N = m.n + 1;
    const PlainMetric f = [&m](const Eigen::VectorXd& w) {
        return cone_metric_value(m, w);
    };
    const Eigen::VectorXd w = p.chart();
    const Eigen::MatrixXd g0 = f(w);
    const Eigen::MatrixXd gi = g0.inverse();

    std::vector<Eigen::MatrixXd> dg(N), dgi(N);
    std::vector<std::vector<Eigen::MatrixXd>> ddg(N);
    for (int l = 0; l < N; ++l) {
        dg[l] = fd1(f, w, l, step);
        ddg[l].resize(N);
    }
    for (int l = 0; l < N; ++l) dgi[l] = -gi * dg[l] * gi;
    for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) {
            ddg[a][b] = fd2(f, w, a, b, step);
            if (a != b) ddg[b][a] = ddg[a][b];
        }

    auto low = [&](int i, int j, int l) {
        return dg[i](j, l) + dg[j](i, l) - dg[l](i, j);
    };
    auto dlow = [&](int mm, int i, int j, int l) {
        return ddg[mm][i](j, l) + ddg[mm][j](i, l) - ddg[mm][l](i, j);
    };
    DenseTensor Gam(N, 3), dGam(N, 4); // Γ^k_{ij} and ∂_m Γ^k_{ij}
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double v = 0.0, dv = 0.0;
                for (int l = 0; l < N; ++l) v += gi(k, l) * low(i, j, l);
                Gam.at({k, i, j}) = 0.5 * v;
                for (int mm = 0; mm < N; ++mm) {
                    dv = 0.0;
                    for (int l = 0; l < N; ++l)
                        dv += dgi[mm](k, l) * low(i, j, l) +
                              gi(k, l) * dlow(mm, i, j, l);
                    dGam.at({mm, k, i, j}) = 0.5 * dv;
                }
            }

    DenseTensor R(N, 4); // R(i,j,k,l) = ⟨R(∂i,∂j)∂k, ∂l⟩
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    double v = 0.0;
                    for (int mm = 0; mm < N; ++mm) {
                        double up = dGam.at({i, mm, j, k}) -
                                    dGam.at({j, mm, i, k});
                        for (int q = 0; q < N; ++q)
                            up += Gam.at({mm, i, q}) * Gam.at({q, j, k}) -
                                  Gam.at({mm, j, q}) * Gam.at({q, i, k});
                        v += g0(mm, l) * up;
                    }
                    R.at({i, j, k, l}) = v;
                }
    return R;
}

TripleJets associated_triple_jets(const TensorField& kappa,
                                  const GeometryAt& geo, DerivMode mode,
                                  double fd_step) {
    TripleJets t;
    t.alpha = field_jets(kappa, geo, mode, fd_step);
    const JetTensor dk = covd(geo, t.alpha);
    t.beta = jt_scale(jt_young_symmetrize(tableau_21(), dk), 1.0 / 3.0);
    const JetTensor k2 = jt_scale(
        jt_young_symmetrize(tableau_22(), covd(geo, dk)), 1.0 / 12.0);
    t.gamma = jt_add(k2, jt_owedge(t.alpha, geo.g, ProductKind::KulkarniNomizu));
    return t;
}

ConeTriple associated_triple(const TensorField& kappa, const GeometryAt& geo,
                             double r, DerivMode mode, double fd_step) {
    const TripleJets t = associated_triple_jets(kappa, geo, mode, fd_step);
    return radial_scale(
        {t.alpha.values(), t.beta.values(), t.gamma.values()}, r);
}

ConeTriple horizontal_defect(const TripleJets& t, const GeometryAt& geo,
                             const Eigen::VectorXd& x) {
    const DenseTensor xf = flat(x, geo.metric());
    const DenseTensor a = t.alpha.values();
    const DenseTensor b = t.beta.values();
    const DenseTensor c = t.gamma.values();
    ConeTriple d;
    d.alpha = insert(x, covd(geo, t.alpha).values()) - insert(x, b);
    d.beta = insert(x, covd(geo, t.beta).values()) - insert(x, c) +
             2.0 * owedge(a, xf, ProductKind::OneFormSym2);
    d.gamma = insert(x, covd(geo, t.gamma).values()) +
              owedge(b, xf, ProductKind::OneFormS21);
    return d;
}

double hessian_description_residual(const TensorField& kappa,
                                    const GeometryAt& geo, DerivMode mode,
                                    double fd_step) {
    const TripleJets t = associated_triple_jets(kappa, geo, mode, fd_step);
    const DenseTensor S = assemble(
        {t.alpha.values(), t.beta.values(), t.gamma.values()}, 1.0);
    const ConeField hess =
        cone_covd(geo, cone_covd(geo, cone_pullback(t.alpha, 4)));
    const DenseTensor H = project(tableau_22(), cone_eval(hess, 1.0));
    return (H - S).max_norm();
}

} // namespace skt
