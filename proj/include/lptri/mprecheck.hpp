#pragma once

// Second-tier margin evaluation: every catalog inequality re-derived
// from the raw atom data in 50-digit floats, straight from the defining
// formulas. Deliberately independent of the double-precision code path
// it double-checks (no shared kernels, no log-domain tricks).

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lptri::mp {

using Real50 = boost::multiprecision::cpp_bin_float_50;

template <class Real>
struct Margin {
    Real margin = 0;
    Real lhs = 0;
    Real rhs = 0;
};

namespace detail {

using std::abs;
using std::pow;
using std::sqrt;

template <class Real>
Real psum(std::span<const double> w, std::span<const double> v, const Real& e) {
    Real s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > 0.0) s += Real(w[i]) * pow(Real(v[i]), e);
    return s;
}

template <class Real>
Real psum_prod(std::span<const double> w, std::span<const double> a, const Real& ea,
               std::span<const double> b, const Real& eb) {
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0.0 || b[i] <= 0.0) continue;
        s += Real(w[i]) * pow(Real(a[i]), ea) * pow(Real(b[i]), eb);
    }
    return s;
}

template <class Real>
Real psum_sum(std::span<const double> w, std::span<const double> a, std::span<const double> b,
              const Real& e) {
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = a[i] + b[i];
        if (v > 0.0) s += Real(w[i]) * pow(Real(v), e);
    }
    return s;
}

inline bool all_positive(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

template <class Real>
struct PairEval {
    std::span<const double> w, f, g;
    Real p;

    Real sum_f, sum_g, sum_fg, ratio;

    PairEval(std::span<const double> w_, std::span<const double> f_,
             std::span<const double> g_, double p_)
        : w(w_), f(f_), g(g_), p(p_) {
        sum_f = psum(w, f, p);
        sum_g = psum(w, g, p);
        sum_fg = psum_sum(w, f, g, p);
        ratio = sum_fg / (sum_f + sum_g);
    }

    Real gamma() const {
        return 2 * psum_prod(w, f, p / 2, g, p / 2) / (sum_f + sum_g);
    }

    // o = false: (f,g); o = true: (g,f)
    Real t1(bool swapped) const {
        const auto& a = swapped ? g : f;
        const auto& b = swapped ? f : g;
        const Real sb = swapped ? sum_f : sum_g;
        return psum_prod(w, a, Real(1), b, p - 1) / sb;
    }
    Real t2(bool swapped) const {
        const auto& a = swapped ? g : f;
        const auto& b = swapped ? f : g;
        const Real sb = swapped ? sum_f : sum_g;
        return pow(psum_prod(w, a, p - 1, b, Real(1)) / sb, 1 / (p - 1));
    }
    Real t_pow_p(bool swapped) const {
        return swapped ? sum_g / sum_f : sum_f / sum_g;
    }

    Real j_value(bool swapped, const Real& t) const {
        return 1 + (pow(1 + t, p) - 1 - pow(t, p)) / (1 + t_pow_p(swapped));
    }
    Real lower_factor(bool swapped) const { return j_value(swapped, t1(swapped)); }
    Real upper_factor(bool swapped) const { return j_value(swapped, t2(swapped)); }
};

}  // namespace detail

/// Margin of one pair-input catalog inequality, recomputed from scratch.
/// Positive margin = the inequality holds strictly. Throws on ids whose
/// regime excludes the given p.
template <class Real>
Margin<Real> pair_margin(std::string_view id, std::span<const double> w,
                         std::span<const double> f, std::span<const double> g, double p_in) {
    using detail::PairEval;
    using detail::psum;
    using detail::psum_prod;
    using detail::psum_sum;
    using std::abs;
    using std::pow;
    using std::sqrt;

    PairEval<Real> e(w, f, g, p_in);
    const Real p = e.p;
    const bool at_least_2 = p_in >= 2.0 - 1e-12;
    const bool positive = detail::all_positive(f) && detail::all_positive(g);
    const auto ratio_bound = [&](Real bound, bool upper) {
        Margin<Real> m;
        m.lhs = e.ratio;
        m.rhs = bound;
        m.margin = upper ? bound - e.ratio : e.ratio - bound;
        return m;
    };

    if (id == "trivial_bound") return ratio_bound(pow(Real(2), p - 1), true);

    if (id == "carbery_bound") {
        if (!at_least_2) throw std::domain_error("carbery_bound: requires p >= 2");
        const Real overlap = pow(psum_prod(w, f, p / 2, g, p / 2), 2 / p) /
                             (pow(e.sum_f, 1 / p) * pow(e.sum_g, 1 / p));
        return ratio_bound(pow(1 + overlap, p - 1), true);
    }

    if (id == "cfil_bound") {
        if (!at_least_2 && !positive)
            throw std::invalid_argument("cfil_bound: reverse needs strictly positive inputs");
        const Real v = pow(1 + pow(e.gamma(), 2 / p), p - 1);
        return ratio_bound(v, at_least_2);
    }

    if (id == "mooney_bound") {
        const Real gam = e.gamma();
        Real g2 = 1 - gam * gam;
        if (g2 < 0) g2 = 0;
        const Real s = sqrt(g2);
        const Real lo = gam * gam / (2 * (1 + s));
        const Real v = pow(pow((1 + s) / 2, 1 / p) + pow(lo, 1 / p), p);
        return ratio_bound(v, at_least_2);
    }

    if (id == "sandwich") {
        Margin<Real> best;
        bool have = false;
        const auto consider = [&](const Margin<Real>& m) {
            if (!have || m.margin < best.margin) best = m;
            have = true;
        };
        if (at_least_2) {
            consider(ratio_bound(std::max(e.lower_factor(false), e.lower_factor(true)), false));
            consider(ratio_bound(std::min(e.upper_factor(false), e.upper_factor(true)), true));
        } else {
            consider(ratio_bound(std::max(e.upper_factor(false), e.upper_factor(true)), false));
            if (positive)
                consider(ratio_bound(std::min(e.lower_factor(false), e.lower_factor(true)), true));
        }
        return best;
    }

    if (id == "holder_chain") {
        if (!at_least_2) throw std::domain_error("holder_chain: requires p >= 2");
        Margin<Real> best;
        bool have = false;
        for (bool swapped : {false, true}) {
            const Real t1 = e.t1(swapped), t2 = e.t2(swapped);
            const Real t = pow(e.t_pow_p(swapped), 1 / p);
            for (auto [lo, hi] : {std::pair{t1, t2}, std::pair{t2, t}}) {
                Margin<Real> m{hi - lo, lo, hi};
                if (!have || m.margin < best.margin) best = m;
                have = true;
            }
        }
        return best;
    }

    if (id == "simplified_lower") {
        if (!at_least_2 && !positive)
            throw std::invalid_argument("simplified_lower: reverse needs strictly positive inputs");
        Margin<Real> best;
        bool have = false;
        for (bool swapped : {false, true}) {
            const Real t1 = e.t1(swapped);
            const Real simp =
                1 + (pow(Real(2), p) - 2) * pow(t1, p / 2) / (1 + e.t_pow_p(swapped));
            const Real jlo = e.lower_factor(swapped);
            // chain: simplified <= lower_factor <= ratio for p >= 2, reversed below
            Margin<Real> m1{at_least_2 ? jlo - simp : simp - jlo, simp, jlo};
            Margin<Real> m2 = ratio_bound(jlo, !at_least_2);
            for (const auto& m : {m1, m2}) {
                if (!have || m.margin < best.margin) best = m;
                have = true;
            }
        }
        return best;
    }

    if (id == "interpolated_bound") {
        if (!at_least_2) throw std::domain_error("interpolated_bound: requires p >= 2");
        const Real t2 = e.t2(false);
        const Real t = pow(e.t_pow_p(false), 1 / p);
        Real lam = t2 / t;
        if (lam > 1) lam = 1;
        const Real nf = pow(e.sum_f, 1 / p), ng = pow(e.sum_g, 1 / p);
        const Real interp = lam * pow(nf + ng, p) + (1 - lam) * (e.sum_f + e.sum_g);
        const Real cap = pow(Real(2), p - 1) * (e.sum_f + e.sum_g);
        Margin<Real> m1{interp - e.sum_fg, e.sum_fg, interp};
        Margin<Real> m2{cap - interp, interp, cap};
        return m1.margin < m2.margin ? m1 : m2;
    }

    if (id == "shifted_holder_chain") {
        // f in L^p, g in L^q pairing; stated direction needs p > 1.
        if (!(p_in > 1.0)) throw std::domain_error("shifted_holder_chain: requires p > 1");
        const Real q = p / (p - 1);
        const Real norm_g_q = pow(psum(w, g, q), 1 / q);
        const Real first = psum_prod(w, f, Real(1), g, Real(1));
        Real sum_shift = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Real gr = g[i] > 0.0 ? pow(Real(g[i]), 1 / (p - 1)) : Real(0);
            const Real v = Real(f[i]) + gr;
            if (v > 0) sum_shift += Real(w[i]) * pow(v, p);
        }
        Real sum_root = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] > 0.0) sum_root += Real(w[i]) * pow(Real(g[i]), p / (p - 1));
        const Real middle = norm_g_q * (pow(sum_shift, 1 / p) - pow(sum_root, 1 / p));
        const Real last = norm_g_q * pow(e.sum_f, 1 / p);
        Margin<Real> m1{middle - first, first, middle};
        Margin<Real> m2{last - middle, middle, last};
        return m1.margin < m2.margin ? m1 : m2;
    }

    if (id == "reverse_minkowski") {
        if (!(p_in > 1.0)) throw std::domain_error("reverse_minkowski: requires p > 1");
        const Real ng = pow(e.sum_g, 1 / p);
        const Real lower = ng + psum_prod(w, f, Real(1), g, p - 1) / pow(ng, p - 1);
        const Real mid = pow(e.sum_fg, 1 / p);
        const Real upper = pow(e.sum_f, 1 / p) + ng;
        Margin<Real> m1{mid - lower, lower, mid};
        Margin<Real> m2{upper - mid, mid, upper};
        return m1.margin < m2.margin ? m1 : m2;
    }

    if (id == "error_cap") {
        if (!(p_in > 1.0)) throw std::domain_error("error_cap: requires p > 1");
        const bool swapped = e.sum_f > e.sum_g;  // smaller norm leads
        const Real gap = abs(e.upper_factor(swapped) - e.lower_factor(swapped));
        const Real cap = p * pow(Real(2), p - 1) * abs(e.t2(swapped) - e.t1(swapped));
        return Margin<Real>{cap - gap, gap, cap};
    }

    if (id == "hanner_difference") {
        if (!(p_in > 1.0)) throw std::domain_error("hanner_difference: requires p > 1");
        const Real nf = pow(e.sum_f, 1 / p), ng = pow(e.sum_g, 1 / p);
        Real lhs = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Real d = abs(Real(f[i]) / nf - Real(g[i]) / ng);
            if (d > 0) lhs += Real(w[i]) * pow(d, p);
        }
        Real inner = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] > 0.0 && g[i] > 0.0)
                inner += Real(w[i]) * (Real(f[i]) / nf) * pow(Real(g[i]) / ng, p - 1);
        const Real rhs = (pow(Real(2), p) - 2) * (1 - pow(inner, p / 2));
        const bool upper = at_least_2;
        return Margin<Real>{upper ? rhs - lhs : lhs - rhs, lhs, rhs};
    }

    throw std::invalid_argument("pair_margin: unknown inequality id '" + std::string(id) + "'");
}

/// Margin of one family-input catalog inequality.
template <class Real>
Margin<Real> family_margin(std::string_view id, std::span<const double> w,
                           std::span<const std::vector<double>> values, double p_in) {
    using std::pow;
    const Real p = p_in;
    const std::size_t atoms = w.size();
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("family_margin: need n >= 2");

    std::vector<Real> total(atoms, Real(0)), cross(atoms, Real(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < atoms; ++i) {
            cross[i] += Real(values[j][i]) * total[i];
            total[i] += Real(values[j][i]);
        }

    Real lhs = 0;
    for (std::size_t i = 0; i < atoms; ++i)
        if (total[i] > 0) lhs += Real(w[i]) * pow(total[i], p);
    Real sum_norms = 0;
    for (std::size_t j = 0; j < n; ++j)
        sum_norms += detail::psum(w, std::span<const double>(values[j]), p);
    Real cross_norm_ps = 0;
    for (std::size_t i = 0; i < atoms; ++i)
        if (cross[i] > 0) cross_norm_ps += Real(w[i]) * pow(cross[i], p / 2);
    const Real cross_norm = cross_norm_ps > 0 ? pow(cross_norm_ps, 2 / p) : Real(0);

    if (id == "mooney_sum_bound") {
        Real cross_sum = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                cross_sum += detail::psum_prod(w, std::span<const double>(values[a]), p / 2,
                                               std::span<const double>(values[b]), p / 2);
        const Real rhs = sum_norms + (pow(Real(2), p) - 2) * cross_sum;
        const bool upper = p_in <= 2.0 + 1e-12;  // reversed for p >= 2
        return Margin<Real>{upper ? rhs - lhs : lhs - rhs, lhs, rhs};
    }

    if (id == "nsum_upper") {
        if (!(p_in >= 2.0 - 1e-12)) throw std::domain_error("nsum_upper: requires p >= 2");
        const Real c_p = std::max(p, 4 - pow(Real(2), 3 - p));
        const Real rhs = sum_norms + c_p * pow(lhs, (p - 2) / p) * cross_norm;
        return Margin<Real>{rhs - lhs, lhs, rhs};
    }

    if (id == "nsum_lower") {
        if (!(p_in >= 1.0 && p_in <= 2.0 + 1e-12))
            throw std::domain_error("nsum_lower: requires p in [1,2]");
        if (lhs == 0) throw std::invalid_argument("nsum_lower: zero sum");
        const Real c_pp = 4 - pow(Real(2), 3 - p);
        const Real rhs = sum_norms + c_pp * cross_norm / pow(lhs, (2 - p) / p);
        return Margin<Real>{lhs - rhs, lhs, rhs};
    }

    throw std::invalid_argument("family_margin: unknown inequality id '" + std::string(id) + "'");
}

}  // namespace lptri::mp
