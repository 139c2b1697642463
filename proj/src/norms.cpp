#include "lptri/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lptri {

namespace {

constexpr double kDirectMaxP = 32.0;
constexpr double kDirectMaxRange = 1e8;

bool wants_log_domain(const WeightedFunction& f, double p) {
    return p > kDirectMaxP || dynamic_range(f) > kDirectMaxRange;
}

double direct_power_sum(const WeightedFunction& f, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f.value(i);
        if (v > 0.0) s += f.weight(i) * std::pow(v, p);
    }
    return s;
}

}  // namespace

double dynamic_range(const WeightedFunction& f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f.value(i);
        if (v > 0.0) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi == 0.0 ? 1.0 : hi / lo;
}

double log_power_sum(const WeightedFunction& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("log_power_sum: p must be > 0");
    // Max-shifted log-sum-exp over the positive atoms.
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f.value(i);
        if (v > 0.0) {
            const double t = p * std::log(v) + std::log(f.weight(i));
            terms.push_back(t);
            max_term = std::max(max_term, t);
        }
    }
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_term);
    return max_term + std::log(acc);
}

double power_sum(const WeightedFunction& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("power_sum: p must be > 0");
    if (f.is_zero()) return 0.0;
    if (wants_log_domain(f, p)) return std::exp(log_power_sum(f, p));
    return direct_power_sum(f, p);
}

double norm_p_path(const WeightedFunction& f, double p, EvalPath path) {
    if (!(p > 0.0)) throw std::invalid_argument("norm_p: p must be > 0");
    if (f.is_zero()) return 0.0;
    if (path == EvalPath::LogDomain) return std::exp(log_power_sum(f, p) / p);
    return std::pow(direct_power_sum(f, p), 1.0 / p);
}

double norm_p(const WeightedFunction& f, const ExponentContext& ctx) {
    const bool log_path = ctx.eval_path == EvalPath::LogDomain || wants_log_domain(f, ctx.p);
    return norm_p_path(f, ctx.p, log_path ? EvalPath::LogDomain : EvalPath::Direct);
}

double norm_p(const WeightedFunction& f, double p) {
    const bool log_path = wants_log_domain(f, p);
    return norm_p_path(f, p, log_path ? EvalPath::LogDomain : EvalPath::Direct);
}

double power_sum_any(const WeightedFunction& f, double s) {
    if (s == 0.0 || !std::isfinite(s)) throw std::invalid_argument("power_sum_any: s must be finite, nonzero");
    if (s > 0.0) return power_sum(f, s);
    if (!f.strictly_positive())
        throw std::invalid_argument("power_sum_any: negative exponent needs strictly positive values");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += f.weight(i) * std::pow(f.value(i), s);
    return acc;
}

double norm_any(const WeightedFunction& f, double s) {
    if (s > 0.0) return norm_p(f, s);
    return std::pow(power_sum_any(f, s), 1.0 / s);
}

double binomial_coeff(double p, int k) {
    if (k < 0) throw std::invalid_argument("binomial_coeff: k must be >= 0");
    double c = 1.0;
    for (int j = 0; j < k; ++j) c *= (p - j) / (j + 1);
    return c;
}

double gap_kernel(double p, double t) {
    if (!(p > 0.0)) throw std::invalid_argument("gap_kernel: p must be > 0");
    if (!(t >= 0.0)) throw std::invalid_argument("gap_kernel: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (t > 1.0) {
        // H(t) = t^p H(1/t): both big powers sit in the factor, not in a
        // difference.
        return std::pow(t, p) * gap_kernel(p, 1.0 / t);
    }
    const double tp = std::pow(t, p);
    if (t >= 1e-4) return std::expm1(p * std::log1p(t)) - tp;
    double s = 0.0;
    double tk = t;
    for (int k = 1; k <= 4; ++k) {
        s += binomial_coeff(p, k) * tk;
        tk *= t;
    }
    return s - tp;
}

}  // namespace lptri
