#pragma once

#include "lptri/exponent.hpp"
#include "lptri/measure.hpp"

namespace lptri {

/// max positive value / min positive value; 1.0 when fewer than two
/// distinct positive atoms exist.
double dynamic_range(const WeightedFunction& f);

/// log(sum_i w_i f_i^p) over the atoms with f_i > 0 (stable
/// log-sum-exp of p*log f_i + log w_i). Returns -inf for f == 0.
double log_power_sum(const WeightedFunction& f, double p);

/// sum_i w_i f_i^p. Plain summation on the direct path; goes through
/// log_power_sum when p > 32 or the dynamic range exceeds 1e8.
double power_sum(const WeightedFunction& f, double p);

/// (sum_i w_i f_i^p)^(1/p). Path choice as in power_sum, also forced
/// to the log domain when ctx.eval_path says so. 0 for f == 0.
double norm_p(const WeightedFunction& f, const ExponentContext& ctx);
double norm_p(const WeightedFunction& f, double p);

/// sum_i w_i f_i^s for any s != 0; s < 0 needs a strictly positive f.
double power_sum_any(const WeightedFunction& f, double s);

/// (sum_i w_i f_i^s)^{1/s} for any s != 0 (conjugate exponents of
/// p in (0,1) are negative).
double norm_any(const WeightedFunction& f, double s);

/// Force a specific evaluation path (the two must agree to 1e-12
/// relative wherever both are defined).
double norm_p_path(const WeightedFunction& f, double p, EvalPath path);

/// Generalized binomial coefficient C(p, k) = p(p-1)...(p-k+1)/k!.
double binomial_coeff(double p, int k);

/// H(t) = (1+t)^p - 1 - t^p, evaluated without cancellation:
///   t in [1e-4, 1]: expm1(p*log1p(t)) - t^p
///   t <  1e-4:      p*t + C(p,2)t^2 + C(p,3)t^3 + C(p,4)t^4 - t^p
///   t >  1:         t^p * H(1/t)   (exact reflection identity)
double gap_kernel(double p, double t);

}  // namespace lptri
