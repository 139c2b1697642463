#include "lptri/multi.hpp"

#include "lptri/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lptri {

CConstants c_constants(double p) {
    if (!(p >= 1.0)) throw std::domain_error("c_constants: requires p >= 1");
    const double prime = 4.0 - std::exp2(3.0 - p);
    return {std::max(p, prime), prime};
}

double scalar_kernel(double p, double t) {
    if (!(p >= 1.0)) throw std::domain_error("scalar_kernel: requires p >= 1");
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("scalar_kernel: t must lie in (0,1]");
    return gap_kernel(p, t) / (t * std::pow(1.0 + t, p - 2.0));
}

CheckOutcome scalar_bound_check(std::span<const double> a, double p, double tol) {
    if (a.size() < 2) throw std::invalid_argument("scalar_bound_check: need at least 2 terms");
    if (!(p >= 1.0)) throw std::domain_error("scalar_bound_check: requires p >= 1");
    double total = 0.0, sum_pow = 0.0, sum_sq = 0.0;
    for (double x : a) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("scalar_bound_check: terms must be finite and >= 0");
        total += x;
        sum_sq += x * x;
        if (x > 0.0) sum_pow += std::pow(x, p);
    }
    const bool upper = p >= 2.0;
    if (!upper && total == 0.0)
        throw std::invalid_argument("scalar_bound_check: lower form needs a positive sum");

    const double cross = (total * total - sum_sq) / 2.0;  // sum_{i<j} a_i a_j
    const double lhs = total > 0.0 ? std::pow(total, p) : 0.0;
    const auto [c_p, c_p_prime] = c_constants(p);

    double rhs;
    if (upper) {
        rhs = sum_pow + c_p * (total > 0.0 ? std::pow(total, p - 2.0) : 0.0) * cross;
    } else {
        rhs = sum_pow + c_p_prime * cross / std::pow(total, 2.0 - p);
    }

    CheckOutcome out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.margin = upper ? rhs - lhs : lhs - rhs;
    out.verdict = classify_margin(out.margin, margin_scale(lhs, rhs), tol);
    return out;
}

double verify_cp_extremal(double p, int grid_size, int refine_iters) {
    if (!(p >= 1.0)) throw std::domain_error("verify_cp_extremal: requires p >= 1");
    if (grid_size < 1000) throw std::invalid_argument("verify_cp_extremal: grid_size must be >= 1000");
    const bool maximize = p >= 2.0;

    // Log-spaced grid on (0,1]; the sup can live in the t -> 0 limit.
    const double t_min = 1e-9;
    const double log_lo = std::log(t_min);
    double best_t = 1.0;
    double best = scalar_kernel(p, 1.0);
    for (int i = 0; i < grid_size; ++i) {
        const double t = std::exp(log_lo * (1.0 - double(i) / (grid_size - 1)));
        const double v = scalar_kernel(p, t);
        if (maximize ? v > best : v < best) {
            best = v;
            best_t = t;
        }
    }

    // Golden-section refinement inside the bracketing grid cells.
    const double step = std::exp(-log_lo / (grid_size - 1));  // grid ratio > 1
    double lo = std::max(t_min / step, best_t / step);
    double hi = std::min(1.0, best_t * step);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = scalar_kernel(p, x1);
    double f2 = scalar_kernel(p, x2);
    for (int i = 0; i < refine_iters; ++i) {
        const bool move_left = maximize ? f1 > f2 : f1 < f2;
        if (move_left) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = scalar_kernel(p, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = scalar_kernel(p, x2);
        }
    }
    const double refined = scalar_kernel(p, 0.5 * (lo + hi));
    return maximize ? std::max({best, refined, f1, f2}) : std::min({best, refined, f1, f2});
}

namespace {

WeightedFunction sum_of(std::span<const WeightedFunction> fs) {
    if (fs.empty()) throw std::invalid_argument("sum_of: empty family");
    WeightedFunction acc = fs[0];
    for (std::size_t j = 1; j < fs.size(); ++j) acc = add(acc, fs[j]);
    return acc;
}

}  // namespace

WeightedFunction cross_product_sum(std::span<const WeightedFunction> fs) {
    if (fs.empty()) throw std::invalid_argument("cross_product_sum: empty family");
    const auto& sp = fs[0].space_ptr();
    std::vector<double> out(fs[0].size(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0, sq = 0.0;
        for (const auto& f : fs) {
            if (!same_space(f.space(), *sp))
                throw std::invalid_argument("cross_product_sum: mixed spaces");
            s += f.value(i);
            sq += f.value(i) * f.value(i);
        }
        out[i] = std::max(0.0, (s * s - sq) / 2.0);
    }
    return {sp, std::move(out)};
}

CheckOutcome nsum_upper_check(std::span<const WeightedFunction> fs, double p, double tol) {
    if (fs.size() < 2) throw std::invalid_argument("nsum_upper_check: need n >= 2");
    if (!(p >= 2.0)) throw std::domain_error("nsum_upper_check: requires p >= 2");
    const auto total = sum_of(fs);
    const double lhs = power_sum(total, p);
    double sum_norms = 0.0;
    for (const auto& f : fs) sum_norms += power_sum(f, p);
    const auto cross = cross_product_sum(fs);
    const double cross_norm = cross.is_zero() ? 0.0 : std::pow(power_sum(cross, p / 2.0), 2.0 / p);
    const double rhs =
        sum_norms + c_constants(p).c_p * std::pow(norm_p(total, p), p - 2.0) * cross_norm;
    CheckOutcome out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.margin = rhs - lhs;
    out.verdict = classify_margin(out.margin, margin_scale(lhs, rhs), tol);
    return out;
}

CheckOutcome nsum_lower_check(std::span<const WeightedFunction> fs, double p, double tol) {
    if (fs.size() < 2) throw std::invalid_argument("nsum_lower_check: need n >= 2");
    if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("nsum_lower_check: requires p in [1,2]");
    const auto total = sum_of(fs);
    if (total.is_zero())
        throw std::invalid_argument("nsum_lower_check: sum must not be the zero function");
    const double lhs = power_sum(total, p);
    double sum_norms = 0.0;
    for (const auto& f : fs) sum_norms += power_sum(f, p);
    const auto cross = cross_product_sum(fs);
    const double cross_norm = cross.is_zero() ? 0.0 : std::pow(power_sum(cross, p / 2.0), 2.0 / p);
    const double rhs =
        sum_norms + c_constants(p).c_p_prime * cross_norm / std::pow(norm_p(total, p), 2.0 - p);
    CheckOutcome out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.margin = lhs - rhs;
    out.verdict = classify_margin(out.margin, margin_scale(lhs, rhs), tol);
    return out;
}

FunctionFamily FunctionFamily::explicit_list(std::vector<WeightedFunction> fs) {
    if (fs.empty()) throw std::invalid_argument("FunctionFamily: empty explicit list");
    FunctionFamily fam;
    fam.kind = Kind::Explicit;
    fam.space = fs[0].space_ptr();
    for (const auto& f : fs)
        if (!same_space(f.space(), *fam.space))
            throw std::invalid_argument("FunctionFamily: members on different spaces");
    fam.n_max = static_cast<int>(fs.size());
    fam.members_ = std::move(fs);
    return fam;
}

FunctionFamily FunctionFamily::geometric(std::shared_ptr<const MeasureSpace> space, double c,
                                         double r, int n_max) {
    if (!(c >= 0.0) || !(r >= 0.0)) throw std::invalid_argument("FunctionFamily: c, r must be >= 0");
    if (n_max < 1) throw std::invalid_argument("FunctionFamily: n_max must be >= 1");
    FunctionFamily fam;
    fam.kind = Kind::Geometric;
    fam.space = std::move(space);
    fam.coeff = c;
    fam.ratio = r;
    fam.n_max = n_max;
    return fam;
}

FunctionFamily FunctionFamily::power_law(std::shared_ptr<const MeasureSpace> space, double c,
                                         double s, int n_max) {
    if (!(c >= 0.0)) throw std::invalid_argument("FunctionFamily: c must be >= 0");
    if (n_max < 1) throw std::invalid_argument("FunctionFamily: n_max must be >= 1");
    FunctionFamily fam;
    fam.kind = Kind::PowerLaw;
    fam.space = std::move(space);
    fam.coeff = c;
    fam.decay = s;
    fam.n_max = n_max;
    return fam;
}

FunctionFamily FunctionFamily::disjoint_atoms(std::shared_ptr<const MeasureSpace> space,
                                              double ratio, int n_max) {
    if (!(ratio > 0.0)) throw std::invalid_argument("FunctionFamily: ratio must be > 0");
    if (n_max < 1) throw std::invalid_argument("FunctionFamily: n_max must be >= 1");
    if (space->size() < static_cast<std::size_t>(n_max))
        throw std::invalid_argument("FunctionFamily: disjoint_atoms needs n_max atoms");
    FunctionFamily fam;
    fam.kind = Kind::DisjointAtoms;
    fam.space = std::move(space);
    fam.ratio = ratio;
    fam.n_max = n_max;
    return fam;
}

WeightedFunction FunctionFamily::member(int j) const {
    if (j < 1 || j > n_max) throw std::out_of_range("FunctionFamily::member: index out of range");
    switch (kind) {
        case Kind::Explicit:
            return members_[static_cast<std::size_t>(j - 1)];
        case Kind::Geometric: {
            const double v = coeff * std::pow(ratio, j);
            return {space, std::vector<double>(space->size(), v)};
        }
        case Kind::PowerLaw: {
            const double v = coeff * std::pow(double(j), -decay);
            return {space, std::vector<double>(space->size(), v)};
        }
        case Kind::DisjointAtoms: {
            std::vector<double> vals(space->size(), 0.0);
            vals[static_cast<std::size_t>(j - 1)] = std::pow(ratio, j);
            return {space, std::move(vals)};
        }
    }
    throw std::logic_error("FunctionFamily::member: bad kind");
}

namespace {

ConvergenceFlag flag_column(const std::vector<double>& col, const SummabilityConfig& cfg) {
    const double last = col.back();
    if (last > cfg.growth_cap) return ConvergenceFlag::NonConvergingAtNMax;
    if (last <= 0.0) return ConvergenceFlag::Saturating;
    const double mid = col[col.size() / 2];
    const double rel_growth = (last - mid) / last;
    return rel_growth <= cfg.saturation_tol ? ConvergenceFlag::Saturating
                                            : ConvergenceFlag::NonConvergingAtNMax;
}

}  // namespace

SummabilityReport summability_report(const FunctionFamily& family, double p,
                                     SummabilityConfig config) {
    if (!(p >= 1.0)) throw std::domain_error("summability_report: requires p >= 1");
    const int n_max = family.size();
    if (n_max < 1) throw std::invalid_argument("summability_report: empty family");

    SummabilityReport rep;
    rep.p = p;
    rep.config = config;
    rep.rows.reserve(static_cast<std::size_t>(n_max));

    const auto sp = family.member(1).space_ptr();
    const std::size_t atoms = sp->size();
    std::vector<double> partial(atoms, 0.0);  // sum_{j<=n} f_j
    std::vector<double> cross(atoms, 0.0);    // sum_{i<j<=n} f_i f_j
    double sum_norms = 0.0;
    double cross_sum = 0.0;

    std::vector<WeightedFunction> seen;
    seen.reserve(static_cast<std::size_t>(n_max));

    for (int n = 1; n <= n_max; ++n) {
        const auto fn = family.member(n);
        // cross_sum gains sum_{i<n} ||f_i f_n||_{p/2}^{p/2}
        for (const auto& fi : seen)
            cross_sum += power_sum(pointwise(fi, fn, PointwiseOp::Product), p / 2.0);
        // cross function gains f_n * (previous partial sum)
        for (std::size_t k = 0; k < atoms; ++k) cross[k] += fn.value(k) * partial[k];
        for (std::size_t k = 0; k < atoms; ++k) partial[k] += fn.value(k);
        sum_norms += power_sum(fn, p);
        seen.push_back(fn);

        const WeightedFunction total(sp, partial);
        const WeightedFunction cross_fn(sp, cross);
        SummabilityRow row;
        row.n = n;
        row.lhs = power_sum(total, p);
        row.sum_norms = sum_norms;
        row.cross_sum = cross_sum;
        row.cross_norm =
            cross_fn.is_zero() ? 0.0 : std::pow(power_sum(cross_fn, p / 2.0), 2.0 / p);
        const double norm_total = total.is_zero() ? 0.0 : norm_p(total, p);
        const auto [c_p, c_p_prime] = c_constants(p);
        row.nsum_upper_rhs =
            row.sum_norms + (norm_total > 0.0 ? c_p * std::pow(norm_total, p - 2.0) * row.cross_norm
                                              : 0.0);
        row.nsum_lower_rhs =
            row.sum_norms + (norm_total > 0.0
                                 ? c_p_prime * row.cross_norm / std::pow(norm_total, 2.0 - p)
                                 : 0.0);
        rep.rows.push_back(row);
    }

    std::vector<double> lhs_col, sn_col, cs_col, cn_col;
    for (const auto& r : rep.rows) {
        lhs_col.push_back(r.lhs);
        sn_col.push_back(r.sum_norms);
        cs_col.push_back(r.cross_sum);
        cn_col.push_back(r.cross_norm);
    }
    rep.lhs_flag = flag_column(lhs_col, config);
    rep.sum_norms_flag = flag_column(sn_col, config);
    rep.cross_sum_flag = flag_column(cs_col, config);
    rep.cross_norm_flag = flag_column(cn_col, config);

    const bool norms_ok = rep.sum_norms_flag == ConvergenceFlag::Saturating;
    const bool cs_ok = rep.cross_sum_flag == ConvergenceFlag::Saturating;
    const bool cn_ok = rep.cross_norm_flag == ConvergenceFlag::Saturating;
    if (p <= 2.0) {
        rep.sufficient_condition_met = norms_ok && cs_ok;
        rep.necessary_condition_met = norms_ok && cn_ok;
    } else {
        rep.sufficient_condition_met = norms_ok && cn_ok;
        rep.necessary_condition_met = norms_ok && cs_ok;
    }
    return rep;
}

}  // namespace lptri
