#include "lptri/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lptri {

PairInput PairInput::make(WeightedFunction f, WeightedFunction g, ExponentContext ctx) {
    if (!same_space(f.space(), g.space()))
        throw std::invalid_argument("PairInput: functions live on different spaces");
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("PairInput: both norms must be nonzero");
    return {std::move(f), std::move(g), ctx};
}

PairInput PairInput::make(WeightedFunction f, WeightedFunction g, double p) {
    return make(std::move(f), std::move(g), ExponentContext::make(p));
}

const char* to_string(EqualityKind k) {
    switch (k) {
        case EqualityKind::ProportionalOnSupportG: return "ProportionalOnSupportG";
        case EqualityKind::ProportionalOnSupportF: return "ProportionalOnSupportF";
        case EqualityKind::ProportionalEverywhere: return "ProportionalEverywhere";
        case EqualityKind::DisjointSupports:       return "DisjointSupports";
        case EqualityKind::Generic:                return "Generic";
    }
    return "?";
}

const BoundEntry* BoundReport::entry(std::string_view id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

namespace {

const WeightedFunction& lead(const PairInput& pair, Orientation o) {
    return o == Orientation::fg ? pair.f : pair.g;
}
const WeightedFunction& trail(const PairInput& pair, Orientation o) {
    return o == Orientation::fg ? pair.g : pair.f;
}

void require_regime(const PairInput& pair, Regime wanted, const char* what) {
    if (pair.ctx.regime == wanted) return;
    if (wanted == Regime::AtLeast2 && pair.ctx.regime == Regime::Exactly2) return;
    throw std::domain_error(std::string(what) + ": unsupported regime for p = " +
                            std::to_string(pair.ctx.p));
}

}  // namespace

double ratio_p(const PairInput& pair) {
    const double p = pair.ctx.p;
    return power_sum(add(pair.f, pair.g), p) /
           (power_sum(pair.f, p) + power_sum(pair.g, p));
}

GammaStatistic gamma_p(const PairInput& pair) {
    const double p = pair.ctx.p;
    const auto fg = pointwise(pair.f, pair.g, PointwiseOp::Product);
    const double num = 2.0 * power_sum(fg, p / 2.0);
    return {num / (power_sum(pair.f, p) + power_sum(pair.g, p))};
}

HolderRatios holder_ratios(const PairInput& pair, Orientation o) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("holder_ratios: requires p > 1");
    const auto& a = lead(pair, o);
    const auto& b = trail(pair, o);

    const double sb = power_sum(b, p);  // ||b||_p^p, nonzero by PairInput
    const double sa = power_sum(a, p);

    // T1 = <a b^{p-1}> / <b^p>
    const auto ab_pm1 = pointwise(a, b, PointwiseOp::Product, p - 1.0);
    const double t1 = power_sum(ab_pm1, 1.0) / sb;

    // T2 = ||a b^{1/(p-1)}||_{p-1} / ||b^q||_{p-1} = (<a^{p-1} b> / <b^p>)^{1/(p-1)}
    const auto b_a_pm1 = pointwise(b, a, PointwiseOp::Product, p - 1.0);
    const double t2 = std::pow(power_sum(b_a_pm1, 1.0) / sb, 1.0 / (p - 1.0));

    const double t = std::pow(sa / sb, 1.0 / p);
    HolderRatios r;
    r.T = t;
    r.T1 = t1;
    r.T2 = t2;
    r.lambda = t > 0.0 ? t2 / t : 0.0;
    return r;
}

double carbery_factor(const PairInput& pair) {
    require_regime(pair, Regime::AtLeast2, "carbery_factor");
    const double p = pair.ctx.p;
    const auto fg = pointwise(pair.f, pair.g, PointwiseOp::Product);
    const double fg_half = std::pow(power_sum(fg, p / 2.0), 2.0 / p);  // ||fg||_{p/2}
    const double overlap = fg_half / (norm_p(pair.f, pair.ctx) * norm_p(pair.g, pair.ctx));
    return std::pow(1.0 + overlap, p - 1.0);
}

DirectedBound cfil_factor(const PairInput& pair) {
    const double p = pair.ctx.p;
    const bool upper = pair.ctx.at_least_two();
    if (!upper && !(pair.f.strictly_positive() && pair.g.strictly_positive()))
        throw std::invalid_argument(
            "cfil_factor: reverse direction for p in (1,2) needs strictly positive inputs");
    const double gamma = gamma_p(pair).gamma;
    const double value = std::pow(1.0 + std::pow(gamma, 2.0 / p), p - 1.0);
    return {value, upper ? BoundDirection::Upper : BoundDirection::Lower};
}

DirectedBound mooney_factor(const PairInput& pair) {
    const double p = pair.ctx.p;
    const double gamma = gamma_p(pair).gamma;
    double one_minus_g2 = (1.0 - gamma) * (1.0 + gamma);
    if (one_minus_g2 < 0.0) {
        if (one_minus_g2 < -1e-12)
            throw std::domain_error("mooney_factor: Gamma_p exceeds 1 beyond tolerance");
        one_minus_g2 = 0.0;  // Cauchy-Schwarz saturation plus rounding
    }
    const double s = std::sqrt(one_minus_g2);
    // (1-s)/2 = Gamma^2 / (2(1+s)) sidesteps the cancellation at small Gamma
    const double lo = gamma * gamma / (2.0 * (1.0 + s));
    const double hi = (1.0 + s) / 2.0;
    const double value = std::pow(std::pow(hi, 1.0 / p) + std::pow(lo, 1.0 / p), p);
    const bool upper = pair.ctx.at_least_two();
    return {value, upper ? BoundDirection::Upper : BoundDirection::Lower};
}

double upper_factor(const PairInput& pair, Orientation o) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("upper_factor: requires p > 1");
    const auto r = holder_ratios(pair, o);
    const double tp = power_sum(lead(pair, o), p) / power_sum(trail(pair, o), p);
    return 1.0 + gap_kernel(p, r.T2) / (1.0 + tp);
}

double lower_factor(const PairInput& pair, Orientation o) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("lower_factor: requires p > 1");
    const auto r = holder_ratios(pair, o);
    const double tp = power_sum(lead(pair, o), p) / power_sum(trail(pair, o), p);
    return 1.0 + gap_kernel(p, r.T1) / (1.0 + tp);
}

double simplified_lower(const PairInput& pair, Orientation o) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("simplified_lower: requires p > 1");
    const auto r = holder_ratios(pair, o);
    const double tp = power_sum(lead(pair, o), p) / power_sum(trail(pair, o), p);
    const double two_pow = std::exp2(p) - 2.0;
    return 1.0 + two_pow * std::pow(r.T1, p / 2.0) / (1.0 + tp);
}

double interpolated_upper(const PairInput& pair) {
    require_regime(pair, Regime::AtLeast2, "interpolated_upper");
    const double p = pair.ctx.p;
    const auto r = holder_ratios(pair, Orientation::fg);
    const double lambda = std::min(1.0, r.lambda);
    const double nf = norm_p(pair.f, pair.ctx);
    const double ng = norm_p(pair.g, pair.ctx);
    const double minkowski = std::pow(nf + ng, p);
    const double sum_pows = power_sum(pair.f, p) + power_sum(pair.g, p);
    return lambda * minkowski + (1.0 - lambda) * sum_pows;
}

namespace {

// ||f+h||_p - ||h||_p without forming the difference of two nearly equal
// norms: the power-sum excess (f+h)^p - h^p is accumulated per atom as
// h^p expm1(p log1p(f/h)), then lifted through the 1/p root with expm1.
double shifted_norm_gap(const WeightedFunction& f, const WeightedFunction& h, double p) {
    double excess = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double fi = f.value(i), hi = h.value(i);
        if (fi == 0.0) continue;
        if (hi == 0.0)
            excess += f.weight(i) * std::pow(fi, p);
        else
            excess += f.weight(i) * std::pow(hi, p) * std::expm1(p * std::log1p(fi / hi));
    }
    if (excess == 0.0) return 0.0;
    const double base = power_sum(h, p);
    if (base == 0.0) return std::pow(excess, 1.0 / p);
    return std::pow(base, 1.0 / p) * std::expm1(std::log1p(excess / base) / p);
}

}  // namespace

std::array<double, 3> shifted_holder_chain(const WeightedFunction& f, const WeightedFunction& g,
                                   const ExponentContext& ctx) {
    const double p = ctx.p;
    if (p == 1.0 || p <= 0.0) throw std::domain_error("shifted_holder_chain: requires p in (0,1) or (1,inf)");
    if (p < 1.0 && !g.strictly_positive())
        throw std::invalid_argument("shifted_holder_chain: reverse direction needs strictly positive g");
    if (g.is_zero()) return {0.0, 0.0, 0.0};
    const double norm_g_q = norm_any(g, ctx.q);  // q < 0 in the reverse regime

    const auto fg = pointwise(f, g, PointwiseOp::Product);
    const double first = power_sum(fg, 1.0);

    // g^{1/(p-1)} (the function whose p-norm pairs with g in L^q)
    const auto g_root = power(g, 1.0 / (p - 1.0));
    const double middle = norm_g_q * shifted_norm_gap(f, g_root, p);

    const double last = norm_g_q * norm_p(f, p);
    return {first, middle, last};
}

double reverse_minkowski_lower(const PairInput& pair) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("reverse_minkowski_lower: requires p > 1");
    const double ng = norm_p(pair.g, pair.ctx);
    const auto fg_pm1 = pointwise(pair.f, pair.g, PointwiseOp::Product, p - 1.0);
    return ng + power_sum(fg_pm1, 1.0) / std::pow(ng, p - 1.0);
}

ErrorEstimate error_estimate(const PairInput& pair) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("error_estimate: requires p > 1");
    // The smaller-norm function leads; swap roles otherwise.
    const double nf = norm_p(pair.f, pair.ctx);
    const double ng = norm_p(pair.g, pair.ctx);
    const Orientation o = nf <= ng ? Orientation::fg : Orientation::gf;
    const auto r = holder_ratios(pair, o);
    ErrorEstimate e;
    e.observed_gap = std::abs(upper_factor(pair, o) - lower_factor(pair, o));
    e.certified_cap = p * std::exp2(p - 1.0) * std::abs(r.T2 - r.T1);
    return e;
}

CheckOutcome hanner_diff_bound(const PairInput& pair, double tol) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("hanner_diff_bound: requires p > 1");
    const double nf = norm_p(pair.f, pair.ctx);
    const double ng = norm_p(pair.g, pair.ctx);
    const auto fu = scale(pair.f, 1.0 / nf);
    const auto gu = scale(pair.g, 1.0 / ng);

    const double lhs = power_sum(pointwise(fu, gu, PointwiseOp::AbsDifference), p);
    const auto fg_pm1 = pointwise(fu, gu, PointwiseOp::Product, p - 1.0);
    const double rhs =
        (std::exp2(p) - 2.0) * (1.0 - std::pow(power_sum(fg_pm1, 1.0), p / 2.0));

    const bool upper = pair.ctx.at_least_two();
    const double margin = upper ? rhs - lhs : lhs - rhs;
    CheckOutcome out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.margin = margin;
    out.verdict = classify_margin(margin, margin_scale(lhs, rhs), tol);
    return out;
}

EqualityClass classify_equality(const PairInput& pair, double tol) {
    const auto& f = pair.f;
    const auto& g = pair.g;

    double max_prod = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        max_prod = std::max(max_prod, f.value(i) * g.value(i));
    if (max_prod <= tol * f.max_value() * g.max_value())
        return {EqualityKind::DisjointSupports, std::nullopt};

    // ratio a/b constant over supp(b), up to relative tol
    const auto proportional_on = [tol](const WeightedFunction& a, const WeightedFunction& b,
                                       double& ratio_out) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b.value(i) > 0.0) {
                const double r = a.value(i) / b.value(i);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
        if (hi == 0.0 || !(hi - lo <= tol * hi)) return false;
        ratio_out = 0.5 * (hi + lo);
        return true;
    };

    double r_fg = 0.0, r_gf = 0.0;
    const bool on_g = proportional_on(f, g, r_fg);
    const bool on_f = proportional_on(g, f, r_gf);
    if (on_g && on_f)
        return {EqualityKind::ProportionalEverywhere, std::pair{1.0, r_fg}};
    if (on_g)
        return {EqualityKind::ProportionalOnSupportG, std::pair{1.0, r_fg}};
    if (on_f)
        return {EqualityKind::ProportionalOnSupportF, std::pair{r_gf, 1.0}};
    return {EqualityKind::Generic, std::nullopt};
}

BoundReport evaluate_bounds(const PairInput& pair, double tol) {
    const double p = pair.ctx.p;
    if (p <= 1.0) throw std::domain_error("evaluate_bounds: requires p > 1");

    BoundReport rep;
    rep.p = p;
    rep.regime = pair.ctx.regime;
    rep.tol = tol;
    rep.ratio = ratio_p(pair);
    rep.trivial_factor = std::exp2(p - 1.0);

    rep.upper_fg = upper_factor(pair, Orientation::fg);
    rep.upper_gf = upper_factor(pair, Orientation::gf);
    rep.lower_fg = lower_factor(pair, Orientation::fg);
    rep.lower_gf = lower_factor(pair, Orientation::gf);

    const bool upper_regime = pair.ctx.at_least_two();
    const bool strictly_positive = pair.f.strictly_positive() && pair.g.strictly_positive();
    if (upper_regime) {
        rep.sandwich_lower = std::max(rep.lower_fg, rep.lower_gf);
        rep.sandwich_upper = std::min(rep.upper_fg, rep.upper_gf);
    } else {
        // max and min interchanged; the lower_factor side bounds from above and
        // needs strict positivity.
        rep.sandwich_lower = std::max(rep.upper_fg, rep.upper_gf);
        if (strictly_positive)
            rep.sandwich_upper = std::min(rep.lower_fg, rep.lower_gf);
    }

    rep.mooney = mooney_factor(pair);
    if (upper_regime) {
        rep.carbery = carbery_factor(pair);
        rep.cfil = cfil_factor(pair);
        rep.interpolated = interpolated_upper(pair) /
                           (power_sum(pair.f, p) + power_sum(pair.g, p));
    } else if (strictly_positive) {
        rep.cfil = cfil_factor(pair);
    }
    // Tight side over the two orientations: a lower bound for p >= 2,
    // an upper bound below 2.
    const double s_fg = simplified_lower(pair, Orientation::fg);
    const double s_gf = simplified_lower(pair, Orientation::gf);
    rep.simplified_lower = upper_regime ? std::max(s_fg, s_gf) : std::min(s_fg, s_gf);

    const auto push = [&](std::string id, double bound, BoundDirection dir) {
        BoundEntry e;
        e.id = std::move(id);
        e.bound = bound;
        e.direction = dir;
        e.slack = dir == BoundDirection::Upper ? bound - rep.ratio : rep.ratio - bound;
        e.equality = std::abs(e.slack) <= tol * margin_scale(rep.ratio, bound);
        rep.entries.push_back(std::move(e));
    };

    push("trivial_bound", rep.trivial_factor, BoundDirection::Upper);
    if (rep.carbery) push("carbery_bound", *rep.carbery, BoundDirection::Upper);
    if (rep.cfil) push("cfil_bound", rep.cfil->value, rep.cfil->direction);
    push("mooney_bound", rep.mooney.value, rep.mooney.direction);
    push("sandwich_lower", rep.sandwich_lower, BoundDirection::Lower);
    if (rep.sandwich_upper) push("sandwich_upper", *rep.sandwich_upper, BoundDirection::Upper);
    // The reversed simplified bound sits above the reversed lower_factor, so it
    // inherits the same positivity hypothesis.
    if (upper_regime || strictly_positive)
        push("simplified_lower", rep.simplified_lower,
             upper_regime ? BoundDirection::Lower : BoundDirection::Upper);
    if (rep.interpolated) push("interpolated_bound", *rep.interpolated, BoundDirection::Upper);
    return rep;
}

}  // namespace lptri
