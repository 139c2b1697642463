#include "lptri/harness.hpp"

#include "lptri/mprecheck.hpp"
#include "lptri/multi.hpp"
#include "lptri/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

namespace lptri::harness {

const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::IID:          return "iid";
        case GeneratorKind::Proportional: return "proportional";
        case GeneratorKind::Disjoint:     return "disjoint";
        case GeneratorKind::Example1:     return "example1";
        case GeneratorKind::Sparse:       return "sparse";
    }
    return "?";
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 over master xor a stride; stable across platforms.
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform on [0,1); the mapping is fixed, not distribution-dependent
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    double uniform_positive() {
        double u;
        do { u = uniform(); } while (u == 0.0);
        return u;
    }

    double log_uniform(double lo, double hi) {
        return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
    }

    // default mixed value distribution
    double value(bool allow_zero, double zero_prob) {
        if (allow_zero && uniform() < zero_prob) return 0.0;
        if (uniform() < 0.5) return uniform_positive();
        return log_uniform(1e-6, 1e3);
    }

    bool flip(double prob) { return uniform() < prob; }

private:
    std::mt19937_64 eng_;
};

std::shared_ptr<const MeasureSpace> random_space(Rng& rng, int atoms) {
    std::vector<double> w(static_cast<std::size_t>(atoms));
    for (auto& x : w) x = rng.log_uniform(0.25, 4.0);
    return MeasureSpace::create(std::move(w));
}

bool needs_positive(const GeneratorSpec& spec, const ExponentContext& ctx) {
    return spec.require_strictly_positive || ctx.regime == Regime::Between1And2;
}

}  // namespace

PairInput generate_pair(const GeneratorSpec& spec, const ExponentContext& ctx) {
    if (spec.atoms < 1) throw std::invalid_argument("generate_pair: atoms must be >= 1");
    Rng rng(spec.seed);
    const std::size_t n = static_cast<std::size_t>(spec.atoms);

    switch (spec.kind) {
        case GeneratorKind::IID:
        case GeneratorKind::Sparse: {
            const bool positive = needs_positive(spec, ctx);
            const double zero_prob = spec.kind == GeneratorKind::Sparse ? spec.zero_prob : 0.2;
            const auto sp = random_space(rng, spec.atoms);
            const auto draw = [&] {
                std::vector<double> v(n);
                bool nonzero = false;
                for (auto& x : v) {
                    x = rng.value(!positive, zero_prob);
                    nonzero = nonzero || x > 0.0;
                }
                return nonzero ? std::optional(std::move(v)) : std::nullopt;
            };
            std::optional<std::vector<double>> f, g;
            while (!f) f = draw();
            while (!g) g = draw();
            return PairInput::make({sp, std::move(*f)}, {sp, std::move(*g)}, ctx);
        }

        case GeneratorKind::Proportional: {
            const bool positive = needs_positive(spec, ctx);
            if (!(spec.alpha > 0.0 && spec.beta > 0.0))
                throw std::invalid_argument("generate_pair: Proportional needs alpha, beta > 0");
            const auto sp = random_space(rng, spec.atoms);
            std::vector<double> h(n, 0.0);
            bool any = false;
            for (auto& x : h) {
                const bool in_support = positive || rng.flip(spec.support_fraction);
                if (in_support) {
                    x = rng.value(false, 0.0);
                    any = true;
                }
            }
            if (!any) h[0] = rng.value(false, 0.0);
            // alpha * f = beta * g exactly: f = beta*h, g = alpha*h
            std::vector<double> f(n), g(n);
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = spec.beta * h[i];
                g[i] = spec.alpha * h[i];
            }
            return PairInput::make({sp, std::move(f)}, {sp, std::move(g)}, ctx);
        }

        case GeneratorKind::Disjoint: {
            if (spec.atoms < 2)
                throw std::invalid_argument("generate_pair: Disjoint needs at least 2 atoms");
            const auto sp = random_space(rng, spec.atoms);
            std::vector<double> f(n, 0.0), g(n, 0.0);
            // random split with both sides nonempty
            std::vector<bool> to_f(n);
            for (std::size_t i = 0; i < n; ++i) to_f[i] = rng.flip(0.5);
            to_f[0] = true;
            to_f[n - 1] = false;
            for (std::size_t i = 0; i < n; ++i)
                (to_f[i] ? f[i] : g[i]) = rng.value(false, 0.0);
            return PairInput::make({sp, std::move(f)}, {sp, std::move(g)}, ctx);
        }

        case GeneratorKind::Example1: {
            if (spec.atoms < 2)
                throw std::invalid_argument("generate_pair: Example1 needs at least 2 atoms");
            if (!(spec.psi2_scale >= 0.0))
                throw std::invalid_argument("generate_pair: psi2_scale must be >= 0");
            const auto sp = random_space(rng, spec.atoms);
            const std::size_t block_a = (n + 1) / 2;
            // moderate positive draws keep the comparison gaps well away
            // from rounding noise
            const auto moderate = [&] { return 0.25 + 1.5 * rng.uniform_positive(); };
            const double a = rng.log_uniform(0.5, 2.0);
            const double b = rng.log_uniform(0.5, 2.0);
            std::vector<double> f(n), g(n);
            for (std::size_t i = 0; i < block_a; ++i) {
                const double phi = moderate();
                f[i] = a * phi;
                g[i] = b * phi;
            }
            for (std::size_t i = block_a; i < n; ++i) {
                f[i] = moderate();                      // psi1
                g[i] = spec.psi2_scale * moderate();    // psi2
            }
            return PairInput::make({sp, std::move(f)}, {sp, std::move(g)}, ctx);
        }
    }
    throw std::logic_error("generate_pair: bad kind");
}

std::vector<WeightedFunction> generate_family(const GeneratorSpec& spec, int n) {
    if (n < 2) throw std::invalid_argument("generate_family: need n >= 2");
    if (spec.atoms < 1) throw std::invalid_argument("generate_family: atoms must be >= 1");
    Rng rng(spec.seed);
    const auto sp = random_space(rng, spec.atoms);
    const std::size_t atoms = static_cast<std::size_t>(spec.atoms);
    std::vector<WeightedFunction> fs;
    while (true) {
        fs.clear();
        bool any = false;
        for (int j = 0; j < n; ++j) {
            std::vector<double> v(atoms);
            for (auto& x : v) x = rng.value(true, 0.2);
            for (double x : v) any = any || x > 0.0;
            fs.emplace_back(sp, std::move(v));
        }
        if (any) return fs;
    }
}

namespace {

constexpr CatalogEntry kCatalog[] = {
    {"trivial_bound",        true,  "p >= 1"},
    {"carbery_bound",        true,  "p >= 2"},
    {"cfil_bound",           true,  "p >= 2; reverse on (1,2) for positive pairs"},
    {"mooney_bound",         true,  "p >= 2; reverse on (1,2]"},
    {"sandwich",             true,  "p > 1 (reversed below 2)"},
    {"holder_chain",         true,  "p >= 2"},
    {"shifted_holder_chain", true,  "p > 1"},
    {"reverse_minkowski",    true,  "p > 1"},
    {"interpolated_bound",   true,  "p >= 2"},
    {"simplified_lower",     true,  "p >= 2; reverse on (1,2] for positive pairs"},
    {"hanner_difference",    true,  "p >= 2"},
    {"error_cap",            true,  "p > 1"},
    {"mooney_sum_bound",     false, "p in [1,2]; reversed for p >= 2"},
    {"nsum_upper",           false, "p >= 2"},
    {"nsum_lower",           false, "p in [1,2]"},
};

struct DoubleMargin {
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

DoubleMargin tighter(DoubleMargin a, DoubleMargin b) { return a.margin < b.margin ? a : b; }

DoubleMargin pair_margin_double(std::string_view id, const PairInput& pair) {
    const double p = pair.ctx.p;
    const bool upper_regime = pair.ctx.at_least_two();
    const bool positive = pair.f.strictly_positive() && pair.g.strictly_positive();
    const double ratio = ratio_p(pair);
    const auto vs_ratio = [&](double bound, bool upper) {
        return DoubleMargin{upper ? bound - ratio : ratio - bound, ratio, bound};
    };

    if (id == "trivial_bound") return vs_ratio(std::exp2(p - 1.0), true);
    if (id == "carbery_bound") return vs_ratio(carbery_factor(pair), true);
    if (id == "cfil_bound") {
        const auto b = cfil_factor(pair);
        return vs_ratio(b.value, b.direction == BoundDirection::Upper);
    }
    if (id == "mooney_bound") {
        const auto b = mooney_factor(pair);
        return vs_ratio(b.value, b.direction == BoundDirection::Upper);
    }
    if (id == "sandwich") {
        const auto rep = evaluate_bounds(pair);
        DoubleMargin m = vs_ratio(rep.sandwich_lower, false);
        if (rep.sandwich_upper) m = tighter(m, vs_ratio(*rep.sandwich_upper, true));
        return m;
    }
    if (id == "holder_chain") {
        if (!upper_regime) throw std::domain_error("holder_chain: requires p >= 2");
        DoubleMargin best{std::numeric_limits<double>::infinity(), 0, 0};
        for (auto o : {Orientation::fg, Orientation::gf}) {
            const auto r = holder_ratios(pair, o);
            best = tighter(best, {r.T2 - r.T1, r.T1, r.T2});
            best = tighter(best, {r.T - r.T2, r.T2, r.T});
        }
        return best;
    }
    if (id == "simplified_lower") {
        if (!upper_regime && !positive)
            throw std::invalid_argument("simplified_lower: reverse needs strictly positive inputs");
        DoubleMargin best{std::numeric_limits<double>::infinity(), 0, 0};
        for (auto o : {Orientation::fg, Orientation::gf}) {
            const double simp = simplified_lower(pair, o);
            const double jlo = lower_factor(pair, o);
            best = tighter(best, {upper_regime ? jlo - simp : simp - jlo, simp, jlo});
            best = tighter(best, vs_ratio(jlo, !upper_regime));
        }
        return best;
    }
    if (id == "interpolated_bound") {
        const double interp = interpolated_upper(pair);
        const double sum_pows = power_sum(pair.f, p) + power_sum(pair.g, p);
        const double lhs = power_sum(add(pair.f, pair.g), p);
        const double cap = std::exp2(p - 1.0) * sum_pows;
        return tighter({interp - lhs, lhs, interp}, {cap - interp, interp, cap});
    }
    if (id == "shifted_holder_chain") {
        const auto chain = shifted_holder_chain(pair.f, pair.g, pair.ctx);
        return tighter({chain[1] - chain[0], chain[0], chain[1]},
                       {chain[2] - chain[1], chain[1], chain[2]});
    }
    if (id == "reverse_minkowski") {
        const double lower = reverse_minkowski_lower(pair);
        const double mid = norm_p(add(pair.f, pair.g), pair.ctx);
        const double upper = norm_p(pair.f, pair.ctx) + norm_p(pair.g, pair.ctx);
        return tighter({mid - lower, lower, mid}, {upper - mid, mid, upper});
    }
    if (id == "error_cap") {
        const auto e = error_estimate(pair);
        return {e.certified_cap - e.observed_gap, e.observed_gap, e.certified_cap};
    }
    if (id == "hanner_difference") {
        const auto out = hanner_diff_bound(pair);
        return {out.margin, out.lhs, out.rhs};
    }
    throw std::invalid_argument("check: unknown pair inequality id '" + std::string(id) + "'");
}

struct RawPair {
    std::vector<double> w, f, g;
};

RawPair raw(const PairInput& pair) {
    RawPair r;
    r.w.assign(pair.f.space().weights().begin(), pair.f.space().weights().end());
    r.f.assign(pair.f.values().begin(), pair.f.values().end());
    r.g.assign(pair.g.values().begin(), pair.g.values().end());
    return r;
}

CheckOutcome resolve(const DoubleMargin& dm, const TolerancePolicy& pol,
                     const std::function<mp::Margin<mp::Real50>()>& recheck) {
    CheckOutcome out;
    out.lhs = dm.lhs;
    out.rhs = dm.rhs;
    out.margin = dm.margin;
    out.tier = PrecisionTier::Double;
    out.verdict = classify_margin(dm.margin, margin_scale(dm.lhs, dm.rhs), pol.tol);
    if (out.verdict != Verdict::ViolationCandidate) return out;
    if (!pol.escalate) return out;

    const auto m = recheck();
    out.tier = PrecisionTier::Multiprecision;
    out.margin = static_cast<double>(m.margin);
    out.lhs = static_cast<double>(m.lhs);
    out.rhs = static_cast<double>(m.rhs);
    const auto v = classify_margin(out.margin, margin_scale(out.lhs, out.rhs), pol.tol);
    out.verdict = v == Verdict::ViolationCandidate ? Verdict::ConfirmedViolation : v;
    return out;
}

}  // namespace

std::span<const CatalogEntry> catalog() { return kCatalog; }

bool catalog_has(std::string_view id) {
    for (const auto& e : kCatalog)
        if (id == e.id) return true;
    return false;
}

CheckOutcome check(std::string_view id, const PairInput& pair, const TolerancePolicy& pol) {
    if (!catalog_has(id))
        throw std::invalid_argument("check: unknown inequality id '" + std::string(id) + "'");
    const auto dm = pair_margin_double(id, pair);
    return resolve(dm, pol, [&] {
        const auto r = raw(pair);
        return mp::pair_margin<mp::Real50>(id, r.w, r.f, r.g, pair.ctx.p);
    });
}

CheckOutcome check(std::string_view id, std::span<const WeightedFunction> fs, double p,
                   const TolerancePolicy& pol) {
    if (!catalog_has(id))
        throw std::invalid_argument("check: unknown inequality id '" + std::string(id) + "'");
    DoubleMargin dm;
    if (id == "nsum_upper") {
        const auto out = nsum_upper_check(fs, p);
        dm = {out.margin, out.lhs, out.rhs};
    } else if (id == "nsum_lower") {
        const auto out = nsum_lower_check(fs, p);
        dm = {out.margin, out.lhs, out.rhs};
    } else if (id == "mooney_sum_bound") {
        if (fs.size() < 2) throw std::invalid_argument("mooney_sum_bound: need n >= 2");
        WeightedFunction total = fs[0];
        for (std::size_t j = 1; j < fs.size(); ++j) total = add(total, fs[j]);
        const double lhs = power_sum(total, p);
        double sum_norms = 0.0, cross_sum = 0.0;
        for (std::size_t a = 0; a < fs.size(); ++a) {
            sum_norms += power_sum(fs[a], p);
            for (std::size_t b = a + 1; b < fs.size(); ++b)
                cross_sum += power_sum(pointwise(fs[a], fs[b], PointwiseOp::Product), p / 2.0);
        }
        const double rhs = sum_norms + (std::exp2(p) - 2.0) * cross_sum;
        const bool upper = p <= 2.0 + 1e-12;
        dm = {upper ? rhs - lhs : lhs - rhs, lhs, rhs};
    } else {
        throw std::invalid_argument("check: inequality '" + std::string(id) +
                                    "' does not take a family input");
    }
    return resolve(dm, pol, [&] {
        std::vector<double> w(fs[0].space().weights().begin(), fs[0].space().weights().end());
        std::vector<std::vector<double>> values;
        values.reserve(fs.size());
        for (const auto& f : fs) values.emplace_back(f.values().begin(), f.values().end());
        return mp::family_margin<mp::Real50>(id, w, values, p);
    });
}

namespace {

SlackQuantiles quantiles_of(std::vector<double> xs) {
    SlackQuantiles q;
    if (xs.empty()) return q;
    std::sort(xs.begin(), xs.end());
    const auto at = [&](double frac) {
        const std::size_t idx =
            static_cast<std::size_t>(frac * static_cast<double>(xs.size() - 1) + 0.5);
        return xs[std::min(idx, xs.size() - 1)];
    };
    q.p50 = at(0.50);
    q.p95 = at(0.95);
    q.max = xs.back();
    return q;
}

}  // namespace

EnsembleStats ensemble_compare(double p, int trials, std::span<const GeneratorSpec> specs,
                               int max_witnesses, const TolerancePolicy& pol) {
    if (!(p >= 2.0)) throw std::domain_error("ensemble_compare: requires p >= 2");
    if (trials < 1) throw std::invalid_argument("ensemble_compare: trials must be >= 1");
    if (specs.empty()) throw std::invalid_argument("ensemble_compare: no generator specs");

    const auto ctx = ExponentContext::make(p);
    EnsembleStats stats;
    stats.p = p;
    stats.trials = trials;
    stats.bound_ids = {"trivial_bound", "carbery_bound", "cfil_bound", "mooney_bound", "sandwich_upper"};
    const std::size_t nb = stats.bound_ids.size();
    stats.win_counts.assign(nb, std::vector<int>(nb, 0));
    std::vector<std::vector<double>> slacks(nb);

    for (int t = 0; t < trials; ++t) {
        GeneratorSpec spec = specs[static_cast<std::size_t>(t) % specs.size()];
        spec.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(t));
        const auto pair = generate_pair(spec, ctx);
        const auto rep = evaluate_bounds(pair, pol.tol);

        const double bounds[] = {rep.trivial_factor, rep.carbery.value_or(0.0),
                                 rep.cfil ? rep.cfil->value : 0.0, rep.mooney.value,
                                 rep.sandwich_upper.value_or(0.0)};
        for (std::size_t i = 0; i < nb; ++i) slacks[i].push_back(bounds[i] - rep.ratio);

        const double scale = margin_scale(rep.ratio, rep.trivial_factor);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nb; ++j)
                if (i != j && bounds[i] < bounds[j] - pol.tie_tol * scale)
                    stats.win_counts[i][j]++;

        const double sandwich = bounds[4], mooney = bounds[3];
        if (sandwich < mooney - pol.tie_tol * scale &&
            static_cast<int>(stats.sandwich_beats_mooney.size()) < max_witnesses)
            stats.sandwich_beats_mooney.push_back(pair);
        if (mooney < sandwich - pol.tie_tol * scale &&
            static_cast<int>(stats.mooney_beats_sandwich.size()) < max_witnesses)
            stats.mooney_beats_sandwich.push_back(pair);
    }

    for (std::size_t i = 0; i < nb; ++i)
        stats.slack_quantiles.push_back(quantiles_of(std::move(slacks[i])));
    return stats;
}

namespace {

bool id_applicable(std::string_view id, double p, bool pair_positive) {
    const bool ge2 = p >= 2.0 - 1e-12;
    if (id == "trivial_bound" || id == "sandwich" || id == "mooney_bound" ||
        id == "shifted_holder_chain" || id == "reverse_minkowski" || id == "error_cap")
        return p > 1.0;
    if (id == "carbery_bound" || id == "holder_chain" || id == "interpolated_bound" ||
        id == "hanner_difference")
        return ge2;
    if (id == "cfil_bound" || id == "simplified_lower") return ge2 || pair_positive;
    if (id == "mooney_sum_bound") return p >= 1.0;
    if (id == "nsum_upper") return ge2;
    if (id == "nsum_lower") return p >= 1.0 && p <= 2.0 + 1e-12;
    return false;
}

}  // namespace

SuiteResult run_suite_at(double p, std::uint64_t seed, int trials_per_cell, int atoms,
                         const TolerancePolicy& pol) {
    const auto ctx = ExponentContext::make(p);
    SuiteResult res;

    const GeneratorKind kinds[] = {GeneratorKind::IID, GeneratorKind::Sparse,
                                   GeneratorKind::Proportional, GeneratorKind::Disjoint,
                                   GeneratorKind::Example1};
    std::uint64_t stream = 0;

    for (const auto kind : kinds) {
        for (int t = 0; t < trials_per_cell; ++t) {
            GeneratorSpec spec;
            spec.kind = kind;
            spec.atoms = atoms;
            spec.seed = derive_seed(seed, stream++);
            if (kind == GeneratorKind::Example1 && t % 2 == 0) spec.psi2_scale = 0.0;
            if (kind == GeneratorKind::Proportional) spec.support_fraction = 0.7;
            const auto pair = generate_pair(spec, ctx);
            const bool positive = pair.f.strictly_positive() && pair.g.strictly_positive();
            for (const auto& entry : kCatalog) {
                if (!entry.pair_input) continue;
                if (!id_applicable(entry.id, p, positive)) continue;
                auto outcome = check(entry.id, pair, pol);
                if (outcome.tier == PrecisionTier::Multiprecision) res.escalations++;
                if (outcome.verdict == Verdict::ConfirmedViolation) res.violations_confirmed++;
                res.checks++;
                res.rows.push_back({std::string(entry.id), to_string(kind), p, spec.seed,
                                    outcome});
            }
        }
    }

    // family checks from IID draws
    for (int t = 0; t < trials_per_cell; ++t) {
        GeneratorSpec spec;
        spec.atoms = atoms;
        spec.seed = derive_seed(seed ^ 0xF00DULL, stream++);
        const int n = 2 + static_cast<int>(spec.seed % 7);  // family size 2..8
        const auto fs = generate_family(spec, n);
        for (const auto& entry : kCatalog) {
            if (entry.pair_input) continue;
            if (!id_applicable(entry.id, p, false)) continue;
            auto outcome = check(entry.id, fs, p, pol);
            if (outcome.tier == PrecisionTier::Multiprecision) res.escalations++;
            if (outcome.verdict == Verdict::ConfirmedViolation) res.violations_confirmed++;
            res.checks++;
            res.rows.push_back({std::string(entry.id), "iid_family", p, spec.seed, outcome});
        }
    }
    return res;
}

SuiteResult run_default_suite(std::uint64_t seed, int trials_per_cell,
                              const TolerancePolicy& pol) {
    const double exponents[] = {1.1, 1.5, 2.0, 2.5, 3.0, 4.0, 8.0};
    SuiteResult res;
    std::uint64_t k = 0;
    for (double p : exponents) {
        const int atoms = 2 + static_cast<int>(derive_seed(seed, 1000 + k) % 31);
        auto sub = run_suite_at(p, derive_seed(seed, k), trials_per_cell, atoms, pol);
        ++k;
        res.checks += sub.checks;
        res.violations_confirmed += sub.violations_confirmed;
        res.escalations += sub.escalations;
        res.rows.insert(res.rows.end(), std::make_move_iterator(sub.rows.begin()),
                        std::make_move_iterator(sub.rows.end()));
    }
    return res;
}

}  // namespace lptri::harness
