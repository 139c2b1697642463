#pragma once

#include "lptri/harness.hpp"
#include "lptri/pairwise.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace lptri::search {

/// What to maximize over normalized nonnegative pairs (or, for the
/// scalar kernel, over t in (0,1]).
enum class Objective {
    MaxSlackSandwichUpper,      // min{J-upper} - ratio
    MaxSlackSandwichLower,      // ratio - max{J-lower}
    MaxGapSandwichMinusMooney,  // mooney - sandwich_upper (sandwich tighter)
    MaxGapMooneyMinusSandwich,  // sandwich_upper - mooney (mooney tighter)
    MaxScalarKernel,            // ((1+t)^p - 1 - t^p)/(t(1+t)^{p-2})
};

const char* to_string(Objective o);
std::optional<Objective> objective_from_string(std::string_view name);

struct SearchProblem {
    Objective objective = Objective::MaxGapSandwichMinusMooney;
    int dim = 4;  // atoms, 2..32 (ignored by MaxScalarKernel)
    double p = 4.0;
    int budget = 2000;  // objective evaluations
    std::uint64_t seed = 0;
};

struct SearchResult {
    double best_value = 0.0;
    std::optional<PairInput> best_pair;  // pair objectives
    std::optional<double> best_t;        // MaxScalarKernel
    /// Best-so-far objective after each accepted improvement
    /// (nondecreasing by construction).
    std::vector<double> trace;
    int evaluations = 0;
    /// Set only if the reported point violated a proven bound direction
    /// and the multiprecision recheck confirmed it (an artifact defect).
    bool flagged_defect = false;
};

/// Multi-start Nelder-Mead over the nonnegative orthant with projection
/// onto ||f||_p = ||g||_p = 1. Deterministic in the seed.
SearchResult optimize(const SearchProblem& problem);

/// Mooney equality witnesses: (fg)^{p/2} = alpha (f^p + g^p) pointwise.
struct WitnessRequest {
    double alpha = 0.5;  // in [0, 1/2]
    double p = 4.0;      // >= 2
};

/// Single-atom pair (1, t) with t^{p/2}/(1+t^p) = alpha solved by
/// bisection to 1e-14; alpha = 0 returns the disjoint two-atom pair.
PairInput mooney_witness(const WitnessRequest& req);

/// Root of a monotone increasing function on [lo, hi] by bisection.
double bisect_increasing(double (*fn)(double, double), double param, double target, double lo,
                         double hi, double tol);

}  // namespace lptri::search
