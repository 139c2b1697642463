#pragma once

#include "lptri/outcome.hpp"
#include "lptri/pairwise.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lptri::harness {

enum class GeneratorKind { IID, Proportional, Disjoint, Example1, Sparse };

const char* to_string(GeneratorKind k);

/// Deterministic random-pair recipes. The default value distribution is a
/// 50/50 mix of uniform [0,1] and log-uniform [1e-6, 1e3] with per-atom
/// zeroing probability 0.2; strict-positivity draws suppress zeroing.
/// Example1 splits the atoms into blocks A|B and emits
///   f = alpha*phi on A, psi1 on B;  g = beta*phi on A, psi2_scale*psi2 on B
/// with phi, psi1, psi2 > 0, so psi2_scale = 0 makes the pair
/// proportional exactly on supp(g).
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::IID;
    int atoms = 8;
    std::uint64_t seed = 0;
    double alpha = 2.0;             // Proportional / Example1 scalars
    double beta = 3.0;
    double support_fraction = 1.0;  // Proportional: expected fraction of positive atoms
    double psi2_scale = 1.0;        // Example1
    double zero_prob = 0.2;         // Sparse
    bool require_strictly_positive = false;
};

/// Deterministic in (spec, seed); output satisfies the regime hypotheses
/// (nonnegative, nonzero norms, strictly positive when the reversed
/// regime or the generator recipe demands it).
PairInput generate_pair(const GeneratorSpec& spec, const ExponentContext& ctx);

/// n IID members on one random space (nonzero sum guaranteed).
std::vector<WeightedFunction> generate_family(const GeneratorSpec& spec, int n);

struct CatalogEntry {
    const char* id;
    bool pair_input;     // false: takes a family
    const char* regime;  // human-readable regime note
};

std::span<const CatalogEntry> catalog();
bool catalog_has(std::string_view id);

/// One inequality check: double evaluation, tolerance classification,
/// and (for candidate violations) a 50-digit recheck whose verdict wins.
CheckOutcome check(std::string_view id, const PairInput& pair, const TolerancePolicy& pol = {});
CheckOutcome check(std::string_view id, std::span<const WeightedFunction> fs, double p,
                   const TolerancePolicy& pol = {});

struct SlackQuantiles {
    double p50 = 0.0;
    double p95 = 0.0;
    double max = 0.0;
};

/// Tightness statistics across random trials for the upper-bound family
/// at a fixed p >= 2. win_counts[i][j] counts trials where bound i is
/// strictly tighter than bound j (ties within tie_tol*scale excluded).
struct EnsembleStats {
    double p = 2.0;
    int trials = 0;
    std::vector<std::string> bound_ids;
    std::vector<SlackQuantiles> slack_quantiles;
    std::vector<std::vector<int>> win_counts;
    /// Stored witnesses of incomparability between the sandwich upper
    /// bound and the Gamma-based bound, up to k per direction.
    std::vector<PairInput> sandwich_beats_mooney;
    std::vector<PairInput> mooney_beats_sandwich;
};

EnsembleStats ensemble_compare(double p, int trials, std::span<const GeneratorSpec> specs,
                               int max_witnesses = 4, const TolerancePolicy& pol = {});

struct SuiteRow {
    std::string id;
    std::string generator;
    double p = 0.0;
    std::uint64_t seed = 0;
    CheckOutcome outcome;
};

struct SuiteResult {
    int checks = 0;
    int violations_confirmed = 0;
    int escalations = 0;
    std::vector<SuiteRow> rows;
};

/// The default verification sweep: every catalog inequality exercised by
/// every applicable generator family over a grid of exponents.
SuiteResult run_default_suite(std::uint64_t seed, int trials_per_cell = 25,
                              const TolerancePolicy& pol = {});

/// Same sweep restricted to a single exponent (the CLI `verify` backend).
SuiteResult run_suite_at(double p, std::uint64_t seed, int trials_per_cell,
                         int atoms, const TolerancePolicy& pol = {});

// Deterministic seed derivation for trial streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace lptri::harness
