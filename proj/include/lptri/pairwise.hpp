#pragma once

#include "lptri/exponent.hpp"
#include "lptri/measure.hpp"
#include "lptri/norms.hpp"
#include "lptri/outcome.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lptri {

/// Validated two-function input: both on one space, both with nonzero
/// p-norm (trivial pairs are rejected up front).
struct PairInput {
    WeightedFunction f;
    WeightedFunction g;
    ExponentContext ctx;

    static PairInput make(WeightedFunction f, WeightedFunction g, ExponentContext ctx);
    static PairInput make(WeightedFunction f, WeightedFunction g, double p);
};

/// Which function plays the leading role in orientation-dependent
/// quantities. fg means (f, g) as given, gf swaps the roles.
enum class Orientation { fg, gf };

struct GammaStatistic {
    double gamma = 0.0;  // 2 ||fg||_{p/2}^{p/2} / (||f||_p^p + ||g||_p^p)
};

/// T  = ||f||_p / ||g||_p
/// T1 = ||f g^{p-1}||_1 / ||g||_p^p
/// T2 = ||f g^{1/(p-1)}||_{p-1} / ||g^q||_{p-1}
/// lambda = T2 / T
/// For p >= 2 Holder gives T1 <= T2 <= T and lambda in [0,1].
struct HolderRatios {
    double T = 0.0;
    double T1 = 0.0;
    double T2 = 0.0;
    double lambda = 0.0;
};

enum class BoundDirection { Upper, Lower };

struct DirectedBound {
    double value = 0.0;
    BoundDirection direction = BoundDirection::Upper;
};

/// Classification of the equality structure of a pair.
enum class EqualityKind {
    ProportionalOnSupportG,
    ProportionalOnSupportF,
    ProportionalEverywhere,
    DisjointSupports,
    Generic,
};

const char* to_string(EqualityKind k);

struct EqualityClass {
    EqualityKind kind = EqualityKind::Generic;
    /// (alpha, beta) with alpha*f = beta*g on the relevant support, both > 0.
    std::optional<std::pair<double, double>> witness;
};

/// One named bound with its signed slack against the attained ratio
/// (positive slack = strict) and the equality flag at the tolerance used.
struct BoundEntry {
    std::string id;
    double bound = 0.0;
    BoundDirection direction = BoundDirection::Upper;
    double slack = 0.0;
    bool equality = false;
};

/// Every two-function bound evaluation for one pair. ratio is the exact
/// attained value ||f+g||_p^p / (||f||_p^p + ||g||_p^p); factors bound it
/// per regime. Factor-valued fields are all normalized to ratio scale
/// (interpolated included). Optional fields are absent when the regime
/// does not admit the bound (carbery below p=2, the upper sandwich side
/// for p in (1,2) without strict positivity, ...).
struct BoundReport {
    double p = 2.0;
    Regime regime = Regime::Exactly2;
    double ratio = 0.0;

    double trivial_factor = 0.0;  // 2^{p-1}
    std::optional<double> carbery;
    std::optional<DirectedBound> cfil;
    DirectedBound mooney;

    double upper_fg = 0.0, upper_gf = 0.0;
    double lower_fg = 0.0, lower_gf = 0.0;
    double sandwich_lower = 0.0;
    std::optional<double> sandwich_upper;

    double simplified_lower = 0.0;        // direction flips with the regime
    std::optional<double> interpolated;   // factor form of the convexity bound

    double tol = 1e-9;
    std::vector<BoundEntry> entries;

    const BoundEntry* entry(std::string_view id) const;
};

// --- elementary statistics -------------------------------------------------

double ratio_p(const PairInput& pair);
GammaStatistic gamma_p(const PairInput& pair);
HolderRatios holder_ratios(const PairInput& pair, Orientation o);

// --- prior bounds ------------------------------------------------------------

/// (1 + ||fg||_{p/2} / (||f||_p ||g||_p))^{p-1}, upper bound for p >= 2.
double carbery_factor(const PairInput& pair);

/// (1 + Gamma_p^{2/p})^{p-1}; upper for p >= 2, lower for p in (1,2)
/// where both functions must be strictly positive.
DirectedBound cfil_factor(const PairInput& pair);

/// (((1+s)/2)^{1/p} + ((1-s)/2)^{1/p})^p with s = sqrt(1 - Gamma_p^2);
/// upper for p >= 2, lower for p in (1,2].
DirectedBound mooney_factor(const PairInput& pair);

// --- sandwich bounds ---------------------------------------------------------

/// 1 + H(T2)/(1 + T^p): upper bound factor for p >= 2, lower for p in (1,2].
double upper_factor(const PairInput& pair, Orientation o);

/// 1 + H(T1)/(1 + T^p): lower bound factor for p >= 2; upper for
/// p in (1,2] assuming strict positivity.
double lower_factor(const PairInput& pair, Orientation o);

/// Full bound report with regime-dispatched sandwich:
///   p >= 2:    max{lower_factor} <= ratio <= min{upper_factor}
///   p in (1,2): max{upper_factor} <= ratio <= min{lower_factor} (upper side only
///              when both functions are strictly positive)
BoundReport evaluate_bounds(const PairInput& pair, double tol = 1e-9);

/// 1 + (2^p - 2) T1^{p/2} / (1 + T^p); below lower_factor for p >= 2,
/// above it for p in [1,2].
double simplified_lower(const PairInput& pair, Orientation o);

/// lambda (||f||_p + ||g||_p)^p + (1-lambda)(||f||_p^p + ||g||_p^p) with
/// lambda = T2/T in the (f,g) orientation. Absolute bound, p >= 2.
double interpolated_upper(const PairInput& pair);

// --- chains and consequences -------------------------------------------------

/// (||fg||_1, ||g||_q (||f+g^{1/(p-1)}||_p - ||g^{1/(p-1)}||_p), ||g||_q ||f||_p),
/// nondecreasing for p in (1,inf); reversed for p in (0,1) with g > 0.
std::array<double, 3> shifted_holder_chain(const WeightedFunction& f, const WeightedFunction& g,
                                   const ExponentContext& ctx);

/// ||g||_p + ||f g^{p-1}||_1 / ||g||_p^{p-1}, a lower bound for ||f+g||_p.
double reverse_minkowski_lower(const PairInput& pair);

struct ErrorEstimate {
    double observed_gap = 0.0;   // |upper_factor - lower_factor| in the smaller-norm orientation
    double certified_cap = 0.0;  // p 2^{p-1} |T2 - T1|
};

/// Gap between the two sandwich sides against its certified cap; the
/// smaller-norm function takes the leading role.
ErrorEstimate error_estimate(const PairInput& pair);

/// ||f-g||_p^p vs (2^p - 2)(1 - ||f g^{p-1}||_1^{p/2}) on the normalized
/// pair; upper for p >= 2, reversed for p in (1,2].
CheckOutcome hanner_diff_bound(const PairInput& pair, double tol = 1e-9);

/// Detect the equality cases: disjoint supports, proportionality on
/// supp(g) / supp(f) / everywhere, else Generic.
EqualityClass classify_equality(const PairInput& pair, double tol = 1e-9);

}  // namespace lptri
