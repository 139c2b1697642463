#pragma once

#include "lptri/measure.hpp"
#include "lptri/outcome.hpp"

#include <memory>
#include <span>
#include <vector>

namespace lptri {

/// C_p = max{p, (2^p-2)/2^{p-2}} and C'_p = (2^p-2)/2^{p-2}, the latter
/// evaluated as 4 - 2^{3-p} to keep intermediates bounded.
struct CConstants {
    double c_p = 0.0;
    double c_p_prime = 0.0;
};

CConstants c_constants(double p);

/// ((1+t)^p - 1 - t^p) / (t (1+t)^{p-2}) for t in (0, 1].
/// sup over (0,1] is C_p for p >= 2; inf is C'_p for p in [1,2].
double scalar_kernel(double p, double t);

/// Checks (sum a)^p against sum a^p + C (sum a)^{p-2} sum_{i<j} a_i a_j,
/// with C = C_p as an upper bound for p >= 2 and C = C'_p as a lower
/// bound for p in [1,2] (where sum a must be positive).
CheckOutcome scalar_bound_check(std::span<const double> a, double p, double tol = 1e-9);

/// Grid-plus-golden-section estimate of sup (p >= 2) or inf (p in [1,2])
/// of scalar_kernel over t in (0,1]; agrees with c_constants to 1e-6.
double verify_cp_extremal(double p, int grid_size = 4096, int refine_iters = 80);

/// Pointwise sum_{i<j} f_i f_j via ((sum f)^2 - sum f^2)/2.
WeightedFunction cross_product_sum(std::span<const WeightedFunction> fs);

/// ||sum f_j||_p^p <= sum ||f_j||_p^p + C_p ||sum f_j||_p^{p-2} ||sum_{i<j} f_i f_j||_{p/2},
/// p >= 2.
CheckOutcome nsum_upper_check(std::span<const WeightedFunction> fs, double p, double tol = 1e-9);

/// ||sum f_j||_p^p >= sum ||f_j||_p^p + C'_p ||sum_{i<j} f_i f_j||_{p/2} / ||sum f_j||_p^{2-p},
/// p in [1,2], sum not identically zero.
CheckOutcome nsum_lower_check(std::span<const WeightedFunction> fs, double p, double tol = 1e-9);

/// Families (f_j) for the summability question.
struct FunctionFamily {
    enum class Kind { Explicit, Geometric, PowerLaw, DisjointAtoms };

    Kind kind = Kind::Explicit;
    std::shared_ptr<const MeasureSpace> space;
    std::vector<WeightedFunction> members_;  // Explicit only
    double coeff = 1.0;   // c in c*r^j / c*j^{-s}
    double ratio = 0.5;   // r (Geometric); per-step value decay (DisjointAtoms)
    double decay = 1.0;   // s (PowerLaw)
    int n_max = 32;

    static FunctionFamily explicit_list(std::vector<WeightedFunction> fs);
    static FunctionFamily geometric(std::shared_ptr<const MeasureSpace> space, double c,
                                    double r, int n_max);
    static FunctionFamily power_law(std::shared_ptr<const MeasureSpace> space, double c,
                                    double s, int n_max);
    /// f_j = ratio^j on atom j (space needs at least n_max atoms).
    static FunctionFamily disjoint_atoms(std::shared_ptr<const MeasureSpace> space,
                                         double ratio, int n_max);

    /// j is 1-based.
    WeightedFunction member(int j) const;
    int size() const { return n_max; }
};

enum class ConvergenceFlag { Saturating, NonConvergingAtNMax };

inline const char* to_string(ConvergenceFlag f) {
    return f == ConvergenceFlag::Saturating ? "saturating" : "non-converging at n_max";
}

struct SummabilityRow {
    int n = 0;
    double lhs = 0.0;             // ||sum_{j<=n} f_j||_p^p
    double sum_norms = 0.0;       // sum_{j<=n} ||f_j||_p^p
    double cross_sum = 0.0;       // sum_{i<j<=n} ||f_i f_j||_{p/2}^{p/2}
    double cross_norm = 0.0;      // ||sum_{i<j<=n} f_i f_j||_{p/2}
    double nsum_upper_rhs = 0.0;
    double nsum_lower_rhs = 0.0;
};

/// Growth heuristics: a column is flagged non-converging when it exceeds
/// growth_cap, or when its relative increase over the last half of the
/// table stays above saturation_tol. Heuristic evidence only, never a
/// convergence proof.
struct SummabilityConfig {
    double growth_cap = 1e12;
    double saturation_tol = 1e-2;
};

struct SummabilityReport {
    double p = 2.0;
    std::vector<SummabilityRow> rows;
    ConvergenceFlag lhs_flag = ConvergenceFlag::Saturating;
    ConvergenceFlag sum_norms_flag = ConvergenceFlag::Saturating;
    ConvergenceFlag cross_sum_flag = ConvergenceFlag::Saturating;
    ConvergenceFlag cross_norm_flag = ConvergenceFlag::Saturating;
    bool sufficient_condition_met = false;
    bool necessary_condition_met = false;
    SummabilityConfig config;
};

/// Per-n table of the n-function bound quantities with the regime's
/// sufficient/necessary summability verdicts:
///   p in [1,2]: sufficiency from cross_sum, necessity from cross_norm;
///   p >= 2:     sufficiency from cross_norm, necessity from cross_sum.
SummabilityReport summability_report(const FunctionFamily& family, double p,
                                     SummabilityConfig config = {});

}  // namespace lptri
