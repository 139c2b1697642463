#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace lptri {

enum class Verdict { StrictHold, EqualityWithinTol, ViolationCandidate, ConfirmedViolation };
enum class PrecisionTier { Double, Multiprecision };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::StrictHold:         return "StrictHold";
        case Verdict::EqualityWithinTol:  return "EqualityWithinTol";
        case Verdict::ViolationCandidate: return "ViolationCandidate";
        case Verdict::ConfirmedViolation: return "ConfirmedViolation";
    }
    return "?";
}

inline const char* to_string(PrecisionTier t) {
    return t == PrecisionTier::Double ? "Double" : "Multiprecision";
}

/// Verdict of one inequality check. margin is signed so that positive
/// means the inequality holds strictly; lhs/rhs are the two sides of
/// the binding sub-inequality.
struct CheckOutcome {
    Verdict verdict = Verdict::StrictHold;
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    PrecisionTier tier = PrecisionTier::Double;
};

/// An inequality "holds with equality" when |margin| <= tol * scale with
/// scale = max(1, |lhs|, |rhs|). Margins below that escalate to the
/// multiprecision tier before any violation is reported.
struct TolerancePolicy {
    double tol = 1e-9;
    bool escalate = true;
    double tie_tol = 1e-10;  // win-count ties in ensemble comparison
};

inline double margin_scale(double lhs, double rhs) {
    return std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// Single-tier classification of a signed margin.
inline Verdict classify_margin(double margin, double scale, double tol) {
    if (std::abs(margin) <= tol * scale) return Verdict::EqualityWithinTol;
    return margin > 0.0 ? Verdict::StrictHold : Verdict::ViolationCandidate;
}

}  // namespace lptri
