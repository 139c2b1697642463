#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lptri {

/// Interval containing p; selects inequality direction and hypotheses.
enum class Regime { Between1And2, Exactly2, AtLeast2 };

enum class EvalPath { Direct, LogDomain };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Between1And2: return "Between1And2";
        case Regime::Exactly2:     return "Exactly2";
        case Regime::AtLeast2:     return "AtLeast2";
    }
    return "?";
}

/// Exponent p together with its conjugate q = p/(p-1), regime
/// classification and the preferred norm evaluation path.
///
/// Primary scope is p > 1; p in (0,1] is admitted so that internal
/// reverse-direction lemma calls can construct a context for it.
struct ExponentContext {
    double p = 2.0;
    double q = 2.0;  // p/(p-1); +inf at p = 1
    Regime regime = Regime::Exactly2;
    EvalPath eval_path = EvalPath::Direct;

    static ExponentContext make(double p) {
        if (!std::isfinite(p) || p <= 0.0)
            throw std::invalid_argument("ExponentContext: p must be finite and > 0");
        ExponentContext ctx;
        ctx.p = p;
        ctx.q = (p == 1.0) ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
        if (std::abs(p - 2.0) <= 1e-12)
            ctx.regime = Regime::Exactly2;
        else if (p < 2.0)
            ctx.regime = Regime::Between1And2;
        else
            ctx.regime = Regime::AtLeast2;
        // (.)^p on raw values becomes unreliable for very large p; switch
        // to the log-domain sum there.
        ctx.eval_path = (p <= 32.0) ? EvalPath::Direct : EvalPath::LogDomain;
        return ctx;
    }

    bool at_least_two() const { return regime != Regime::Between1And2; }
};

}  // namespace lptri
