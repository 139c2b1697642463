#pragma once

#include "lptri/measure.hpp"

#include <memory>

// Shared two-atom fixtures used across the test suites and examples.
//   fix_a: f=(3,0), g=(1,2), p=2   -- generic pair, all four J's collapse
//   fix_b: f=(1,1), g=(1,0), p=4   -- proportional on supp(g), sandwich tight
//   fix_c: f=g=(1,1), p arbitrary  -- full proportionality
//   fix_d: f=(1,0), g=(0,1), p=4   -- disjoint supports
//   fix_e: f=(2,1), g=(1,1), p=1.5 -- strictly positive, reversed regime
namespace lptri::fixtures {

struct FixturePair {
    WeightedFunction f;
    WeightedFunction g;
    double p;
};

inline FixturePair fix_a() {
    auto sp = MeasureSpace::counting(2);
    return {WeightedFunction(sp, {3.0, 0.0}), WeightedFunction(sp, {1.0, 2.0}), 2.0};
}

inline FixturePair fix_b() {
    auto sp = MeasureSpace::counting(2);
    return {WeightedFunction(sp, {1.0, 1.0}), WeightedFunction(sp, {1.0, 0.0}), 4.0};
}

inline FixturePair fix_c(double p = 3.0) {
    auto sp = MeasureSpace::counting(2);
    return {WeightedFunction(sp, {1.0, 1.0}), WeightedFunction(sp, {1.0, 1.0}), p};
}

inline FixturePair fix_d() {
    auto sp = MeasureSpace::counting(2);
    return {WeightedFunction(sp, {1.0, 0.0}), WeightedFunction(sp, {0.0, 1.0}), 4.0};
}

inline FixturePair fix_e() {
    auto sp = MeasureSpace::counting(2);
    return {WeightedFunction(sp, {2.0, 1.0}), WeightedFunction(sp, {1.0, 1.0}), 1.5};
}

}  // namespace lptri::fixtures
