#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lptri/exponent.hpp"
#include "lptri/measure.hpp"
#include "lptri/norms.hpp"
#include "oracle.hpp"

#include <cmath>
#include <random>

using namespace lptri;

namespace {

double uniform(std::mt19937_64& eng) { return double(eng() >> 11) * 0x1.0p-53; }

WeightedFunction random_fn(std::mt19937_64& eng, std::shared_ptr<const MeasureSpace> sp,
                           bool allow_zero = true) {
    std::vector<double> v(sp->size());
    bool nonzero = false;
    for (auto& x : v) {
        if (allow_zero && uniform(eng) < 0.2) {
            x = 0.0;
        } else {
            x = uniform(eng) < 0.5 ? uniform(eng) + 1e-12
                                   : std::exp(std::log(1e-6) + uniform(eng) * std::log(1e9));
        }
        nonzero = nonzero || x > 0.0;
    }
    if (!nonzero) v[0] = 0.5;
    return {std::move(sp), std::move(v)};
}

}  // namespace

TEST_CASE("measure space construction") {
    CHECK_THROWS_AS(MeasureSpace(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(MeasureSpace({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(MeasureSpace({1.0, -2.0}), std::invalid_argument);
    auto sp = MeasureSpace::counting(3);
    CHECK(sp->size() == 3);
    CHECK(sp->weight(1) == 1.0);
}

TEST_CASE("weighted function invariants") {
    auto sp = MeasureSpace::counting(2);
    CHECK_THROWS_AS(WeightedFunction(sp, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedFunction(sp, {1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedFunction(nullptr, {1.0}), std::invalid_argument);

    WeightedFunction f(sp, {1.0, 0.0});
    CHECK_FALSE(f.strictly_positive());
    CHECK_FALSE(f.is_zero());
    WeightedFunction g(sp, {0.5, 2.0});
    CHECK(g.strictly_positive());
    WeightedFunction z(sp, {0.0, 0.0});
    CHECK(z.is_zero());
}

TEST_CASE("exponent context") {
    const auto ctx = ExponentContext::make(4.0);
    CHECK(ctx.q == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(ctx.regime == Regime::AtLeast2);
    CHECK(ctx.eval_path == EvalPath::Direct);

    CHECK(ExponentContext::make(2.0).regime == Regime::Exactly2);
    CHECK(ExponentContext::make(2.0 + 5e-13).regime == Regime::Exactly2);
    CHECK(ExponentContext::make(1.5).regime == Regime::Between1And2);
    CHECK(ExponentContext::make(40.0).eval_path == EvalPath::LogDomain);
    CHECK(std::isinf(ExponentContext::make(1.0).q));
    CHECK_THROWS_AS(ExponentContext::make(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ExponentContext::make(-2.0), std::invalid_argument);

    // conjugacy 1/p + 1/q = 1 across a grid
    for (double p : {1.0, 1.1, 1.5, 2.0, 3.0, 7.7, 32.0, 100.0}) {
        const auto c = ExponentContext::make(p);
        CHECK(std::abs(1.0 / c.p + 1.0 / c.q - 1.0) <= 1e-14);
    }
}

TEST_CASE("norm_p basics") {
    auto sp = MeasureSpace::counting(3);
    WeightedFunction f(sp, {1.0, 2.0, 2.0});
    CHECK(norm_p(f, 2.0) == doctest::Approx(3.0).epsilon(1e-15));

    // p = 1 is the plain weighted sum
    auto wsp = MeasureSpace::create({0.5, 2.0, 1.0});
    WeightedFunction h(wsp, {3.0, 1.0, 0.25});
    CHECK(norm_p(h, 1.0) == 0.5 * 3.0 + 2.0 * 1.0 + 1.0 * 0.25);

    WeightedFunction z(sp, {0.0, 0.0, 0.0});
    CHECK(norm_p(z, 2.5) == 0.0);
}

TEST_CASE("norm_p wide dynamic range pin") {
    // w=(1,1), f=(1e6, 1e-6), p=24: the exact value is
    // (1e144 + 1e-144)^(1/24) = 1e6 * (1 + 1e-288)^(1/24), i.e. 1e6 to
    // far below double resolution. Verified against the 50-digit oracle.
    auto sp = MeasureSpace::counting(2);
    WeightedFunction f(sp, {1e6, 1e-6});
    const double p = 24.0;

    oracle::Real exact = pow(pow(oracle::Real("1e6"), 24) + pow(oracle::Real("1e-6"), 24),
                             oracle::Real(1) / 24);
    CHECK(std::abs(double(exact) - 1e6) <= 1e-9);

    const double direct = norm_p_path(f, p, EvalPath::Direct);
    const double logdom = norm_p_path(f, p, EvalPath::LogDomain);
    CHECK(std::abs(direct - 1e6) <= 1e-12 * 1e6);
    CHECK(std::abs(logdom - 1e6) <= 1e-12 * 1e6);
    CHECK(std::abs(direct - logdom) <= 1e-12 * direct);

    // dynamic range 1e12 forces the log-domain path in norm_p
    CHECK(dynamic_range(f) == doctest::Approx(1e12));
    CHECK(norm_p(f, p) == logdom);
}

TEST_CASE("pointwise op conventions") {
    auto sp = MeasureSpace::counting(2);
    WeightedFunction f(sp, {1.0, 1.0});
    WeightedFunction g(sp, {1.0, 0.0});

    auto prod = pointwise(f, g, PointwiseOp::Product, 3.0);
    CHECK(prod.value(0) == 1.0);
    CHECK(prod.value(1) == 0.0);

    WeightedFunction f2(sp, {2.0, 1.0});
    WeightedFunction g2(sp, {1.0, 1.0});
    auto sum = pointwise(f2, g2, PointwiseOp::Sum, 1.0);
    CHECK(sum.value(0) == 3.0);
    CHECK(sum.value(1) == 2.0);

    WeightedFunction g3(sp, {4.0, 0.0});
    auto root = pointwise(f, g3, PointwiseOp::Product, 0.5);
    CHECK(root.value(0) == 2.0);
    CHECK(root.value(1) == 0.0);

    // 0^0 = 1 when the exponent is exactly zero
    auto e0 = pointwise(f, g, PointwiseOp::Product, 0.0);
    CHECK(e0.value(1) == 1.0);

    auto sp3 = MeasureSpace::counting(3);
    WeightedFunction other(sp3, {1.0, 1.0, 1.0});
    CHECK_THROWS_AS(pointwise(f, other, PointwiseOp::Sum), std::invalid_argument);
    CHECK_THROWS_AS(pointwise(f, g, PointwiseOp::Product, -1.0), std::invalid_argument);
}

TEST_CASE("power helper") {
    auto sp = MeasureSpace::counting(2);
    WeightedFunction f(sp, {4.0, 0.0});
    auto r = power(f, 0.5);
    CHECK(r.value(0) == 2.0);
    CHECK(r.value(1) == 0.0);
    CHECK_THROWS_AS(power(f, -1.0), std::invalid_argument);
    WeightedFunction pos(sp, {4.0, 2.0});
    auto inv = power(pos, -1.0);
    CHECK(inv.value(0) == 0.25);
}

TEST_CASE("homogeneity of norm_p") {
    std::mt19937_64 eng(42);
    for (double p : {1.1, 1.5, 2.0, 3.0, 4.0, 8.0, 32.0}) {
        for (int rep = 0; rep < 50; ++rep) {
            auto sp = MeasureSpace::counting(2 + eng() % 15);
            auto f = random_fn(eng, sp);
            const double c = uniform(eng) * 10.0;
            const double lhs = norm_p(scale(f, c), p);
            const double rhs = c * norm_p(f, p);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("direct and log-domain paths agree") {
    std::mt19937_64 eng(43);
    for (double p : {1.5, 2.0, 4.0, 16.0, 32.0}) {
        for (int rep = 0; rep < 100; ++rep) {
            auto sp = MeasureSpace::counting(2 + eng() % 15);
            auto f = random_fn(eng, sp);
            if (f.is_zero()) continue;
            const double a = norm_p_path(f, p, EvalPath::Direct);
            const double b = norm_p_path(f, p, EvalPath::LogDomain);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
        }
    }
}

TEST_CASE("monotonicity in values") {
    std::mt19937_64 eng(44);
    for (int rep = 0; rep < 200; ++rep) {
        auto sp = MeasureSpace::counting(2 + eng() % 7);
        auto f = random_fn(eng, sp);
        const double p = 1.0 + uniform(eng) * 7.0;
        std::vector<double> bumped(f.values().begin(), f.values().end());
        bumped[eng() % bumped.size()] += uniform(eng);
        WeightedFunction g(f.space_ptr(), std::move(bumped));
        CHECK(norm_p(g, p) >= norm_p(f, p) * (1.0 - 1e-13));
    }
}

TEST_CASE("classical Minkowski on random pairs") {
    std::mt19937_64 eng(45);
    for (int rep = 0; rep < 300; ++rep) {
        auto sp = MeasureSpace::counting(2 + eng() % 15);
        auto f = random_fn(eng, sp);
        auto g = random_fn(eng, sp);
        const double p = 1.0 + uniform(eng) * 9.0;
        const double lhs = norm_p(add(f, g), p);
        const double rhs = norm_p(f, p) + norm_p(g, p);
        CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("gap kernel against the 50-digit reference") {
    for (double p : {1.1, 1.5, 2.0, 2.5, 3.0, 4.0, 8.0, 17.0}) {
        for (double t : {1e-9, 1e-7, 1e-5, 9.9e-5, 1.1e-4, 1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 1e4}) {
            const double got = gap_kernel(p, t);
            const double want = double(oracle::r_gap(p, t));
            CHECK(std::abs(got - want) <= 1e-12 * std::max(std::abs(want), 1e-300));
        }
    }
    CHECK(gap_kernel(4.0, 0.0) == 0.0);
    // p = 2 small-t expansion collapses to exactly 2t
    CHECK(gap_kernel(2.0, 1e-9) == 2e-9);
    CHECK_THROWS_AS(gap_kernel(4.0, -0.5), std::invalid_argument);
}

TEST_CASE("binomial coefficients") {
    CHECK(binomial_coeff(4.0, 2) == doctest::Approx(6.0));
    CHECK(binomial_coeff(2.0, 3) == doctest::Approx(0.0));
    CHECK(binomial_coeff(2.5, 0) == 1.0);
    CHECK(binomial_coeff(2.5, 2) == doctest::Approx(2.5 * 1.5 / 2.0));
}
