#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace lptri {

/// Finite measure space of weighted atoms. Every weight is strictly
/// positive; the space is immutable after construction.
class MeasureSpace {
public:
    explicit MeasureSpace(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }

    static std::shared_ptr<const MeasureSpace> counting(std::size_t n_atoms);
    static std::shared_ptr<const MeasureSpace> create(std::vector<double> weights);

private:
    std::vector<double> weights_;
};

bool same_space(const MeasureSpace& a, const MeasureSpace& b);

/// Nonnegative function on a finite weighted atom set. Immutable;
/// shares ownership of its space.
class WeightedFunction {
public:
    WeightedFunction(std::shared_ptr<const MeasureSpace> space, std::vector<double> values);

    const MeasureSpace& space() const noexcept { return *space_; }
    const std::shared_ptr<const MeasureSpace>& space_ptr() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::size_t i) const { return values_[i]; }
    double weight(std::size_t i) const { return space_->weight(i); }
    std::size_t size() const noexcept { return values_.size(); }

    /// True iff every value is > 0 ("strictly positive almost everywhere"
    /// on a finite atom space means everywhere).
    bool strictly_positive() const noexcept { return strictly_positive_; }
    bool is_zero() const noexcept { return max_value_ == 0.0; }
    double max_value() const noexcept { return max_value_; }

private:
    std::shared_ptr<const MeasureSpace> space_;
    std::vector<double> values_;
    bool strictly_positive_ = false;
    double max_value_ = 0.0;
};

enum class PointwiseOp { Product, Sum, AbsDifference };

/// Pointwise combination f op g^e. Conventions for the exponent on g:
/// 0^0 = 1 only when e = 0, and 0^e = 0 for e > 0.
WeightedFunction pointwise(const WeightedFunction& f, const WeightedFunction& g,
                           PointwiseOp op, double exponent_on_g = 1.0);

/// f + g (shorthand for the Sum op with unit exponent).
WeightedFunction add(const WeightedFunction& f, const WeightedFunction& g);

/// c * f for c >= 0.
WeightedFunction scale(const WeightedFunction& f, double c);

/// f^e pointwise. e < 0 requires a strictly positive f; e = 0 gives the
/// constant 1 function.
WeightedFunction power(const WeightedFunction& f, double e);

}  // namespace lptri
