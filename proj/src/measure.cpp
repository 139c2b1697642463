#include "lptri/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace lptri {

MeasureSpace::MeasureSpace(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw std::invalid_argument("MeasureSpace: need at least one atom");
    for (double w : weights_)
        if (!std::isfinite(w) || w <= 0.0)
            throw std::invalid_argument("MeasureSpace: weights must be finite and > 0");
}

std::shared_ptr<const MeasureSpace> MeasureSpace::counting(std::size_t n_atoms) {
    return std::make_shared<MeasureSpace>(std::vector<double>(n_atoms, 1.0));
}

std::shared_ptr<const MeasureSpace> MeasureSpace::create(std::vector<double> weights) {
    return std::make_shared<MeasureSpace>(std::move(weights));
}

bool same_space(const MeasureSpace& a, const MeasureSpace& b) {
    if (&a == &b) return true;
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.weight(i) != b.weight(i)) return false;
    return true;
}

WeightedFunction::WeightedFunction(std::shared_ptr<const MeasureSpace> space,
                                   std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_)
        throw std::invalid_argument("WeightedFunction: null measure space");
    if (values_.size() != space_->size())
        throw std::invalid_argument("WeightedFunction: values/weights length mismatch");
    strictly_positive_ = true;
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("WeightedFunction: values must be finite and >= 0");
        if (v == 0.0) strictly_positive_ = false;
        if (v > max_value_) max_value_ = v;
    }
}

namespace {

// g^e with 0^0 = 1 (e = 0 means "no exponent applied") and 0^e = 0 for e > 0.
double pow_on_g(double g, double e) {
    if (e == 0.0) return 1.0;
    if (g == 0.0) return 0.0;
    if (e == 1.0) return g;
    return std::pow(g, e);
}

}  // namespace

WeightedFunction pointwise(const WeightedFunction& f, const WeightedFunction& g,
                           PointwiseOp op, double exponent_on_g) {
    if (!same_space(f.space(), g.space()))
        throw std::invalid_argument("pointwise: functions live on different spaces");
    if (!(exponent_on_g >= 0.0))
        throw std::invalid_argument("pointwise: exponent_on_g must be >= 0");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double ge = pow_on_g(g.value(i), exponent_on_g);
        switch (op) {
            case PointwiseOp::Product:       out[i] = f.value(i) * ge; break;
            case PointwiseOp::Sum:           out[i] = f.value(i) + ge; break;
            case PointwiseOp::AbsDifference: out[i] = std::abs(f.value(i) - ge); break;
        }
    }
    return {f.space_ptr(), std::move(out)};
}

WeightedFunction add(const WeightedFunction& f, const WeightedFunction& g) {
    return pointwise(f, g, PointwiseOp::Sum, 1.0);
}

WeightedFunction scale(const WeightedFunction& f, double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("scale: factor must be finite and >= 0");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = c * f.value(i);
    return {f.space_ptr(), std::move(out)};
}

WeightedFunction power(const WeightedFunction& f, double e) {
    if (!std::isfinite(e))
        throw std::invalid_argument("power: exponent must be finite");
    if (e < 0.0 && !f.strictly_positive())
        throw std::invalid_argument("power: negative exponent needs a strictly positive function");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = pow_on_g(f.value(i), e);
    return {f.space_ptr(), std::move(out)};
}

}  // namespace lptri
