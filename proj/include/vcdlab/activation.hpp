#pragma once

#include "errors.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vcdlab {

enum class ActivationKind { threshold, logistic, tanh, relu, polynomial, identity };

inline std::string_view to_string(ActivationKind kind) {
    switch (kind) {
    case ActivationKind::threshold: return "threshold";
    case ActivationKind::logistic: return "logistic";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::relu: return "relu";
    case ActivationKind::polynomial: return "polynomial";
    case ActivationKind::identity: return "identity";
    }
    return "unknown";
}

inline ActivationKind parse_activation_kind(std::string_view name) {
    for (auto kind : {ActivationKind::threshold, ActivationKind::logistic, ActivationKind::tanh,
                      ActivationKind::relu, ActivationKind::polynomial, ActivationKind::identity}) {
        if (to_string(kind) == name) return kind;
    }
    throw SchemaError("unknown activation kind '" + std::string(name) + "'");
}

struct Interval {
    double lo;
    double hi;

    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
    bool operator==(const Interval&) const = default;
};

/// A scalar activation, optionally restricted to a closed interval.
///
/// With `clamp_outside` set the activation is the restricted-analytic
/// truncation: it agrees with the underlying kind on [lo, hi] and is 0
/// elsewhere. Without it the restriction is recorded but ignored.
class ActivationSpec {
public:
    explicit ActivationSpec(ActivationKind kind, std::vector<double> coefficients = {},
                            std::optional<Interval> restriction = std::nullopt,
                            bool clamp_outside = false)
        : kind_(kind), coefficients_(std::move(coefficients)), restriction_(restriction),
          clamp_outside_(clamp_outside) {
        if (restriction_ && !(restriction_->lo < restriction_->hi))
            throw SchemaError("activation restriction requires a < b");
        if (restriction_ && (!std::isfinite(restriction_->lo) || !std::isfinite(restriction_->hi)))
            throw SchemaError("activation restriction must be finite");
        if (kind_ == ActivationKind::polynomial) {
            if (coefficients_.empty())
                throw SchemaError("polynomial activation needs at least one coefficient");
            for (double c : coefficients_)
                if (!std::isfinite(c)) throw SchemaError("polynomial coefficients must be finite");
        } else if (!coefficients_.empty()) {
            throw SchemaError("coefficients are only meaningful for polynomial activations");
        }
        if (clamp_outside_ && !restriction_)
            throw SchemaError("clamp_outside requires a restriction interval");
    }

    static ActivationSpec threshold() { return ActivationSpec(ActivationKind::threshold); }
    static ActivationSpec identity() { return ActivationSpec(ActivationKind::identity); }
    static ActivationSpec tanh() { return ActivationSpec(ActivationKind::tanh); }

    ActivationKind kind() const noexcept { return kind_; }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    const std::optional<Interval>& restriction() const noexcept { return restriction_; }
    bool clamp_outside() const noexcept { return clamp_outside_; }

    /// Value of the unrestricted kind at t.
    double analytic(double t) const noexcept {
        switch (kind_) {
        case ActivationKind::threshold: return t > 0.0 ? 1.0 : 0.0;
        case ActivationKind::logistic: return 1.0 / (1.0 + std::exp(-t));
        case ActivationKind::tanh: return std::tanh(t);
        case ActivationKind::relu: return t > 0.0 ? t : 0.0;
        case ActivationKind::identity: return t;
        case ActivationKind::polynomial: {
            double acc = 0.0;
            for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
                acc = acc * t + *it;
            return acc;
        }
        }
        return 0.0;
    }

    bool operator==(const ActivationSpec&) const = default;

private:
    ActivationKind kind_;
    std::vector<double> coefficients_; // c0 + c1 t + c2 t^2 + ...
    std::optional<Interval> restriction_;
    bool clamp_outside_;
};

/// Evaluates an activation; non-finite inputs are a domain error.
inline double apply_activation(const ActivationSpec& act, double t) {
    if (!std::isfinite(t)) throw std::domain_error("apply_activation: non-finite input");
    if (act.clamp_outside() && !act.restriction()->contains(t)) return 0.0;
    return act.analytic(t);
}

} // namespace vcdlab
