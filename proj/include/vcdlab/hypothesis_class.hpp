#pragma once

#include "baseline.hpp"
#include "network.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace vcdlab {

/// Box sampler for network weights, with optional local refinement: every
/// newly discovered trace queues `refine_steps` Gaussian perturbations of the
/// weight vector that produced it (scale `refine_scale * (hi - lo)`).
struct WeightSampler {
    double lo = -1.0;
    double hi = 1.0;
    std::size_t refine_steps = 0;
    double refine_scale = 0.1;
};

/// The class {F_w : w in R^m} of a fixed network architecture.
struct NetworkClass {
    std::shared_ptr<const NetworkSpec> network;
    WeightSampler sampler{};

    NetworkClass(NetworkSpec net, WeightSampler s = {})
        : network(std::make_shared<const NetworkSpec>(std::move(net))), sampler(s) {
        if (!(sampler.lo <= sampler.hi)) throw SchemaError("sampler box requires lo <= hi");
    }
};

using HypothesisClass =
    std::variant<LinearThresholdClass, UnionOfPointsClass, ExplicitFiniteClass, NetworkClass>;

inline HypothesisClass to_hypothesis_class(const BaselineClass& c) {
    return std::visit([](const auto& b) -> HypothesisClass { return b; }, c);
}

/// Dimension of the ambient space the class acts on.
inline std::size_t input_dim(const HypothesisClass& c) {
    struct {
        std::size_t operator()(const LinearThresholdClass& l) const { return l.dim; }
        std::size_t operator()(const UnionOfPointsClass& u) const { return u.domain().dim(); }
        std::size_t operator()(const ExplicitFiniteClass& e) const { return e.domain().dim(); }
        std::size_t operator()(const NetworkClass& n) const { return n.network->input_dim(); }
    } visitor;
    return std::visit(visitor, c);
}

/// Number of real parameters m for parametric classes (dim + 1 for a
/// half-space, the weight count for a network); empty for finite classes.
inline std::optional<std::size_t> parameter_count(const HypothesisClass& c) {
    if (const auto* l = std::get_if<LinearThresholdClass>(&c)) return l->dim + 1;
    if (const auto* n = std::get_if<NetworkClass>(&c)) return n->network->weight_count();
    return std::nullopt;
}

inline std::string class_kind_name(const HypothesisClass& c) {
    struct {
        std::string operator()(const LinearThresholdClass&) const { return "linear_threshold"; }
        std::string operator()(const UnionOfPointsClass&) const { return "union_of_points"; }
        std::string operator()(const ExplicitFiniteClass&) const { return "explicit_finite"; }
        std::string operator()(const NetworkClass&) const { return "network"; }
    } visitor;
    return std::visit(visitor, c);
}

} // namespace vcdlab
