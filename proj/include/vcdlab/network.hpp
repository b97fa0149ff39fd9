#pragma once

#include "activation.hpp"
#include "errors.hpp"
#include "point_set.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace vcdlab {

/// One fully connected layer: `width` nodes, each an affine map of the
/// previous layer's `fan_in` outputs followed by `activation`.
struct LayerSpec {
    std::size_t fan_in;
    std::size_t width;
    ActivationSpec activation;
};

/// Layered feed-forward network with a single output node.
///
/// Weights are laid out node by node, layer by layer; each node owns
/// `fan_in` incoming weights followed by its bias. The final real output v
/// is binarized as 1 iff v > 0.
class NetworkSpec {
public:
    NetworkSpec(std::size_t input_dim, std::vector<LayerSpec> layers)
        : input_dim_(input_dim), layers_(std::move(layers)) {
        if (input_dim_ == 0) throw SchemaError("network input_dim must be positive");
        if (layers_.empty()) throw SchemaError("network needs at least one layer");
        std::size_t prev = input_dim_;
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            const auto& layer = layers_[l];
            if (layer.width == 0) throw SchemaError("layer width must be positive");
            if (layer.fan_in != prev)
                throw SchemaError("layer " + std::to_string(l) + " fan_in " +
                                  std::to_string(layer.fan_in) + " does not match previous width " +
                                  std::to_string(prev));
            weight_count_ += layer.width * (layer.fan_in + 1);
            prev = layer.width;
        }
        if (layers_.back().width != 1) throw SchemaError("network must have exactly one output node");
    }

    std::size_t input_dim() const noexcept { return input_dim_; }
    const std::vector<LayerSpec>& layers() const noexcept { return layers_; }

    /// m: sum over nodes of (fan_in + 1).
    std::size_t weight_count() const noexcept { return weight_count_; }

    std::size_t max_width() const noexcept {
        std::size_t w = input_dim_;
        for (const auto& l : layers_) w = std::max(w, l.width);
        return w;
    }

    /// Single linear-threshold unit on R^dim (m = dim + 1).
    static NetworkSpec perceptron(std::size_t dim) {
        return NetworkSpec(dim, {LayerSpec{dim, 1, ActivationSpec::threshold()}});
    }

private:
    std::size_t input_dim_;
    std::vector<LayerSpec> layers_;
    std::size_t weight_count_ = 0;
};

/// Weight vector for a particular network; length is checked on use.
struct WeightVector {
    std::vector<double> values;
};

/// Forward pass returning the real output of the single output node.
/// `scratch` must hold at least 2 * max_width doubles.
inline double forward_value(const NetworkSpec& net, std::span<const double> weights,
                            std::span<const double> x, std::span<double> scratch) {
    if (weights.size() != net.weight_count()) throw DimensionMismatch(net.weight_count(), weights.size());
    if (x.size() != net.input_dim()) throw DimensionMismatch(net.input_dim(), x.size());
    const std::size_t w = net.max_width();
    std::span<double> cur = scratch.subspan(0, w);
    std::span<double> next = scratch.subspan(w, w);
    std::copy(x.begin(), x.end(), cur.begin());
    std::size_t offset = 0;
    for (const auto& layer : net.layers()) {
        for (std::size_t j = 0; j < layer.width; ++j) {
            double pre = weights[offset + layer.fan_in];
            for (std::size_t i = 0; i < layer.fan_in; ++i) pre += weights[offset + i] * cur[i];
            next[j] = apply_activation(layer.activation, pre);
            offset += layer.fan_in + 1;
        }
        std::swap(cur, next);
    }
    return cur[0];
}

inline double forward_value(const NetworkSpec& net, std::span<const double> weights,
                            std::span<const double> x) {
    std::vector<double> scratch(2 * net.max_width());
    return forward_value(net, weights, x, scratch);
}

/// A fixed-weight network F_w: R^n -> {0,1}.
class Hypothesis {
public:
    Hypothesis(std::shared_ptr<const NetworkSpec> network, WeightVector weights)
        : network_(std::move(network)), weights_(std::move(weights)) {
        if (!network_) throw SchemaError("hypothesis needs a network");
        if (weights_.values.size() != network_->weight_count())
            throw DimensionMismatch(network_->weight_count(), weights_.values.size());
    }

    Hypothesis(const NetworkSpec& network, WeightVector weights)
        : Hypothesis(std::make_shared<const NetworkSpec>(network), std::move(weights)) {}

    const NetworkSpec& network() const noexcept { return *network_; }
    const WeightVector& weights() const noexcept { return weights_; }

    double value(std::span<const double> x) const { return forward_value(*network_, weights_.values, x); }

private:
    std::shared_ptr<const NetworkSpec> network_;
    WeightVector weights_;
};

/// Deterministic forward pass; 1 iff the output value is strictly positive.
inline bool evaluate(const Hypothesis& h, std::span<const double> x) { return h.value(x) > 0.0; }

} // namespace vcdlab
