#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnbench/dataset.hpp"

namespace nnbench::net {

enum class Activation { linear, sigmoid };

std::string to_string(Activation act);
Activation parse_activation(const std::string& name);

// Sigmoid output is clamped to the doubles strictly inside (0, 1); otherwise
// it rounds to exactly 1 for z above about 37.
inline double activate(Activation act, double z) noexcept {
    if (act == Activation::linear) return z;
    const double y = 1.0 / (1.0 + std::exp(-z));
    return std::clamp(y, std::numeric_limits<double>::min(), 1.0 - 0x1.0p-53);
}

// Derivative expressed through the post-activation value y = f(z).
inline double activation_slope(Activation act, double y) noexcept {
    return act == Activation::sigmoid ? y * (1.0 - y) : 1.0;
}

// Uniform-symmetric initialization on [-half_width, +half_width].
struct InitSpec {
    double half_width = 0.5;
    std::uint64_t seed = 0;

    friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

// Connection weights (fan_out x fan_in, row-major) and per-node biases of
// one layer. The same layout holds gradients and update buffers.
struct LayerParams {
    std::vector<double> weights;
    std::vector<double> biases;

    friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

/// Feed-forward regressor with zero or one hidden layer and a single output.
///
/// `layers[0]` maps the inputs onto the first computing layer; with a hidden
/// layer `layers[1]` maps hidden activations onto the output node. Hidden
/// nodes use `hidden_activation`, the output node `output_activation`.
struct Network {
    std::size_t n_inputs = 0;
    std::vector<std::size_t> hidden_sizes;
    Activation hidden_activation = Activation::sigmoid;
    Activation output_activation = Activation::linear;
    InitSpec init;
    std::vector<LayerParams> layers;

    std::size_t layer_count() const noexcept { return layers.size(); }
    std::size_t fan_in(std::size_t layer) const noexcept {
        return layer == 0 ? n_inputs : hidden_sizes[layer - 1];
    }
    std::size_t fan_out(std::size_t layer) const noexcept {
        return layer + 1 < layers.size() ? hidden_sizes[layer] : 1;
    }
    Activation activation(std::size_t layer) const noexcept {
        return layer + 1 < layers.size() ? hidden_activation : output_activation;
    }
    bool is_output(std::size_t layer) const noexcept { return layer + 1 == layers.size(); }

    std::size_t parameter_count() const noexcept;

    // Throws DimensionError on shape mismatch, DivergenceError on non-finite values.
    void validate() const;

    friend bool operator==(const Network&, const Network&) = default;
};

// A zero-filled parameter buffer congruent with `net`.
std::vector<LayerParams> zeros_like(const Network& net);

// Throws DimensionError unless `params` has the layout of `net`.
void check_congruent(const Network& net, const std::vector<LayerParams>& params, const char* what);

Network init_network(std::size_t n_inputs, const std::vector<std::size_t>& hidden_sizes,
                     Activation hidden_act, Activation output_act, const InitSpec& init);

// Pre-activations (nnet_j) and post-activations (y_j) for every layer.
struct ForwardCache {
    std::vector<std::vector<double>> pre;
    std::vector<std::vector<double>> post;

    double output() const { return post.back()[0]; }
};

ForwardCache forward(const Network& net, std::span<const double> x);

inline double predict(const Network& net, std::span<const double> x) { return forward(net, x).output(); }

std::vector<double> predict_batch(const Network& net, const data::Dataset& data,
                                  std::span<const std::size_t> rows);

// Euclidean norm over every weight and bias.
double parameter_norm(const Network& net);

nlohmann::json to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

}  // namespace nnbench::net
