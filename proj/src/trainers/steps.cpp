#include "nnbench/steps.hpp"

#include <cmath>

#include "nnbench/error.hpp"

namespace nnbench::train {

namespace {

void check_finite(const net::Network& net, const char* step) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (double w : net.layers[l].weights) {
            if (!std::isfinite(w)) throw DivergenceError(std::string(step) + " produced a non-finite weight", 0);
        }
        for (double b : net.layers[l].biases) {
            if (!std::isfinite(b)) throw DivergenceError(std::string(step) + " produced a non-finite bias", 0);
        }
    }
}

}  // namespace

void step_plain_gd(net::Network& net, const GradientSet& grads, double eta) {
    net::check_congruent(net, grads.partials, "gradient");
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        const auto& g = grads.partials[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) layer.weights[i] -= eta * g.weights[i];
        for (std::size_t i = 0; i < layer.biases.size(); ++i) layer.biases[i] -= eta * g.biases[i];
    }
    check_finite(net, "gradient step");
}

void step_momentum(net::Network& net, const GradientSet& grads, std::vector<net::LayerParams>& update,
                   double eta, double mu) {
    net::check_congruent(net, grads.partials, "gradient");
    net::check_congruent(net, update, "momentum buffer");
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        const auto& g = grads.partials[l];
        auto& dw = update[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            dw.weights[i] = -(eta * g.weights[i]) + mu * dw.weights[i];
            layer.weights[i] += dw.weights[i];
        }
        for (std::size_t i = 0; i < layer.biases.size(); ++i) {
            dw.biases[i] = -(eta * g.biases[i]) + mu * dw.biases[i];
            layer.biases[i] += dw.biases[i];
        }
    }
    check_finite(net, "momentum step");
}

void step_weight_decay_l2(net::Network& net, const GradientSet& grads_data, double eta, double lambda) {
    net::check_congruent(net, grads_data.partials, "gradient");
    const double factor = 1.0 - 2.0 * lambda * eta;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        const auto& g = grads_data.partials[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            layer.weights[i] = factor * layer.weights[i] - eta * g.weights[i];
        }
        for (std::size_t i = 0; i < layer.biases.size(); ++i) layer.biases[i] -= eta * g.biases[i];
    }
    check_finite(net, "weight decay step");
}

void step_weight_decay_rational(net::Network& net, const GradientSet& grads_data, double eta,
                                double lambda) {
    net::check_congruent(net, grads_data.partials, "gradient");
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        const auto& g = grads_data.partials[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            const double w = layer.weights[i];
            const double denom = 1.0 + w * w;
            layer.weights[i] = w - eta * g.weights[i] - eta * lambda * (2.0 * w / (denom * denom));
        }
        for (std::size_t i = 0; i < layer.biases.size(); ++i) layer.biases[i] -= eta * g.biases[i];
    }
    check_finite(net, "rational decay step");
}

}  // namespace nnbench::train
