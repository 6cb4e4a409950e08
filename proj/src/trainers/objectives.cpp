#include "nnbench/objectives.hpp"

#include <cmath>

#include "nnbench/error.hpp"

namespace nnbench::train {

namespace {

// Coefficient of the squared-weight penalty applied to layer `l` in the
// quantile objective.
double quantile_coefficient(const net::Network& net, std::size_t l, double lambda1, double lambda2) {
    return net.is_output(l) ? lambda2 : lambda1;
}

void check_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
}

double pinball_sum(std::span<const double> predictions, std::span<const double> targets, double theta,
                   double eps) {
    if (predictions.size() != targets.size()) {
        throw DimensionError("prediction and target vectors differ in length");
    }
    check_theta(theta);
    const Loss loss = Loss::pinball(theta, eps);
    double sum = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) sum += loss.value(targets[i], predictions[i]);
    return sum;
}

}  // namespace

double l2_penalty(const net::Network& net, double lambda) {
    double sum = 0.0;
    for (const auto& layer : net.layers) {
        for (double w : layer.weights) sum += w * w;
    }
    return lambda * sum;
}

std::vector<net::LayerParams> l2_penalty_gradient(const net::Network& net, double lambda) {
    auto g = net::zeros_like(net);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t i = 0; i < g[l].weights.size(); ++i) g[l].weights[i] = 2.0 * lambda * net.layers[l].weights[i];
    }
    return g;
}

double rational_penalty(const net::Network& net, double lambda) {
    double sum = 0.0;
    for (const auto& layer : net.layers) {
        for (double w : layer.weights) sum += w * w / (1.0 + w * w);
    }
    return lambda * sum;
}

std::vector<net::LayerParams> rational_penalty_gradient(const net::Network& net, double lambda) {
    auto g = net::zeros_like(net);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t i = 0; i < g[l].weights.size(); ++i) {
            const double w = net.layers[l].weights[i];
            const double denom = 1.0 + w * w;
            g[l].weights[i] = lambda * 2.0 * w / (denom * denom);
        }
    }
    return g;
}

double quantile_penalty(const net::Network& net, double lambda1, double lambda2) {
    double total = 0.0;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        double sum = 0.0;
        for (double w : net.layers[l].weights) sum += w * w;
        total += quantile_coefficient(net, l, lambda1, lambda2) * sum;
    }
    return total;
}

std::vector<net::LayerParams> quantile_penalty_gradient(const net::Network& net, double lambda1,
                                                        double lambda2) {
    auto g = net::zeros_like(net);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const double c = quantile_coefficient(net, l, lambda1, lambda2);
        for (std::size_t i = 0; i < g[l].weights.size(); ++i) g[l].weights[i] = 2.0 * c * net.layers[l].weights[i];
    }
    return g;
}

double pinball_objective(std::span<const double> predictions, std::span<const double> targets,
                         double theta, const net::Network& net, double lambda1, double lambda2) {
    return pinball_sum(predictions, targets, theta, 0.0) + quantile_penalty(net, lambda1, lambda2);
}

double smoothed_pinball_objective(std::span<const double> predictions, std::span<const double> targets,
                                  double theta, const net::Network& net, double lambda1, double lambda2,
                                  double eps) {
    return pinball_sum(predictions, targets, theta, eps) + quantile_penalty(net, lambda1, lambda2);
}

Loss regime_loss(const TrainConfig& cfg, double eps) {
    if (cfg.regime == Regime::quantile) return Loss::pinball(cfg.theta.value(), eps);
    return Loss::squared_error();
}

double regime_penalty(const net::Network& net, const TrainConfig& cfg) {
    switch (cfg.regime) {
        case Regime::weight_decay_l2: return l2_penalty(net, cfg.lambda.value());
        case Regime::weight_decay_rational: return rational_penalty(net, cfg.lambda.value());
        case Regime::quantile: return quantile_penalty(net, cfg.lambda1.value(), cfg.lambda2.value());
        default: return 0.0;
    }
}

std::vector<net::LayerParams> regime_penalty_gradient(const net::Network& net, const TrainConfig& cfg) {
    switch (cfg.regime) {
        case Regime::weight_decay_l2: return l2_penalty_gradient(net, cfg.lambda.value());
        case Regime::weight_decay_rational: return rational_penalty_gradient(net, cfg.lambda.value());
        case Regime::quantile:
            return quantile_penalty_gradient(net, cfg.lambda1.value(), cfg.lambda2.value());
        default: return net::zeros_like(net);
    }
}

double observation_objective(const net::Network& net, std::span<const double> x, double y,
                             const TrainConfig& cfg, double eps) {
    return regime_loss(cfg, eps).value(y, net::predict(net, x)) + regime_penalty(net, cfg);
}

std::vector<net::LayerParams> observation_gradient(const net::Network& net, std::span<const double> x,
                                                   double y, const TrainConfig& cfg, double eps) {
    auto g = backprop_gradients(net, x, y, regime_loss(cfg, eps)).partials;
    accumulate(g, regime_penalty_gradient(net, cfg));
    return g;
}

}  // namespace nnbench::train
