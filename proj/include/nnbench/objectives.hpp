#pragma once

#include <span>
#include <vector>

#include "nnbench/gradients.hpp"
#include "nnbench/network.hpp"
#include "nnbench/train_config.hpp"

namespace nnbench::train {

// lambda * sum of squared connection weights (biases excluded).
double l2_penalty(const net::Network& net, double lambda);
std::vector<net::LayerParams> l2_penalty_gradient(const net::Network& net, double lambda);

// lambda * sum w^2 / (1 + w^2) over connection weights.
double rational_penalty(const net::Network& net, double lambda);
std::vector<net::LayerParams> rational_penalty_gradient(const net::Network& net, double lambda);

// lambda1 * sum of squared input-to-hidden weights + lambda2 * sum of squared
// hidden-to-output weights. Without a hidden layer the single layer feeds the
// output and falls under lambda2.
double quantile_penalty(const net::Network& net, double lambda1, double lambda2);
std::vector<net::LayerParams> quantile_penalty_gradient(const net::Network& net, double lambda1,
                                                        double lambda2);

// Exact quantile objective: pinball sum over the residuals plus the two
// weight penalties.
double pinball_objective(std::span<const double> predictions, std::span<const double> targets,
                         double theta, const net::Network& net, double lambda1, double lambda2);

// As pinball_objective with the Huber-smoothed absolute value (eps > 0).
double smoothed_pinball_objective(std::span<const double> predictions, std::span<const double> targets,
                                  double theta, const net::Network& net, double lambda1, double lambda2,
                                  double eps);

// Data loss of the regime: squared error, or pinball with the given smoothing.
Loss regime_loss(const TrainConfig& cfg, double eps);

// Penalty term of the regime (zero for PlainGD and Momentum).
double regime_penalty(const net::Network& net, const TrainConfig& cfg);
std::vector<net::LayerParams> regime_penalty_gradient(const net::Network& net, const TrainConfig& cfg);

// Single-observation objective loss(y, f(x)) + penalty, and its exact gradient.
double observation_objective(const net::Network& net, std::span<const double> x, double y,
                             const TrainConfig& cfg, double eps);
std::vector<net::LayerParams> observation_gradient(const net::Network& net, std::span<const double> x,
                                                   double y, const TrainConfig& cfg, double eps);

}  // namespace nnbench::train
