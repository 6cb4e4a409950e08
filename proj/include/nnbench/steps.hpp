#pragma once

#include <vector>

#include "nnbench/gradients.hpp"
#include "nnbench/network.hpp"

namespace nnbench::train {

// Parameter updates. Each mutates `net` in place and throws DivergenceError
// (epoch 0) if any parameter becomes non-finite.

// w <- w - eta dE/dw, which is w + eta delta x in the backprop sign convention.
void step_plain_gd(net::Network& net, const GradientSet& grads, double eta);

// dw(I+1) = -eta dE/dw + mu dw(I). `update` carries dw(I) in and dw(I+1) out;
// it starts as zeros_like(net).
void step_momentum(net::Network& net, const GradientSet& grads, std::vector<net::LayerParams>& update,
                   double eta, double mu);

// w <- (1 - 2 lambda eta) w - eta dE_i/dw on connection weights; biases take
// the plain step.
void step_weight_decay_l2(net::Network& net, const GradientSet& grads_data, double eta, double lambda);

// w <- w - eta dE_i/dw - eta lambda 2w / (1 + w^2)^2 on connection weights;
// biases take the plain step.
void step_weight_decay_rational(net::Network& net, const GradientSet& grads_data, double eta,
                                double lambda);

}  // namespace nnbench::train
