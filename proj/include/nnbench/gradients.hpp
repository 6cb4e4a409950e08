#pragma once

#include <span>
#include <vector>

#include "nnbench/network.hpp"

namespace nnbench::train {

/// Per-observation loss on a scalar output.
///
/// Squared error is 0.5 (y - f)^2 so that the backpropagated output delta is
/// exactly f'(nnet) (y - f). Pinball weights the residual u = y - f by theta
/// when u >= 0 and by (1 - theta) otherwise; with eps > 0 the absolute value
/// is replaced by the Huber function (u^2 / 2 eps inside |u| <= eps).
struct Loss {
    enum class Kind { squared_error, pinball };

    Kind kind = Kind::squared_error;
    double theta = 0.5;
    double eps = 0.0;

    static Loss squared_error() { return {}; }
    static Loss pinball(double theta, double eps);

    double value(double y, double f) const noexcept;

    // -dLoss/df, i.e. the "target minus output" direction.
    double descent_slope(double y, double f) const noexcept;
};

double huber(double u, double eps) noexcept;

/// Backpropagated quantities for one observation.
///
/// `partials` holds dE/dparam in the network's layout; `deltas[l][j]` is the
/// node error signal, signed so that a positive delta asks the node's output
/// to grow (delta = f' (target - output) at the output node).
struct GradientSet {
    std::vector<net::LayerParams> partials;
    std::vector<std::vector<double>> deltas;
};

GradientSet backprop_gradients(const net::Network& net, std::span<const double> x, double y_target,
                               const Loss& loss);

// into += g, elementwise over two congruent buffers.
void accumulate(std::vector<net::LayerParams>& into, const std::vector<net::LayerParams>& g);
void scale(std::vector<net::LayerParams>& params, double factor);

}  // namespace nnbench::train
