#include "nnbench/gradients.hpp"

#include <cmath>

#include "nnbench/error.hpp"

namespace nnbench::train {

double huber(double u, double eps) noexcept {
    const double a = std::abs(u);
    if (eps > 0.0 && a <= eps) return u * u / (2.0 * eps);
    return eps > 0.0 ? a - eps / 2.0 : a;
}

Loss Loss::pinball(double theta, double eps) {
    if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("pinball theta must lie in (0, 1)");
    if (!(eps >= 0.0)) throw ConfigError("pinball smoothing must be >= 0");
    return {Kind::pinball, theta, eps};
}

double Loss::value(double y, double f) const noexcept {
    const double u = y - f;
    if (kind == Kind::squared_error) return 0.5 * u * u;
    return (u >= 0.0 ? theta : 1.0 - theta) * huber(u, eps);
}

double Loss::descent_slope(double y, double f) const noexcept {
    const double u = y - f;
    if (kind == Kind::squared_error) return u;
    const double weight = u >= 0.0 ? theta : 1.0 - theta;
    double dh;  // d huber / du
    if (eps > 0.0 && std::abs(u) <= eps) dh = u / eps;
    else dh = u >= 0.0 ? 1.0 : -1.0;
    return weight * dh;
}

GradientSet backprop_gradients(const net::Network& net, std::span<const double> x, double y_target,
                               const Loss& loss) {
    const auto cache = net::forward(net, x);
    const std::size_t L = net.layer_count();

    GradientSet g;
    g.deltas.resize(L);
    g.partials.resize(L);

    const double out = cache.output();
    g.deltas[L - 1] = {net::activation_slope(net.output_activation, out) * loss.descent_slope(y_target, out)};

    for (std::size_t l = L - 1; l-- > 0;) {
        const auto& next = net.layers[l + 1];
        const auto& next_delta = g.deltas[l + 1];
        const std::size_t width = net.fan_out(l);
        auto& delta = g.deltas[l];
        delta.assign(width, 0.0);
        for (std::size_t j = 0; j < width; ++j) {
            double sum = 0.0;
            for (std::size_t q = 0; q < next_delta.size(); ++q) sum += next.weights[q * width + j] * next_delta[q];
            delta[j] = net::activation_slope(net.activation(l), cache.post[l][j]) * sum;
        }
    }

    for (std::size_t l = 0; l < L; ++l) {
        std::span<const double> in = l == 0 ? x : std::span<const double>(cache.post[l - 1]);
        const auto& delta = g.deltas[l];
        auto& p = g.partials[l];
        p.weights.resize(delta.size() * in.size());
        p.biases.resize(delta.size());
        for (std::size_t j = 0; j < delta.size(); ++j) {
            if (!std::isfinite(delta[j])) {
                throw DivergenceError("non-finite delta in layer " + std::to_string(l), 0);
            }
            double* row = p.weights.data() + j * in.size();
            for (std::size_t i = 0; i < in.size(); ++i) row[i] = -delta[j] * in[i];
            p.biases[j] = -delta[j];
        }
    }
    return g;
}

void accumulate(std::vector<net::LayerParams>& into, const std::vector<net::LayerParams>& g) {
    if (into.size() != g.size()) throw DimensionError("gradient buffers differ in layer count");
    for (std::size_t l = 0; l < into.size(); ++l) {
        if (into[l].weights.size() != g[l].weights.size() || into[l].biases.size() != g[l].biases.size()) {
            throw DimensionError("gradient buffers differ in shape");
        }
        for (std::size_t i = 0; i < g[l].weights.size(); ++i) into[l].weights[i] += g[l].weights[i];
        for (std::size_t i = 0; i < g[l].biases.size(); ++i) into[l].biases[i] += g[l].biases[i];
    }
}

void scale(std::vector<net::LayerParams>& params, double factor) {
    for (auto& layer : params) {
        for (auto& w : layer.weights) w *= factor;
        for (auto& b : layer.biases) b *= factor;
    }
}

}  // namespace nnbench::train
