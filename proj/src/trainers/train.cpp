#include "nnbench/train.hpp"

#include <cmath>
#include <sstream>

#include "nnbench/error.hpp"
#include "nnbench/gradients.hpp"
#include "nnbench/objectives.hpp"
#include "nnbench/rng.hpp"
#include "nnbench/steps.hpp"

namespace nnbench::train {

namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646ULL;

// Applies the regime's parameter update for one (observation or batch) gradient.
class Stepper {
public:
    Stepper(const TrainConfig& cfg, const net::Network& net) : cfg_(cfg) {
        if (cfg.regime == Regime::momentum) momentum_buffer_ = net::zeros_like(net);
    }

    void apply(net::Network& net, GradientSet& grads) {
        switch (cfg_.regime) {
            case Regime::plain_gd: step_plain_gd(net, grads, cfg_.eta); break;
            case Regime::momentum:
                step_momentum(net, grads, momentum_buffer_, cfg_.eta, *cfg_.momentum);
                break;
            case Regime::weight_decay_l2: step_weight_decay_l2(net, grads, cfg_.eta, *cfg_.lambda); break;
            case Regime::weight_decay_rational:
                step_weight_decay_rational(net, grads, cfg_.eta, *cfg_.lambda);
                break;
            case Regime::quantile:
                accumulate(grads.partials, quantile_penalty_gradient(net, *cfg_.lambda1, *cfg_.lambda2));
                step_plain_gd(net, grads, cfg_.eta);
                break;
        }
    }

private:
    const TrainConfig& cfg_;
    std::vector<net::LayerParams> momentum_buffer_;
};

std::string format_value(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

std::string TrainTrace::to_csv() const {
    std::string out = "epoch,objective,data_term,param_norm\n";
    for (std::size_t e = 0; e < objective.size(); ++e) {
        out += std::to_string(e + 1) + ',' + format_value(objective[e]) + ',' + format_value(data_term[e]) +
               ',' + format_value(param_norm[e]) + '\n';
    }
    return out;
}

ObjectiveValue evaluate_objective(const net::Network& net, const data::Dataset& data,
                                  std::span<const std::size_t> rows, const TrainConfig& cfg) {
    const Loss loss = regime_loss(cfg, 0.0);
    ObjectiveValue value;
    for (auto r : rows) value.data_term += loss.value(data.target[r], net::predict(net, data.row(r)));
    value.penalty = regime_penalty(net, cfg);
    return value;
}

TrainResult train(net::Network net, const data::Dataset& data, std::span<const std::size_t> rows,
                  const TrainConfig& cfg) {
    cfg.validate();
    net.validate();
    if (rows.empty()) throw ConfigError("training needs at least one row");
    if (data.cols() != net.n_inputs) {
        throw DimensionError("dataset has " + std::to_string(data.cols()) + " columns, network expects " +
                             std::to_string(net.n_inputs));
    }
    for (auto r : rows) {
        if (r >= data.rows()) throw DimensionError("row index " + std::to_string(r) + " out of range");
    }

    TrainTrace trace;
    trace.objective.reserve(cfg.epochs);
    trace.data_term.reserve(cfg.epochs);
    trace.param_norm.reserve(cfg.epochs);

    Stepper stepper(cfg, net);
    Rng order_rng(derive_seed(cfg.seed, kShuffleStream));
    std::vector<std::size_t> order(rows.begin(), rows.end());
    const double inv_n = 1.0 / static_cast<double>(rows.size());

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const Loss loss = regime_loss(cfg, smoothing_at_epoch(cfg, epoch));
        try {
            if (cfg.batch_mode == BatchMode::per_observation) {
                order_rng.shuffle(order);
                for (auto r : order) {
                    auto grads = backprop_gradients(net, data.row(r), data.target[r], loss);
                    stepper.apply(net, grads);
                }
            } else {
                GradientSet batch;
                batch.partials = net::zeros_like(net);
                for (auto r : rows) {
                    accumulate(batch.partials, backprop_gradients(net, data.row(r), data.target[r], loss).partials);
                }
                scale(batch.partials, inv_n);
                stepper.apply(net, batch);
            }
        } catch (const DivergenceError& e) {
            throw DivergenceError("training diverged at epoch " + std::to_string(epoch + 1) + ": " + e.what(),
                                  epoch + 1);
        }

        const auto value = evaluate_objective(net, data, rows, cfg);
        if (!std::isfinite(value.total())) {
            throw DivergenceError("training diverged at epoch " + std::to_string(epoch + 1) +
                                      ": objective is not finite",
                                  epoch + 1);
        }
        trace.objective.push_back(value.total());
        trace.data_term.push_back(value.data_term);
        trace.param_norm.push_back(net::parameter_norm(net));
    }
    return {std::move(net), std::move(trace)};
}

}  // namespace nnbench::train
