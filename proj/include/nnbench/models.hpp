#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnbench/network.hpp"
#include "nnbench/train_config.hpp"

namespace nnbench::bench {

/// A trainable model: architecture plus training regime.
///
/// `seed_stream`, when set, replaces the model's position in the benchmark
/// when deriving per-run seeds, so two specs sharing a stream see identical
/// seeds.
struct ModelSpec {
    std::string label;
    std::vector<std::size_t> hidden_sizes;
    net::Activation hidden_activation = net::Activation::sigmoid;
    net::Activation output_activation = net::Activation::linear;
    double init_half_width = 0.5;
    train::TrainConfig config;
    std::optional<std::uint64_t> seed_stream;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// The five named models and their defaults:
//   shlffnn  plain GD, no hidden layer, linear output
//   gdbpnn   plain GD, one sigmoid hidden layer, linear output
//   gdbpmnn  momentum GD, same architecture
//   bpwdnn   weight-decay GD (quadratic unless `rational_decay`), same architecture
//   qrnn     quantile regression, same architecture
const std::vector<std::string>& model_names();

struct ModelOverrides {
    std::size_t hidden = 5;
    std::optional<double> eta;
    std::optional<std::size_t> epochs;
    std::optional<double> momentum;
    std::optional<double> lambda;
    bool rational_decay = false;
    std::optional<double> theta;
    std::optional<double> lambda1;
    std::optional<double> lambda2;
    std::optional<double> smoothing_eps;
    std::optional<train::BatchMode> batch_mode;
    std::optional<double> init_half_width;
};

// Throws ConfigError for an unknown name or an override that does not belong
// to the model's regime (e.g. momentum for qrnn).
ModelSpec make_model(const std::string& name, const ModelOverrides& overrides = {});

// Default learning rate for a named model. The no-hidden-layer model steps
// directly on every descriptor, so it gets a smaller rate.
double default_eta(const std::string& name);

nlohmann::json to_json(const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::json& j);

}  // namespace nnbench::bench
