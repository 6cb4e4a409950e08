#include "nnbench/network.hpp"

#include <algorithm>

#include "nnbench/error.hpp"
#include "nnbench/rng.hpp"

namespace nnbench::net {

namespace {

constexpr int kNetworkSchemaVersion = 1;

}  // namespace

std::string to_string(Activation act) { return act == Activation::sigmoid ? "sigmoid" : "linear"; }

Activation parse_activation(const std::string& name) {
    if (name == "sigmoid" || name == "logistic") return Activation::sigmoid;
    if (name == "linear" || name == "identity") return Activation::linear;
    throw ConfigError("unknown activation '" + name + "'");
}

std::size_t Network::parameter_count() const noexcept {
    std::size_t count = 0;
    for (const auto& layer : layers) count += layer.weights.size() + layer.biases.size();
    return count;
}

void Network::validate() const {
    if (n_inputs < 1) throw DimensionError("network needs at least one input");
    if (hidden_sizes.size() > 1) throw DimensionError("at most one hidden layer is supported");
    if (layers.size() != hidden_sizes.size() + 1) {
        throw DimensionError("network has " + std::to_string(layers.size()) + " layers, expected " +
                             std::to_string(hidden_sizes.size() + 1));
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (fan_out(l) < 1) throw DimensionError("hidden layer width must be at least 1");
        if (layers[l].weights.size() != fan_in(l) * fan_out(l) || layers[l].biases.size() != fan_out(l)) {
            throw DimensionError("layer " + std::to_string(l) + " parameter shape does not chain");
        }
        auto finite = [](double v) { return std::isfinite(v); };
        if (!std::all_of(layers[l].weights.begin(), layers[l].weights.end(), finite) ||
            !std::all_of(layers[l].biases.begin(), layers[l].biases.end(), finite)) {
            throw DivergenceError("non-finite parameter in layer " + std::to_string(l), 0);
        }
    }
}

std::vector<LayerParams> zeros_like(const Network& net) {
    std::vector<LayerParams> out(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        out[l].weights.assign(net.layers[l].weights.size(), 0.0);
        out[l].biases.assign(net.layers[l].biases.size(), 0.0);
    }
    return out;
}

void check_congruent(const Network& net, const std::vector<LayerParams>& params, const char* what) {
    bool ok = params.size() == net.layers.size();
    for (std::size_t l = 0; ok && l < params.size(); ++l) {
        ok = params[l].weights.size() == net.layers[l].weights.size() &&
             params[l].biases.size() == net.layers[l].biases.size();
    }
    if (!ok) throw DimensionError(std::string(what) + " is not congruent with the network");
}

Network init_network(std::size_t n_inputs, const std::vector<std::size_t>& hidden_sizes,
                     Activation hidden_act, Activation output_act, const InitSpec& init) {
    if (n_inputs < 1) throw DimensionError("network needs at least one input");
    if (hidden_sizes.size() > 1) {
        throw DimensionError("unsupported depth: " + std::to_string(hidden_sizes.size()) +
                             " hidden layers (at most 1)");
    }
    for (auto m : hidden_sizes) {
        if (m < 1) throw DimensionError("hidden layer width must be at least 1");
    }
    if (!(init.half_width >= 0.0) || !std::isfinite(init.half_width)) {
        throw ConfigError("init half-width must be finite and >= 0");
    }

    Network net;
    net.n_inputs = n_inputs;
    net.hidden_sizes = hidden_sizes;
    net.hidden_activation = hidden_act;
    net.output_activation = output_act;
    net.init = init;
    net.layers.resize(hidden_sizes.size() + 1);

    Rng rng(init.seed);
    const double hw = init.half_width;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        layer.weights.resize(net.fan_in(l) * net.fan_out(l));
        layer.biases.resize(net.fan_out(l));
        for (auto& w : layer.weights) w = hw == 0.0 ? 0.0 : rng.uniform(-hw, hw);
        for (auto& b : layer.biases) b = hw == 0.0 ? 0.0 : rng.uniform(-hw, hw);
    }
    return net;
}

ForwardCache forward(const Network& net, std::span<const double> x) {
    if (x.size() != net.n_inputs) {
        throw DimensionError("input has " + std::to_string(x.size()) + " values, network expects " +
                             std::to_string(net.n_inputs));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw DataError("non-finite network input");
    }
    ForwardCache cache;
    cache.pre.resize(net.layers.size());
    cache.post.resize(net.layers.size());
    std::span<const double> in = x;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        const std::size_t fan_in = in.size();
        const std::size_t fan_out = layer.biases.size();
        const Activation act = net.activation(l);
        auto& pre = cache.pre[l];
        auto& post = cache.post[l];
        pre.resize(fan_out);
        post.resize(fan_out);
        for (std::size_t j = 0; j < fan_out; ++j) {
            const double* w = layer.weights.data() + j * fan_in;
            double sum = layer.biases[j];
            for (std::size_t i = 0; i < fan_in; ++i) sum += w[i] * in[i];
            pre[j] = sum;
            post[j] = activate(act, sum);
        }
        in = post;
    }
    return cache;
}

std::vector<double> predict_batch(const Network& net, const data::Dataset& data,
                                  std::span<const std::size_t> rows) {
    if (data.cols() != net.n_inputs) {
        throw DimensionError("dataset has " + std::to_string(data.cols()) + " columns, network expects " +
                             std::to_string(net.n_inputs));
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (auto r : rows) {
        if (r >= data.rows()) throw DimensionError("row index " + std::to_string(r) + " out of range");
        out.push_back(predict(net, data.row(r)));
    }
    return out;
}

double parameter_norm(const Network& net) {
    double sum = 0.0;
    for (const auto& layer : net.layers) {
        for (double w : layer.weights) sum += w * w;
        for (double b : layer.biases) sum += b * b;
    }
    return std::sqrt(sum);
}

nlohmann::json to_json(const Network& net) {
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        layers.push_back({
            {"fan_in", net.fan_in(l)},
            {"fan_out", net.fan_out(l)},
            {"activation", to_string(net.activation(l))},
            {"weights", net.layers[l].weights},
            {"biases", net.layers[l].biases},
        });
    }
    return {
        {"schema_version", kNetworkSchemaVersion},
        {"kind", "network"},
        {"n_inputs", net.n_inputs},
        {"hidden_sizes", net.hidden_sizes},
        {"hidden_activation", to_string(net.hidden_activation)},
        {"output_activation", to_string(net.output_activation)},
        {"init", {{"scheme", "uniform-symmetric"}, {"half_width", net.init.half_width}, {"seed", net.init.seed}}},
        {"layers", layers},
    };
}

Network network_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kNetworkSchemaVersion) {
            throw DataError("unsupported network schema_version");
        }
        Network net;
        net.n_inputs = j.at("n_inputs").get<std::size_t>();
        net.hidden_sizes = j.at("hidden_sizes").get<std::vector<std::size_t>>();
        net.hidden_activation = parse_activation(j.at("hidden_activation").get<std::string>());
        net.output_activation = parse_activation(j.at("output_activation").get<std::string>());
        net.init.half_width = j.at("init").at("half_width").get<double>();
        net.init.seed = j.at("init").at("seed").get<std::uint64_t>();
        for (const auto& lj : j.at("layers")) {
            net.layers.push_back({lj.at("weights").get<std::vector<double>>(),
                                  lj.at("biases").get<std::vector<double>>()});
        }
        net.validate();
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed network document: ") + e.what());
    }
}

}  // namespace nnbench::net
