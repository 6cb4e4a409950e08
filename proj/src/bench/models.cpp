#include "nnbench/models.hpp"

#include "nnbench/error.hpp"

namespace nnbench::bench {

namespace {

using train::Regime;

Regime regime_of(const std::string& name) {
    if (name == "shlffnn" || name == "gdbpnn") return Regime::plain_gd;
    if (name == "gdbpmnn") return Regime::momentum;
    if (name == "bpwdnn") return Regime::weight_decay_l2;
    if (name == "qrnn") return Regime::quantile;
    throw ConfigError("unknown model '" + name + "' (expected shlffnn, gdbpnn, gdbpmnn, bpwdnn or qrnn)");
}

template <typename T>
void reject(const std::optional<T>& value, bool allowed, const char* flag, const std::string& model) {
    if (value && !allowed) throw ConfigError(std::string(flag) + " does not apply to model " + model);
}

}  // namespace

const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names = {"shlffnn", "gdbpnn", "gdbpmnn", "bpwdnn", "qrnn"};
    return names;
}

double default_eta(const std::string& name) { return name == "shlffnn" ? 0.005 : 0.1; }

ModelSpec make_model(const std::string& name, const ModelOverrides& o) {
    Regime regime = regime_of(name);
    if (name == "bpwdnn" && o.rational_decay) regime = Regime::weight_decay_rational;
    if (o.rational_decay && name != "bpwdnn") throw ConfigError("rational decay applies to bpwdnn only");

    const bool momentum = regime == Regime::momentum;
    const bool decay = regime == Regime::weight_decay_l2 || regime == Regime::weight_decay_rational;
    const bool quantile = regime == Regime::quantile;
    reject(o.momentum, momentum, "momentum", name);
    reject(o.lambda, decay, "lambda", name);
    reject(o.theta, quantile, "theta", name);
    reject(o.lambda1, quantile, "lambda1", name);
    reject(o.lambda2, quantile, "lambda2", name);
    reject(o.smoothing_eps, quantile, "pinball smoothing", name);
    if (o.hidden < 1 && name != "shlffnn") throw ConfigError("hidden layer width must be at least 1");

    ModelSpec spec;
    spec.label = name;
    if (name != "shlffnn") spec.hidden_sizes = {o.hidden};
    spec.hidden_activation = net::Activation::sigmoid;
    spec.output_activation = net::Activation::linear;
    spec.init_half_width = o.init_half_width.value_or(0.5);

    auto& cfg = spec.config;
    cfg = train::TrainConfig::defaults(regime);
    cfg.eta = o.eta.value_or(default_eta(name));
    if (o.epochs) cfg.epochs = *o.epochs;
    if (o.batch_mode) cfg.batch_mode = *o.batch_mode;
    if (o.momentum) cfg.momentum = o.momentum;
    if (o.lambda) cfg.lambda = o.lambda;
    if (o.theta) cfg.theta = o.theta;
    if (o.lambda1) cfg.lambda1 = o.lambda1;
    if (o.lambda2) cfg.lambda2 = o.lambda2;
    if (o.smoothing_eps) cfg.smoothing_eps = o.smoothing_eps;
    cfg.validate();
    return spec;
}

nlohmann::json to_json(const ModelSpec& spec) {
    nlohmann::json j = {
        {"label", spec.label},
        {"hidden_sizes", spec.hidden_sizes},
        {"hidden_activation", net::to_string(spec.hidden_activation)},
        {"output_activation", net::to_string(spec.output_activation)},
        {"init_half_width", spec.init_half_width},
        {"config", train::to_json(spec.config)},
        {"seed_stream", nullptr},
    };
    if (spec.seed_stream) j["seed_stream"] = *spec.seed_stream;
    return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
    ModelSpec spec;
    spec.label = j.at("label").get<std::string>();
    spec.hidden_sizes = j.at("hidden_sizes").get<std::vector<std::size_t>>();
    spec.hidden_activation = net::parse_activation(j.at("hidden_activation").get<std::string>());
    spec.output_activation = net::parse_activation(j.at("output_activation").get<std::string>());
    spec.init_half_width = j.at("init_half_width").get<double>();
    spec.config = train::config_from_json(j.at("config"));
    if (!j.at("seed_stream").is_null()) spec.seed_stream = j.at("seed_stream").get<std::uint64_t>();
    return spec;
}

}  // namespace nnbench::bench
