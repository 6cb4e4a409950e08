#include "nnbench/train_config.hpp"

#include <cmath>
#include <sstream>

#include "nnbench/error.hpp"

namespace nnbench::train {

namespace {

constexpr int kConfigSchemaVersion = 1;

bool uses_momentum(Regime r) { return r == Regime::momentum; }
bool uses_lambda(Regime r) { return r == Regime::weight_decay_l2 || r == Regime::weight_decay_rational; }
bool uses_quantile(Regime r) { return r == Regime::quantile; }

void require(bool present, bool needed, const char* field, Regime regime) {
    if (present && !needed) {
        throw ConfigError(std::string(field) + " is not a hyperparameter of regime " + to_string(regime));
    }
    if (!present && needed) {
        throw ConfigError("regime " + to_string(regime) + " requires " + field);
    }
}

nlohmann::json opt(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

}  // namespace

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::plain_gd: return "plain-gd";
        case Regime::momentum: return "momentum";
        case Regime::weight_decay_l2: return "weight-decay-l2";
        case Regime::weight_decay_rational: return "weight-decay-rational";
        case Regime::quantile: return "quantile";
    }
    return "unknown";
}

Regime parse_regime(const std::string& name) {
    if (name == "plain-gd") return Regime::plain_gd;
    if (name == "momentum") return Regime::momentum;
    if (name == "weight-decay-l2") return Regime::weight_decay_l2;
    if (name == "weight-decay-rational") return Regime::weight_decay_rational;
    if (name == "quantile") return Regime::quantile;
    throw ConfigError("unknown training regime '" + name + "'");
}

std::string to_string(BatchMode mode) {
    return mode == BatchMode::full_batch ? "full-batch" : "per-observation";
}

BatchMode parse_batch_mode(const std::string& name) {
    if (name == "full-batch" || name == "batch") return BatchMode::full_batch;
    if (name == "per-observation" || name == "online") return BatchMode::per_observation;
    throw ConfigError("unknown batch mode '" + name + "'");
}

TrainConfig TrainConfig::defaults(Regime regime) {
    TrainConfig cfg;
    cfg.regime = regime;
    switch (regime) {
        case Regime::plain_gd: break;
        case Regime::momentum: cfg.momentum = 0.5; break;
        case Regime::weight_decay_l2:
        case Regime::weight_decay_rational: cfg.lambda = 1e-4; break;
        case Regime::quantile:
            cfg.theta = 0.5;
            cfg.lambda1 = 0.0;
            cfg.lambda2 = 0.0;
            cfg.smoothing_eps = 1e-3;
            break;
    }
    return cfg;
}

void TrainConfig::validate() const {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("learning rate must be finite and >= 0");
    require(momentum.has_value(), uses_momentum(regime), "momentum", regime);
    require(lambda.has_value(), uses_lambda(regime), "lambda", regime);
    require(theta.has_value(), uses_quantile(regime), "theta", regime);
    require(lambda1.has_value(), uses_quantile(regime), "lambda1", regime);
    require(lambda2.has_value(), uses_quantile(regime), "lambda2", regime);
    require(smoothing_eps.has_value(), uses_quantile(regime), "smoothing_eps", regime);
    if (momentum && !(*momentum >= 0.0 && *momentum <= 1.0)) {
        throw ConfigError("momentum must lie in [0, 1]");
    }
    if (lambda && !(*lambda >= 0.0 && std::isfinite(*lambda))) throw ConfigError("lambda must be >= 0");
    if (theta && !(*theta > 0.0 && *theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
    if (lambda1 && !(*lambda1 >= 0.0 && std::isfinite(*lambda1))) throw ConfigError("lambda1 must be >= 0");
    if (lambda2 && !(*lambda2 >= 0.0 && std::isfinite(*lambda2))) throw ConfigError("lambda2 must be >= 0");
    if (smoothing_eps && !(*smoothing_eps >= 0.0 && std::isfinite(*smoothing_eps))) {
        throw ConfigError("pinball smoothing must be >= 0");
    }
}

std::vector<std::string> TrainConfig::warnings() const {
    std::vector<std::string> out;
    if (regime == Regime::weight_decay_l2 && lambda) {
        const double factor = 1.0 - 2.0 * *lambda * eta;
        if (!(std::abs(factor) < 1.0)) {
            std::ostringstream msg;
            msg << "weight decay factor |1 - 2*lambda*eta| = " << std::abs(factor)
                << " is not below 1; weights will not decay geometrically";
            out.push_back(msg.str());
        }
    }
    if (eta == 0.0) out.push_back("learning rate is 0; training leaves the network unchanged");
    return out;
}

double smoothing_at_epoch(const TrainConfig& cfg, std::size_t epoch) {
    const double eps0 = cfg.smoothing_eps.value_or(0.0);
    if (eps0 <= kFinalSmoothing || cfg.epochs == 0) return eps0;
    const std::size_t anneal = cfg.epochs / 4;
    const std::size_t start = cfg.epochs - anneal;
    if (anneal == 0 || epoch < start) return eps0;
    const double frac = static_cast<double>(epoch - start + 1) / static_cast<double>(anneal);
    return eps0 * std::pow(kFinalSmoothing / eps0, frac);
}

nlohmann::json to_json(const TrainConfig& cfg) {
    return {
        {"schema_version", kConfigSchemaVersion},
        {"regime", to_string(cfg.regime)},
        {"eta", cfg.eta},
        {"momentum", opt(cfg.momentum)},
        {"lambda", opt(cfg.lambda)},
        {"theta", opt(cfg.theta)},
        {"lambda1", opt(cfg.lambda1)},
        {"lambda2", opt(cfg.lambda2)},
        {"pinball_smoothing_eps", opt(cfg.smoothing_eps)},
        {"epochs", cfg.epochs},
        {"batch_mode", to_string(cfg.batch_mode)},
        {"seed", cfg.seed},
    };
}

TrainConfig config_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kConfigSchemaVersion) {
            throw DataError("unsupported train config schema_version");
        }
        TrainConfig cfg;
        cfg.regime = parse_regime(j.at("regime").get<std::string>());
        cfg.eta = j.at("eta").get<double>();
        cfg.momentum = opt_from(j, "momentum");
        cfg.lambda = opt_from(j, "lambda");
        cfg.theta = opt_from(j, "theta");
        cfg.lambda1 = opt_from(j, "lambda1");
        cfg.lambda2 = opt_from(j, "lambda2");
        cfg.smoothing_eps = opt_from(j, "pinball_smoothing_eps");
        cfg.epochs = j.at("epochs").get<std::size_t>();
        cfg.batch_mode = parse_batch_mode(j.at("batch_mode").get<std::string>());
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed train config: ") + e.what());
    }
}

}  // namespace nnbench::train
