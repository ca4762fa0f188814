#include "aoi/config.hpp"

#include <cmath>
#include <fstream>

#include "aoi/errors.hpp"

namespace aoi {

SystemConfig::SystemConfig(RateProfile rate_, ServiceDistribution service_, double theta_)
    : rate(std::move(rate_)), service(std::move(service_)), theta(theta_) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
}

namespace {

const nlohmann::json& member(const nlohmann::json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError("missing config key '" + key + "'");
    return j.at(key);
}

std::vector<double> number_list(const nlohmann::json& j, const std::string& key) {
    const auto& v = member(j, key);
    if (!v.is_array()) throw ConfigError("config key '" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("config key '" + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::string kind_of(const nlohmann::json& j) {
    const auto& k = member(j, "kind");
    if (!k.is_string()) throw ConfigError("'kind' must be a string");
    return k.get<std::string>();
}

const nlohmann::json& params_of(const nlohmann::json& j) {
    static const nlohmann::json empty = nlohmann::json::object();
    return j.contains("params") ? j.at("params") : empty;
}

}  // namespace

double json_number(const nlohmann::json& j, const std::string& key) {
    const auto& v = member(j, key);
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

double json_number_or(const nlohmann::json& j, const std::string& key, double fallback) {
    return j.is_object() && j.contains(key) ? json_number(j, key) : fallback;
}

RateProfile rate_from_json(const nlohmann::json& j) {
    const std::string kind = kind_of(j);
    const auto& p = params_of(j);
    if (kind == "constant") return RateProfile::constant(json_number(p, "rate"));
    if (kind == "sinusoid")
        return RateProfile::sinusoid(json_number(p, "base"), json_number(p, "amplitude"),
                                     json_number(p, "frequency"));
    if (kind == "piecewise_constant")
        return RateProfile::piecewise_constant(number_list(p, "starts"), number_list(p, "rates"));
    if (kind == "square_wave")
        return RateProfile::square_wave(json_number(p, "high"), json_number(p, "low"),
                                        json_number(p, "half_period"), json_number(p, "horizon"));
    if (kind == "tabulated")
        return RateProfile::tabulated(json_number(p, "t0"), json_number(p, "step"), number_list(p, "values"));
    throw ConfigError("unknown rate kind '" + kind + "'");
}

ServiceDistribution service_from_json(const nlohmann::json& j) {
    const std::string kind = kind_of(j);
    const auto& p = params_of(j);
    if (kind == "exponential") return ServiceDistribution::exponential(json_number(p, "rate"));
    if (kind == "deterministic") return ServiceDistribution::deterministic(json_number(p, "value"));
    if (kind == "uniform") return ServiceDistribution::uniform(json_number(p, "upper"));
    if (kind == "gamma") return ServiceDistribution::gamma(json_number(p, "shape"), json_number(p, "scale"));
    if (kind == "erlang") {
        const double n = json_number(p, "stages");
        if (n != std::floor(n)) throw ConfigError("erlang stages must be an integer");
        return ServiceDistribution::erlang(static_cast<int>(n), json_number(p, "scale"));
    }
    throw ConfigError("unknown service kind '" + kind + "'");
}

SystemConfig system_from_json(const nlohmann::json& j) {
    return SystemConfig(rate_from_json(member(j, "rate")), service_from_json(member(j, "service")),
                        json_number(j, "theta"));
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed config file '" + path + "': " + e.what());
    }
}

}  // namespace aoi
