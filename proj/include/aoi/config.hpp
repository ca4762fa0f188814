#pragma once

#include <string>

#include <json.hpp>

#include "aoi/model.hpp"

namespace aoi {

// Kinds and their params:
//   rate:    constant{rate} sinusoid{base,amplitude,frequency}
//            piecewise_constant{starts,rates} square_wave{high,low,half_period,horizon}
//            tabulated{t0,step,values}
//   service: exponential{rate} deterministic{value} uniform{upper}
//            gamma{shape,scale} erlang{stages,scale}
RateProfile rate_from_json(const nlohmann::json& j);
ServiceDistribution service_from_json(const nlohmann::json& j);
// Reads keys "rate", "service" and "theta".
SystemConfig system_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

// Typed accessors that raise ConfigError with the key name on failure.
double json_number(const nlohmann::json& j, const std::string& key);
double json_number_or(const nlohmann::json& j, const std::string& key, double fallback);

}  // namespace aoi
