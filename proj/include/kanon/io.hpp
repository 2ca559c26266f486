#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "kanon/model.hpp"

namespace kanon {

nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const SignalingScheme& scheme);
nlohmann::json to_json(const Evaluation& eval);

Instance instance_from_json(const nlohmann::json& j);
SignalingScheme scheme_from_json(const nlohmann::json& j);
Evaluation evaluation_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
SignalingScheme load_scheme(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace kanon
