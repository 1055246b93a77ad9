#pragma once

#include <optional>
#include <set>
#include <string>

#include "json.hpp"
#include "risktax/levy_model.hpp"
#include "risktax/rate_function.hpp"

namespace risktax_cli {

/// Config errors exit with code 2; admissibility refusals with code 3.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json load_config(const std::string& path);

/// Rejects keys outside the allowed set (schema-validated, unknown keys are
/// errors per the run-config contract).
void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where);

risktax::LevyModel parse_model(const nlohmann::json& j);
risktax::RateFunction parse_rate(const nlohmann::json& j);

double require_number(const nlohmann::json& j, const std::string& key);
double number_or(const nlohmann::json& j, const std::string& key, double fallback);

}  // namespace risktax_cli
