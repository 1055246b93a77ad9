#include "cli_config.hpp"

#include <fstream>

namespace risktax_cli {

using nlohmann::json;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid json: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config must be a json object");
    return j;
}

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw config_error("unknown key \"" + item.key() + "\" in " + where);
    for (const auto& key : required)
        if (!j.contains(key))
            throw config_error("missing key \"" + key + "\" in " + where);
}

risktax::LevyModel parse_model(const json& j) {
    if (!j.is_object()) throw config_error("model must be an object");
    require_keys(j, {"cramer_lundberg", "brownian"}, {}, "model");
    try {
        if (j.contains("cramer_lundberg")) {
            const json& m = j.at("cramer_lundberg");
            require_keys(m, {"premium_rate", "claim_intensity", "claim_mean"},
                         {"premium_rate", "claim_intensity", "claim_mean"},
                         "model.cramer_lundberg");
            return risktax::LevyModel::cramer_lundberg(m.at("premium_rate").get<double>(),
                                                       m.at("claim_intensity").get<double>(),
                                                       m.at("claim_mean").get<double>());
        }
        if (j.contains("brownian")) {
            const json& m = j.at("brownian");
            require_keys(m, {"drift", "volatility"}, {"drift", "volatility"},
                         "model.brownian");
            return risktax::LevyModel::brownian_with_drift(m.at("drift").get<double>(),
                                                           m.at("volatility").get<double>());
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid model: ") + e.what());
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed model: ") + e.what());
    }
    throw config_error("model needs either cramer_lundberg or brownian");
}

risktax::RateFunction parse_rate(const json& j) {
    try {
        return risktax::RateFunction::from_json(j.dump());
    } catch (const std::exception& e) {
        throw config_error(std::string("invalid rate: ") + e.what());
    }
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw config_error("missing key \"" + key + "\"");
    if (!j.at(key).is_number()) throw config_error("key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw config_error("key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

}  // namespace risktax_cli
