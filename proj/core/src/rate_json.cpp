#include <stdexcept>

#include "json.hpp"
#include "risktax/rate_function.hpp"

namespace risktax {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok)
            throw std::invalid_argument(std::string("rate json: unknown key \"") + item.key() +
                                        "\" in " + where);
    }
}

json admissibility_to_json(const Admissibility& adm) {
    switch (adm.kind()) {
        case Admissibility::Kind::none: return "none";
        case Admissibility::Kind::monotone: return "monotone";
        case Admissibility::Kind::lipschitz: return json{{"lipschitz", adm.lipschitz_bound()}};
    }
    return "none";
}

Admissibility admissibility_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "none") return Admissibility::none();
        if (s == "monotone") return Admissibility::monotone();
        throw std::invalid_argument("rate json: unknown admissibility \"" + s + "\"");
    }
    if (j.is_object() && j.contains("lipschitz")) {
        reject_unknown_keys(j, {"lipschitz"}, "admissibility");
        return Admissibility::lipschitz(j.at("lipschitz").get<double>());
    }
    throw std::invalid_argument("rate json: malformed admissibility");
}

}  // namespace

std::string RateFunction::to_json() const {
    json spec;
    if (const auto* c = std::get_if<ConstantSpec>(&spec_)) {
        spec["constant"] = c->rate;
    } else if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec_)) {
        spec["piecewise"] = {{"thresholds", p->thresholds}, {"values", p->values}};
    } else {
        const auto& t = std::get<TabulatedSpec>(spec_);
        spec["tabulated"] = {
            {"levels", t.levels},
            {"rates", t.rates},
            {"interpolation", t.interpolation == Interpolation::step ? "step" : "linear"}};
    }
    const json j = {{"domain_start", domain_start_},
                    {"spec", spec},
                    {"admissibility", admissibility_to_json(adm_)}};
    return j.dump();
}

RateFunction RateFunction::from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("rate json: expected an object");
    reject_unknown_keys(j, {"domain_start", "spec", "admissibility"}, "rate");
    const double x = j.at("domain_start").get<double>();
    const Admissibility adm = j.contains("admissibility")
                                  ? admissibility_from_json(j.at("admissibility"))
                                  : Admissibility::none();
    const json& spec = j.at("spec");
    reject_unknown_keys(spec, {"constant", "piecewise", "tabulated"}, "spec");
    if (spec.size() != 1)
        throw std::invalid_argument("rate json: spec must hold exactly one variant");
    if (spec.contains("constant"))
        return RateFunction::constant(x, spec.at("constant").get<double>(), adm);
    if (spec.contains("piecewise")) {
        const json& p = spec.at("piecewise");
        reject_unknown_keys(p, {"thresholds", "values"}, "piecewise spec");
        return RateFunction::piecewise_constant(x, p.at("thresholds").get<std::vector<double>>(),
                                                p.at("values").get<std::vector<double>>(), adm);
    }
    if (spec.contains("tabulated")) {
        const json& t = spec.at("tabulated");
        reject_unknown_keys(t, {"levels", "rates", "interpolation"}, "tabulated spec");
        const std::string mode = t.at("interpolation").get<std::string>();
        if (mode != "step" && mode != "linear")
            throw std::invalid_argument("rate json: interpolation must be step or linear");
        return RateFunction::tabulated(
            x, t.at("levels").get<std::vector<double>>(), t.at("rates").get<std::vector<double>>(),
            mode == "step" ? Interpolation::step : Interpolation::linear, adm);
    }
    throw std::invalid_argument("rate json: spec needs constant, piecewise or tabulated");
}

}  // namespace risktax
