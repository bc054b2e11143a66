#include "promo/config.hpp"

#include <fstream>

namespace promo {

namespace {

double requireNumber(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing config key: " + key);
    if (!j.at(key).is_number()) throw ConfigError("config key must be numeric: " + key);
    return j.at(key).get<double>();
}

void rejectUnknownKeys(const nlohmann::json& j, std::initializer_list<const char*> known,
                       const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown key in " + where + ": " + item.key());
    }
}

}  // namespace

MarketParams marketParamsFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("market config must be a JSON object");
    rejectUnknownKeys(j, {"sellerQuality", "rivalQuality", "phiLow", "phiHigh", "prior"},
                      "market config");
    MarketParams params;
    params.sellerQuality = requireNumber(j, "sellerQuality");
    params.rivalQuality = requireNumber(j, "rivalQuality");
    params.phiLow = requireNumber(j, "phiLow");
    params.phiHigh = requireNumber(j, "phiHigh");
    params.prior = requireNumber(j, "prior");
    params.validate();
    return params;
}

nlohmann::json marketParamsToJson(const MarketParams& params) {
    return {{"sellerQuality", params.sellerQuality},
            {"rivalQuality", params.rivalQuality},
            {"phiLow", params.phiLow},
            {"phiHigh", params.phiHigh},
            {"prior", params.prior}};
}

RunConfig runConfigFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    rejectUnknownKeys(j, {"market", "grid", "mu0", "horizon", "episodes"}, "config");
    if (!j.contains("market")) throw ConfigError("config must contain a \"market\" object");
    RunConfig config;
    config.market = marketParamsFromJson(j.at("market"));
    if (j.contains("grid")) {
        const auto grid = j.at("grid").get<long long>();
        if (grid < 2) throw ConfigError("grid must be >= 2");
        config.grid = static_cast<std::size_t>(grid);
    }
    if (j.contains("mu0")) {
        config.mu0 = requireNumber(j, "mu0");
        if (*config.mu0 < 0.0 || *config.mu0 > 1.0) throw ConfigError("mu0 must lie in [0, 1]");
    }
    if (j.contains("horizon")) {
        config.horizon = j.at("horizon").get<long>();
        if (config.horizon < 1) throw ConfigError("horizon must be >= 1");
    }
    if (j.contains("episodes")) {
        config.episodes = j.at("episodes").get<long>();
        if (config.episodes < 1) throw ConfigError("episodes must be >= 1");
    }
    return config;
}

RunConfig loadRunConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return runConfigFromJson(j);
}

}  // namespace promo
