#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "promo/demand.hpp"

namespace promo {

/// Parses MarketParams from a JSON object holding exactly the five expected
/// keys; unknown or missing keys are ConfigErrors.
MarketParams marketParamsFromJson(const nlohmann::json& j);

nlohmann::json marketParamsToJson(const MarketParams& params);

/// One config file drives every command: the market block plus grid and
/// simulation knobs. CLI flags override file values.
struct RunConfig {
    MarketParams market;
    std::size_t grid = 501;
    std::optional<double> mu0;  // defaults to market.prior when absent
    long horizon = 2000;
    long episodes = 2000;

    double mu0OrPrior() const { return mu0 ? *mu0 : market.prior; }
};

RunConfig runConfigFromJson(const nlohmann::json& j);
RunConfig loadRunConfig(const std::string& path);

}  // namespace promo
