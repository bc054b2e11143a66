#include "promo/demand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace promo {

namespace {

bool inUnit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void MarketParams::validate() const {
    if (!(sellerQuality > 0.0) || sellerQuality > 1.0)
        throw ConfigError("sellerQuality must lie in (0, 1]");
    if (!(rivalQuality >= 0.0) || rivalQuality > 1.0)
        throw ConfigError("rivalQuality must lie in [0, 1]");
    if (!(phiLow > 0.0 && phiLow < phiHigh && phiHigh < 1.0))
        throw ConfigError("impatience fractions must satisfy 0 < phiLow < phiHigh < 1");
    if (!inUnit(prior)) throw ConfigError("prior must lie in [0, 1]");
    if (!regimeHolds())
        throw RegimeError(
            "parameters outside the seller-preferred regime: require "
            "sellerQuality > 2*rivalQuality*(1 - rivalQuality/4)");
}

void UniformDemand::checkPrice(double p) const {
    if (!priceDomain().contains(p))
        throw std::domain_error("price " + std::to_string(p) + " outside [0, " +
                                std::to_string(params_.sellerQuality) + "]");
}

double UniformDemand::rho0(double p) const {
    checkPrice(p);
    return std::clamp(params_.sellerQuality - p, 0.0, 1.0);
}

double UniformDemand::rhoC(double p) const {
    checkPrice(p);
    const double a = params_.sellerQuality, b = params_.rivalQuality;
    const double m = a - p;
    // Low branch: the rival's support top is always below the seller's margin.
    const double v = (p < a - b) ? m - b * b / 2.0 : (1.0 - b) * m + m * m / 2.0;
    return std::clamp(v, 0.0, 1.0);
}

double UniformDemand::w0(double p) const {
    checkPrice(p);
    const double m = params_.sellerQuality - p;
    return m * m / 2.0;
}

double UniformDemand::wCConst() const {
    const double b = params_.rivalQuality;
    return b * b / 2.0;
}

double UniformDemand::wC(double p) const {
    checkPrice(p);
    const double a = params_.sellerQuality, b = params_.rivalQuality;
    const double m = a - p;
    if (p < a - b) return (3.0 * m * m + 3.0 * b * b * (1.0 - m) + b * b * b) / 6.0;
    return (3.0 * b * b + 3.0 * m * m * (1.0 - b) + m * m * m) / 6.0;
}

}  // namespace promo
