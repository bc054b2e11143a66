#pragma once

#include <utility>

#include "promo/errors.hpp"

namespace promo {

/// Fraction of impatient consumers is one of two states.
enum class Impatience { low, high };

/// Demand-model constants and the binary impatience prior.
///
/// sellerQuality / rivalQuality are the uniform-WtP quality levels of the
/// seller's and the rival's product (support tops of the valuation
/// distributions); they are named after their role to avoid clashing with the
/// promotion probabilities alphaLow/alphaHigh used throughout.
struct MarketParams {
    double sellerQuality = 0.6;
    double rivalQuality = 0.2;
    double phiLow = 0.2;
    double phiHigh = 0.8;
    double prior = 0.5;

    /// True iff sellerQuality > 2*rivalQuality*(1 - rivalQuality/4), the
    /// "seller preferred" region where the closed forms are valid.
    bool regimeHolds() const {
        return sellerQuality > 2.0 * rivalQuality * (1.0 - rivalQuality / 4.0);
    }

    /// Throws ConfigError / RegimeError on invalid or out-of-regime values.
    void validate() const;
};

struct PriceInterval {
    double lo = 0.0;
    double hi = 1.0;
    bool contains(double p) const { return p >= lo && p <= hi; }
};

/// Purchase probabilities and consumer-surplus functions. Any model
/// implementing this interface must keep rho0/rhoC decreasing with
/// rho0 >= rhoC, p*rho(p) strictly concave, and w0/wC decreasing on
/// priceDomain().
class DemandModel {
  public:
    virtual ~DemandModel() = default;

    /// Purchase probability of an impatient consumer seeing the promoted seller.
    virtual double rho0(double p) const = 0;
    /// Purchase probability of a patient consumer facing the full market.
    virtual double rhoC(double p) const = 0;
    /// Surplus of an impatient consumer buying from the promoted seller.
    virtual double w0(double p) const = 0;
    /// Surplus of a patient consumer facing the full market.
    virtual double wC(double p) const = 0;
    /// Surplus of an impatient consumer diverted to the rival.
    virtual double wCConst() const = 0;
    virtual PriceInterval priceDomain() const = 0;
};

/// Uniform willingness-to-pay instance: v1 ~ U[a-1, a], v2 ~ U[b-1, b] with
/// the rival priced at zero. All functions are closed forms with a kink at
/// p = a - b where both branches agree exactly.
class UniformDemand final : public DemandModel {
  public:
    explicit UniformDemand(const MarketParams& params) : params_(params) { params.validate(); }

    double rho0(double p) const override;
    double rhoC(double p) const override;
    double w0(double p) const override;
    double wC(double p) const override;
    double wCConst() const override;
    PriceInterval priceDomain() const override { return {0.0, params_.sellerQuality}; }

    const MarketParams& params() const { return params_; }

  private:
    void checkPrice(double p) const;
    MarketParams params_;
};

}  // namespace promo
