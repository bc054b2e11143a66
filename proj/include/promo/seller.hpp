#pragma once

#include <span>
#include <vector>

#include "promo/demand.hpp"
#include "promo/promotion.hpp"

namespace promo {

/// Belief-mixed expected fraction of impatient consumers,
/// phiLow + (phiHigh - phiLow) * mu. Exact at the endpoints.
double phiBar(const MarketParams& params, double mu);

/// Revenue-maximizing price when selling only to patient consumers,
/// (2*sellerQuality - rivalQuality^2) / 4.
double outsideOptionPrice(const MarketParams& params);

/// One Bayes step on the probability of the high state given a sale /
/// no-sale observation with per-state sale probabilities. Degenerate beliefs
/// and equal likelihoods pass through unchanged; an impossible observation
/// throws InconsistentObservationError.
double updateBelief(double mu, double saleProbLow, double saleProbHigh, bool sale);

struct SellerDecision {
    double price = 0.0;
    double expectedRevenue = 0.0;
    bool tookPromotedPrice = false;
};

/// Revenue-maximizing price against a single-price policy at belief mu.
/// Compares the promoted price with the patient-only fallback (plus a grid
/// sweep of non-promoted prices as a safety net); exact ties go to the
/// promoted price.
SellerDecision myopicBestResponse(const MarketParams& params, const DemandModel& demand,
                                  const PromotionPolicy& policy, double mu);

struct DpResult {
    double dpValue = 0.0;
    double myopicValue = 0.0;
};

/// Finite-horizon best-response oracle: backward induction over a discretized
/// belief grid (posteriors snapped to the nearest node) against the price
/// grid and the curve's promoted prices. Returns the optimal T-period value
/// and the value of pricing myopically every period. Discretization biases
/// dpValue upward by O(1/beliefGridSize); compare relative gaps only above
/// that scale.
DpResult dpBestResponseValue(const MarketParams& params, const DemandModel& demand,
                             const PolicyCurve& curve, double mu0, int horizon,
                             std::size_t beliefGridSize, std::size_t priceGridSize = 201);

/// Same oracle evaluated at several priors while building the value tables once.
std::vector<DpResult> dpBestResponseValues(const MarketParams& params, const DemandModel& demand,
                                           const PolicyCurve& curve, std::span<const double> mu0s,
                                           int horizon, std::size_t beliefGridSize,
                                           std::size_t priceGridSize = 201);

}  // namespace promo
