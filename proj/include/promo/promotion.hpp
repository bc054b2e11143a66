#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "promo/demand.hpp"

namespace promo {

/// Single-price promotion policy: the promoted price and the per-state
/// probabilities of actually promoting the seller at that price. Any other
/// posted price is promoted with probability zero.
struct PromotionPolicy {
    double promotedPrice = 0.0;
    double alphaLow = 0.0;   // promotion probability when the impatient fraction is phiLow
    double alphaHigh = 0.0;  // promotion probability when it is phiHigh

    void validate(const PriceInterval& domain) const;
};

/// Per-belief solved policy, expected per-period consumer surplus and seller
/// revenue on an ascending belief grid that includes 0 and 1.
struct PolicyCurve {
    std::vector<double> muGrid;
    std::vector<PromotionPolicy> policies;
    std::vector<double> surplus;
    std::vector<double> sellerRevenue;

    std::size_t size() const { return muGrid.size(); }
    std::size_t nearestIndex(double mu) const;
    void validate() const;
};

enum class PolicyMode { myopic, confounding, observable };

std::string toString(PolicyMode mode);
PolicyMode policyModeFromString(const std::string& s);

struct SolvedPolicy {
    PromotionPolicy policy;
    double surplus = 0.0;
};

/// Expected per-period consumer surplus of a policy at belief mu, assuming the
/// seller posts the promoted price:
///   E_phi[ phi*alpha*w0(p) + phi*(1-alpha)*wCConst + (1-phi)*wC(p) | mu ].
double policySurplus(const MarketParams& params, const DemandModel& demand,
                     const PromotionPolicy& policy, double mu);

/// Probability of a sale at the promoted price conditional on the true state.
double saleProbability(const MarketParams& params, const DemandModel& demand,
                       const PromotionPolicy& policy, Impatience state);

/// Promotion probability for the high state that equalizes the sale
/// probability across states at price p, given the low-state probability.
/// Values above 1 mean (p, alphaLow) cannot be confounded.
double confoundingAlphaHigh(const MarketParams& params, const DemandModel& demand, double p,
                            double alphaLow);

// Closed-form prices for the uniform-WtP instance. phiBar here is the
// belief-mixed impatient fraction; the confounding variant keeps phiLow in the
// patient-revenue term but prices against the belief-mixed outside option.
double myopicPriceClosedForm(double sellerQuality, double rivalQuality, double phiBar);
double confoundingPriceClosedForm(double sellerQuality, double rivalQuality, double phiLow,
                                  double phiHigh, double mu);

/// Surplus-maximizing single-price policy ignoring learning: promote with
/// probability one in both states at the lowest price the seller accepts.
SolvedPolicy myopicPromotion(const MarketParams& params, const DemandModel& demand, double mu);

/// Best confounding policy at belief mu (closed-form path). Degenerate
/// beliefs return the unconstrained myopic policy.
SolvedPolicy optimalConfounding(const MarketParams& params, const DemandModel& demand, double mu);

/// Same problem solved by the reduced numeric optimization (price grid plus
/// golden-section refinement, alphaLow candidates where a constraint binds).
/// Works for any DemandModel; throws InfeasibleError when no confounding
/// policy satisfies seller participation.
SolvedPolicy optimalConfoundingNumeric(const MarketParams& params, const DemandModel& demand,
                                       double mu, std::size_t priceGridSize = 2001);

/// Always-confounding reference policy: promote only at the outside-option
/// price, only in the high state, with the equalizing probability.
PromotionPolicy baselineConfounding(const MarketParams& params, const DemandModel& demand);

/// Best confounding surplus when the seller observes promotion decisions.
/// Requires a promoted price with rho0 == rhoC; zero when none exists.
double observableConfoundingSurplus(const MarketParams& params, const DemandModel& demand,
                                    double mu, std::size_t priceGridSize = 2001);

// Numeric indifference solvers, used both as independent cross-checks of the
// closed forms and as the production path for demand models without them.
double outsideOptionPriceNumeric(const DemandModel& demand);
double myopicPriceNumeric(const MarketParams& params, const DemandModel& demand, double mu);
double confoundingPriceNumeric(const MarketParams& params, const DemandModel& demand, double mu);

/// Solves the per-belief problem of the requested mode on a uniform grid of
/// gridSize beliefs including both endpoints.
PolicyCurve solvePolicyCurve(const MarketParams& params, const DemandModel& demand,
                             PolicyMode mode, std::size_t gridSize);

}  // namespace promo
