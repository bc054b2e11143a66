#include "promo/promotion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "promo/numeric.hpp"
#include "promo/seller.hpp"

namespace promo {

void PromotionPolicy::validate(const PriceInterval& domain) const {
    if (alphaLow < 0.0 || alphaLow > 1.0 || alphaHigh < 0.0 || alphaHigh > 1.0)
        throw std::domain_error("promotion probabilities must lie in [0, 1]");
    if (!domain.contains(promotedPrice))
        throw std::domain_error("promoted price outside the price domain");
}

std::size_t PolicyCurve::nearestIndex(double mu) const {
    return promo::nearestIndex(muGrid, mu);
}

void PolicyCurve::validate() const {
    if (muGrid.size() < 2 || muGrid.front() != 0.0 || muGrid.back() != 1.0)
        throw std::invalid_argument("belief grid must span [0, 1]");
    for (std::size_t i = 1; i < muGrid.size(); ++i)
        if (!(muGrid[i] > muGrid[i - 1]))
            throw std::invalid_argument("belief grid must be strictly ascending");
    if (policies.size() != muGrid.size() || surplus.size() != muGrid.size() ||
        sellerRevenue.size() != muGrid.size())
        throw std::invalid_argument("curve columns must have equal length");
    for (double s : surplus)
        if (!(s >= 0.0)) throw std::invalid_argument("surplus values must be nonnegative");
}

std::string toString(PolicyMode mode) {
    switch (mode) {
        case PolicyMode::myopic: return "myopic";
        case PolicyMode::confounding: return "confounding";
        case PolicyMode::observable: return "observable";
    }
    return "unknown";
}

PolicyMode policyModeFromString(const std::string& s) {
    if (s == "myopic") return PolicyMode::myopic;
    if (s == "confounding") return PolicyMode::confounding;
    if (s == "observable") return PolicyMode::observable;
    throw ConfigError("unknown policy mode: " + s);
}

double policySurplus(const MarketParams& params, const DemandModel& demand,
                     const PromotionPolicy& policy, double mu) {
    const double pb = phiBar(params, mu);
    const double promotedMass = mu * params.phiHigh * policy.alphaHigh +
                                (1.0 - mu) * params.phiLow * policy.alphaLow;
    const double p = policy.promotedPrice;
    return promotedMass * demand.w0(p) + (pb - promotedMass) * demand.wCConst() +
           (1.0 - pb) * demand.wC(p);
}

double saleProbability(const MarketParams& params, const DemandModel& demand,
                       const PromotionPolicy& policy, Impatience state) {
    const double phi = state == Impatience::high ? params.phiHigh : params.phiLow;
    const double alpha = state == Impatience::high ? policy.alphaHigh : policy.alphaLow;
    const double p = policy.promotedPrice;
    return phi * alpha * demand.rho0(p) + (1.0 - phi) * demand.rhoC(p);
}

double confoundingAlphaHigh(const MarketParams& params, const DemandModel& demand, double p,
                            double alphaLow) {
    const double r0 = demand.rho0(p);
    if (r0 <= 0.0) throw std::domain_error("confoundingAlphaHigh: rho0(p) must be positive");
    const double share = (params.phiHigh - params.phiLow) / params.phiHigh;
    return share * (demand.rhoC(p) / r0) + alphaLow * (params.phiLow / params.phiHigh);
}

double myopicPriceClosedForm(double sellerQuality, double rivalQuality, double phiBarValue) {
    const double a = sellerQuality, b2 = rivalQuality * rivalQuality;
    return 0.25 * (2.0 * a - b2 * (1.0 - phiBarValue) -
                   std::sqrt(phiBarValue) * std::sqrt(4.0 * a * a - b2 * b2 * (1.0 - phiBarValue)));
}

double confoundingPriceClosedForm(double sellerQuality, double rivalQuality, double phiLow,
                                  double phiHigh, double mu) {
    const double a = sellerQuality, b2 = rivalQuality * rivalQuality;
    const double twoAB = 2.0 * a - b2;
    const double disc = twoAB * twoAB * (phiHigh - phiLow) * mu +
                        phiLow * (4.0 * a * a - b2 * b2) + b2 * b2 * phiLow * phiLow;
    return 0.25 * (2.0 * a - b2 * (1.0 - phiLow) - std::sqrt(disc));
}

SolvedPolicy myopicPromotion(const MarketParams& params, const DemandModel& demand, double mu) {
    params.validate();
    const double price =
        myopicPriceClosedForm(params.sellerQuality, params.rivalQuality, phiBar(params, mu));
    const PromotionPolicy policy{price, 1.0, 1.0};
    return {policy, policySurplus(params, demand, policy, mu)};
}

namespace {

double outsideRevenue(const MarketParams& params, const DemandModel& demand, double mu) {
    const double pStar = outsideOptionPrice(params);
    return (1.0 - phiBar(params, mu)) * pStar * demand.rhoC(pStar);
}

// Seller revenue at the promoted price under a confounding substitution:
// (1-phiLow)*p*rhoC(p) + phiLow*alphaLow*p*rho0(p).
double confoundedRevenue(const MarketParams& params, const DemandModel& demand, double p,
                         double alphaLow) {
    return (1.0 - params.phiLow) * p * demand.rhoC(p) +
           params.phiLow * alphaLow * p * demand.rho0(p);
}

}  // namespace

SolvedPolicy optimalConfounding(const MarketParams& params, const DemandModel& demand, double mu) {
    params.validate();
    if (mu < 0.0 || mu > 1.0) throw std::domain_error("belief outside [0, 1]");
    if (mu == 0.0 || mu == 1.0) return myopicPromotion(params, demand, mu);

    const double price = confoundingPriceClosedForm(params.sellerQuality, params.rivalQuality,
                                                    params.phiLow, params.phiHigh, mu);
    const double alphaHigh = confoundingAlphaHigh(params, demand, price, 1.0);
    if (alphaHigh < 0.0 || alphaHigh > 1.0 + 1e-12)
        throw NumericError("closed-form confounding produced alphaHigh outside [0, 1]");
    if (confoundedRevenue(params, demand, price, 1.0) < outsideRevenue(params, demand, mu) - 1e-9)
        throw NumericError("closed-form confounding violates seller participation");
    const PromotionPolicy policy{price, 1.0, std::min(alphaHigh, 1.0)};
    return {policy, policySurplus(params, demand, policy, mu)};
}

SolvedPolicy optimalConfoundingNumeric(const MarketParams& params, const DemandModel& demand,
                                       double mu, std::size_t priceGridSize) {
    params.validate();
    if (mu < 0.0 || mu > 1.0) throw std::domain_error("belief outside [0, 1]");
    if (mu == 0.0 || mu == 1.0) return myopicPromotion(params, demand, mu);

    const double required = outsideRevenue(params, demand, mu);

    // Best feasible alphaLow at a fixed price; the objective is linear in
    // alphaLow so a binding constraint or a bound is optimal.
    const auto bestAtPrice = [&](double p) -> std::optional<std::pair<double, double>> {
        if (p <= 0.0 || demand.rho0(p) <= 1e-12) return std::nullopt;
        const double binding = (required - (1.0 - params.phiLow) * p * demand.rhoC(p)) /
                               (params.phiLow * p * demand.rho0(p));
        double best = -std::numeric_limits<double>::infinity();
        double bestAlphaLow = 0.0;
        for (double alphaLow : {0.0, std::clamp(binding, 0.0, 1.0), 1.0}) {
            if (confoundedRevenue(params, demand, p, alphaLow) < required - 1e-12) continue;
            const double alphaHigh = confoundingAlphaHigh(params, demand, p, alphaLow);
            if (alphaHigh < 0.0 || alphaHigh > 1.0 + 1e-12) continue;
            const PromotionPolicy candidate{p, alphaLow, std::min(alphaHigh, 1.0)};
            const double value = policySurplus(params, demand, candidate, mu);
            if (value > best) {
                best = value;
                bestAlphaLow = alphaLow;
            }
        }
        if (!std::isfinite(best)) return std::nullopt;
        return std::make_pair(best, bestAlphaLow);
    };

    const PriceInterval dom = demand.priceDomain();
    const std::vector<double> grid = linspace(dom.lo, dom.hi, priceGridSize);
    double bestValue = -std::numeric_limits<double>::infinity();
    double bestPrice = 0.0;
    for (double p : grid) {
        const auto r = bestAtPrice(p);
        if (r && r->first > bestValue) {
            bestValue = r->first;
            bestPrice = p;
        }
    }
    if (!std::isfinite(bestValue))
        throw InfeasibleError("no confounding policy satisfies seller participation at mu=" +
                              std::to_string(mu));

    const double step = (dom.hi - dom.lo) / static_cast<double>(priceGridSize - 1);
    const double lo = std::max(dom.lo, bestPrice - step);
    const double hi = std::min(dom.hi, bestPrice + step);
    const double refined = goldenSectionMax(
        [&](double p) {
            const auto r = bestAtPrice(p);
            return r ? r->first : -std::numeric_limits<double>::infinity();
        },
        lo, hi, 1e-10);
    if (const auto r = bestAtPrice(refined); r && r->first > bestValue) {
        bestValue = r->first;
        bestPrice = refined;
    }
    // Surplus-decreasing objectives peak where participation starts binding
    // at full low-state promotion; pin that boundary price exactly.
    if (confoundedRevenue(params, demand, lo, 1.0) < required &&
        confoundedRevenue(params, demand, hi, 1.0) >= required) {
        const double boundary = bisectRoot(
            [&](double p) { return confoundedRevenue(params, demand, p, 1.0) - required; }, lo,
            hi);
        if (const auto r = bestAtPrice(boundary); r && r->first > bestValue) {
            bestValue = r->first;
            bestPrice = boundary;
        }
    }

    const auto r = bestAtPrice(bestPrice);
    const double alphaHigh = confoundingAlphaHigh(params, demand, bestPrice, r->second);
    const PromotionPolicy policy{bestPrice, r->second, std::min(alphaHigh, 1.0)};
    return {policy, policySurplus(params, demand, policy, mu)};
}

PromotionPolicy baselineConfounding(const MarketParams& params, const DemandModel& demand) {
    params.validate();
    const double pStar = outsideOptionPrice(params);
    return {pStar, 0.0, confoundingAlphaHigh(params, demand, pStar, 0.0)};
}

double observableConfoundingSurplus(const MarketParams& params, const DemandModel& demand,
                                    double mu, std::size_t priceGridSize) {
    params.validate();
    if (mu < 0.0 || mu > 1.0) throw std::domain_error("belief outside [0, 1]");
    if (mu == 0.0 || mu == 1.0) return myopicPromotion(params, demand, mu).surplus;

    // Confounding with observed promotions needs a promoted price that sells
    // identically to both consumer types: alpha = 1 in both states and
    // rho0(p) == rhoC(p), subject to seller participation.
    const double required = outsideRevenue(params, demand, mu);
    const double pb = phiBar(params, mu);
    const auto equalDemand = [&](double p) {
        return std::abs(demand.rho0(p) - demand.rhoC(p)) < 1e-9;
    };
    const auto participates = [&](double p) {
        return p * demand.rhoC(p) >= required - 1e-12;
    };
    const auto surplusAt = [&](double p) {
        return pb * demand.w0(p) + (1.0 - pb) * demand.wC(p);
    };

    const PriceInterval dom = demand.priceDomain();
    double best = -std::numeric_limits<double>::infinity();
    for (double p : linspace(dom.lo, dom.hi, priceGridSize)) {
        if (equalDemand(p) && participates(p) && surplusAt(p) > best) best = surplusAt(p);
    }
    if (!std::isfinite(best)) return 0.0;

    // Surplus falls in the price, so refine toward the lowest participating
    // price if it still has equal demand there.
    const double pPeak =
        goldenSectionMax([&](double p) { return p * demand.rhoC(p); }, dom.lo, dom.hi, 1e-12);
    if (dom.lo * demand.rhoC(dom.lo) < required && pPeak * demand.rhoC(pPeak) >= required) {
        const double pLo = bisectRoot([&](double p) { return p * demand.rhoC(p) - required; },
                                      dom.lo, pPeak);
        if (equalDemand(pLo) && surplusAt(pLo) > best) best = surplusAt(pLo);
    }
    return best;
}

double outsideOptionPriceNumeric(const DemandModel& demand) {
    const PriceInterval dom = demand.priceDomain();
    return goldenSectionMax([&](double p) { return p * demand.rhoC(p); }, dom.lo, dom.hi, 1e-12);
}

namespace {

// Smallest price at which lhs(p) (increasing up to its peak) reaches the
// outside-option revenue. The solvers below feed seller-indifference
// equations through this bracket.
double indifferencePrice(const DemandModel& demand, const std::function<double(double)>& lhs,
                         double rhs) {
    const PriceInterval dom = demand.priceDomain();
    const double pPeak = goldenSectionMax(lhs, dom.lo, dom.hi, 1e-12);
    if (lhs(pPeak) < rhs) throw NumericError("indifference equation has no solution");
    return bisectRoot([&](double p) { return lhs(p) - rhs; }, dom.lo, pPeak);
}

}  // namespace

double myopicPriceNumeric(const MarketParams& params, const DemandModel& demand, double mu) {
    const double pb = phiBar(params, mu);
    const double pStarNumeric = outsideOptionPriceNumeric(demand);
    const double rhs = (1.0 - pb) * pStarNumeric * demand.rhoC(pStarNumeric);
    return indifferencePrice(
        demand, [&](double p) { return pb * p * demand.rho0(p) + (1.0 - pb) * p * demand.rhoC(p); },
        rhs);
}

double confoundingPriceNumeric(const MarketParams& params, const DemandModel& demand, double mu) {
    const double pStarNumeric = outsideOptionPriceNumeric(demand);
    const double rhs = (1.0 - phiBar(params, mu)) * pStarNumeric * demand.rhoC(pStarNumeric);
    return indifferencePrice(
        demand,
        [&](double p) {
            return (1.0 - params.phiLow) * p * demand.rhoC(p) +
                   params.phiLow * p * demand.rho0(p);
        },
        rhs);
}

PolicyCurve solvePolicyCurve(const MarketParams& params, const DemandModel& demand,
                             PolicyMode mode, std::size_t gridSize) {
    params.validate();
    if (gridSize < 2) throw std::invalid_argument("belief grid needs at least 2 points");
    PolicyCurve curve;
    curve.muGrid = linspace(0.0, 1.0, gridSize);
    curve.policies.reserve(gridSize);
    curve.surplus.reserve(gridSize);
    curve.sellerRevenue.reserve(gridSize);
    for (double mu : curve.muGrid) {
        SolvedPolicy solved;
        switch (mode) {
            case PolicyMode::myopic:
                solved = myopicPromotion(params, demand, mu);
                break;
            case PolicyMode::confounding:
                solved = optimalConfounding(params, demand, mu);
                break;
            case PolicyMode::observable: {
                const double s = observableConfoundingSurplus(params, demand, mu);
                if (mu == 0.0 || mu == 1.0) {
                    solved = myopicPromotion(params, demand, mu);
                } else if (s > 0.0) {
                    // Equal-demand promoted price exists; report it with full promotion.
                    solved = {PromotionPolicy{myopicPriceNumeric(params, demand, mu), 1.0, 1.0}, s};
                } else {
                    solved = {PromotionPolicy{outsideOptionPrice(params), 0.0, 0.0}, 0.0};
                }
                break;
            }
        }
        curve.policies.push_back(solved.policy);
        curve.surplus.push_back(solved.surplus);
        curve.sellerRevenue.push_back(
            myopicBestResponse(params, demand, solved.policy, mu).expectedRevenue);
    }
    curve.validate();
    return curve;
}

}  // namespace promo
