#include "promo/seller.hpp"

#include <algorithm>
#include <cmath>

#include "promo/numeric.hpp"

namespace promo {

namespace {

// Revenue ties within this absolute tolerance go to the promoted price;
// solved curves bind the participation constraint to well below this.
constexpr double kTieTolerance = 1e-12;

}  // namespace

double phiBar(const MarketParams& params, double mu) {
    if (mu == 0.0) return params.phiLow;
    if (mu == 1.0) return params.phiHigh;
    return params.phiLow + (params.phiHigh - params.phiLow) * mu;
}

double outsideOptionPrice(const MarketParams& params) {
    params.validate();
    const double a = params.sellerQuality, b = params.rivalQuality;
    const double pStar = (2.0 * a - b * b) / 4.0;
    if (!(pStar < a - b + 1e-15))
        throw RegimeError("outside-option price not below the demand kink");
    return pStar;
}

double updateBelief(double mu, double saleProbLow, double saleProbHigh, bool sale) {
    if (saleProbLow < 0.0 || saleProbLow > 1.0 || saleProbHigh < 0.0 || saleProbHigh > 1.0)
        throw std::domain_error("sale probabilities must lie in [0, 1]");
    if (mu == 0.0 || mu == 1.0) return mu;
    if (saleProbLow == saleProbHigh) return mu;
    const double likeLow = sale ? saleProbLow : 1.0 - saleProbLow;
    const double likeHigh = sale ? saleProbHigh : 1.0 - saleProbHigh;
    const double denom = mu * likeHigh + (1.0 - mu) * likeLow;
    if (denom <= 0.0)
        throw InconsistentObservationError("observed an event with zero probability");
    return mu * likeHigh / denom;
}

SellerDecision myopicBestResponse(const MarketParams& params, const DemandModel& demand,
                                  const PromotionPolicy& policy, double mu) {
    policy.validate(demand.priceDomain());
    const double pb = phiBar(params, mu);
    const double pBar = policy.promotedPrice;
    const double revPromoted =
        pBar * (mu * params.phiHigh * policy.alphaHigh * demand.rho0(pBar) +
                (1.0 - mu) * params.phiLow * policy.alphaLow * demand.rho0(pBar) +
                (1.0 - pb) * demand.rhoC(pBar));

    const double pStar = outsideOptionPrice(params);
    const double revFallback = (1.0 - pb) * pStar * demand.rhoC(pStar);

    // Safety net for mis-specified policies: sweep non-promoted prices.
    const PriceInterval dom = demand.priceDomain();
    double gridPrice = pStar, gridRev = revFallback;
    for (double p : linspace(dom.lo, dom.hi, 201)) {
        const double r = p * (1.0 - pb) * demand.rhoC(p);
        if (r > gridRev) {
            gridRev = r;
            gridPrice = p;
        }
    }

    SellerDecision decision;
    if (revPromoted >= gridRev - kTieTolerance) {
        decision.price = pBar;
        decision.expectedRevenue = revPromoted;
        decision.tookPromotedPrice = true;
    } else {
        decision.price = gridPrice;
        decision.expectedRevenue = gridRev;
        decision.tookPromotedPrice = false;
    }
    return decision;
}

namespace {

struct DpTables {
    std::vector<double> optimal;  // value over remaining periods, per belief node
    std::vector<double> myopic;
};

struct DpContext {
    const MarketParams* params;
    const DemandModel* demand;
    const PolicyCurve* curve;
    std::vector<double> nodes;
    std::vector<double> prices;       // deviation price grid
    std::vector<double> rhoCValues;   // rhoC at deviation prices
    std::size_t gridSize;

    std::size_t snap(double mu) const {
        const double x = mu * static_cast<double>(gridSize - 1);
        return static_cast<std::size_t>(std::lround(std::clamp(
            x, 0.0, static_cast<double>(gridSize - 1))));
    }
};

// One-step value at an arbitrary belief given next-period tables.
// Returns {optimal, myopic-path} values over the remaining horizon.
std::pair<double, double> dpEvaluate(const DpContext& ctx, double mu, const DpTables& next) {
    const MarketParams& params = *ctx.params;
    const DemandModel& demand = *ctx.demand;

    const auto continueWith = [&](const std::vector<double>& table, double qBar, double muSale,
                                  double muNoSale) {
        double v = 0.0;
        if (qBar > 0.0) v += qBar * table[ctx.snap(muSale)];
        if (qBar < 1.0) v += (1.0 - qBar) * table[ctx.snap(muNoSale)];
        return v;
    };

    // Promoted action from the curve's policy at the nearest node.
    const PromotionPolicy& policy = ctx.curve->policies[ctx.curve->nearestIndex(mu)];
    const double r0 = demand.rho0(policy.promotedPrice);
    const double rc = demand.rhoC(policy.promotedPrice);
    const double qLowP = params.phiLow * policy.alphaLow * r0 + (1.0 - params.phiLow) * rc;
    const double qHighP = params.phiHigh * policy.alphaHigh * r0 + (1.0 - params.phiHigh) * rc;
    const double qBarP = mu * qHighP + (1.0 - mu) * qLowP;
    const double revP = policy.promotedPrice * qBarP;
    const double muSaleP = qBarP > 0.0 ? updateBelief(mu, qLowP, qHighP, true) : mu;
    const double muNoSaleP = qBarP < 1.0 ? updateBelief(mu, qLowP, qHighP, false) : mu;

    double bestVal = revP + continueWith(next.optimal, qBarP, muSaleP, muNoSaleP);
    double bestRevDev = -1.0;
    double myopicDevVal = 0.0;

    for (std::size_t k = 0; k < ctx.prices.size(); ++k) {
        const double p = ctx.prices[k];
        const double rcD = ctx.rhoCValues[k];
        const double qLow = (1.0 - params.phiLow) * rcD;
        const double qHigh = (1.0 - params.phiHigh) * rcD;
        const double qBar = mu * qHigh + (1.0 - mu) * qLow;
        const double rev = p * qBar;
        const double muSale = qBar > 0.0 ? updateBelief(mu, qLow, qHigh, true) : mu;
        const double muNoSale = qBar < 1.0 ? updateBelief(mu, qLow, qHigh, false) : mu;
        const double val = rev + continueWith(next.optimal, qBar, muSale, muNoSale);
        if (val > bestVal) bestVal = val;
        if (rev > bestRevDev) {
            bestRevDev = rev;
            myopicDevVal = rev + continueWith(next.myopic, qBar, muSale, muNoSale);
        }
    }

    // Myopic path: maximize current revenue only, ties to the promoted price.
    const double myopicVal = (revP >= bestRevDev - 1e-12)
                                 ? revP + continueWith(next.myopic, qBarP, muSaleP, muNoSaleP)
                                 : myopicDevVal;
    return {bestVal, myopicVal};
}

DpTables dpBuildTables(const DpContext& ctx, int horizon) {
    DpTables tables{std::vector<double>(ctx.gridSize, 0.0), std::vector<double>(ctx.gridSize, 0.0)};
    // horizon - 1 backward steps; the final step is evaluated at the exact prior.
    for (int t = 0; t < horizon - 1; ++t) {
        DpTables fresh{std::vector<double>(ctx.gridSize), std::vector<double>(ctx.gridSize)};
        for (std::size_t i = 0; i < ctx.gridSize; ++i) {
            const auto [opt, myo] = dpEvaluate(ctx, ctx.nodes[i], tables);
            fresh.optimal[i] = opt;
            fresh.myopic[i] = myo;
        }
        tables = std::move(fresh);
    }
    return tables;
}

DpContext dpMakeContext(const MarketParams& params, const DemandModel& demand,
                        const PolicyCurve& curve, std::size_t beliefGridSize,
                        std::size_t priceGridSize) {
    if (beliefGridSize < 101) throw std::invalid_argument("beliefGridSize must be >= 101");
    if (priceGridSize < 201) throw std::invalid_argument("priceGridSize must be >= 201");
    DpContext ctx{&params, &demand, &curve, {}, {}, {}, beliefGridSize};
    ctx.nodes = linspace(0.0, 1.0, beliefGridSize);
    const PriceInterval dom = demand.priceDomain();
    ctx.prices = linspace(dom.lo, dom.hi, priceGridSize);
    ctx.rhoCValues.reserve(priceGridSize);
    for (double p : ctx.prices) ctx.rhoCValues.push_back(demand.rhoC(p));
    return ctx;
}

}  // namespace

std::vector<DpResult> dpBestResponseValues(const MarketParams& params, const DemandModel& demand,
                                           const PolicyCurve& curve, std::span<const double> mu0s,
                                           int horizon, std::size_t beliefGridSize,
                                           std::size_t priceGridSize) {
    if (horizon < 1 || horizon > 12) throw std::invalid_argument("horizon must lie in [1, 12]");
    curve.validate();
    const DpContext ctx = dpMakeContext(params, demand, curve, beliefGridSize, priceGridSize);
    const DpTables tables = dpBuildTables(ctx, horizon);
    std::vector<DpResult> results;
    results.reserve(mu0s.size());
    for (double mu0 : mu0s) {
        if (mu0 < 0.0 || mu0 > 1.0) throw std::domain_error("prior belief outside [0, 1]");
        const auto [opt, myo] = dpEvaluate(ctx, mu0, tables);
        results.push_back({opt, myo});
    }
    return results;
}

DpResult dpBestResponseValue(const MarketParams& params, const DemandModel& demand,
                             const PolicyCurve& curve, double mu0, int horizon,
                             std::size_t beliefGridSize, std::size_t priceGridSize) {
    const double mu0s[] = {mu0};
    return dpBestResponseValues(params, demand, curve, mu0s, horizon, beliefGridSize,
                                priceGridSize)[0];
}

}  // namespace promo
