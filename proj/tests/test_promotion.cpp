#include <doctest.h>

#include <cmath>

#include "promo/numeric.hpp"
#include "promo/promotion.hpp"
#include "promo/seller.hpp"

using namespace promo;

namespace {

const MarketParams kDefault{0.6, 0.2, 0.2, 0.8, 0.5};

// A demand model violating the rho0 >= rhoC ordering; promoting cannot offset
// the state asymmetry, so no confounding policy exists at interior beliefs.
class InvertedDemand final : public DemandModel {
  public:
    double rho0(double p) const override { return std::max(0.0, 0.2 * (1.0 - p)); }
    double rhoC(double p) const override { return std::max(0.0, 0.9 * (1.0 - p)); }
    double w0(double p) const override { return 0.5 * (1.0 - p) * (1.0 - p); }
    double wC(double p) const override { return 0.6 * (1.0 - p) * (1.0 - p); }
    double wCConst() const override { return 0.1; }
    PriceInterval priceDomain() const override { return {0.0, 1.0}; }
};

// The rival's product is worth more to impatient consumers than the seller's,
// so diverting them is desirable and promotion is only a pricing lever.
class RivalFriendlyDemand final : public DemandModel {
  public:
    double rho0(double p) const override { return std::clamp(1.0 - p, 0.0, 1.0); }
    double rhoC(double p) const override { return 0.8 * std::clamp(1.0 - p, 0.0, 1.0); }
    double w0(double p) const override { return 0.05 * (1.0 - p) * (1.0 - p); }
    double wC(double p) const override { return 0.3 + 0.05 * (1.0 - p); }
    double wCConst() const override { return 0.5; }
    PriceInterval priceDomain() const override { return {0.0, 1.0}; }
};

}  // namespace

TEST_CASE("myopic promotion closed form solves the indifference equation") {
    const UniformDemand demand(kDefault);
    const auto [policy, surplus] = myopicPromotion(kDefault, demand, 0.5);
    CHECK(policy.alphaLow == 1.0);
    CHECK(policy.alphaHigh == 1.0);
    CHECK(policy.promotedPrice == doctest::Approx(0.08293).epsilon(1e-4));
    CHECK(policy.promotedPrice ==
          doctest::Approx(myopicPriceNumeric(kDefault, demand, 0.5)).epsilon(1e-7));
    CHECK(surplus > 0.0);
}

TEST_CASE("myopic price decreases in the belief") {
    const UniformDemand demand(kDefault);
    const double p0 = myopicPromotion(kDefault, demand, 0.0).policy.promotedPrice;
    const double p1 = myopicPromotion(kDefault, demand, 1.0).policy.promotedPrice;
    CHECK(p1 < p0);
}

TEST_CASE("degenerate impatience pins the myopic price") {
    // phiLow == phiHigh fails the params invariant, so exercise the closed
    // form directly: a flat phiBar makes the price independent of mu.
    const double phi = 0.5;
    const double reference = myopicPriceClosedForm(0.6, 0.2, phi);
    for (double mu : {0.0, 0.3, 1.0}) {
        const double flatPhiBar = phi + (phi - phi) * mu;
        CHECK(myopicPriceClosedForm(0.6, 0.2, flatPhiBar) == doctest::Approx(reference));
    }
}

TEST_CASE("confounding alphaHigh formula") {
    const UniformDemand demand(kDefault);
    CHECK(confoundingAlphaHigh(kDefault, demand, 0.08412022705419364, 1.0) ==
          doctest::Approx(0.9709234577770978).epsilon(1e-9));
    // alphaLow = 0 at p* is the always-confounding baseline probability.
    CHECK(confoundingAlphaHigh(kDefault, demand, 0.29, 0.0) ==
          doctest::Approx(0.75 * (0.29 / 0.31)).epsilon(1e-12));
    CHECK_THROWS_AS(confoundingAlphaHigh(kDefault, demand, 0.6, 1.0), std::domain_error);
}

TEST_CASE("sale probability by state") {
    const UniformDemand demand(kDefault);
    const PromotionPolicy none{0.1, 0.0, 0.0};
    CHECK(saleProbability(kDefault, demand, none, Impatience::low) ==
          doctest::Approx((1.0 - 0.2) * demand.rhoC(0.1)));
    CHECK(saleProbability(kDefault, demand, none, Impatience::high) ==
          doctest::Approx((1.0 - 0.8) * demand.rhoC(0.1)));

    const auto conf = optimalConfounding(kDefault, demand, 0.5).policy;
    const double low = saleProbability(kDefault, demand, conf, Impatience::low);
    const double high = saleProbability(kDefault, demand, conf, Impatience::high);
    CHECK(low == doctest::Approx(0.4998797729).epsilon(1e-6));
    CHECK(std::abs(low - high) < 1e-9);
}

TEST_CASE("optimal confounding at the default parameters") {
    const UniformDemand demand(kDefault);
    const auto [policy, surplus] = optimalConfounding(kDefault, demand, 0.5);
    CHECK(policy.promotedPrice == doctest::Approx(0.08412022705419364).epsilon(1e-9));
    CHECK(policy.alphaLow == 1.0);
    CHECK(policy.alphaHigh == doctest::Approx(0.9709234577770978).epsilon(1e-9));
    CHECK(surplus == doctest::Approx(0.13725881202346274).epsilon(1e-9));
    CHECK(policy.promotedPrice ==
          doctest::Approx(confoundingPriceNumeric(kDefault, demand, 0.5)).epsilon(1e-7));
}

TEST_CASE("numeric confounding optimizer reproduces the closed form") {
    const UniformDemand demand(kDefault);
    for (double mu : {0.1, 0.35, 0.5, 0.75, 0.95}) {
        const auto closed = optimalConfounding(kDefault, demand, mu);
        const auto numeric = optimalConfoundingNumeric(kDefault, demand, mu);
        CHECK(numeric.policy.alphaLow == 1.0);
        CHECK(numeric.policy.promotedPrice ==
              doctest::Approx(closed.policy.promotedPrice).epsilon(1e-6));
        CHECK(numeric.surplus == doctest::Approx(closed.surplus).epsilon(1e-7));
    }
}

TEST_CASE("confounding collapses to myopic at degenerate beliefs") {
    const UniformDemand demand(kDefault);
    for (double mu : {0.0, 1.0}) {
        const auto conf = optimalConfounding(kDefault, demand, mu);
        const auto myopic = myopicPromotion(kDefault, demand, mu);
        CHECK(conf.policy.promotedPrice == myopic.policy.promotedPrice);
        CHECK(conf.surplus == myopic.surplus);
    }
}

TEST_CASE("confounding weakly raises the price and binds participation") {
    const UniformDemand demand(kDefault);
    const double pStar = outsideOptionPrice(kDefault);
    for (double mu : linspace(0.0, 1.0, 101)) {
        const auto conf = optimalConfounding(kDefault, demand, mu);
        const auto myo = myopicPromotion(kDefault, demand, mu);
        CHECK(conf.policy.promotedPrice >= myo.policy.promotedPrice - 1e-12);
        CHECK(myo.surplus >= conf.surplus - 1e-12);
        if (mu > 0.0 && mu < 1.0 && conf.policy.promotedPrice < pStar) {
            const double revenue =
                myopicBestResponse(kDefault, demand, conf.policy, mu).expectedRevenue;
            const double fallback = (1.0 - phiBar(kDefault, mu)) * pStar * demand.rhoC(pStar);
            CHECK(std::abs(revenue - fallback) < 1e-7);
        }
    }
}

TEST_CASE("confounding price is continuous at mu=0 but jumps at mu=1") {
    // Confounding costs nothing at degenerate beliefs. Near mu=0 the
    // constrained price approaches the unconstrained one, while at mu=1 the
    // constraint stays binding up to the limit and the price drops
    // discontinuously to the myopic value.
    const UniformDemand demand(kDefault);
    const double atZero = myopicPromotion(kDefault, demand, 0.0).policy.promotedPrice;
    const double nearZero = optimalConfounding(kDefault, demand, 1e-9).policy.promotedPrice;
    CHECK(std::abs(nearZero - atZero) < 1e-6);

    const double atOne = myopicPromotion(kDefault, demand, 1.0).policy.promotedPrice;
    const double nearOne = optimalConfounding(kDefault, demand, 1.0 - 1e-9).policy.promotedPrice;
    CHECK(nearOne - atOne > 1e-4);

    const double surplusJump = myopicPromotion(kDefault, demand, 1.0).surplus -
                               optimalConfounding(kDefault, demand, 1.0 - 1e-9).surplus;
    CHECK(surplusJump > 1e-3);
}

TEST_CASE("confounding equality holds across the solved curve") {
    const UniformDemand demand(kDefault);
    const PolicyCurve curve = solvePolicyCurve(kDefault, demand, PolicyMode::confounding, 201);
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double low = saleProbability(kDefault, demand, curve.policies[i], Impatience::low);
        const double high = saleProbability(kDefault, demand, curve.policies[i], Impatience::high);
        CHECK(std::abs(low - high) < 1e-9);
    }
}

TEST_CASE("alphaHigh variant with a full beta^2 term breaks the confounding equality") {
    // A tempting closed form for the high-state promotion probability uses
    // (a - p - b^2) / (a - p) where the sale-probability identity requires
    // rhoC/rho0 = (a - p - b^2/2) / (a - p). Only the latter keeps the sale
    // probability state-independent, which is the defining property.
    const UniformDemand demand(kDefault);
    const double a = kDefault.sellerQuality, b = kDefault.rivalQuality;
    const double share = (kDefault.phiHigh - kDefault.phiLow) / kDefault.phiHigh;
    const double p = optimalConfounding(kDefault, demand, 0.5).policy.promotedPrice;

    const double variant = share * (a - p - b * b) / (a - p) + kDefault.phiLow / kDefault.phiHigh;
    const double general = confoundingAlphaHigh(kDefault, demand, p, 1.0);
    CHECK(std::abs(variant - general) > 1e-3);

    const PromotionPolicy variantPolicy{p, 1.0, variant};
    const double gapVariant =
        std::abs(saleProbability(kDefault, demand, variantPolicy, Impatience::low) -
                 saleProbability(kDefault, demand, variantPolicy, Impatience::high));
    const PromotionPolicy generalPolicy{p, 1.0, general};
    const double gapGeneral =
        std::abs(saleProbability(kDefault, demand, generalPolicy, Impatience::low) -
                 saleProbability(kDefault, demand, generalPolicy, Impatience::high));
    CHECK(gapGeneral < 1e-12);
    CHECK(gapVariant > 1e-3);
}

TEST_CASE("baseline policy confounds at the outside-option price") {
    const UniformDemand demand(kDefault);
    const PromotionPolicy baseline = baselineConfounding(kDefault, demand);
    CHECK(baseline.promotedPrice == doctest::Approx(0.29));
    CHECK(baseline.alphaLow == 0.0);
    CHECK(baseline.alphaHigh == doctest::Approx(0.7016129032258065).epsilon(1e-12));
    const double low = saleProbability(kDefault, demand, baseline, Impatience::low);
    const double high = saleProbability(kDefault, demand, baseline, Impatience::high);
    CHECK(low == doctest::Approx(0.8 * 0.29).epsilon(1e-12));
    CHECK(std::abs(low - high) < 1e-12);

    // The optimized policy dominates the static baseline everywhere.
    for (double mu : linspace(0.0, 1.0, 51)) {
        const double optimized = optimalConfounding(kDefault, demand, mu).surplus;
        const double base = policySurplus(kDefault, demand, baseline, mu);
        CHECK(optimized >= base - 1e-12);
    }
}

TEST_CASE("alphaHigh shrinks toward zero as the states merge") {
    const UniformDemand demand(kDefault);
    const double pStar = outsideOptionPrice(kDefault);
    double last = 1.0;
    for (double phiLow : {0.3, 0.5, 0.7, 0.79}) {
        MarketParams params = kDefault;
        params.phiLow = phiLow;
        const double aH = confoundingAlphaHigh(params, demand, pStar, 0.0);
        CHECK(aH < last);
        last = aH;
    }
    CHECK(last < 0.02);
}

TEST_CASE("observable promotions destroy interior confounding for beta > 0") {
    const UniformDemand demand(kDefault);
    for (double mu : {0.1, 0.5, 0.9})
        CHECK(observableConfoundingSurplus(kDefault, demand, mu) == 0.0);
    CHECK(observableConfoundingSurplus(kDefault, demand, 0.0) ==
          doctest::Approx(myopicPromotion(kDefault, demand, 0.0).surplus));
    CHECK(observableConfoundingSurplus(kDefault, demand, 1.0) ==
          doctest::Approx(myopicPromotion(kDefault, demand, 1.0).surplus));
}

TEST_CASE("a worthless rival restores observable confounding") {
    const MarketParams noRival{0.6, 0.0, 0.2, 0.8, 0.5};
    const UniformDemand demand(noRival);
    for (double mu : linspace(0.05, 0.95, 13)) {
        const double observable = observableConfoundingSurplus(noRival, demand, mu);
        const double hidden = optimalConfounding(noRival, demand, mu).surplus;
        CHECK(observable == doctest::Approx(hidden).epsilon(1e-7));
    }
}

TEST_CASE("infeasible confounding is reported, not approximated") {
    const InvertedDemand demand;
    CHECK_THROWS_AS(optimalConfoundingNumeric(kDefault, demand, 0.5), InfeasibleError);
}

TEST_CASE("numeric optimizer handles interior promotion probabilities") {
    // With a rival-friendly market the objective falls in alphaLow, so the
    // optimum sits strictly inside [0, 1]. Verify against a brute-force scan
    // over feasible (price, alphaLow) pairs.
    const RivalFriendlyDemand demand;
    const double mu = 0.5;
    const auto solved = optimalConfoundingNumeric(kDefault, demand, mu);
    CHECK(solved.policy.alphaLow < 1.0);

    const double pStar = outsideOptionPrice(kDefault);
    const double required = (1.0 - phiBar(kDefault, mu)) * pStar * demand.rhoC(pStar);
    const auto revenue = [&](double p, double alphaLow) {
        return (1.0 - kDefault.phiLow) * p * demand.rhoC(p) +
               kDefault.phiLow * alphaLow * p * demand.rho0(p);
    };
    CHECK(revenue(solved.policy.promotedPrice, solved.policy.alphaLow) >= required - 1e-9);
    CHECK(std::abs(saleProbability(kDefault, demand, solved.policy, Impatience::low) -
                   saleProbability(kDefault, demand, solved.policy, Impatience::high)) < 1e-9);

    double bruteBest = 0.0;
    for (double p : linspace(1e-3, 1.0, 2000)) {
        for (double alphaLow : linspace(0.0, 1.0, 101)) {
            if (revenue(p, alphaLow) < required) continue;
            if (demand.rho0(p) <= 1e-12) continue;
            const double alphaHigh = confoundingAlphaHigh(kDefault, demand, p, alphaLow);
            if (alphaHigh < 0.0 || alphaHigh > 1.0) continue;
            const PromotionPolicy policy{p, alphaLow, alphaHigh};
            bruteBest = std::max(bruteBest, policySurplus(kDefault, demand, policy, mu));
        }
    }
    CHECK(solved.surplus >= bruteBest - 1e-6);
}

TEST_CASE("solver invariants hold across the regime") {
    const MarketParams parameterizations[] = {
        {0.6, 0.2, 0.2, 0.8, 0.5}, {0.8, 0.2, 0.3, 0.7, 0.5}, {0.5, 0.1, 0.1, 0.9, 0.5},
        {0.9, 0.4, 0.25, 0.75, 0.5}, {0.7, 0.3, 0.4, 0.6, 0.5},
    };
    for (const MarketParams& params : parameterizations) {
        const UniformDemand demand(params);
        const double pStar = outsideOptionPrice(params);
        CHECK(pStar == doctest::Approx(outsideOptionPriceNumeric(demand)).epsilon(1e-7));
        for (double mu : {0.1, 0.5, 0.9}) {
            const auto conf = optimalConfounding(params, demand, mu);
            CHECK(conf.policy.promotedPrice ==
                  doctest::Approx(confoundingPriceNumeric(params, demand, mu)).epsilon(1e-6));
            CHECK(std::abs(saleProbability(params, demand, conf.policy, Impatience::low) -
                           saleProbability(params, demand, conf.policy, Impatience::high)) <
                  1e-9);
            const auto myo = myopicPromotion(params, demand, mu);
            CHECK(myo.policy.promotedPrice ==
                  doctest::Approx(myopicPriceNumeric(params, demand, mu)).epsilon(1e-6));
            CHECK(myo.surplus >= conf.surplus - 1e-12);
            CHECK(conf.policy.promotedPrice >= myo.policy.promotedPrice - 1e-12);
            CHECK(conf.policy.alphaHigh >= 0.0);
            CHECK(conf.policy.alphaHigh <= 1.0);
            const auto numeric = optimalConfoundingNumeric(params, demand, mu);
            CHECK(numeric.surplus == doctest::Approx(conf.surplus).epsilon(1e-7));
        }
    }
}

TEST_CASE("policy curve shape and seller revenue") {
    const UniformDemand demand(kDefault);
    const PolicyCurve curve = solvePolicyCurve(kDefault, demand, PolicyMode::confounding, 101);
    CHECK(curve.size() == 101);
    CHECK(curve.muGrid.front() == 0.0);
    CHECK(curve.muGrid.back() == 1.0);
    const double pStar = outsideOptionPrice(kDefault);
    const double rStar = pStar * demand.rhoC(pStar);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve.surplus[i] >= 0.0);
        CHECK(curve.sellerRevenue[i] ==
              doctest::Approx((1.0 - phiBar(kDefault, curve.muGrid[i])) * rStar).epsilon(1e-9));
    }
}
