#include <doctest.h>

#include <cmath>
#include <random>

#include "promo/numeric.hpp"
#include "promo/promotion.hpp"
#include "promo/seller.hpp"

using namespace promo;

namespace {

const MarketParams kDefault{0.6, 0.2, 0.2, 0.8, 0.5};

}  // namespace

TEST_CASE("phiBar endpoints and midpoint") {
    CHECK(phiBar(kDefault, 0.0) == 0.2);
    CHECK(phiBar(kDefault, 1.0) == 0.8);
    CHECK(phiBar(kDefault, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("outside-option price matches the argmax of p*rhoC(p)") {
    const UniformDemand demand(kDefault);
    CHECK(outsideOptionPrice(kDefault) == doctest::Approx(0.29));
    CHECK(outsideOptionPrice(kDefault) ==
          doctest::Approx(outsideOptionPriceNumeric(demand)).epsilon(1e-7));

    const MarketParams noRival{0.6, 0.0, 0.2, 0.8, 0.5};
    CHECK(outsideOptionPrice(noRival) == doctest::Approx(0.30));

    const MarketParams stronger{0.8, 0.2, 0.2, 0.8, 0.5};
    const UniformDemand strongerDemand(stronger);
    CHECK(outsideOptionPriceNumeric(strongerDemand) > outsideOptionPriceNumeric(demand));
    CHECK(outsideOptionPrice(stronger) > outsideOptionPrice(kDefault));
}

TEST_CASE("belief update follows Bayes") {
    CHECK(updateBelief(0.5, 0.5011, 0.5131, true) == doctest::Approx(0.5059159929).epsilon(1e-9));
    CHECK(updateBelief(0.5, 0.4, 0.4, false) == 0.5);   // confounded
    CHECK(updateBelief(1.0, 0.1, 0.9, true) == 1.0);    // degenerate beliefs absorb
    CHECK(updateBelief(0.0, 0.1, 0.9, false) == 0.0);
    CHECK_THROWS_AS(updateBelief(0.5, -0.1, 0.5, true), std::domain_error);
    // Observing an event whose total probability underflows to zero is fatal.
    CHECK_THROWS_AS(updateBelief(0.5, 0.0, 5e-324, true), InconsistentObservationError);
}

TEST_CASE("posterior equals the empirical conditional frequency") {
    // Monte Carlo oracle for the Bayes step: the posterior after a sale is
    // the long-run fraction of high states among sale draws.
    const double qL = 0.5011, qH = 0.5131;
    std::mt19937_64 engine(5150);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long sales = 0, highSales = 0;
    for (long i = 0; i < 10'000'000; ++i) {
        const bool high = unit(engine) < 0.5;
        if (unit(engine) < (high ? qH : qL)) {
            ++sales;
            if (high) ++highSales;
        }
    }
    const double freq = static_cast<double>(highSales) / static_cast<double>(sales);
    const double se = std::sqrt(freq * (1.0 - freq) / static_cast<double>(sales));
    CHECK(std::abs(updateBelief(0.5, qL, qH, true) - freq) <= 3.0 * se);
}

TEST_CASE("belief updates form a martingale") {
    std::mt19937_64 engine(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double mu = unit(engine);
        const double qL = unit(engine), qH = unit(engine);
        const double qBar = mu * qH + (1.0 - mu) * qL;
        if (qBar <= 0.0 || qBar >= 1.0) continue;
        const double up = updateBelief(mu, qL, qH, true);
        const double down = updateBelief(mu, qL, qH, false);
        CHECK(std::abs(qBar * up + (1.0 - qBar) * down - mu) < 1e-12);
        if (qH > qL && mu > 0.0 && mu < 1.0) CHECK(up > mu);  // monotone in the likelihood ratio
    }
}

TEST_CASE("myopic best response to the solved confounding policy") {
    const UniformDemand demand(kDefault);
    const auto [policy, surplus] = optimalConfounding(kDefault, demand, 0.5);
    CHECK(policy.promotedPrice == doctest::Approx(0.08412).epsilon(1e-4));
    CHECK(policy.alphaLow == 1.0);
    CHECK(policy.alphaHigh == doctest::Approx(0.97092).epsilon(1e-4));

    const SellerDecision decision = myopicBestResponse(kDefault, demand, policy, 0.5);
    CHECK(decision.tookPromotedPrice);
    CHECK(decision.price == policy.promotedPrice);

    // Indifference: revenue at the promoted price equals the fallback.
    const double pStar = outsideOptionPrice(kDefault);
    const double fallback = (1.0 - phiBar(kDefault, 0.5)) * pStar * demand.rhoC(pStar);
    CHECK(decision.expectedRevenue == doctest::Approx(fallback).epsilon(1e-6));
}

TEST_CASE("myopic best response falls back when never promoted") {
    const UniformDemand demand(kDefault);
    const PromotionPolicy neverPromote{0.1, 0.0, 0.0};
    const SellerDecision decision = myopicBestResponse(kDefault, demand, neverPromote, 0.5);
    CHECK_FALSE(decision.tookPromotedPrice);
    CHECK(decision.price == doctest::Approx(0.29));
    const double fallback = (1.0 - phiBar(kDefault, 0.5)) * 0.29 * demand.rhoC(0.29);
    CHECK(decision.expectedRevenue == doctest::Approx(fallback));
}

TEST_CASE("promoting the outside-option price weakly dominates") {
    const UniformDemand demand(kDefault);
    const PromotionPolicy atPStar{outsideOptionPrice(kDefault), 1.0, 1.0};
    const SellerDecision decision = myopicBestResponse(kDefault, demand, atPStar, 0.5);
    CHECK(decision.tookPromotedPrice);
    CHECK(decision.price == doctest::Approx(0.29));
}

TEST_CASE("best-response revenue never falls below the fallback") {
    const UniformDemand demand(kDefault);
    std::mt19937_64 engine(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const PromotionPolicy policy{unit(engine) * 0.6, unit(engine), unit(engine)};
        const double mu = unit(engine);
        const double pStar = outsideOptionPrice(kDefault);
        const double fallback = (1.0 - phiBar(kDefault, mu)) * pStar * demand.rhoC(pStar);
        CHECK(myopicBestResponse(kDefault, demand, policy, mu).expectedRevenue >=
              fallback - 1e-12);
    }
}

TEST_CASE("DP oracle rejects out-of-range inputs") {
    const UniformDemand demand(kDefault);
    const PolicyCurve curve = solvePolicyCurve(kDefault, demand, PolicyMode::confounding, 101);
    CHECK_THROWS_AS(dpBestResponseValue(kDefault, demand, curve, 0.5, 13, 101),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpBestResponseValue(kDefault, demand, curve, 0.5, 0, 101),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpBestResponseValue(kDefault, demand, curve, 0.5, 5, 51),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpBestResponseValue(kDefault, demand, curve, 1.5, 5, 101),
                    std::domain_error);
}

TEST_CASE("one-period DP collapses to the myopic value") {
    const UniformDemand demand(kDefault);
    const PolicyCurve curve = solvePolicyCurve(kDefault, demand, PolicyMode::confounding, 101);
    for (double mu0 : {0.0, 0.3, 0.5, 0.97, 1.0}) {
        const DpResult r = dpBestResponseValue(kDefault, demand, curve, mu0, 1, 101);
        CHECK(r.dpValue == doctest::Approx(r.myopicValue).epsilon(1e-15));
    }
}

TEST_CASE("degenerate beliefs leave nothing to learn under the myopic curve") {
    const UniformDemand demand(kDefault);
    const PolicyCurve curve = solvePolicyCurve(kDefault, demand, PolicyMode::myopic, 101);
    for (double mu0 : {0.0, 1.0}) {
        const DpResult r = dpBestResponseValue(kDefault, demand, curve, mu0, 6, 201);
        CHECK(r.dpValue == doctest::Approx(r.myopicValue).epsilon(1e-12));
    }
}

TEST_CASE("deviating from the confounding curve earns the seller nothing") {
    const UniformDemand demand(kDefault);
    // Curve resolution matches the DP grid so every DP node sees the policy
    // solved for its own belief; a coarser curve adds quantization noise on
    // top of the snap bias.
    const PolicyCurve curve = solvePolicyCurve(kDefault, demand, PolicyMode::confounding, 40'001);
    const double mu0s[] = {0.2, 0.5, 0.8};
    const auto results = dpBestResponseValues(kDefault, demand, curve, mu0s, 5, 40'001);
    for (const DpResult& r : results) {
        CHECK(r.dpValue >= r.myopicValue - 1e-12);  // DP optimizes over a superset
        CHECK((r.dpValue - r.myopicValue) / r.myopicValue < 1e-4);
    }
}
