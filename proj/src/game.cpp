#include "promo/game.hpp"

#include <cmath>
#include <optional>

#include "promo/numeric.hpp"
#include "promo/rng.hpp"
#include "promo/seller.hpp"

namespace promo {

void EpisodeConfig::validate() const {
    params.validate();
    policyCurve.validate();
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

namespace {

double posteriorAfterMessage(const MarketParams& params, const Signal& signal, Message m) {
    const double mu0 = params.prior;
    if (mu0 == 0.0 || mu0 == 1.0) return mu0;
    const double likeLow = m == Message::low ? signal.probLowGivenLow : signal.probHighGivenLow;
    const double likeHigh = m == Message::low ? signal.probLowGivenHigh : signal.probHighGivenHigh;
    const double denom = mu0 * likeHigh + (1.0 - mu0) * likeLow;
    if (denom <= 0.0)
        throw InconsistentObservationError("signal message has zero prior probability");
    return mu0 * likeHigh / denom;
}

struct OnlineMean {
    long n = 0;
    double sum = 0.0;
    double sumSq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sumSq += x * x;
    }
    double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double stderrOfMean() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sumSq - static_cast<double>(n) * m * m) /
                                             static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

}  // namespace

EpisodeTrace runEpisode(const EpisodeConfig& config) {
    config.validate();
    const MarketParams& params = config.params;
    const UniformDemand demand(params);
    Rng rng(config.rngSeed);

    EpisodeTrace trace;
    trace.phiRealized = rng.bernoulli(params.prior) ? Impatience::high : Impatience::low;
    const double phi = trace.phiRealized == Impatience::high ? params.phiHigh : params.phiLow;

    const double probLow = trace.phiRealized == Impatience::high ? config.signal.probLowGivenHigh
                                                                 : config.signal.probLowGivenLow;
    trace.signalSent = rng.bernoulli(probLow) ? Message::low : Message::high;
    double mu = posteriorAfterMessage(params, config.signal, trace.signalSent);
    trace.muInitial = mu;

    trace.perPeriod.reserve(static_cast<std::size_t>(config.horizon));

    // The seller's decision depends only on the curve node, so cache it.
    std::optional<std::size_t> cachedNode;
    SellerDecision decision;

    for (long t = 0; t < config.horizon; ++t) {
        const std::size_t node = config.policyCurve.nearestIndex(mu);
        if (!cachedNode || *cachedNode != node) {
            decision = myopicBestResponse(params, demand, config.policyCurve.policies[node],
                                          config.policyCurve.muGrid[node]);
            cachedNode = node;
        }
        const PromotionPolicy& policy = config.policyCurve.policies[node];
        const double price = decision.price;

        double alphaPhi = 0.0;
        if (decision.tookPromotedPrice)
            alphaPhi = trace.phiRealized == Impatience::high ? policy.alphaHigh : policy.alphaLow;
        const bool promoted = rng.bernoulli(alphaPhi);
        const bool impatient = rng.bernoulli(phi);

        bool sale = false;
        if (impatient)
            sale = promoted && rng.bernoulli(demand.rho0(price));
        else
            sale = rng.bernoulli(demand.rhoC(price));

        const double surplus = impatient ? (promoted ? demand.w0(price) : demand.wCConst())
                                         : demand.wC(price);

        // Likelihoods the seller attributes to the sale outcome: the promoted
        // price carries the committed promotion probabilities, any other
        // price is never promoted.
        double qLow = (1.0 - params.phiLow) * demand.rhoC(price);
        double qHigh = (1.0 - params.phiHigh) * demand.rhoC(price);
        if (decision.tookPromotedPrice) {
            qLow += params.phiLow * policy.alphaLow * demand.rho0(price);
            qHigh += params.phiHigh * policy.alphaHigh * demand.rho0(price);
        }
        const double muNext = updateBelief(mu, qLow, qHigh, sale);

        trace.perPeriod.push_back({price, promoted, impatient, sale, mu, muNext, surplus});
        trace.totalSurplus += surplus;
        if (sale) trace.totalSellerRevenue += price;
        mu = muNext;
    }
    return trace;
}

BatchResult runBatch(const EpisodeConfig& config, long episodes) {
    if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
    config.validate();

    BatchResult result;
    result.episodes = episodes;
    const auto horizon = static_cast<std::size_t>(config.horizon);
    std::vector<double> pathLowSum(horizon, 0.0);
    std::vector<OnlineMean> increments(horizon);
    OnlineMean surplusMean, revenueMean, finalMuLow, finalMuHigh, saleLow, saleHigh;

    for (long i = 0; i < episodes; ++i) {
        EpisodeConfig episodeConfig = config;
        episodeConfig.rngSeed = splitmix64At(config.rngSeed, static_cast<std::uint64_t>(i));
        const EpisodeTrace trace = runEpisode(episodeConfig);

        const double periods = static_cast<double>(config.horizon);
        surplusMean.add(trace.totalSurplus / periods);
        revenueMean.add(trace.totalSellerRevenue / periods);

        long sales = 0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const PeriodRecord& rec = trace.perPeriod[t];
            increments[t].add(rec.muAfter - rec.muBefore);
            if (rec.sale) ++sales;
            if (trace.phiRealized == Impatience::low) pathLowSum[t] += rec.muBefore;
        }
        const double saleFreq = static_cast<double>(sales) / periods;
        const double finalMu = trace.perPeriod.back().muAfter;
        if (trace.phiRealized == Impatience::low) {
            ++result.episodesLow;
            finalMuLow.add(finalMu);
            saleLow.add(saleFreq);
        } else {
            ++result.episodesHigh;
            finalMuHigh.add(finalMu);
            saleHigh.add(saleFreq);
        }
    }

    result.meanPerPeriodSurplus = surplusMean.mean();
    result.stderrOfMeanSurplus = surplusMean.stderrOfMean();
    result.meanPerPeriodRevenue = revenueMean.mean();
    result.stderrOfMeanRevenue = revenueMean.stderrOfMean();
    result.meanFinalMuLow = finalMuLow.mean();
    result.meanFinalMuHigh = finalMuHigh.mean();
    result.saleFreqLow = saleLow.mean();
    result.saleFreqHigh = saleHigh.mean();
    result.saleFreqLowStderr = saleLow.stderrOfMean();
    result.saleFreqHighStderr = saleHigh.stderrOfMean();

    result.beliefPathLow.resize(horizon);
    result.beliefIncrementMean.resize(horizon);
    result.beliefIncrementStderr.resize(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        result.beliefPathLow[t] =
            result.episodesLow > 0 ? pathLowSum[t] / static_cast<double>(result.episodesLow) : 0.0;
        result.beliefIncrementMean[t] = increments[t].mean();
        result.beliefIncrementStderr[t] = increments[t].stderrOfMean();
    }
    return result;
}

ConvergenceFit fitConvergenceRate(const std::vector<double>& beliefPath) {
    if (beliefPath.size() < 20)
        throw std::invalid_argument("belief path needs >= 20 periods to fit");
    const std::size_t half = beliefPath.size() / 2;
    std::vector<double> xs, ys;
    xs.reserve(half);
    ys.reserve(half);
    for (std::size_t t = 0; t < half; ++t) {
        if (beliefPath[t] > 0.0) {
            xs.push_back(static_cast<double>(t));
            ys.push_back(std::log(beliefPath[t]));
        }
    }
    if (xs.size() < 2)
        throw NumericError("convergence fit: no positive beliefs in the fitting window");
    const OlsFit fit = olsFit(xs, ys);
    return {-fit.slope, fit.rSquared};
}

}  // namespace promo
