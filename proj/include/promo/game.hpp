#pragma once

#include <cstdint>
#include <vector>

#include "promo/demand.hpp"
#include "promo/infodesign.hpp"
#include "promo/promotion.hpp"

namespace promo {

enum class Message { low, high };

struct EpisodeConfig {
    MarketParams params;
    PolicyCurve policyCurve;
    Signal signal;
    long horizon = 1;
    std::uint64_t rngSeed = 0;

    void validate() const;
};

struct PeriodRecord {
    double price = 0.0;
    bool promoted = false;
    bool consumerImpatient = false;
    bool sale = false;
    double muBefore = 0.0;
    double muAfter = 0.0;
    double periodSurplus = 0.0;
};

struct EpisodeTrace {
    Impatience phiRealized = Impatience::low;
    Message signalSent = Message::low;
    double muInitial = 0.0;  // posterior right after the signal
    std::vector<PeriodRecord> perPeriod;
    double totalSurplus = 0.0;
    double totalSellerRevenue = 0.0;
};

/// Simulates one play of the dynamic game: state and signal draw, then
/// `horizon` periods of pricing, promotion, consumer arrival, purchase and
/// belief updating. Fully reproducible from the seed. The seller prices by
/// best response to the curve entry at the nearest grid belief; beliefs are
/// updated exactly with the policy-implied sale likelihoods (the promotion
/// decision itself is never revealed to the seller).
EpisodeTrace runEpisode(const EpisodeConfig& config);

struct BatchResult {
    long episodes = 0;
    double meanPerPeriodSurplus = 0.0;
    double stderrOfMeanSurplus = 0.0;
    double meanPerPeriodRevenue = 0.0;
    double stderrOfMeanRevenue = 0.0;
    long episodesLow = 0;
    long episodesHigh = 0;
    double meanFinalMuLow = 0.0;   // conditional on the low state
    double meanFinalMuHigh = 0.0;  // conditional on the high state
    /// Mean belief per period conditional on the low state.
    std::vector<double> beliefPathLow;
    /// Mean and standard error of the per-period belief increments across all
    /// episodes (the empirical martingale diagnostic).
    std::vector<double> beliefIncrementMean;
    std::vector<double> beliefIncrementStderr;
    /// Realized sale frequency per state, for the confounding diagnostic.
    double saleFreqLow = 0.0;
    double saleFreqHigh = 0.0;
    double saleFreqLowStderr = 0.0;
    double saleFreqHighStderr = 0.0;
};

/// Runs independent episodes with per-episode seeds derived from the base
/// seed by counter; aggregation is order-independent.
BatchResult runBatch(const EpisodeConfig& config, long episodes);

struct ConvergenceFit {
    double rate = 0.0;
    double rSquared = 1.0;
};

/// Least-squares fit of log(mean belief) against the period index over the
/// first half of the path, before floating-point floor effects. Nonpositive
/// entries are trimmed first.
ConvergenceFit fitConvergenceRate(const std::vector<double>& beliefPath);

}  // namespace promo
