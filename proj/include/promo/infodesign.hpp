#pragma once

#include <cstddef>
#include <vector>

#include "promo/demand.hpp"
#include "promo/promotion.hpp"

namespace promo {

/// A real-valued function sampled on an ascending belief grid.
struct ValueCurve {
    std::vector<double> muGrid;
    std::vector<double> values;

    std::size_t size() const { return muGrid.size(); }
    /// Piecewise-linear evaluation; mu must lie inside the grid span.
    double interpolate(double mu) const;
    void validate() const;
};

/// Binary signaling mechanism over messages {low, high} with the posteriors
/// it induces. Rows are conditional on the true state.
struct Signal {
    double probLowGivenLow = 1.0;
    double probHighGivenLow = 0.0;
    double probLowGivenHigh = 1.0;
    double probHighGivenHigh = 0.0;
    double muPrime = 0.0;        // posterior after message "low"
    double muDoublePrime = 0.0;  // posterior after message "high"

    bool informative() const { return muPrime != muDoublePrime; }
    void validate(double mu0) const;
};

Signal uninformativeSignal(double mu0);
Signal truthfulSignal();

/// Upper concave envelope of the curve, evaluated back on the same grid.
/// Dominates the input pointwise and equals it at every hull vertex.
ValueCurve concavify(const ValueCurve& curve);

/// Optimal binary signal at prior mu0 for the given value curve: pools the
/// prior onto the nearest beliefs where the envelope touches the curve.
/// Uninformative when the curve already meets its envelope at mu0.
Signal optimalSignal(const ValueCurve& curve, const ValueCurve& envelope, double mu0);
Signal optimalSignal(const ValueCurve& curve, double mu0);

/// Expected consumer surplus of the myopic policy conditional on the true
/// state phi when the seller holds belief mu.
double conditionalMyopicSurplus(const MarketParams& params, const DemandModel& demand, double phi,
                                double mu);

/// One-period maximum consumer surplus over all promotion policies at belief mu.
double wMax(const MarketParams& params, const DemandModel& demand, double mu);

/// Expected per-period surplus under truthful disclosure (posteriors degenerate).
double wTruthful(const MarketParams& params, const DemandModel& demand, double mu);

/// Value and metric curves cached on one belief grid: the confounding value
/// wC, its envelope coWC, the truthful and one-period-max baselines, and the
/// derived relative-gain / captured-share metrics.
struct SurplusCurves {
    std::vector<double> muGrid;
    std::vector<double> wC;
    std::vector<double> coWC;
    std::vector<double> wTruthful;
    std::vector<double> wMax;
    std::vector<double> relativeGain;
    std::vector<double> capturedShare;

    double coWCAt(double mu) const;
    std::size_t size() const { return muGrid.size(); }
};

SurplusCurves buildSurplusCurves(const MarketParams& params, const DemandModel& demand,
                                 std::size_t gridSize = 501);

/// (coWC(mu) - wT(mu)) / wT(mu); zero denominator throws NumericError.
double relativeGain(const SurplusCurves& curves, std::size_t index);
/// coWC(mu) / wMax(mu); zero denominator throws NumericError.
double capturedShare(const SurplusCurves& curves, std::size_t index);

}  // namespace promo
