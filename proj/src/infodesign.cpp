#include "promo/infodesign.hpp"

#include <algorithm>
#include <cmath>

#include "promo/numeric.hpp"
#include "promo/seller.hpp"

namespace promo {

namespace {

constexpr double kTouchTolerance = 1e-9;

}  // namespace

void ValueCurve::validate() const {
    if (muGrid.size() != values.size() || muGrid.size() < 2)
        throw std::invalid_argument("value curve needs >= 2 aligned grid points");
    for (std::size_t i = 1; i < muGrid.size(); ++i)
        if (!(muGrid[i] > muGrid[i - 1]))
            throw std::invalid_argument("value curve grid must be strictly ascending");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("value curve must be finite");
}

double ValueCurve::interpolate(double mu) const {
    if (mu < muGrid.front() || mu > muGrid.back())
        throw std::domain_error("belief outside the curve's grid span");
    const auto it = std::upper_bound(muGrid.begin(), muGrid.end(), mu);
    if (it == muGrid.end()) return values.back();
    const std::size_t hi = static_cast<std::size_t>(it - muGrid.begin());
    if (hi == 0) return values.front();
    const std::size_t lo = hi - 1;
    const double w = (mu - muGrid[lo]) / (muGrid[hi] - muGrid[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

void Signal::validate(double mu0) const {
    const auto inUnit = [](double x) { return x >= -1e-12 && x <= 1.0 + 1e-12; };
    if (!inUnit(probLowGivenLow) || !inUnit(probHighGivenLow) || !inUnit(probLowGivenHigh) ||
        !inUnit(probHighGivenHigh))
        throw NumericError("signal probabilities outside [0, 1]");
    if (std::abs(probLowGivenLow + probHighGivenLow - 1.0) > 1e-12 ||
        std::abs(probLowGivenHigh + probHighGivenHigh - 1.0) > 1e-12)
        throw NumericError("signal rows must sum to 1");
    if (!(muPrime <= mu0 + 1e-12 && mu0 <= muDoublePrime + 1e-12))
        throw NumericError("posteriors must straddle the prior");
    // Bayes plausibility: posteriors average back to the prior.
    const double probLow = (1.0 - mu0) * probLowGivenLow + mu0 * probLowGivenHigh;
    const double mean = probLow * muPrime + (1.0 - probLow) * muDoublePrime;
    if (std::abs(mean - mu0) > 1e-12) throw NumericError("signal is not Bayes-plausible");
}

Signal uninformativeSignal(double mu0) {
    Signal s;
    s.probLowGivenLow = 1.0;
    s.probHighGivenLow = 0.0;
    s.probLowGivenHigh = 1.0;
    s.probHighGivenHigh = 0.0;
    s.muPrime = mu0;
    s.muDoublePrime = mu0;
    return s;
}

Signal truthfulSignal() {
    Signal s;
    s.probLowGivenLow = 1.0;
    s.probHighGivenLow = 0.0;
    s.probLowGivenHigh = 0.0;
    s.probHighGivenHigh = 1.0;
    s.muPrime = 0.0;
    s.muDoublePrime = 1.0;
    return s;
}

ValueCurve concavify(const ValueCurve& curve) {
    curve.validate();
    const std::size_t n = curve.size();
    // Upper hull by a single monotone-chain pass over the ascending grid.
    std::vector<std::size_t> hull;
    hull.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const double cross = (curve.muGrid[b] - curve.muGrid[a]) *
                                     (curve.values[i] - curve.values[a]) -
                                 (curve.muGrid[i] - curve.muGrid[a]) *
                                     (curve.values[b] - curve.values[a]);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    ValueCurve out;
    out.muGrid = curve.muGrid;
    out.values.resize(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (seg + 1 < hull.size() && hull[seg + 1] <= i) ++seg;
        if (hull[seg] == i) {
            out.values[i] = curve.values[i];  // hull vertices keep their exact value
        } else {
            const std::size_t a = hull[seg], b = hull[seg + 1];
            const double w = (curve.muGrid[i] - curve.muGrid[a]) /
                             (curve.muGrid[b] - curve.muGrid[a]);
            out.values[i] =
                std::max(curve.values[a] + w * (curve.values[b] - curve.values[a]),
                         curve.values[i]);
        }
    }
    return out;
}

Signal optimalSignal(const ValueCurve& curve, const ValueCurve& envelope, double mu0) {
    curve.validate();
    if (envelope.muGrid != curve.muGrid)
        throw std::invalid_argument("curve and envelope must share a grid");
    if (mu0 < curve.muGrid.front() || mu0 > curve.muGrid.back())
        throw std::domain_error("prior outside the curve's grid span");
    if (mu0 == 0.0 || mu0 == 1.0) return uninformativeSignal(mu0);

    const auto touches = [&](std::size_t i) {
        return envelope.values[i] - curve.values[i] <= kTouchTolerance;
    };

    // Nearest touching grid points on either side of the prior.
    const std::size_t at = nearestIndex(curve.muGrid, mu0);
    std::size_t lo = curve.muGrid[at] <= mu0 ? at : at - 1;
    std::size_t hi = curve.muGrid[at] >= mu0 ? at : at + 1;
    while (!touches(lo)) --lo;  // index 0 always touches
    while (!touches(hi)) ++hi;  // last index always touches

    const double muPrime = curve.muGrid[lo];
    const double muDoublePrime = curve.muGrid[hi];
    if (muPrime == muDoublePrime) return uninformativeSignal(mu0);

    Signal s;
    const double split = (muDoublePrime - mu0) / (muDoublePrime - muPrime);
    s.probLowGivenLow = std::clamp((1.0 - muPrime) / (1.0 - mu0) * split, 0.0, 1.0);
    s.probLowGivenHigh = std::clamp(muPrime / mu0 * split, 0.0, 1.0);
    s.probHighGivenLow = 1.0 - s.probLowGivenLow;
    s.probHighGivenHigh = 1.0 - s.probLowGivenHigh;
    s.muPrime = muPrime;
    s.muDoublePrime = muDoublePrime;
    s.validate(mu0);
    return s;
}

Signal optimalSignal(const ValueCurve& curve, double mu0) {
    return optimalSignal(curve, concavify(curve), mu0);
}

double conditionalMyopicSurplus(const MarketParams& params, const DemandModel& demand, double phi,
                                double mu) {
    const double price =
        myopicPriceClosedForm(params.sellerQuality, params.rivalQuality, phiBar(params, mu));
    return phi * demand.w0(price) + (1.0 - phi) * demand.wC(price);
}

double wMax(const MarketParams& params, const DemandModel& demand, double mu) {
    return mu * conditionalMyopicSurplus(params, demand, params.phiHigh, mu) +
           (1.0 - mu) * conditionalMyopicSurplus(params, demand, params.phiLow, mu);
}

double wTruthful(const MarketParams& params, const DemandModel& demand, double mu) {
    return mu * conditionalMyopicSurplus(params, demand, params.phiHigh, 1.0) +
           (1.0 - mu) * conditionalMyopicSurplus(params, demand, params.phiLow, 0.0);
}

double SurplusCurves::coWCAt(double mu) const {
    ValueCurve c{muGrid, coWC};
    return c.interpolate(mu);
}

SurplusCurves buildSurplusCurves(const MarketParams& params, const DemandModel& demand,
                                 std::size_t gridSize) {
    params.validate();
    SurplusCurves curves;
    curves.muGrid = linspace(0.0, 1.0, gridSize);
    curves.wC.reserve(gridSize);
    curves.wTruthful.reserve(gridSize);
    curves.wMax.reserve(gridSize);
    for (double mu : curves.muGrid) {
        curves.wC.push_back(optimalConfounding(params, demand, mu).surplus);
        curves.wTruthful.push_back(wTruthful(params, demand, mu));
        curves.wMax.push_back(wMax(params, demand, mu));
    }
    curves.coWC = concavify(ValueCurve{curves.muGrid, curves.wC}).values;
    curves.relativeGain.resize(gridSize);
    curves.capturedShare.resize(gridSize);
    for (std::size_t i = 0; i < gridSize; ++i) {
        curves.relativeGain[i] = relativeGain(curves, i);
        curves.capturedShare[i] = capturedShare(curves, i);
    }
    return curves;
}

double relativeGain(const SurplusCurves& curves, std::size_t index) {
    const double wT = curves.wTruthful.at(index);
    if (wT == 0.0) throw NumericError("relative gain undefined: truthful surplus is zero");
    return (curves.coWC[index] - wT) / wT;
}

double capturedShare(const SurplusCurves& curves, std::size_t index) {
    const double wM = curves.wMax.at(index);
    if (wM == 0.0) throw NumericError("captured share undefined: one-period optimum is zero");
    return curves.coWC[index] / wM;
}

}  // namespace promo
