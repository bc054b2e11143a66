#include "promo/io.hpp"

#include <cstdio>
#include <fstream>

#include "promo/errors.hpp"

namespace promo {

namespace {

std::ofstream openForWrite(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    return out;
}

}  // namespace

std::string formatDouble(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void writePolicyCurveCsv(const std::string& path, const PolicyCurve& curve) {
    auto out = openForWrite(path);
    out << "mu,promotedPrice,alphaLow,alphaHigh,surplus,sellerRevenue\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << formatDouble(curve.muGrid[i]) << ',' << formatDouble(curve.policies[i].promotedPrice)
            << ',' << formatDouble(curve.policies[i].alphaLow) << ','
            << formatDouble(curve.policies[i].alphaHigh) << ',' << formatDouble(curve.surplus[i])
            << ',' << formatDouble(curve.sellerRevenue[i]) << '\n';
    }
}

void writeMetricsCsv(const std::string& path, const SurplusCurves& curves) {
    auto out = openForWrite(path);
    out << "mu,wC,coWC,wTruthful,wMax,RG,CCS\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        out << formatDouble(curves.muGrid[i]) << ',' << formatDouble(curves.wC[i]) << ','
            << formatDouble(curves.coWC[i]) << ',' << formatDouble(curves.wTruthful[i]) << ','
            << formatDouble(curves.wMax[i]) << ',' << formatDouble(curves.relativeGain[i]) << ','
            << formatDouble(curves.capturedShare[i]) << '\n';
    }
}

void writeBatchSummaryCsv(const std::string& path, std::span<const BatchSummaryRow> rows) {
    auto out = openForWrite(path);
    out << "policy,signal,mu0,horizon,episodes,meanSurplus,stderr\n";
    for (const BatchSummaryRow& row : rows) {
        out << row.policy << ',' << row.signal << ',' << formatDouble(row.mu0) << ','
            << row.horizon << ',' << row.episodes << ',' << formatDouble(row.meanSurplus) << ','
            << formatDouble(row.stderrOfMean) << '\n';
    }
}

void writeTraceJsonl(const std::string& path, std::span<const EpisodeTrace> traces) {
    auto out = openForWrite(path);
    for (std::size_t e = 0; e < traces.size(); ++e) {
        const EpisodeTrace& trace = traces[e];
        for (std::size_t t = 0; t < trace.perPeriod.size(); ++t) {
            const PeriodRecord& rec = trace.perPeriod[t];
            nlohmann::json line = {
                {"episode", e},
                {"t", t + 1},
                {"phi", trace.phiRealized == Impatience::high ? "high" : "low"},
                {"signal", trace.signalSent == Message::high ? "high" : "low"},
                {"price", rec.price},
                {"promoted", rec.promoted},
                {"impatient", rec.consumerImpatient},
                {"sale", rec.sale},
                {"muBefore", rec.muBefore},
                {"muAfter", rec.muAfter},
                {"surplus", rec.periodSurplus},
            };
            out << line.dump() << '\n';
        }
    }
}

void writeBeliefPathCsv(const std::string& path, std::span<const double> values) {
    auto out = openForWrite(path);
    out << "t,meanMuLow\n";
    for (std::size_t t = 0; t < values.size(); ++t)
        out << (t + 1) << ',' << formatDouble(values[t]) << '\n';
}

nlohmann::json signalToJson(const Signal& signal) {
    return {{"probLowGivenLow", signal.probLowGivenLow},
            {"probHighGivenLow", signal.probHighGivenLow},
            {"probLowGivenHigh", signal.probLowGivenHigh},
            {"probHighGivenHigh", signal.probHighGivenHigh},
            {"muPrime", signal.muPrime},
            {"muDoublePrime", signal.muDoublePrime}};
}

}  // namespace promo
