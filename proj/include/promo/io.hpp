#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "promo/game.hpp"
#include "promo/infodesign.hpp"
#include "promo/promotion.hpp"

namespace promo {

/// Shortest round-trippable decimal form; keeps CSV output byte-stable across
/// runs for the same build.
std::string formatDouble(double x);

void writePolicyCurveCsv(const std::string& path, const PolicyCurve& curve);

void writeMetricsCsv(const std::string& path, const SurplusCurves& curves);

struct BatchSummaryRow {
    std::string policy;
    std::string signal;
    double mu0 = 0.0;
    long horizon = 0;
    long episodes = 0;
    double meanSurplus = 0.0;
    double stderrOfMean = 0.0;
};

void writeBatchSummaryCsv(const std::string& path, std::span<const BatchSummaryRow> rows);

/// One JSON object per period; episode-level fields repeat on each line so
/// the stream can be filtered without joining.
void writeTraceJsonl(const std::string& path, std::span<const EpisodeTrace> traces);

void writeBeliefPathCsv(const std::string& path, std::span<const double> values);

nlohmann::json signalToJson(const Signal& signal);

}  // namespace promo
