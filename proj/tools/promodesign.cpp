// Command-line front end: solves promotion-policy curves, builds disclosure
// signals and surplus metrics, and simulates the dynamic game, emitting
// plot-ready CSV/JSON artifacts plus a manifest per run.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "promo/config.hpp"
#include "promo/game.hpp"
#include "promo/infodesign.hpp"
#include "promo/io.hpp"
#include "promo/promotion.hpp"
#include "promo/rng.hpp"
#include "promo/seller.hpp"
#include "promo/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRegime = 3;
constexpr int kExitNumeric = 4;

struct CommonOptions {
    std::string configPath;
    std::string outDir = "out";
    std::optional<long long> grid;
    std::optional<double> mu0;
    std::optional<long> horizon;
    std::optional<long> episodes;
};

struct Manifest {
    explicit Manifest(std::string cmd) : command(std::move(cmd)) {}

    std::string command;
    json details = json::object();
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const fs::path& dir, const promo::RunConfig& config) const {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json j = {{"command", command},
                  {"toolVersion", promo::kVersion},
                  {"market", promo::marketParamsToJson(config.market)},
                  {"grid", config.grid},
                  {"outputs", outputs},
                  {"durationSeconds", seconds}};
        j.update(details);
        std::ofstream out(dir / (command + "_manifest.json"));
        out << j.dump(2) << '\n';
    }
};

promo::RunConfig resolveConfig(const CommonOptions& opts) {
    promo::RunConfig config = promo::loadRunConfig(opts.configPath);
    if (opts.grid) {
        if (*opts.grid < 2) throw promo::ConfigError("--grid must be >= 2");
        config.grid = static_cast<std::size_t>(*opts.grid);
    }
    if (opts.mu0) {
        if (*opts.mu0 < 0.0 || *opts.mu0 > 1.0)
            throw promo::ConfigError("--mu0 must lie in [0, 1]");
        config.mu0 = *opts.mu0;
    }
    if (opts.horizon) {
        if (*opts.horizon < 1) throw promo::ConfigError("--horizon must be >= 1");
        config.horizon = *opts.horizon;
    }
    if (opts.episodes) {
        if (*opts.episodes < 1) throw promo::ConfigError("--episodes must be >= 1");
        config.episodes = *opts.episodes;
    }
    return config;
}

fs::path ensureOutDir(const CommonOptions& opts) {
    fs::path dir(opts.outDir);
    fs::create_directories(dir);
    return dir;
}

void addCommonFlags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.configPath, "Path to the JSON config file")->required();
    cmd->add_option("--out", opts.outDir, "Output directory (created if absent)");
    cmd->add_option("--grid", opts.grid, "Belief grid size override");
    cmd->add_option("--mu0", opts.mu0, "Prior belief override");
    cmd->add_option("--horizon", opts.horizon, "Periods per episode override");
    cmd->add_option("--episodes", opts.episodes, "Episode count override");
}

int runSolve(const CommonOptions& opts, const std::string& mode) {
    const promo::RunConfig config = resolveConfig(opts);
    const fs::path dir = ensureOutDir(opts);
    Manifest manifest{"solve"};
    manifest.details["mode"] = mode;

    const promo::UniformDemand demand(config.market);
    const promo::PolicyCurve curve = promo::solvePolicyCurve(
        config.market, demand, promo::policyModeFromString(mode), config.grid);
    const fs::path csv = dir / ("policy_" + mode + ".csv");
    promo::writePolicyCurveCsv(csv.string(), curve);
    manifest.outputs.push_back(csv.string());
    manifest.write(dir, config);
    std::cout << "wrote " << csv.string() << " (" << curve.size() << " rows)\n";
    return kExitOk;
}

int runMetrics(const CommonOptions& opts) {
    const promo::RunConfig config = resolveConfig(opts);
    const fs::path dir = ensureOutDir(opts);
    Manifest manifest{"metrics"};

    const promo::UniformDemand demand(config.market);
    const promo::SurplusCurves curves =
        promo::buildSurplusCurves(config.market, demand, config.grid);
    const fs::path csv = dir / "metrics.csv";
    promo::writeMetricsCsv(csv.string(), curves);
    manifest.outputs.push_back(csv.string());
    manifest.write(dir, config);
    std::cout << "wrote " << csv.string() << " (" << curves.size() << " rows)\n";
    return kExitOk;
}

int runSignal(const CommonOptions& opts) {
    const promo::RunConfig config = resolveConfig(opts);
    const fs::path dir = ensureOutDir(opts);
    const double mu0 = config.mu0OrPrior();
    Manifest manifest{"signal"};
    manifest.details["mu0"] = mu0;

    const promo::UniformDemand demand(config.market);
    const promo::SurplusCurves curves =
        promo::buildSurplusCurves(config.market, demand, config.grid);
    const promo::Signal signal =
        promo::optimalSignal({curves.muGrid, curves.wC}, {curves.muGrid, curves.coWC}, mu0);

    json j = promo::signalToJson(signal);
    j["mu0"] = mu0;
    j["coWCAtMu0"] = curves.coWCAt(mu0);
    const fs::path out = dir / "signal.json";
    std::ofstream stream(out);
    stream << j.dump(2) << '\n';
    manifest.outputs.push_back(out.string());
    manifest.write(dir, config);
    std::cout << "wrote " << out.string() << '\n';
    return kExitOk;
}

promo::Signal makeSignal(const std::string& signalMode, const promo::RunConfig& config,
                         const promo::UniformDemand& demand, double mu0) {
    if (signalMode == "truthful") return promo::truthfulSignal();
    if (signalMode == "uninformative") return promo::uninformativeSignal(mu0);
    if (signalMode == "optimal") {
        const promo::SurplusCurves curves =
            promo::buildSurplusCurves(config.market, demand, config.grid);
        return promo::optimalSignal({curves.muGrid, curves.wC}, {curves.muGrid, curves.coWC}, mu0);
    }
    throw promo::ConfigError("unknown signal mode: " + signalMode);
}

int runSimulate(const CommonOptions& opts, const std::string& mode, const std::string& signalMode,
                std::optional<std::uint64_t> seed, long traceEpisodes) {
    if (!seed) throw promo::ConfigError("simulate requires --seed for reproducible runs");
    const promo::RunConfig config = resolveConfig(opts);
    const fs::path dir = ensureOutDir(opts);
    const double mu0 = config.mu0OrPrior();

    Manifest manifest{"simulate"};
    manifest.details["mode"] = mode;
    manifest.details["signal"] = signalMode;
    manifest.details["seed"] = *seed;
    manifest.details["mu0"] = mu0;
    manifest.details["horizon"] = config.horizon;
    manifest.details["episodes"] = config.episodes;

    if (mode != "myopic" && mode != "confounding")
        throw promo::ConfigError("simulate supports --mode myopic|confounding");
    const promo::UniformDemand demand(config.market);

    promo::EpisodeConfig episodeConfig;
    episodeConfig.params = config.market;
    episodeConfig.params.prior = mu0;
    episodeConfig.policyCurve = promo::solvePolicyCurve(
        config.market, demand, promo::policyModeFromString(mode), config.grid);
    episodeConfig.signal = makeSignal(signalMode, config, demand, mu0);
    episodeConfig.horizon = config.horizon;
    episodeConfig.rngSeed = *seed;

    const promo::BatchResult batch = promo::runBatch(episodeConfig, config.episodes);
    const promo::BatchSummaryRow row{mode,          signalMode,
                                     mu0,           config.horizon,
                                     config.episodes, batch.meanPerPeriodSurplus,
                                     batch.stderrOfMeanSurplus};
    const fs::path csv = dir / "batch.csv";
    promo::writeBatchSummaryCsv(csv.string(), {&row, 1});
    manifest.outputs.push_back(csv.string());

    if (traceEpisodes > 0) {
        std::vector<promo::EpisodeTrace> traces;
        traces.reserve(static_cast<std::size_t>(traceEpisodes));
        for (long i = 0; i < traceEpisodes; ++i) {
            promo::EpisodeConfig one = episodeConfig;
            one.rngSeed = promo::splitmix64At(*seed, static_cast<std::uint64_t>(i));
            traces.push_back(promo::runEpisode(one));
        }
        const fs::path jsonl = dir / "traces.jsonl";
        promo::writeTraceJsonl(jsonl.string(), traces);
        manifest.outputs.push_back(jsonl.string());
    }

    manifest.write(dir, config);
    std::cout << "meanSurplus=" << promo::formatDouble(batch.meanPerPeriodSurplus)
              << " stderr=" << promo::formatDouble(batch.stderrOfMeanSurplus) << '\n';
    return kExitOk;
}

int runConvergence(const CommonOptions& opts, std::optional<std::uint64_t> seed) {
    if (!seed) throw promo::ConfigError("convergence requires --seed for reproducible runs");
    const promo::RunConfig config = resolveConfig(opts);
    const fs::path dir = ensureOutDir(opts);
    const double mu0 = config.mu0OrPrior();

    Manifest manifest{"convergence"};
    manifest.details["seed"] = *seed;
    manifest.details["mu0"] = mu0;
    manifest.details["horizon"] = config.horizon;
    manifest.details["episodes"] = config.episodes;

    const promo::UniformDemand demand(config.market);
    promo::EpisodeConfig episodeConfig;
    episodeConfig.params = config.market;
    episodeConfig.params.prior = mu0;
    episodeConfig.policyCurve =
        promo::solvePolicyCurve(config.market, demand, promo::PolicyMode::myopic, config.grid);
    episodeConfig.signal = promo::uninformativeSignal(mu0);
    episodeConfig.horizon = config.horizon;
    episodeConfig.rngSeed = *seed;

    const promo::BatchResult batch = promo::runBatch(episodeConfig, config.episodes);
    const promo::ConvergenceFit fit = promo::fitConvergenceRate(batch.beliefPathLow);

    const fs::path pathCsv = dir / "beliefpath.csv";
    promo::writeBeliefPathCsv(pathCsv.string(), batch.beliefPathLow);
    manifest.outputs.push_back(pathCsv.string());

    const fs::path fitJson = dir / "convergence.json";
    std::ofstream stream(fitJson);
    stream << json({{"rate", fit.rate}, {"rSquared", fit.rSquared}}).dump(2) << '\n';
    manifest.outputs.push_back(fitJson.string());

    manifest.write(dir, config);
    std::cout << "rate=" << promo::formatDouble(fit.rate)
              << " rSquared=" << promo::formatDouble(fit.rSquared) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Promotion-policy and information-disclosure design toolkit"};
    app.require_subcommand(1);

    CommonOptions solveOpts, metricsOpts, signalOpts, simulateOpts, convergenceOpts;
    std::string solveMode = "confounding";
    std::string simulateMode = "confounding";
    std::string simulateSignal = "optimal";
    std::optional<std::uint64_t> simulateSeed, convergenceSeed;
    long traceEpisodes = 0;

    CLI::App* solve = app.add_subcommand("solve", "Solve a per-belief policy curve");
    addCommonFlags(solve, solveOpts);
    solve->add_option("--mode", solveMode, "myopic|confounding|observable");

    CLI::App* metrics = app.add_subcommand("metrics", "Surplus curves and RG/CCS metrics");
    addCommonFlags(metrics, metricsOpts);

    CLI::App* signal = app.add_subcommand("signal", "Optimal binary signal at mu0");
    addCommonFlags(signal, signalOpts);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo batch of the dynamic game");
    addCommonFlags(simulate, simulateOpts);
    simulate->add_option("--mode", simulateMode, "Policy curve: myopic|confounding");
    simulate->add_option("--signal", simulateSignal, "optimal|truthful|uninformative");
    simulate->add_option("--seed", simulateSeed, "Base RNG seed (required)");
    simulate->add_option("--traces", traceEpisodes, "Also dump the first N episode traces");

    CLI::App* convergence =
        app.add_subcommand("convergence", "Belief-convergence diagnostic under learning");
    addCommonFlags(convergence, convergenceOpts);
    convergence->add_option("--seed", convergenceSeed, "Base RNG seed (required)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (solve->parsed()) return runSolve(solveOpts, solveMode);
        if (metrics->parsed()) return runMetrics(metricsOpts);
        if (signal->parsed()) return runSignal(signalOpts);
        if (simulate->parsed())
            return runSimulate(simulateOpts, simulateMode, simulateSignal, simulateSeed,
                               traceEpisodes);
        if (convergence->parsed()) return runConvergence(convergenceOpts, convergenceSeed);
    } catch (const promo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const promo::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const promo::Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}
