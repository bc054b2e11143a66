#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "promo/config.hpp"
#include "promo/game.hpp"
#include "promo/infodesign.hpp"
#include "promo/promotion.hpp"
#include "promo/seller.hpp"
#include "promo/version.hpp"

namespace py = pybind11;
using namespace promo;

namespace {

UniformDemand makeDemand(const MarketParams& params) { return UniformDemand(params); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Promotion-policy and information-disclosure design core";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<RegimeError>(m, "RegimeError");
    py::register_exception<NumericError>(m, "NumericError");

    py::enum_<Impatience>(m, "Impatience")
        .value("LOW", Impatience::low)
        .value("HIGH", Impatience::high);

    py::enum_<PolicyMode>(m, "PolicyMode")
        .value("MYOPIC", PolicyMode::myopic)
        .value("CONFOUNDING", PolicyMode::confounding)
        .value("OBSERVABLE", PolicyMode::observable);

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init([](double sellerQuality, double rivalQuality, double phiLow, double phiHigh,
                         double prior) {
                 MarketParams p{sellerQuality, rivalQuality, phiLow, phiHigh, prior};
                 p.validate();
                 return p;
             }),
             py::arg("sellerQuality") = 0.6, py::arg("rivalQuality") = 0.2,
             py::arg("phiLow") = 0.2, py::arg("phiHigh") = 0.8, py::arg("prior") = 0.5)
        .def_readonly("sellerQuality", &MarketParams::sellerQuality)
        .def_readonly("rivalQuality", &MarketParams::rivalQuality)
        .def_readonly("phiLow", &MarketParams::phiLow)
        .def_readonly("phiHigh", &MarketParams::phiHigh)
        .def_readonly("prior", &MarketParams::prior)
        .def("__repr__", [](const MarketParams& p) {
            return "MarketParams(sellerQuality=" + std::to_string(p.sellerQuality) +
                   ", rivalQuality=" + std::to_string(p.rivalQuality) +
                   ", phiLow=" + std::to_string(p.phiLow) +
                   ", phiHigh=" + std::to_string(p.phiHigh) +
                   ", prior=" + std::to_string(p.prior) + ")";
        });

    py::class_<PromotionPolicy>(m, "PromotionPolicy")
        .def(py::init<double, double, double>(), py::arg("promotedPrice"), py::arg("alphaLow"),
             py::arg("alphaHigh"))
        .def_readonly("promotedPrice", &PromotionPolicy::promotedPrice)
        .def_readonly("alphaLow", &PromotionPolicy::alphaLow)
        .def_readonly("alphaHigh", &PromotionPolicy::alphaHigh);

    py::class_<PolicyCurve>(m, "PolicyCurve")
        .def_readonly("muGrid", &PolicyCurve::muGrid)
        .def_readonly("policies", &PolicyCurve::policies)
        .def_readonly("surplus", &PolicyCurve::surplus)
        .def_readonly("sellerRevenue", &PolicyCurve::sellerRevenue);

    py::class_<Signal>(m, "Signal")
        .def_readonly("probLowGivenLow", &Signal::probLowGivenLow)
        .def_readonly("probHighGivenLow", &Signal::probHighGivenLow)
        .def_readonly("probLowGivenHigh", &Signal::probLowGivenHigh)
        .def_readonly("probHighGivenHigh", &Signal::probHighGivenHigh)
        .def_readonly("muPrime", &Signal::muPrime)
        .def_readonly("muDoublePrime", &Signal::muDoublePrime)
        .def("informative", &Signal::informative);

    py::class_<SurplusCurves>(m, "SurplusCurves")
        .def_readonly("muGrid", &SurplusCurves::muGrid)
        .def_readonly("wC", &SurplusCurves::wC)
        .def_readonly("coWC", &SurplusCurves::coWC)
        .def_readonly("wTruthful", &SurplusCurves::wTruthful)
        .def_readonly("wMax", &SurplusCurves::wMax)
        .def_readonly("relativeGain", &SurplusCurves::relativeGain)
        .def_readonly("capturedShare", &SurplusCurves::capturedShare)
        .def("coWCAt", &SurplusCurves::coWCAt, py::arg("mu"));

    py::class_<BatchResult>(m, "BatchResult")
        .def_readonly("episodes", &BatchResult::episodes)
        .def_readonly("meanPerPeriodSurplus", &BatchResult::meanPerPeriodSurplus)
        .def_readonly("stderrOfMeanSurplus", &BatchResult::stderrOfMeanSurplus)
        .def_readonly("meanPerPeriodRevenue", &BatchResult::meanPerPeriodRevenue)
        .def_readonly("meanFinalMuLow", &BatchResult::meanFinalMuLow)
        .def_readonly("meanFinalMuHigh", &BatchResult::meanFinalMuHigh)
        .def_readonly("beliefPathLow", &BatchResult::beliefPathLow);

    m.def("outside_option_price", [](const MarketParams& p) { return outsideOptionPrice(p); },
          py::arg("params"));
    m.def("phi_bar", [](const MarketParams& p, double mu) { return phiBar(p, mu); },
          py::arg("params"), py::arg("mu"));
    m.def("update_belief", &updateBelief, py::arg("mu"), py::arg("saleProbLow"),
          py::arg("saleProbHigh"), py::arg("sale"));

    m.def("rho0", [](const MarketParams& p, double price) { return makeDemand(p).rho0(price); });
    m.def("rho_c", [](const MarketParams& p, double price) { return makeDemand(p).rhoC(price); });
    m.def("w0", [](const MarketParams& p, double price) { return makeDemand(p).w0(price); });
    m.def("w_c", [](const MarketParams& p, double price) { return makeDemand(p).wC(price); });
    m.def("w_c_const", [](const MarketParams& p) { return makeDemand(p).wCConst(); });

    m.def(
        "myopic_promotion",
        [](const MarketParams& p, double mu) {
            const auto r = myopicPromotion(p, makeDemand(p), mu);
            return py::make_tuple(r.policy, r.surplus);
        },
        py::arg("params"), py::arg("mu"));
    m.def(
        "optimal_confounding",
        [](const MarketParams& p, double mu) {
            const auto r = optimalConfounding(p, makeDemand(p), mu);
            return py::make_tuple(r.policy, r.surplus);
        },
        py::arg("params"), py::arg("mu"));
    m.def(
        "baseline_confounding",
        [](const MarketParams& p) { return baselineConfounding(p, makeDemand(p)); },
        py::arg("params"));
    m.def(
        "sale_probability",
        [](const MarketParams& p, const PromotionPolicy& policy, Impatience state) {
            return saleProbability(p, makeDemand(p), policy, state);
        },
        py::arg("params"), py::arg("policy"), py::arg("state"));
    m.def(
        "solve_policy_curve",
        [](const MarketParams& p, PolicyMode mode, std::size_t grid) {
            return solvePolicyCurve(p, makeDemand(p), mode, grid);
        },
        py::arg("params"), py::arg("mode"), py::arg("grid") = 501);
    m.def(
        "build_surplus_curves",
        [](const MarketParams& p, std::size_t grid) {
            return buildSurplusCurves(p, makeDemand(p), grid);
        },
        py::arg("params"), py::arg("grid") = 501);
    m.def(
        "concavify",
        [](const std::vector<double>& mu, const std::vector<double>& values) {
            return concavify(ValueCurve{mu, values}).values;
        },
        py::arg("mu"), py::arg("values"));
    m.def(
        "optimal_signal",
        [](const std::vector<double>& mu, const std::vector<double>& values, double mu0) {
            return optimalSignal(ValueCurve{mu, values}, mu0);
        },
        py::arg("mu"), py::arg("values"), py::arg("mu0"));
    m.def("truthful_signal", &truthfulSignal);
    m.def("uninformative_signal", &uninformativeSignal, py::arg("mu0"));
    m.def(
        "run_batch",
        [](const MarketParams& params, const PolicyCurve& curve, const Signal& signal,
           long horizon, long episodes, std::uint64_t seed) {
            EpisodeConfig config{params, curve, signal, horizon, seed};
            return runBatch(config, episodes);
        },
        py::arg("params"), py::arg("curve"), py::arg("signal"), py::arg("horizon"),
        py::arg("episodes"), py::arg("seed"));
    m.def(
        "dp_best_response_value",
        [](const MarketParams& p, const PolicyCurve& curve, double mu0, int horizon,
           std::size_t beliefGrid) {
            const auto r = dpBestResponseValue(p, makeDemand(p), curve, mu0, horizon, beliefGrid);
            return py::make_tuple(r.dpValue, r.myopicValue);
        },
        py::arg("params"), py::arg("curve"), py::arg("mu0"), py::arg("horizon"),
        py::arg("beliefGrid") = 20001);
}
