#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "noma_aloha/equilibrium.hpp"
#include "noma_aloha/report.hpp"
#include "noma_aloha/simulation.hpp"
#include "noma_aloha/social_optimum.hpp"

namespace py = pybind11;
using namespace noma;

namespace {

void bind_game_model(py::module_& m) {
  py::enum_<Strategy>(m, "Strategy")
      .value("H", Strategy::High)
      .value("L", Strategy::Low)
      .value("IDLE", Strategy::Idle);

  py::class_<GameConfig>(m, "GameConfig")
      .def(py::init<int, double, double, double>(), py::arg("K"), py::arg("W"),
           py::arg("cost_h") = GameConfig::kDefaultCostHigh,
           py::arg("cost_l") = GameConfig::kDefaultCostLow)
      .def_property_readonly("K", &GameConfig::players)
      .def_property_readonly("W", &GameConfig::reward)
      .def_property_readonly("cost_h", &GameConfig::cost_high)
      .def_property_readonly("cost_l", &GameConfig::cost_low)
      .def("__repr__", [](const GameConfig& c) {
        return "GameConfig(K=" + std::to_string(c.players()) +
               ", W=" + format_number(c.reward()) + ")";
      });

  py::class_<MixedStrategy>(m, "MixedStrategy")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_property_readonly("a", &MixedStrategy::high)
      .def_property_readonly("b", &MixedStrategy::low)
      .def_property_readonly("p0", &MixedStrategy::idle)
      .def(py::self == py::self)
      .def("__repr__", [](const MixedStrategy& s) {
        return "MixedStrategy(a=" + format_number(s.high()) +
               ", b=" + format_number(s.low()) + ")";
      });

  m.def("reward", [](Strategy own, const std::vector<Strategy>& others,
                     const GameConfig& c) { return reward(own, others, c); });
  m.def("payoff", [](Strategy own, const std::vector<Strategy>& others,
                     const GameConfig& c) { return payoff(own, others, c); });
  m.def("expected_payoff",
        py::overload_cast<Strategy, const MixedStrategy&, const GameConfig&>(
            &expected_payoff));
  m.def("expected_payoff",
        py::overload_cast<const MixedStrategy&, const MixedStrategy&,
                          const GameConfig&>(&expected_payoff));
  m.def("expected_throughput", &expected_throughput);
}

void bind_solvers(py::module_& m) {
  py::enum_<Regime>(m, "Regime")
      .value("NoTransmit", Regime::NoTransmit)
      .value("LowOnly", Regime::LowOnly)
      .value("Interior", Regime::Interior)
      .value("FullTransmit", Regime::FullTransmit);

  py::class_<StrategyPayoffs>(m, "StrategyPayoffs")
      .def_readonly("H", &StrategyPayoffs::high)
      .def_readonly("L", &StrategyPayoffs::low)
      .def_readonly("idle", &StrategyPayoffs::idle);

  py::class_<NESolution>(m, "NESolution")
      .def_readonly("strategy", &NESolution::strategy)
      .def_readonly("regime", &NESolution::regime)
      .def_readonly("payoffs", &NESolution::payoffs)
      .def_readonly("equilibrium_payoff", &NESolution::equilibrium_payoff)
      .def_readonly("residual", &NESolution::residual)
      .def("to_json", [](const NESolution& s) { return to_json(s).dump(); });

  py::class_<EpsilonNEReport>(m, "EpsilonNEReport")
      .def_readonly("payoffs", &EpsilonNEReport::payoffs)
      .def_readonly("support_payoff", &EpsilonNEReport::support_payoff)
      .def_readonly("support_spread", &EpsilonNEReport::support_spread)
      .def_readonly("max_unused_advantage", &EpsilonNEReport::max_unused_advantage)
      .def_readonly("passed", &EpsilonNEReport::pass);

  py::class_<SocialOptimum>(m, "SocialOptimum")
      .def_readonly("strategy", &SocialOptimum::strategy)
      .def_readonly("average_payoff", &SocialOptimum::average_payoff)
      .def_readonly("ne_payoff", &SocialOptimum::ne_payoff)
      .def_readonly("poa", &SocialOptimum::poa)
      .def_readonly("extension", &SocialOptimum::extension);

  m.def("pure_nash_equilibria", &pure_nash_equilibria);
  m.def("w_star", &w_star);
  m.def("mixed_ne", &mixed_ne);
  m.def("solve_full_transmit_root", &solve_full_transmit_root);
  m.def("verify_epsilon_ne", &verify_epsilon_ne, py::arg("strategy"),
        py::arg("config"), py::arg("epsilon") = 1e-9);
  m.def("average_payoff", &average_payoff);
  m.def("maximize_average_payoff", &maximize_average_payoff);
}

void bind_simulation(py::module_& m) {
  py::class_<SimReport>(m, "SimReport")
      .def_readonly("mean_throughput", &SimReport::mean_throughput)
      .def_readonly("throughput_ci95", &SimReport::throughput_ci95)
      .def_readonly("per_level_success", &SimReport::per_level_success)
      .def_readonly("collision_rate", &SimReport::collision_rate)
      .def_readonly("mean_payoff_per_user", &SimReport::mean_payoff_per_user)
      .def_readonly("mean_payoff", &SimReport::mean_payoff)
      .def_readonly("mean_payoff_ci95", &SimReport::mean_payoff_ci95)
      .def_readonly("seed_used", &SimReport::seed_used);

  m.def(
      "simulate",
      [](const GameConfig& game, const std::vector<MixedStrategy>& profiles,
         std::uint64_t slots, std::uint64_t seed, std::uint32_t replications,
         unsigned workers) {
        SimConfig config{game, profiles, slots, seed, replications, workers};
        py::gil_scoped_release release;
        return simulate(config);
      },
      py::arg("config"), py::arg("profiles"), py::arg("slots") = 100'000,
      py::arg("seed") = 0,
      py::arg("replications") = SimConfig::kDefaultReplications,
      py::arg("workers") = 0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "NOMA-ALOHA game: equilibria, social optimum and slotted-channel simulation.";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  bind_game_model(m);
  bind_solvers(m);
  bind_simulation(m);
}
