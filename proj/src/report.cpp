#include "noma_aloha/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace noma {

Json to_json(const GameConfig& config) {
  return {{"K", config.players()},
          {"W", config.reward()},
          {"cost_h", config.cost_high()},
          {"cost_l", config.cost_low()}};
}

Json to_json(const MixedStrategy& strategy) {
  return {{"a", strategy.high()}, {"b", strategy.low()}, {"p0", strategy.idle()}};
}

Json to_json(const StrategyPayoffs& payoffs) {
  return {{"H", payoffs.high}, {"L", payoffs.low}, {"0", payoffs.idle}};
}

Json to_json(const NESolution& solution) {
  return {{"strategy", to_json(solution.strategy)},
          {"regime", std::string(to_string(solution.regime))},
          {"payoffs", to_json(solution.payoffs)},
          {"equilibrium_payoff", solution.equilibrium_payoff},
          {"residual", solution.residual}};
}

Json to_json(const SocialOptimum& optimum) {
  Json j{{"strategy", to_json(optimum.strategy)},
         {"average_payoff", optimum.average_payoff},
         {"ne_payoff", optimum.ne_payoff},
         {"poa", nullptr},
         {"extension", optimum.extension}};
  if (optimum.poa) j["poa"] = *optimum.poa;
  return j;
}

Json to_json(const EpsilonNEReport& report) {
  return {{"payoffs", to_json(report.payoffs)},
          {"support_payoff", report.support_payoff},
          {"support_spread", report.support_spread},
          {"max_unused_advantage", report.max_unused_advantage},
          {"pass", report.pass}};
}

Json to_json(const SimReport& report) {
  return {{"mean_throughput", report.mean_throughput},
          {"throughput_ci95", report.throughput_ci95},
          {"per_level_success", report.per_level_success},
          {"collision_rate", report.collision_rate},
          {"mean_payoff_per_user", report.mean_payoff_per_user},
          {"payoff_ci95_per_user", report.payoff_ci95_per_user},
          {"mean_payoff", report.mean_payoff},
          {"mean_payoff_ci95", report.mean_payoff_ci95},
          {"seed_used", report.seed_used},
          {"slots", report.slots},
          {"replications", report.replications}};
}

Json to_json(const PayoffCheck& check) {
  return {{"simulated", check.simulated},
          {"analytic", check.analytic},
          {"gap", check.gap},
          {"sigma", check.sigma},
          {"pass", check.pass}};
}

Json to_json(const PureNEList& equilibria) {
  Json list = Json::array();
  for (const PureProfile& profile : equilibria) {
    std::string text;
    for (Strategy s : profile) text += to_string(s);
    list.push_back(text);
  }
  return list;
}

GameConfig game_config_from_json(const Json& j) {
  return GameConfig(j.at("K").get<int>(), j.at("W").get<double>(),
                    j.value("cost_h", GameConfig::kDefaultCostHigh),
                    j.value("cost_l", GameConfig::kDefaultCostLow));
}

MixedStrategy mixed_strategy_from_json(const Json& j) {
  return {j.at("a").get<double>(), j.at("b").get<double>()};
}

NESolution ne_solution_from_json(const Json& j) {
  NESolution s;
  s.strategy = mixed_strategy_from_json(j.at("strategy"));
  s.regime = parse_regime(j.at("regime").get<std::string>());
  const Json& p = j.at("payoffs");
  s.payoffs = {p.at("H").get<double>(), p.at("L").get<double>(),
               p.at("0").get<double>()};
  s.equilibrium_payoff = j.at("equilibrium_payoff").get<double>();
  s.residual = j.at("residual").get<double>();
  return s;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns = {
      "W",      "K",       "a_ne",  "b_ne",       "p0_ne",
      "regime", "ne_payoff", "a_opt", "b_opt",    "opt_payoff",
      "poa",    "analytic_throughput_at_ne"};
  return columns;
}

std::vector<double> reward_grid(double start, double stop, double step) {
  std::vector<double> grid;
  const double span = (stop - start) / step;
  const auto count = static_cast<long>(std::floor(span + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(start + i * step);
  return grid;
}

void validate(const SweepSpec& spec) {
  if (spec.variable == SweepVariable::Reward) {
    if (!(spec.step > 0.0)) throw ArgumentError("sweep step must be positive");
    if (!(spec.stop >= spec.start)) throw ArgumentError("sweep range is empty");
    if (spec.start < 0.0) throw ArgumentError("W must be non-negative");
    if (spec.players < 2) throw ArgumentError("K must be at least 2");
  } else {
    if (spec.players_list.empty()) throw ArgumentError("no K values to sweep");
    for (int k : spec.players_list)
      if (k < 2) throw ArgumentError("K values must be at least 2");
  }
  for (const std::string& c : spec.columns) {
    const auto& all = sweep_columns();
    if (std::find(all.begin(), all.end(), c) == all.end())
      throw ArgumentError("unknown sweep column '" + c + "'");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<GameConfig> configs;
  if (spec.variable == SweepVariable::Reward) {
    for (double w : reward_grid(spec.start, spec.stop, spec.step))
      configs.emplace_back(spec.players, w, spec.cost_high, spec.cost_low);
  } else {
    for (int k : spec.players_list)
      configs.emplace_back(k, spec.reward, spec.cost_high, spec.cost_low);
  }

  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (const GameConfig& config : configs) {
    NESolution ne = mixed_ne(config);
    SocialOptimum opt = maximize_average_payoff(config);
    const double throughput = expected_throughput(ne.strategy, config);
    rows.push_back({config, std::move(ne), std::move(opt), throughput});
  }
  return rows;
}

namespace {

std::string cell(const SweepRow& row, const std::string& column) {
  if (column == "W") return format_number(row.config.reward());
  if (column == "K") return std::to_string(row.config.players());
  if (column == "a_ne") return format_number(row.ne.strategy.high());
  if (column == "b_ne") return format_number(row.ne.strategy.low());
  if (column == "p0_ne") return format_number(row.ne.strategy.idle());
  if (column == "regime") return std::string(to_string(row.ne.regime));
  if (column == "ne_payoff") return format_number(row.ne.equilibrium_payoff);
  if (column == "a_opt") return format_number(row.optimum.strategy.high());
  if (column == "b_opt") return format_number(row.optimum.strategy.low());
  if (column == "opt_payoff") return format_number(row.optimum.average_payoff);
  if (column == "poa")
    return row.optimum.poa ? format_number(*row.optimum.poa) : std::string();
  if (column == "analytic_throughput_at_ne")
    return format_number(row.ne_throughput);
  throw ArgumentError("unknown sweep column '" + column + "'");
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::vector<std::string>& columns) {
  // Selected columns always come out in the canonical order.
  std::vector<std::string> selected;
  for (const std::string& c : sweep_columns())
    if (columns.empty() ||
        std::find(columns.begin(), columns.end(), c) != columns.end())
      selected.push_back(c);
  for (const std::string& c : columns)
    if (std::find(selected.begin(), selected.end(), c) == selected.end())
      throw ArgumentError("unknown sweep column '" + c + "'");
  for (std::size_t i = 0; i < selected.size(); ++i)
    out << (i ? "," : "") << selected[i];
  out << '\n';
  for (const SweepRow& row : rows) {
    for (std::size_t i = 0; i < selected.size(); ++i)
      out << (i ? "," : "") << cell(row, selected[i]);
    out << '\n';
  }
}

}  // namespace noma
