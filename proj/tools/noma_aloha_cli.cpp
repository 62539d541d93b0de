// noma-aloha: solve, optimize, verify, simulate and sweep the NOMA-ALOHA game.
//
// Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noma_aloha/equilibrium.hpp"
#include "noma_aloha/report.hpp"
#include "noma_aloha/simulation.hpp"
#include "noma_aloha/social_optimum.hpp"

namespace {

using noma::Json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr double kZ95 = 1.959963984540054;
// Pure-profile enumeration is reported by `solve` only up to this K.
constexpr int kSolveEnumerationMaxK = 10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double w = 5.0;
  int k = 2;
  double cost_h = noma::GameConfig::kDefaultCostHigh;
  double cost_l = noma::GameConfig::kDefaultCostLow;
  std::string format = "table";
  std::string out;

  std::string profile = "ne";
  double a = 0.0;
  double b = 0.0;
  double epsilon = 1e-9;

  double slots = 100'000;
  std::uint64_t seed = 1;
  std::uint32_t replications = noma::SimConfig::kDefaultReplications;
  unsigned workers = 0;

  std::string var = "W";
  double start = 0.0;
  double stop = 10.0;
  double step = 0.1;
  std::vector<int> ks;
  std::vector<std::string> columns;

  noma::GameConfig game() const { return {k, w, cost_h, cost_l}; }
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::ios_base::failure("cannot open '" + path + "' for writing");
      file_.imbue(std::locale::classic());
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::ios_base::failure("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
};

using noma::format_number;

void print_table(std::ostream& os,
                 const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  for (const auto& [key, value] : rows)
    os << std::left << std::setw(static_cast<int>(width) + 2) << key << value << '\n';
}

void print_csv(std::ostream& os,
               const std::vector<std::pair<std::string, std::string>>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i].first;
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i].second;
  os << '\n';
}

void emit(std::ostream& os, const std::string& format, const Json& json,
          const std::vector<std::pair<std::string, std::string>>& rows) {
  if (format == "json")
    os << json.dump(2) << '\n';
  else if (format == "csv")
    print_csv(os, rows);
  else
    print_table(os, rows);
}

std::string join_profiles(const noma::PureNEList& list) {
  std::string text;
  for (const auto& profile : list) {
    if (!text.empty()) text += ' ';
    text += '(';
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i) text += ',';
      text += noma::to_string(profile[i]);
    }
    text += ')';
  }
  return text.empty() ? "none" : text;
}

noma::MixedStrategy chosen_profile(const Options& opt, const noma::GameConfig& game) {
  if (opt.profile == "ne") return noma::mixed_ne(game).strategy;
  if (opt.profile == "opt") return noma::maximize_average_payoff(game).strategy;
  return {opt.a, opt.b};
}

void cmd_solve(const Options& opt) {
  const noma::GameConfig game = opt.game();
  const noma::NESolution ne = noma::mixed_ne(game);
  const double threshold = noma::w_star(game);

  Json j = noma::to_json(ne);
  j["w_star"] = threshold;
  j["config"] = noma::to_json(game);
  std::string pure_text = "not enumerated (K > " + std::to_string(kSolveEnumerationMaxK) + ")";
  j["pure_equilibria"] = nullptr;
  if (game.players() <= kSolveEnumerationMaxK) {
    const auto pure = noma::pure_nash_equilibria(game);
    j["pure_equilibria"] = noma::to_json(pure);
    pure_text = join_profiles(pure);
  }

  Sink sink(opt.out);
  emit(sink.stream(), opt.format, j,
       {{"W", format_number(game.reward())},
        {"K", std::to_string(game.players())},
        {"regime", std::string(noma::to_string(ne.regime))},
        {"a", format_number(ne.strategy.high())},
        {"b", format_number(ne.strategy.low())},
        {"p0", format_number(ne.strategy.idle())},
        {"U_H", format_number(ne.payoffs.high)},
        {"U_L", format_number(ne.payoffs.low)},
        {"U_0", format_number(ne.payoffs.idle)},
        {"equilibrium_payoff", format_number(ne.equilibrium_payoff)},
        {"residual", format_number(ne.residual)},
        {"w_star", format_number(threshold)},
        {"pure_equilibria", pure_text}});
  sink.close();
}

void cmd_optimize(const Options& opt) {
  const noma::GameConfig game = opt.game();
  const noma::SocialOptimum so = noma::maximize_average_payoff(game);
  Json j = noma::to_json(so);
  j["config"] = noma::to_json(game);
  Sink sink(opt.out);
  emit(sink.stream(), opt.format, j,
       {{"W", format_number(game.reward())},
        {"K", std::to_string(game.players())},
        {"a_opt", format_number(so.strategy.high())},
        {"b_opt", format_number(so.strategy.low())},
        {"p0_opt", format_number(so.strategy.idle())},
        {"average_payoff", format_number(so.average_payoff)},
        {"ne_payoff", format_number(so.ne_payoff)},
        {"poa", so.poa ? format_number(*so.poa) : std::string()},
        {"extension", so.extension ? "true" : "false"}});
  sink.close();
}

void cmd_verify(const Options& opt) {
  const noma::GameConfig game = opt.game();
  const noma::MixedStrategy strategy = chosen_profile(opt, game);
  const noma::EpsilonNEReport r = noma::verify_epsilon_ne(strategy, game, opt.epsilon);
  Json j = noma::to_json(r);
  j["strategy"] = noma::to_json(strategy);
  j["epsilon"] = opt.epsilon;
  j["config"] = noma::to_json(game);
  Sink sink(opt.out);
  emit(sink.stream(), opt.format, j,
       {{"W", format_number(game.reward())},
        {"K", std::to_string(game.players())},
        {"a", format_number(strategy.high())},
        {"b", format_number(strategy.low())},
        {"U_H", format_number(r.payoffs.high)},
        {"U_L", format_number(r.payoffs.low)},
        {"U_0", format_number(r.payoffs.idle)},
        {"support_spread", format_number(r.support_spread)},
        {"max_unused_advantage", format_number(r.max_unused_advantage)},
        {"epsilon", format_number(opt.epsilon)},
        {"pass", r.pass ? "true" : "false"}});
  sink.close();
}

void cmd_simulate(const Options& opt) {
  if (!(opt.slots >= 1.0) || opt.slots != std::floor(opt.slots) || opt.slots > 1e15)
    throw UsageError("--slots must be a positive integer");
  const noma::GameConfig game = opt.game();
  const noma::MixedStrategy strategy = chosen_profile(opt, game);
  noma::SimConfig sim{game, {strategy}, static_cast<std::uint64_t>(opt.slots), opt.seed,
                      opt.replications, opt.workers};
  const noma::SimReport report = noma::simulate(sim);

  const double analytic_throughput = noma::expected_throughput(strategy, game);
  const double analytic_payoff = noma::expected_payoff(strategy, strategy, game);
  const double throughput_sigma = report.throughput_ci95 / kZ95;
  const double payoff_sigma = report.mean_payoff_ci95 / kZ95;
  const bool throughput_ok =
      std::abs(report.mean_throughput - analytic_throughput) <= 3.0 * throughput_sigma + 1e-12;
  const bool payoff_ok =
      std::abs(report.mean_payoff - analytic_payoff) <= 3.0 * payoff_sigma + 1e-12;

  Json j = noma::to_json(report);
  j["strategy"] = noma::to_json(strategy);
  j["config"] = noma::to_json(game);
  j["analytic"] = {{"throughput", analytic_throughput},
                   {"payoff", analytic_payoff},
                   {"throughput_pass", throughput_ok},
                   {"payoff_pass", payoff_ok}};
  Sink sink(opt.out);
  emit(sink.stream(), opt.format, j,
       {{"W", format_number(game.reward())},
        {"K", std::to_string(game.players())},
        {"a", format_number(strategy.high())},
        {"b", format_number(strategy.low())},
        {"slots", std::to_string(report.slots)},
        {"replications", std::to_string(report.replications)},
        {"seed", std::to_string(report.seed_used)},
        {"throughput", format_number(report.mean_throughput)},
        {"throughput_ci95", format_number(report.throughput_ci95)},
        {"analytic_throughput", format_number(analytic_throughput)},
        {"throughput_pass", throughput_ok ? "true" : "false"},
        {"success_H", format_number(report.per_level_success[0])},
        {"success_L", format_number(report.per_level_success[1])},
        {"collision_rate", format_number(report.collision_rate)},
        {"payoff", format_number(report.mean_payoff)},
        {"payoff_ci95", format_number(report.mean_payoff_ci95)},
        {"analytic_payoff", format_number(analytic_payoff)},
        {"payoff_pass", payoff_ok ? "true" : "false"}});
  sink.close();
}

void cmd_sweep(const Options& opt, bool k_given) {
  noma::SweepSpec spec;
  spec.cost_high = opt.cost_h;
  spec.cost_low = opt.cost_l;
  spec.columns = opt.columns;
  if (opt.var == "W") {
    spec.variable = noma::SweepVariable::Reward;
    spec.start = opt.start;
    spec.stop = opt.stop;
    spec.step = opt.step;
    spec.players = opt.k;
  } else {
    spec.variable = noma::SweepVariable::Players;
    spec.reward = opt.w;
    spec.players_list = opt.ks;
    if (spec.players_list.empty()) {
      if (k_given) {
        spec.players_list = {opt.k};
      } else {
        for (int k = 2; k <= 20; ++k) spec.players_list.push_back(k);
      }
    }
  }
  const auto rows = noma::run_sweep(spec);

  Sink sink(opt.out);
  if (opt.format == "json") {
    Json list = Json::array();
    for (const auto& row : rows) {
      Json r{{"config", noma::to_json(row.config)},
             {"ne", noma::to_json(row.ne)},
             {"optimum", noma::to_json(row.optimum)},
             {"analytic_throughput_at_ne", row.ne_throughput}};
      list.push_back(r);
    }
    sink.stream() << list.dump(2) << '\n';
  } else {
    noma::write_sweep_csv(sink.stream(), rows, spec.columns);
  }
  sink.close();
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.imbue(std::locale::classic());
  Options opt;

  CLI::App app{"Equilibria, social optimum and Monte Carlo checks for the NOMA-ALOHA game",
               "noma-aloha"};
  app.set_config("--config", "", "Flat key=value file mirroring the flags (flags win)");
  app.require_subcommand(1);

  app.add_option("--w", opt.w, "Reward W of a successful transmission")->capture_default_str();
  app.add_option("--k", opt.k, "Number of users K")->capture_default_str();
  app.add_option("--cost-h", opt.cost_h, "Cost of high-power transmission")->capture_default_str();
  app.add_option("--cost-l", opt.cost_l, "Cost of low-power transmission")->capture_default_str();
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "Write output to PATH instead of stdout");
  app.add_option("--profile", opt.profile, "Strategy source for verify/simulate")
      ->check(CLI::IsMember({"ne", "opt", "explicit"}))
      ->capture_default_str();
  app.add_option("--a", opt.a, "Explicit probability of H");
  app.add_option("--b", opt.b, "Explicit probability of L");
  app.add_option("--epsilon", opt.epsilon, "Tolerance for verify")->capture_default_str();
  app.add_option("--slots", opt.slots, "Slots per replication (1e6 accepted)")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Root RNG seed")->capture_default_str();
  app.add_option("--replications", opt.replications, "Independent replications")
      ->capture_default_str();
  app.add_option("--workers", opt.workers, "Simulation threads (0 = all cores)");
  app.add_option("--var", opt.var, "Sweep variable")
      ->check(CLI::IsMember({"W", "K"}))
      ->capture_default_str();
  app.add_option("--start", opt.start, "Sweep start (W)")->capture_default_str();
  app.add_option("--stop", opt.stop, "Sweep stop, inclusive (W)")->capture_default_str();
  app.add_option("--step", opt.step, "Sweep step (W)")->capture_default_str();
  app.add_option("--ks", opt.ks, "Explicit K values for a K sweep")->delimiter(',');
  app.add_option("--columns", opt.columns, "Subset of sweep columns")->delimiter(',');

  auto* solve = app.add_subcommand("solve", "Mixed and pure Nash equilibria");
  auto* optimize = app.add_subcommand("optimize", "Average-payoff maximiser and PoA");
  auto* verify = app.add_subcommand("verify", "Epsilon-Nash check of a strategy");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo slotted-channel run");
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over W or K");
  for (auto* sub : {solve, optimize, verify, simulate, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) cmd_solve(opt);
    if (*optimize) cmd_optimize(opt);
    if (*verify) cmd_verify(opt);
    if (*simulate) cmd_simulate(opt);
    if (*sweep) cmd_sweep(opt, app.count("--k") > 0);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // ArgumentError, UnsupportedDimension and EnumerationLimit all derive from
    // invalid_argument and stem from flag values.
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
