#pragma once

// JSON and CSV renderings of the solver outputs, and the parameter sweeps
// behind the equilibrium / optimum curves.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "noma_aloha/equilibrium.hpp"
#include "noma_aloha/simulation.hpp"
#include "noma_aloha/social_optimum.hpp"

namespace noma {

using Json = nlohmann::json;

Json to_json(const GameConfig& config);
Json to_json(const MixedStrategy& strategy);
Json to_json(const StrategyPayoffs& payoffs);
Json to_json(const NESolution& solution);
Json to_json(const SocialOptimum& optimum);
Json to_json(const EpsilonNEReport& report);
Json to_json(const SimReport& report);
Json to_json(const PayoffCheck& check);
Json to_json(const PureNEList& equilibria);

GameConfig game_config_from_json(const Json& j);
MixedStrategy mixed_strategy_from_json(const Json& j);
/// Reads the NESolution fields and ignores any others.
NESolution ne_solution_from_json(const Json& j);

/// Shortest decimal that round-trips, always with '.' as separator.
std::string format_number(double value);

enum class SweepVariable { Reward, Players };

struct SweepSpec {
  SweepVariable variable = SweepVariable::Reward;
  /// Reward grid start, start + step, ... up to stop (inclusive).
  double start = 0.0;
  double stop = 10.0;
  double step = 0.1;
  /// Player counts when sweeping K.
  std::vector<int> players_list;
  /// Held fixed while the other variable moves.
  int players = 2;
  double reward = 10.0;
  double cost_high = GameConfig::kDefaultCostHigh;
  double cost_low = GameConfig::kDefaultCostLow;
  /// Subset of sweep_columns(); empty selects all of them.
  std::vector<std::string> columns;
};

struct SweepRow {
  GameConfig config;
  NESolution ne;
  SocialOptimum optimum;
  double ne_throughput = 0.0;
};

/// Column order of the sweep CSV.
const std::vector<std::string>& sweep_columns();

/// Points start + i * step for i = 0, 1, ... while <= stop (with a small
/// allowance for round-off at the end point).
std::vector<double> reward_grid(double start, double stop, double step);

/// Throws ArgumentError on an empty range, a non-positive step, K < 2 or an
/// unknown column.
void validate(const SweepSpec& spec);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Header plus one line per row; an undefined PoA is an empty cell.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::vector<std::string>& columns = {});

}  // namespace noma
