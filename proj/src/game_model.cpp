#include "noma_aloha/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace noma {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::High:
      return "H";
    case Strategy::Low:
      return "L";
    case Strategy::Idle:
      return "0";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "H") return Strategy::High;
  if (text == "L") return Strategy::Low;
  if (text == "0") return Strategy::Idle;
  throw ArgumentError("unknown strategy '" + std::string(text) + "'");
}

GameConfig::GameConfig(int players, double reward, double cost_high,
                       double cost_low)
    : players_(players),
      reward_(reward),
      cost_high_(cost_high),
      cost_low_(cost_low) {
  if (players < 2) throw ArgumentError("K must be at least 2");
  if (!(reward >= 0.0) || !std::isfinite(reward))
    throw ArgumentError("W must be finite and non-negative");
  if (!(cost_low > 0.0) || !(cost_high > cost_low) || !std::isfinite(cost_high))
    throw ArgumentError("costs must satisfy c_H > c_L > 0");
}

double GameConfig::cost(Strategy s) const {
  switch (s) {
    case Strategy::High:
      return cost_high_;
    case Strategy::Low:
      return cost_low_;
    case Strategy::Idle:
      return 0.0;
  }
  return 0.0;
}

GameConfig GameConfig::with_reward(double reward) const {
  return GameConfig(players_, reward, cost_high_, cost_low_);
}

GameConfig GameConfig::with_players(int players) const {
  return GameConfig(players, reward_, cost_high_, cost_low_);
}

MixedStrategy::MixedStrategy(double high, double low) {
  if (!std::isfinite(high) || !std::isfinite(low))
    throw ArgumentError("mixed strategy probabilities must be finite");
  if (high < -kTolerance || low < -kTolerance || high + low > 1.0 + kTolerance)
    throw ArgumentError("mixed strategy outside the probability simplex");
  high_ = std::clamp(high, 0.0, 1.0);
  low_ = std::clamp(low, 0.0, 1.0 - high_);
}

MixedStrategy MixedStrategy::pure(Strategy s) {
  switch (s) {
    case Strategy::High:
      return {1.0, 0.0};
    case Strategy::Low:
      return {0.0, 1.0};
    case Strategy::Idle:
      break;
  }
  return {0.0, 0.0};
}

double MixedStrategy::probability(Strategy s) const {
  switch (s) {
    case Strategy::High:
      return high_;
    case Strategy::Low:
      return low_;
    case Strategy::Idle:
      return idle();
  }
  return 0.0;
}

double reward(Strategy own, std::span<const Strategy> others,
              const GameConfig& config) {
  if (others.size() != static_cast<std::size_t>(config.players() - 1))
    throw ArgumentError("expected " + std::to_string(config.players() - 1) +
                        " opponent actions, got " +
                        std::to_string(others.size()));
  if (own == Strategy::Idle) return 0.0;
  const bool shared = std::find(others.begin(), others.end(), own) != others.end();
  return shared ? 0.0 : config.reward();
}

double payoff(Strategy own, std::span<const Strategy> others,
              const GameConfig& config) {
  return reward(own, others, config) - config.cost(own);
}

Bimatrix bimatrix(const GameConfig& config) {
  if (config.players() != 2)
    throw UnsupportedDimension("bimatrix is only defined for K = 2, got K = " +
                               std::to_string(config.players()));
  std::array<std::array<PayoffPair, 3>, 3> entries{};
  for (Strategy row : kAllStrategies) {
    for (Strategy column : kAllStrategies) {
      const std::array<Strategy, 1> col_view{column};
      const std::array<Strategy, 1> row_view{row};
      entries[index_of(row)][index_of(column)] = {
          payoff(row, col_view, config), payoff(column, row_view, config)};
    }
  }
  return Bimatrix(entries);
}

namespace {

// Probability that none of the K - 1 opponents uses the level `own` occupies.
double level_free_probability(Strategy own, const MixedStrategy& others,
                              int opponents) {
  return std::pow(1.0 - others.probability(own), opponents);
}

}  // namespace

double expected_payoff(Strategy own, const MixedStrategy& others,
                       const GameConfig& config) {
  if (own == Strategy::Idle) return 0.0;
  const double free =
      level_free_probability(own, others, config.players() - 1);
  return config.reward() * free - config.cost(own);
}

double expected_payoff(const MixedStrategy& own, const MixedStrategy& others,
                       const GameConfig& config) {
  return own.high() * expected_payoff(Strategy::High, others, config) +
         own.low() * expected_payoff(Strategy::Low, others, config);
}

double expected_throughput(const MixedStrategy& profile,
                           const GameConfig& config) {
  const int k = config.players();
  return k * (profile.high() * std::pow(1.0 - profile.high(), k - 1) +
              profile.low() * std::pow(1.0 - profile.low(), k - 1));
}

}  // namespace noma
