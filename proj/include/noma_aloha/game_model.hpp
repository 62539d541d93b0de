#pragma once

// Strategic-form NOMA-ALOHA game: K users share one slot, each picks a high
// power level (H), a low power level (L) or stays silent (0). A packet sent at
// a power level is decoded iff no other user picked the same level.

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace noma {

/// Raised for arguments that violate an operation's precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation does not support the requested number of players.
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Strategy { High = 0, Low = 1, Idle = 2 };

inline constexpr std::array<Strategy, 3> kAllStrategies = {
    Strategy::High, Strategy::Low, Strategy::Idle};

inline constexpr std::size_t index_of(Strategy s) {
  return static_cast<std::size_t>(s);
}

/// "H", "L" or "0".
std::string_view to_string(Strategy s);
/// Inverse of to_string; throws ArgumentError on anything else.
Strategy parse_strategy(std::string_view text);

/// One game instance. Immutable once constructed.
class GameConfig {
 public:
  static constexpr double kDefaultCostHigh = 2.0;
  static constexpr double kDefaultCostLow = 1.0;

  /// Requires players >= 2, reward >= 0 and cost_high > cost_low > 0.
  GameConfig(int players, double reward, double cost_high = kDefaultCostHigh,
             double cost_low = kDefaultCostLow);

  int players() const { return players_; }
  double reward() const { return reward_; }
  double cost_high() const { return cost_high_; }
  double cost_low() const { return cost_low_; }
  double cost(Strategy s) const;

  GameConfig with_reward(double reward) const;
  GameConfig with_players(int players) const;

  bool operator==(const GameConfig&) const = default;

 private:
  int players_;
  double reward_;
  double cost_high_;
  double cost_low_;
};

/// Probabilities (a, b, 1 - a - b) of playing (H, L, 0).
class MixedStrategy {
 public:
  /// Slack absorbed by clamping; anything further outside the simplex throws.
  static constexpr double kTolerance = 1e-12;

  MixedStrategy() = default;
  MixedStrategy(double high, double low);

  static MixedStrategy pure(Strategy s);

  double high() const { return high_; }
  double low() const { return low_; }
  double idle() const { return 1.0 - high_ - low_; }
  double probability(Strategy s) const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  double high_ = 0.0;
  double low_ = 0.0;
};

struct PayoffPair {
  double row = 0.0;
  double column = 0.0;
  bool operator==(const PayoffPair&) const = default;
};

/// Two-player payoff table indexed by (row strategy, column strategy).
class Bimatrix {
 public:
  explicit Bimatrix(std::array<std::array<PayoffPair, 3>, 3> entries)
      : entries_(entries) {}

  const PayoffPair& at(Strategy row, Strategy column) const {
    return entries_[index_of(row)][index_of(column)];
  }

 private:
  std::array<std::array<PayoffPair, 3>, 3> entries_;
};

/// W if `own` transmits at a level nobody in `others` uses, else 0.
/// `others` must hold exactly K - 1 actions.
double reward(Strategy own, std::span<const Strategy> others,
              const GameConfig& config);

/// reward(...) - C(own).
double payoff(Strategy own, std::span<const Strategy> others,
              const GameConfig& config);

/// Throws UnsupportedDimension unless config.players() == 2.
Bimatrix bimatrix(const GameConfig& config);

/// Exact expected payoff of `own` when each of the K - 1 opponents
/// independently plays `others`:
///   U(H) = W (1 - a)^(K-1) - c_H,  U(L) = W (1 - b)^(K-1) - c_L,  U(0) = 0.
double expected_payoff(Strategy own, const MixedStrategy& others,
                       const GameConfig& config);
double expected_payoff(const MixedStrategy& own, const MixedStrategy& others,
                       const GameConfig& config);

/// Mean number of decoded packets per slot when all K users play `profile`.
double expected_throughput(const MixedStrategy& profile,
                           const GameConfig& config);

}  // namespace noma
