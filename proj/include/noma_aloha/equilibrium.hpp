#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "noma_aloha/game_model.hpp"

namespace noma {

/// Raised when pure-strategy enumeration would exceed kMaxEnumeratedProfiles.
class EnumerationLimit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a regime-specific solver is called outside its reward range.
class OutOfRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Reward ranges of the symmetric equilibrium, half-open [lo, hi):
//   NoTransmit   W < c_L
//   LowOnly      c_L <= W < c_H
//   Interior     c_H <= W < W*
//   FullTransmit W >= W*
enum class Regime { NoTransmit, LowOnly, Interior, FullTransmit };

std::string_view to_string(Regime r);
Regime parse_regime(std::string_view text);

struct StrategyPayoffs {
  double high = 0.0;
  double low = 0.0;
  double idle = 0.0;

  double of(Strategy s) const;
  bool operator==(const StrategyPayoffs&) const = default;
};

struct NESolution {
  MixedStrategy strategy;
  Regime regime = Regime::NoTransmit;
  /// Expected payoff of each pure action against K - 1 copies of `strategy`.
  StrategyPayoffs payoffs;
  double equilibrium_payoff = 0.0;
  /// Largest payoff gap between two actions in the support.
  double residual = 0.0;

  bool operator==(const NESolution&) const = default;
};

using PureProfile = std::vector<Strategy>;
using PureNEList = std::vector<PureProfile>;

inline constexpr long kMaxEnumeratedProfiles = 1'000'000;

/// Every pure profile where no player gains by a unilateral deviation (ties
/// count as equilibria). Profiles are listed in lexicographic order with
/// H < L < 0. Throws EnumerationLimit when 3^K exceeds 10^6 (K > 12).
PureNEList pure_nash_equilibria(const GameConfig& config);

/// True iff `profile` survives every unilateral deviation.
bool is_pure_nash_equilibrium(std::span<const Strategy> profile,
                              const GameConfig& config);

/// Reward above which the symmetric equilibrium never idles:
/// W* = (c_H^(1/(K-1)) + c_L^(1/(K-1)))^(K-1).
double w_star(const GameConfig& config);

Regime classify_regime(const GameConfig& config);

/// Symmetric mixed Nash equilibrium; total over the whole reward domain.
NESolution mixed_ne(const GameConfig& config);

/// Evaluates the closed form (or root) of a single regime at config.reward(),
/// regardless of whether the reward actually lies in that regime. Used to
/// check continuity across regime boundaries.
MixedStrategy regime_branch(const GameConfig& config, Regime regime);

/// The b in [1/2, 1] with W b^(K-1) - W (1 - b)^(K-1) = c_H - c_L, found by
/// bisection (bracket width 1e-12 or 200 halvings). Throws OutOfRegime when
/// W < W*.
double solve_full_transmit_root(const GameConfig& config);

struct EpsilonNEReport {
  StrategyPayoffs payoffs;
  /// Payoff of the support actions (their mean).
  double support_payoff = 0.0;
  /// max - min payoff over actions played with positive probability.
  double support_spread = 0.0;
  /// Largest amount by which an unused action beats the support payoff
  /// (negative when every unused action is strictly worse).
  double max_unused_advantage = 0.0;
  bool pass = false;
};

/// Checks whether K - 1 opponents playing `strategy` leave no action with an
/// incentive above epsilon. Requires epsilon > 0.
EpsilonNEReport verify_epsilon_ne(const MixedStrategy& strategy,
                                  const GameConfig& config, double epsilon);

}  // namespace noma
