#pragma once

#include <array>
#include <optional>

#include "noma_aloha/game_model.hpp"

namespace noma {

struct SocialOptimum {
  MixedStrategy strategy;
  double average_payoff = 0.0;
  /// Per-user payoff at the symmetric mixed equilibrium.
  double ne_payoff = 0.0;
  /// ne_payoff / average_payoff; empty when average_payoff <= 0.
  std::optional<double> poa;
  /// K > 2: the symmetric-profile generalisation of the two-user objective.
  bool extension = false;

  bool operator==(const SocialOptimum&) const = default;
};

/// Per-user expected payoff when every user plays `strategy`:
///   W [a (1-a)^(K-1) + b (1-b)^(K-1)] - c_H a - c_L b.
double average_payoff(const MixedStrategy& strategy, const GameConfig& config);

/// (d/da, d/db) of average_payoff.
std::array<double, 2> average_payoff_gradient(const MixedStrategy& strategy,
                                              const GameConfig& config);

/// Projected coordinate ascent over {a, b >= 0, a + b <= 1}. Each sweep
/// maximises the objective exactly along one coordinate; iteration stops once
/// a full sweep moves neither coordinate by more than `step_tolerance`.
MixedStrategy coordinate_ascent(const GameConfig& config, MixedStrategy start,
                                double step_tolerance = 1e-10);

/// Best symmetric strategy for the average payoff, compared against the mixed
/// equilibrium. K = 2 uses the clamped stationary point
/// ((W - c_H) / 2W, (W - c_L) / 2W); larger K run coordinate_ascent from
/// (0.25, 0.25) and confirm the result against a 1e-3 simplex grid.
SocialOptimum maximize_average_payoff(const GameConfig& config);

}  // namespace noma
