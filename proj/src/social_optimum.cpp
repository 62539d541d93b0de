#include "noma_aloha/social_optimum.hpp"

#include <algorithm>
#include <cmath>

#include "noma_aloha/bisection.hpp"
#include "noma_aloha/equilibrium.hpp"

namespace noma {

namespace {

// One level's share of the objective: W p (1-p)^(K-1) - c p.
double level_term(double p, double cost, const GameConfig& config) {
  return config.reward() * p * std::pow(1.0 - p, config.players() - 1) -
         cost * p;
}

// d/dp level_term = W (1-p)^(K-2) (1 - K p) - c.
double level_slope(double p, double cost, const GameConfig& config) {
  const int k = config.players();
  return config.reward() * std::pow(1.0 - p, k - 2) * (1.0 - k * p) - cost;
}

// Maximiser of level_term over [0, upper]. The slope is decreasing on
// [0, 1/K] and negative beyond it, so the unconstrained maximiser is 0 or the
// slope's root in (0, 1/K); clamping that to the interval is exact.
double best_level_probability(double cost, double upper,
                              const GameConfig& config) {
  if (level_slope(0.0, cost, config) <= 0.0 || upper <= 0.0) return 0.0;
  const double top = 1.0 / config.players();
  const auto decreasing = [&](double p) { return -level_slope(p, cost, config); };
  const double root = bisect_increasing(decreasing, 0.0, top, 0.0).root;
  return std::min(root, upper);
}

struct GridPoint {
  MixedStrategy strategy;
  double value;
};

GridPoint grid_search(const GameConfig& config, int resolution) {
  GridPoint best{{0.0, 0.0}, 0.0};
  for (int i = 0; i <= resolution; ++i) {
    const double a = static_cast<double>(i) / resolution;
    const double high_part = level_term(a, config.cost_high(), config);
    for (int j = 0; i + j <= resolution; ++j) {
      const double b = static_cast<double>(j) / resolution;
      const double value = high_part + level_term(b, config.cost_low(), config);
      if (value > best.value) best = {{a, b}, value};
    }
  }
  return best;
}

}  // namespace

double average_payoff(const MixedStrategy& strategy, const GameConfig& config) {
  return level_term(strategy.high(), config.cost_high(), config) +
         level_term(strategy.low(), config.cost_low(), config);
}

std::array<double, 2> average_payoff_gradient(const MixedStrategy& strategy,
                                              const GameConfig& config) {
  return {level_slope(strategy.high(), config.cost_high(), config),
          level_slope(strategy.low(), config.cost_low(), config)};
}

MixedStrategy coordinate_ascent(const GameConfig& config, MixedStrategy start,
                                double step_tolerance) {
  double a = start.high();
  double b = start.low();
  for (int sweep = 0; sweep < 1000; ++sweep) {
    const double next_a =
        best_level_probability(config.cost_high(), 1.0 - b, config);
    const double next_b =
        best_level_probability(config.cost_low(), 1.0 - next_a, config);
    const double step = std::max(std::abs(next_a - a), std::abs(next_b - b));
    a = next_a;
    b = next_b;
    if (step <= step_tolerance) break;
  }
  return {a, b};
}

SocialOptimum maximize_average_payoff(const GameConfig& config) {
  SocialOptimum result;
  if (config.players() == 2) {
    const double w = config.reward();
    const auto stationary = [w](double cost) {
      return w > cost ? (w - cost) / (2.0 * w) : 0.0;
    };
    result.strategy = {stationary(config.cost_high()),
                       stationary(config.cost_low())};
  } else {
    result.extension = true;
    result.strategy = coordinate_ascent(config, {0.25, 0.25});
    const GridPoint grid = grid_search(config, 1000);
    if (grid.value > average_payoff(result.strategy, config) + 1e-12) {
      const MixedStrategy refined = coordinate_ascent(config, grid.strategy);
      result.strategy = average_payoff(refined, config) >= grid.value
                            ? refined
                            : grid.strategy;
    }
  }
  result.average_payoff = average_payoff(result.strategy, config);
  result.ne_payoff = mixed_ne(config).equilibrium_payoff;
  if (result.average_payoff > 0.0)
    result.poa = result.ne_payoff / result.average_payoff;
  return result;
}

}  // namespace noma
