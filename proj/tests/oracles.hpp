#pragma once

// Test-only reference computations. Each one takes a route independent of the
// library code it checks: exhaustive enumeration instead of closed forms, a
// grid instead of the ascent, finite differences instead of the gradient.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "noma_aloha/game_model.hpp"

namespace oracle {

using noma::GameConfig;
using noma::MixedStrategy;
using noma::Strategy;

inline constexpr std::array<Strategy, 3> kActions = {Strategy::High, Strategy::Low,
                                                     Strategy::Idle};

inline double prob(const MixedStrategy& m, Strategy s) {
  if (s == Strategy::High) return m.high();
  if (s == Strategy::Low) return m.low();
  return 1.0 - m.high() - m.low();
}

// Calls visit(profile, probability) for every profile of `n` players drawn
// independently from `mix`.
inline void for_each_profile(int n, const MixedStrategy& mix,
                             const std::function<void(const std::vector<Strategy>&, double)>& visit) {
  std::vector<Strategy> profile(static_cast<std::size_t>(n));
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    long rest = code;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      profile[static_cast<std::size_t>(i)] = kActions[static_cast<std::size_t>(rest % 3)];
      p *= prob(mix, profile[static_cast<std::size_t>(i)]);
      rest /= 3;
    }
    visit(profile, p);
  }
}

// E[payoff(own, opponents)] by summing over all 3^(K-1) opponent profiles.
inline double enumerated_payoff(Strategy own, const MixedStrategy& others,
                                const GameConfig& config) {
  double total = 0.0;
  for_each_profile(config.players() - 1, others,
                   [&](const std::vector<Strategy>& opp, double p) {
                     total += p * noma::payoff(own, opp, config);
                   });
  return total;
}

// Expected number of power levels used by exactly one of K users.
inline double enumerated_throughput(const MixedStrategy& mix, const GameConfig& config) {
  double total = 0.0;
  for_each_profile(config.players(), mix, [&](const std::vector<Strategy>& profile, double p) {
    int high = 0, low = 0;
    for (Strategy s : profile) {
      high += s == Strategy::High;
      low += s == Strategy::Low;
    }
    total += p * ((high == 1) + (low == 1));
  });
  return total;
}

// Pure NE by direct deviation checks through noma::payoff.
inline std::vector<std::vector<Strategy>> brute_force_pure_ne(const GameConfig& config) {
  std::vector<std::vector<Strategy>> result;
  for_each_profile(config.players(), MixedStrategy(1.0 / 3, 1.0 / 3),
                   [&](const std::vector<Strategy>& profile, double) {
                     for (std::size_t i = 0; i < profile.size(); ++i) {
                       std::vector<Strategy> others;
                       for (std::size_t j = 0; j < profile.size(); ++j)
                         if (j != i) others.push_back(profile[j]);
                       const double current = noma::payoff(profile[i], others, config);
                       for (Strategy alt : kActions)
                         if (noma::payoff(alt, others, config) > current) return;
                     }
                     result.push_back(profile);
                   });
  std::sort(result.begin(), result.end());
  return result;
}

// Symmetric per-user average payoff, written out from the enumeration.
inline double enumerated_average_payoff(const MixedStrategy& mix, const GameConfig& config) {
  double total = 0.0;
  for (Strategy own : kActions) total += prob(mix, own) * enumerated_payoff(own, mix, config);
  return total;
}

struct GridBest {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
};

// Maximum of `f` over {a, b >= 0, a + b <= 1} on a uniform grid.
inline GridBest grid_maximum(const std::function<double(double, double)>& f, int resolution) {
  GridBest best{0.0, 0.0, f(0.0, 0.0)};
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; i + j <= resolution; ++j) {
      const double a = static_cast<double>(i) / resolution;
      const double b = static_cast<double>(j) / resolution;
      const double v = f(a, b);
      if (v > best.value) best = {a, b, v};
    }
  }
  return best;
}

// Direct per-user payoff formula, used as the grid objective.
inline double average_payoff_formula(double a, double b, const GameConfig& c) {
  const int n = c.players() - 1;
  return c.reward() * (a * std::pow(1 - a, n) + b * std::pow(1 - b, n)) - c.cost_high() * a -
         c.cost_low() * b;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline MixedStrategy random_mixed() {
  const double a = uniform(0.0, 1.0);
  const double b = uniform(0.0, 1.0 - a);
  return {a, b};
}

}  // namespace oracle
