#include "noma_aloha/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "noma_aloha/bisection.hpp"

namespace noma {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::NoTransmit:
      return "NoTransmit";
    case Regime::LowOnly:
      return "LowOnly";
    case Regime::Interior:
      return "Interior";
    case Regime::FullTransmit:
      return "FullTransmit";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  for (Regime r : {Regime::NoTransmit, Regime::LowOnly, Regime::Interior,
                   Regime::FullTransmit}) {
    if (to_string(r) == text) return r;
  }
  throw ArgumentError("unknown regime '" + std::string(text) + "'");
}

double StrategyPayoffs::of(Strategy s) const {
  switch (s) {
    case Strategy::High:
      return high;
    case Strategy::Low:
      return low;
    case Strategy::Idle:
      return idle;
  }
  return 0.0;
}

namespace {

// Payoff of a player choosing `action` when the other players occupy the high
// and low levels `others_high` and `others_low` times.
double action_payoff(Strategy action, int others_high, int others_low,
                     const GameConfig& config) {
  switch (action) {
    case Strategy::High:
      return (others_high == 0 ? config.reward() : 0.0) - config.cost_high();
    case Strategy::Low:
      return (others_low == 0 ? config.reward() : 0.0) - config.cost_low();
    case Strategy::Idle:
      return 0.0;
  }
  return 0.0;
}

bool survives_deviations(std::span<const Strategy> profile,
                         const GameConfig& config) {
  const auto high = std::count(profile.begin(), profile.end(), Strategy::High);
  const auto low = std::count(profile.begin(), profile.end(), Strategy::Low);
  for (Strategy own : profile) {
    const int others_high = static_cast<int>(high) - (own == Strategy::High);
    const int others_low = static_cast<int>(low) - (own == Strategy::Low);
    const double current = action_payoff(own, others_high, others_low, config);
    for (Strategy alt : kAllStrategies) {
      if (action_payoff(alt, others_high, others_low, config) > current)
        return false;
    }
  }
  return true;
}

StrategyPayoffs payoffs_against(const MixedStrategy& others,
                                const GameConfig& config) {
  return {expected_payoff(Strategy::High, others, config),
          expected_payoff(Strategy::Low, others, config), 0.0};
}

double support_spread(const MixedStrategy& strategy,
                      const StrategyPayoffs& payoffs) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Strategy s : kAllStrategies) {
    if (strategy.probability(s) > 0.0) {
      lo = std::min(lo, payoffs.of(s));
      hi = std::max(hi, payoffs.of(s));
    }
  }
  return hi - lo;
}

double full_transmit_residual(double b, const GameConfig& config) {
  const int n = config.players() - 1;
  const double w = config.reward();
  return w * std::pow(b, n) - w * std::pow(1.0 - b, n) -
         (config.cost_high() - config.cost_low());
}

double full_transmit_root(const GameConfig& config, double width_tolerance) {
  const auto f = [&](double b) { return full_transmit_residual(b, config); };
  return bisect_increasing(f, 0.5, 1.0, width_tolerance).root;
}

// 1 - (c / W)^(1/(K-1)): the probability that makes a level's payoff zero.
double zero_payoff_probability(double cost, const GameConfig& config) {
  return 1.0 - std::pow(cost / config.reward(), 1.0 / (config.players() - 1));
}

}  // namespace

bool is_pure_nash_equilibrium(std::span<const Strategy> profile,
                              const GameConfig& config) {
  if (profile.size() != static_cast<std::size_t>(config.players()))
    throw ArgumentError("profile length must equal K");
  return survives_deviations(profile, config);
}

PureNEList pure_nash_equilibria(const GameConfig& config) {
  const int k = config.players();
  long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= 3;
    if (total > kMaxEnumeratedProfiles)
      throw EnumerationLimit(
          "3^K profiles exceed the enumeration limit for K = " +
          std::to_string(k) + "; use the symmetric mixed solver instead");
  }

  PureNEList result;
  PureProfile profile(static_cast<std::size_t>(k));
  for (long code = 0; code < total; ++code) {
    long rest = code;
    for (int i = k - 1; i >= 0; --i) {
      profile[static_cast<std::size_t>(i)] = kAllStrategies[rest % 3];
      rest /= 3;
    }
    if (survives_deviations(profile, config)) result.push_back(profile);
  }
  return result;
}

double w_star(const GameConfig& config) {
  const double inv = 1.0 / (config.players() - 1);
  return std::pow(
      std::pow(config.cost_high(), inv) + std::pow(config.cost_low(), inv),
      config.players() - 1);
}

Regime classify_regime(const GameConfig& config) {
  const double w = config.reward();
  if (w < config.cost_low()) return Regime::NoTransmit;
  if (w < config.cost_high()) return Regime::LowOnly;
  if (w < w_star(config)) return Regime::Interior;
  return Regime::FullTransmit;
}

MixedStrategy regime_branch(const GameConfig& config, Regime regime) {
  switch (regime) {
    case Regime::NoTransmit:
      return {0.0, 0.0};
    case Regime::LowOnly:
      return {0.0, zero_payoff_probability(config.cost_low(), config)};
    case Regime::Interior:
      return {zero_payoff_probability(config.cost_high(), config),
              zero_payoff_probability(config.cost_low(), config)};
    case Regime::FullTransmit: {
      double b = 0.0;
      if (config.players() <= 3) {
        // For K <= 3 the root equation is linear: W (2b - 1) = c_H - c_L.
        b = 0.5 * (1.0 + (config.cost_high() - config.cost_low()) /
                             config.reward());
      } else {
        b = full_transmit_root(config, 0.0);
      }
      // low = 1 - high makes idle() exactly zero.
      const double a = 1.0 - b;
      return {a, 1.0 - a};
    }
  }
  return {};
}

double solve_full_transmit_root(const GameConfig& config) {
  const double threshold = w_star(config);
  if (config.reward() < threshold)
    throw OutOfRegime("full-transmit root requires W >= W* = " +
                      std::to_string(threshold));
  return full_transmit_root(config, 1e-12);
}

NESolution mixed_ne(const GameConfig& config) {
  NESolution solution;
  solution.regime = classify_regime(config);
  solution.strategy = regime_branch(config, solution.regime);
  solution.payoffs = payoffs_against(solution.strategy, config);
  solution.residual = support_spread(solution.strategy, solution.payoffs);
  // Whenever idling is in the support its payoff, exactly 0, is the
  // equilibrium value.
  solution.equilibrium_payoff =
      solution.strategy.idle() > 0.0
          ? 0.0
          : expected_payoff(solution.strategy, solution.strategy, config);
  return solution;
}

EpsilonNEReport verify_epsilon_ne(const MixedStrategy& strategy,
                                  const GameConfig& config, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");

  EpsilonNEReport report;
  report.payoffs = payoffs_against(strategy, config);
  report.support_spread = support_spread(strategy, report.payoffs);

  double support_sum = 0.0;
  int support_size = 0;
  for (Strategy s : kAllStrategies) {
    if (strategy.probability(s) > 0.0) {
      support_sum += report.payoffs.of(s);
      ++support_size;
    }
  }
  report.support_payoff = support_sum / support_size;

  bool any_unused = false;
  double advantage = -std::numeric_limits<double>::infinity();
  for (Strategy s : kAllStrategies) {
    if (strategy.probability(s) <= 0.0) {
      any_unused = true;
      advantage = std::max(advantage, report.payoffs.of(s) - report.support_payoff);
    }
  }
  report.max_unused_advantage = any_unused ? advantage : 0.0;
  report.pass = report.support_spread <= epsilon &&
                report.max_unused_advantage <= epsilon;
  return report;
}

}  // namespace noma
