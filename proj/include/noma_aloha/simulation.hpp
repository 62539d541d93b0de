#pragma once

// Seeded slotted-channel simulation. In every slot each user draws H, L or 0
// from its own mixed strategy; a power level decodes iff exactly one user
// transmitted on it.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "noma_aloha/game_model.hpp"

namespace noma {

struct SimConfig {
  static constexpr std::uint32_t kDefaultReplications = 30;

  GameConfig game;
  /// One entry (all users share it) or exactly K entries.
  std::vector<MixedStrategy> profiles;
  /// Slots per replication.
  std::uint64_t slots = 100'000;
  std::uint64_t seed = 0;
  std::uint32_t replications = kDefaultReplications;
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Has no
  /// effect on the result.
  unsigned workers = 0;
};

struct SimReport {
  /// Decoded packets per slot.
  double mean_throughput = 0.0;
  double throughput_ci95 = 0.0;
  /// Decoded packets per slot on the (H, L) levels.
  std::array<double, 2> per_level_success{};
  /// Fraction of slots where some level carried two or more packets.
  double collision_rate = 0.0;
  std::vector<double> mean_payoff_per_user;
  std::vector<double> payoff_ci95_per_user;
  /// Payoff averaged over users, with its 95% half-width.
  double mean_payoff = 0.0;
  double mean_payoff_ci95 = 0.0;
  std::uint64_t seed_used = 0;
  std::uint64_t slots = 0;
  std::uint32_t replications = 0;

  bool operator==(const SimReport&) const = default;
};

struct SlotOutcome {
  int high_transmitters = 0;
  int low_transmitters = 0;
  bool high_decoded = false;
  bool low_decoded = false;

  int transmitters() const { return high_transmitters + low_transmitters; }
  int decoded() const { return int{high_decoded} + int{low_decoded}; }
  bool collision() const { return high_transmitters > 1 || low_transmitters > 1; }
};

/// Channel outcome of one slot.
SlotOutcome resolve_slot(std::span<const Strategy> actions);

/// Per-user payoff of one slot: W on a decoded packet, minus the action cost.
std::vector<double> slot_payoffs(std::span<const Strategy> actions,
                                 const GameConfig& config);

/// Seed of replication `index`, derived from the root seed by SplitMix64.
std::uint64_t replication_seed(std::uint64_t root_seed, std::uint64_t index);

/// Throws ArgumentError for zero slots/replications or a profile list whose
/// length is neither 1 nor K. Bit-identical for a fixed config regardless of
/// `workers`.
SimReport simulate(const SimConfig& config);

struct PayoffCheck {
  double simulated = 0.0;
  double analytic = 0.0;
  double gap = 0.0;
  /// Standard error of the simulated mean.
  double sigma = 0.0;
  bool pass = false;
};

/// Simulates `slots` slots per replication (default replication count) with
/// every user on `strategy` and compares the mean payoff against the exact
/// expectation; passes when the gap is within 3 standard errors. Requires
/// slots >= 10^4.
PayoffCheck empirical_payoff_check(const MixedStrategy& strategy,
                                   const GameConfig& config,
                                   std::uint64_t slots, std::uint64_t seed);

}  // namespace noma
