#include "noma_aloha/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace noma {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

struct UserTally {
  // Indexed by Strategy: slots spent on each action, and decoded packets.
  std::array<std::uint64_t, 3> actions{};
  std::array<std::uint64_t, 2> decoded{};
};

struct ReplicationTally {
  std::uint64_t high_decoded = 0;
  std::uint64_t low_decoded = 0;
  std::uint64_t collision_slots = 0;
  // Sums of squares of per-slot values, used when only one replication runs.
  double throughput_sq = 0.0;
  double average_payoff_sq = 0.0;
  std::vector<double> payoff_sq;
  std::vector<UserTally> users;
};

double user_payoff_total(const UserTally& t, const GameConfig& config) {
  const double w = config.reward();
  return w * static_cast<double>(t.decoded[0] + t.decoded[1]) -
         config.cost_high() * static_cast<double>(t.actions[0]) -
         config.cost_low() * static_cast<double>(t.actions[1]);
}

ReplicationTally run_replication(const SimConfig& config,
                                 std::span<const MixedStrategy> profiles,
                                 std::uint64_t seed) {
  const auto k = static_cast<std::size_t>(config.game.players());
  const double w = config.game.reward();
  std::vector<double> high_cut(k), low_cut(k);
  for (std::size_t i = 0; i < k; ++i) {
    const MixedStrategy& p = profiles[profiles.size() == 1 ? 0 : i];
    high_cut[i] = p.high();
    low_cut[i] = p.high() + p.low();
  }

  ReplicationTally tally;
  tally.users.resize(k);
  tally.payoff_sq.assign(k, 0.0);
  std::vector<Strategy> actions(k);
  std::mt19937_64 engine(seed);

  for (std::uint64_t slot = 0; slot < config.slots; ++slot) {
    int n_high = 0;
    int n_low = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double u = unit_uniform(engine);
      if (u < high_cut[i]) {
        actions[i] = Strategy::High;
        ++n_high;
      } else if (u < low_cut[i]) {
        actions[i] = Strategy::Low;
        ++n_low;
      } else {
        actions[i] = Strategy::Idle;
      }
    }
    const bool high_ok = n_high == 1;
    const bool low_ok = n_low == 1;
    tally.high_decoded += high_ok;
    tally.low_decoded += low_ok;
    tally.collision_slots += (n_high > 1 || n_low > 1);
    const auto decoded = static_cast<double>(int{high_ok} + int{low_ok});
    tally.throughput_sq += decoded * decoded;

    double slot_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const Strategy s = actions[i];
      UserTally& user = tally.users[i];
      ++user.actions[index_of(s)];
      double value = -config.game.cost(s);
      if ((s == Strategy::High && high_ok) || (s == Strategy::Low && low_ok)) {
        ++user.decoded[index_of(s)];
        value += w;
      }
      tally.payoff_sq[i] += value * value;
      slot_sum += value;
    }
    const double slot_average = slot_sum / static_cast<double>(k);
    tally.average_payoff_sq += slot_average * slot_average;
  }
  return tally;
}

struct MeanAndHalfWidth {
  double mean = 0.0;
  double ci95 = 0.0;
};

// Normal-approximation interval over replication means.
MeanAndHalfWidth summarize(std::span<const double> means) {
  const auto n = static_cast<double>(means.size());
  double sum = 0.0;
  for (double m : means) sum += m;
  const double mean = sum / n;
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  const double variance = ss / (n - 1.0);
  return {mean, kZ95 * std::sqrt(variance / n)};
}

// Single replication: interval from slot-level variance instead.
MeanAndHalfWidth summarize_slots(double mean, double sum_sq,
                                 std::uint64_t slots) {
  const auto n = static_cast<double>(slots);
  if (slots < 2) return {mean, 0.0};
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, kZ95 * std::sqrt(variance / n)};
}

}  // namespace

SlotOutcome resolve_slot(std::span<const Strategy> actions) {
  SlotOutcome out;
  out.high_transmitters = static_cast<int>(
      std::count(actions.begin(), actions.end(), Strategy::High));
  out.low_transmitters = static_cast<int>(
      std::count(actions.begin(), actions.end(), Strategy::Low));
  out.high_decoded = out.high_transmitters == 1;
  out.low_decoded = out.low_transmitters == 1;
  return out;
}

std::vector<double> slot_payoffs(std::span<const Strategy> actions,
                                 const GameConfig& config) {
  if (actions.size() != static_cast<std::size_t>(config.players()))
    throw ArgumentError("slot needs exactly K actions");
  const SlotOutcome outcome = resolve_slot(actions);
  std::vector<double> out;
  out.reserve(actions.size());
  for (Strategy s : actions) {
    const bool decoded = (s == Strategy::High && outcome.high_decoded) ||
                         (s == Strategy::Low && outcome.low_decoded);
    out.push_back((decoded ? config.reward() : 0.0) - config.cost(s));
  }
  return out;
}

std::uint64_t replication_seed(std::uint64_t root_seed, std::uint64_t index) {
  return splitmix64(splitmix64(root_seed) ^ splitmix64(~index));
}

SimReport simulate(const SimConfig& config) {
  const auto k = static_cast<std::size_t>(config.game.players());
  if (config.slots == 0) throw ArgumentError("slots must be at least 1");
  if (config.replications == 0)
    throw ArgumentError("replications must be at least 1");
  if (config.profiles.size() != 1 && config.profiles.size() != k)
    throw ArgumentError("profile list must have length 1 or K = " +
                        std::to_string(k));

  const std::size_t reps = config.replications;
  std::vector<ReplicationTally> tallies(reps);
  unsigned workers = config.workers == 0 ? std::thread::hardware_concurrency()
                                         : config.workers;
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(reps));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t r = next++; r < reps; r = next++)
      tallies[r] = run_replication(config, config.profiles,
                                   replication_seed(config.seed, r));
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  // Reduction in replication order keeps the report independent of workers.
  const auto slots = static_cast<double>(config.slots);
  std::vector<double> throughput(reps), high(reps), low(reps), collisions(reps),
      average(reps);
  std::vector<std::vector<double>> per_user(k, std::vector<double>(reps));
  for (std::size_t r = 0; r < reps; ++r) {
    const ReplicationTally& t = tallies[r];
    high[r] = static_cast<double>(t.high_decoded) / slots;
    low[r] = static_cast<double>(t.low_decoded) / slots;
    throughput[r] = high[r] + low[r];
    collisions[r] = static_cast<double>(t.collision_slots) / slots;
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      per_user[i][r] = user_payoff_total(t.users[i], config.game) / slots;
      sum += per_user[i][r];
    }
    average[r] = sum / static_cast<double>(k);
  }

  SimReport report;
  report.seed_used = config.seed;
  report.slots = config.slots;
  report.replications = config.replications;
  const auto mean_of = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(reps);
  };
  report.per_level_success = {mean_of(high), mean_of(low)};
  report.mean_throughput = report.per_level_success[0] + report.per_level_success[1];
  report.collision_rate = mean_of(collisions);
  report.mean_payoff_per_user.resize(k);
  report.payoff_ci95_per_user.resize(k);

  if (reps >= 2) {
    report.throughput_ci95 = summarize(throughput).ci95;
    for (std::size_t i = 0; i < k; ++i) {
      const auto s = summarize(per_user[i]);
      report.mean_payoff_per_user[i] = s.mean;
      report.payoff_ci95_per_user[i] = s.ci95;
    }
    const auto s = summarize(average);
    report.mean_payoff = s.mean;
    report.mean_payoff_ci95 = s.ci95;
  } else {
    const ReplicationTally& t = tallies[0];
    report.throughput_ci95 =
        summarize_slots(report.mean_throughput, t.throughput_sq, config.slots).ci95;
    for (std::size_t i = 0; i < k; ++i) {
      report.mean_payoff_per_user[i] = per_user[i][0];
      report.payoff_ci95_per_user[i] =
          summarize_slots(per_user[i][0], t.payoff_sq[i], config.slots).ci95;
    }
    report.mean_payoff = average[0];
    report.mean_payoff_ci95 =
        summarize_slots(average[0], t.average_payoff_sq, config.slots).ci95;
  }
  return report;
}

PayoffCheck empirical_payoff_check(const MixedStrategy& strategy,
                                   const GameConfig& config,
                                   std::uint64_t slots, std::uint64_t seed) {
  if (slots < 10'000) throw ArgumentError("payoff check needs at least 10^4 slots");
  SimConfig sim{config, {strategy}, slots, seed};
  const SimReport report = simulate(sim);

  PayoffCheck check;
  check.simulated = report.mean_payoff;
  check.analytic = expected_payoff(strategy, strategy, config);
  check.gap = std::abs(check.simulated - check.analytic);
  check.sigma = report.mean_payoff_ci95 / kZ95;
  // The absolute floor only matters for degenerate profiles with sigma == 0.
  check.pass = check.gap <= 3.0 * check.sigma + 1e-12;
  return check;
}

}  // namespace noma
