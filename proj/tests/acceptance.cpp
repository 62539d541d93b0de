// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "noma_aloha/equilibrium.hpp"
#include "noma_aloha/simulation.hpp"
#include "noma_aloha/social_optimum.hpp"
#include "oracles.hpp"

using noma::GameConfig;
using noma::MixedStrategy;
using noma::Regime;
using S = noma::Strategy;

namespace {

constexpr double kInstant = 0.1;  // seconds

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;
  std::function<void(Outcome&)> run;
};

// ---------------------------------------------------------------------------

void w_star_values(Outcome& o) {
  const double k2 = noma::w_star(GameConfig(2, 0.0));
  const double k5 = noma::w_star(GameConfig(5, 0.0));
  o.require(k2 == 3.0, "W*(K=2) == 3");
  o.require(std::abs(k5 - 22.969) <= 0.001, "W*(K=5) = 22.969 +- 0.001");
  o.detail << "W*(2)=" << k2 << " W*(5)=" << k5;
}

MixedStrategy two_user_closed_form(double w) {
  if (w >= 3.0) return {(w - 1) / (2 * w), (w + 1) / (2 * w)};
  if (w >= 2.0) return {(w - 2) / w, (w - 1) / w};
  if (w >= 1.0) return {0.0, (w - 1) / w};
  return {0.0, 0.0};
}

void closed_form_regimes(Outcome& o) {
  double worst = 0.0;
  const auto compare = [&](double w) {
    const MixedStrategy got = noma::mixed_ne(GameConfig(2, w)).strategy;
    const MixedStrategy want = two_user_closed_form(w);
    const double err =
        std::max(std::abs(got.high() - want.high()), std::abs(got.low() - want.low()));
    worst = std::max(worst, err);
    o.require(err <= 1e-12, "W=" + std::to_string(w));
  };
  for (double w : {0.5, 1.5, 2.5, 5.0, 50.0}) compare(w);
  for (int i = 0; i <= 100; ++i) compare(0.1 * i);  // the two-user equilibrium curve
  o.detail << "max error " << worst;
}

void indifference(Outcome& o) {
  double worst_spread = 0.0;
  double worst_advantage = -INFINITY;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = oracle::uniform_int(2, 20);
    const double w = std::exp(oracle::uniform(std::log(1.0 + 1e-9), std::log(1000.0)));
    const GameConfig game(k, w);
    const auto report = noma::verify_epsilon_ne(noma::mixed_ne(game).strategy, game, 1e-9);
    worst_spread = std::max(worst_spread, report.support_spread);
    worst_advantage = std::max(worst_advantage, report.max_unused_advantage);
    o.require(report.pass, "K=" + std::to_string(k) + " W=" + std::to_string(w));
    o.require(report.max_unused_advantage <= 1e-9, "unused advantage");
  }
  o.detail << "max spread " << worst_spread << ", max unused advantage " << worst_advantage;
}

void bisection_vs_closed_form(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i <= 970; ++i) {
    const double w = 3.0 + 0.1 * i;
    const double root = noma::solve_full_transmit_root(GameConfig(2, w));
    worst = std::max(worst, std::abs(root - (w + 1) / (2 * w)));
  }
  o.require(worst <= 1e-10, "K=2 root vs (W+1)/2W");

  const GameConfig k5(5, 30.0);
  double lo = INFINITY, hi = -INFINITY;
  for (int run = 0; run < 100; ++run) {
    const double b = noma::solve_full_transmit_root(k5);
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  o.require(hi - lo <= 1e-12, "K=5 W=30 root stable");
  o.detail << "K=2 max error " << worst << ", K=5 W=30 root " << lo << " spread " << hi - lo;
}

void regime_continuity(Outcome& o) {
  double worst = 0.0;
  for (int k : {2, 3, 5, 10}) {
    const GameConfig base(k, 0.0);
    const auto gap = [&](double w, Regime left, Regime right) {
      const GameConfig at = base.with_reward(w);
      const MixedStrategy l = noma::regime_branch(at, left);
      const MixedStrategy r = noma::regime_branch(at, right);
      const double d = std::max(std::abs(l.high() - r.high()), std::abs(l.low() - r.low()));
      worst = std::max(worst, d);
      o.require(d < 1e-9, "K=" + std::to_string(k) + " W=" + std::to_string(w));
    };
    gap(base.cost_low(), Regime::NoTransmit, Regime::LowOnly);
    gap(base.cost_high(), Regime::LowOnly, Regime::Interior);
    gap(noma::w_star(base), Regime::Interior, Regime::FullTransmit);
  }
  o.detail << "max jump " << worst;
}

void social_optimum_and_poa(Outcome& o) {
  const GameConfig game(2, 5.0);
  const auto so = noma::maximize_average_payoff(game);
  o.require(std::abs(so.strategy.high() - 0.3) <= 1e-12, "a_opt = 0.3");
  o.require(std::abs(so.strategy.low() - 0.4) <= 1e-12, "b_opt = 0.4");
  o.require(std::abs(so.average_payoff - 1.25) <= 1e-12, "optimum payoff 1.25");
  o.require(std::abs(so.ne_payoff - 1.0) <= 1e-12, "NE payoff 1.0");
  o.require(so.poa && std::abs(*so.poa - 0.8) <= 1e-12, "PoA 0.8");

  const auto grid = oracle::grid_maximum(
      [&](double a, double b) { return oracle::average_payoff_formula(a, b, game); }, 1000);
  o.require(std::abs(grid.a - 0.3) <= 1e-3 && std::abs(grid.b - 0.4) <= 1e-3,
            "grid oracle locates (0.3, 0.4)");
  o.require(grid.value <= so.average_payoff + 1e-12, "grid never beats the optimum");

  const auto far = noma::maximize_average_payoff(GameConfig(2, 1e4));
  o.require(far.poa && *far.poa > 0.999, "PoA(1e4) > 0.999");

  double worst_grad = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const GameConfig g(oracle::uniform_int(2, 10), oracle::uniform(0.0, 50.0));
    const double a = oracle::uniform(0.01, 0.49);
    const double b = oracle::uniform(0.01, 0.49);
    const auto grad = noma::average_payoff_gradient(MixedStrategy(a, b), g);
    const double da = oracle::central_difference(
        [&](double x) { return noma::average_payoff(MixedStrategy(x, b), g); }, a, 1e-6);
    const double db = oracle::central_difference(
        [&](double x) { return noma::average_payoff(MixedStrategy(a, x), g); }, b, 1e-6);
    worst_grad = std::max({worst_grad, std::abs(grad[0] - da), std::abs(grad[1] - db)});
  }
  o.require(worst_grad <= 1e-5, "gradient check");
  o.detail << "opt=(" << so.strategy.high() << "," << so.strategy.low() << ") payoff "
           << so.average_payoff << " PoA " << (so.poa ? *so.poa : NAN) << ", PoA(1e4)="
           << (far.poa ? *far.poa : NAN) << ", max gradient error " << worst_grad;
}

void throughput(Outcome& o) {
  const auto half = noma::simulate(
      noma::SimConfig{GameConfig(2, 1.0), {MixedStrategy(0.5, 0.5)}, 1'000'000, 2024});
  o.require(std::abs(half.mean_throughput - 1.0) <= 0.01, "a=b=1/2 throughput 1.00 +- 0.01");

  const GameConfig k5(5, 10.0);
  const MixedStrategy ne = noma::mixed_ne(k5).strategy;
  const double analytic = noma::expected_throughput(ne, k5);
  const auto sim = noma::simulate(noma::SimConfig{k5, {ne}, 1'000'000, 2025});
  const double sigma_t = sim.throughput_ci95 / 1.959963984540054;
  const double sigma_p = sim.mean_payoff_ci95 / 1.959963984540054;
  o.require(std::abs(analytic - 0.5501) <= 1e-4, "analytic throughput 0.5501");
  o.require(std::abs(sim.mean_throughput - analytic) <= 3.0 * sigma_t, "throughput within 3 sigma");
  o.require(std::abs(sim.mean_payoff) <= 3.0 * sigma_p, "payoff 0 within 3 sigma");
  o.detail << "half/half " << half.mean_throughput << "; K=5 NE sim " << sim.mean_throughput
           << " vs " << analytic << " (sigma " << sigma_t << "), payoff " << sim.mean_payoff
           << " (sigma " << sigma_p << ")";
}

void shape_properties(Outcome& o) {
  double prev_idle = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    const MixedStrategy s = noma::mixed_ne(GameConfig(2, 0.05 * i)).strategy;
    o.require(s.low() >= s.high(), "b* >= a*");
    o.require(s.idle() <= prev_idle, "p0 nonincreasing in W");
    prev_idle = s.idle();
  }
  MixedStrategy prev = noma::mixed_ne(GameConfig(2, 10.0)).strategy;
  for (int k = 3; k <= 20; ++k) {
    const MixedStrategy cur = noma::mixed_ne(GameConfig(k, 10.0)).strategy;
    o.require(cur.high() <= prev.high() && cur.low() <= prev.low(),
              "transmission nonincreasing in K");
    o.require(cur.idle() >= prev.idle(), "p0 nondecreasing in K");
    prev = cur;
  }
  o.detail << "W grid [0,100] step 0.05 at K=2; K=2..20 at W=10";
}

std::string profiles_text(const noma::PureNEList& list) {
  std::string t;
  for (const auto& p : list) {
    t += "(";
    for (std::size_t i = 0; i < p.size(); ++i) t += (i ? "," : "") + std::string(noma::to_string(p[i]));
    t += ")";
  }
  return t.empty() ? "none" : t;
}

void pure_equilibria(Outcome& o) {
  using P = noma::PureProfile;
  const noma::PureNEList idle{P{S::Idle, S::Idle}};
  const noma::PureNEList split{P{S::Low, S::Idle}, P{S::Idle, S::Low}};
  for (int i = 0; i < 20; ++i) {
    const double w = 0.05 * i;  // [0, 1)
    o.require(noma::pure_nash_equilibria(GameConfig(2, w)) == idle, "W<1 -> (0,0)");
  }
  for (int i = 1; i < 20; ++i) {
    const double w = 1.0 + 0.05 * i;  // (1, 2)
    o.require(noma::pure_nash_equilibria(GameConfig(2, w)) == split, "1<W<2 -> (0,L),(L,0)");
  }
  // At the closed ends of [1, 2] weak inequalities admit extra tied profiles;
  // the stated ones must still be present.
  for (double w : {1.0, 2.0}) {
    const auto list = noma::pure_nash_equilibria(GameConfig(2, w));
    for (const auto& p : split)
      o.require(std::find(list.begin(), list.end(), p) != list.end(),
                "W=" + std::to_string(w) + " contains (0,L),(L,0)");
  }
  o.detail << "W=1: " << profiles_text(noma::pure_nash_equilibria(GameConfig(2, 1.0)))
           << "; W=2: " << profiles_text(noma::pure_nash_equilibria(GameConfig(2, 2.0)))
           << "; W=5 (enumerator reports): "
           << profiles_text(noma::pure_nash_equilibria(GameConfig(2, 5.0)));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "W* thresholds", kInstant, w_star_values},
      {2, "closed-form NE regimes at K=2", 1.0, closed_form_regimes},
      {3, "indifference at 200 random (W, K)", 1.0, indifference},
      {4, "bisection vs closed form", 1.0, bisection_vs_closed_form},
      {5, "regime continuity", kInstant, regime_continuity},
      {6, "social optimum and PoA", 1.0, social_optimum_and_poa},
      {7, "Monte Carlo throughput and payoff", 30.0, throughput},
      {8, "equilibrium shape properties", 1.0, shape_properties},
      {9, "pure-NE enumeration", kInstant, pure_equilibria},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit)
      outcome.require(false, "runtime " + std::to_string(secs) + " s over limit");
    failures += !outcome.pass;
    std::printf("[%s] AC%d %s (%.3f s, limit %.1f s): %s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, c.time_limit, outcome.detail.str().c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
