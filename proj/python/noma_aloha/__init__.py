"""Equilibria, social optimum and Monte Carlo simulation for the NOMA-ALOHA game."""

from ._core import (
    ArgumentError,
    EpsilonNEReport,
    GameConfig,
    MixedStrategy,
    NESolution,
    Regime,
    SimReport,
    SocialOptimum,
    Strategy,
    StrategyPayoffs,
    average_payoff,
    expected_payoff,
    expected_throughput,
    maximize_average_payoff,
    mixed_ne,
    payoff,
    pure_nash_equilibria,
    reward,
    simulate,
    solve_full_transmit_root,
    verify_epsilon_ne,
    w_star,
)

__all__ = [name for name in dir() if not name.startswith("_")]
