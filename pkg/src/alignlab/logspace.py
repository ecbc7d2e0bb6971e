"""Numerically stable log-domain arithmetic helpers.

All probability mass in this package is carried as natural-log values; sums
use max-subtracted log-sum-exp and differences of powers use expm1 forms so
that quantities like S^N with N ~ 1e9 neither underflow nor cancel.
"""

from __future__ import annotations

import math

import numpy as np

_LN2 = math.log(2.0)


def logsumexp(values: np.ndarray) -> float:
    """log(sum(exp(values))) with max subtraction; -inf for an empty array."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return -math.inf
    hi = float(np.max(arr))
    if not math.isfinite(hi):
        return hi
    return hi + math.log(float(np.sum(np.exp(arr - hi))))


def log1mexp(u: float) -> float:
    """log(1 - exp(-u)) for u > 0, accurate at both ends."""
    if u <= 0.0:
        raise ValueError("log1mexp requires u > 0")
    if u < _LN2:
        return math.log(-math.expm1(-u))
    return math.log1p(-math.exp(-u))


def log_power_diff(n_eff: float, cum_lt: float, level_log_prob: float) -> float:
    """log(S_le**N - S_lt**N) for one reward level.

    ``cum_lt`` is log S_lt (cumulative mass strictly below the level, -inf at
    the bottom) and ``level_log_prob`` is the level's own log mass.  The gap
    d = log S_le - log S_lt is derived from the level mass rather than from a
    subtraction of accumulated cumulatives, which keeps deep-tail levels
    (d below float resolution of the cumulative) exact to first order.
    """
    if cum_lt == -math.inf:
        return n_eff * level_log_prob
    r = level_log_prob - cum_lt
    d = float(np.logaddexp(0.0, r))
    u = n_eff * d
    if u == 0.0:
        # level mass below float resolution: S_le^N - S_lt^N ~ N * S_lt^(N-1) * mass
        return n_eff * cum_lt + math.log(n_eff) + r
    return n_eff * cum_lt + u + log1mexp(u)


def cumulative_log_probs(level_log_probs: np.ndarray) -> np.ndarray:
    """log S_le per level (ascending order), with the top pinned to exactly 0.

    Uses the backward tail form log1p(-exp(tail)) where the tail is small
    (near the top, where N amplifies any cumulative error) and the forward
    running sum where the tail saturates toward 1.
    """
    lps = np.asarray(level_log_probs, dtype=np.float64)
    n = lps.size
    tails = np.empty(n)
    t = -math.inf
    for i in range(n - 1, -1, -1):
        tails[i] = t
        t = np.logaddexp(t, lps[i])
    fwd = np.logaddexp.accumulate(lps)
    c_le = np.empty(n)
    for i in range(n):
        if tails[i] == -math.inf:
            c_le[i] = 0.0
        elif tails[i] < -_LN2:
            c_le[i] = math.log1p(-math.exp(tails[i]))
        else:
            c_le[i] = fwd[i]
    return c_le
