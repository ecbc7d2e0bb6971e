"""Exponential tilting of a reference toward an alignment target, and the
scalar inversions that pick a tilt by KL budget or by expected reward.

The one-parameter family T(q, p, alpha) ~ p_k * q_k^alpha interpolates from
the reference p (alpha = 0) toward the argmax of q (alpha -> inf).  Both
inversions are monotone scalar root-finding problems solved by bracket
doubling plus bisection; derivative-free robustness is preferred over speed
here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import CategoricalDistribution, from_log_weights
from .errors import (
    AlphabetMismatch,
    DegenerateFamily,
    InfeasibleBudget,
    TargetOutOfRange,
)
from .logspace import logsumexp
from .metrics import _check_same_alphabet, cross_entropy, kl_divergence

BISECTION_RESIDUAL = 1e-12
MAX_BISECTIONS = 200
MAX_DOUBLINGS = 200
FEASIBILITY_MARGIN = 1e-9
_UNIFORM_LOGPROB_SPREAD = 1e-12


@dataclass(frozen=True)
class TiltSolution:
    """A solved KL-budget tilt: parameter, distribution, and achieved metrics."""

    alpha: float
    phi: CategoricalDistribution
    achieved_kl: float
    expected_reward: float


@dataclass(frozen=True)
class TradeoffPoint:
    """One point on the expected-reward versus KL-budget curve."""

    delta: float
    alpha: float
    expected_reward: float


def mismatched_tilt(
    q: CategoricalDistribution, p: CategoricalDistribution, alpha: float
) -> CategoricalDistribution:
    """T(q, p, alpha): the distribution proportional to p_k * q_k^alpha."""
    _check_same_alphabet(p, q)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if alpha == 0.0:
        return p
    return from_log_weights(p.log_probs + alpha * q.log_probs)


def _is_uniform(q: CategoricalDistribution) -> bool:
    return float(np.ptp(q.log_probs)) <= _UNIFORM_LOGPROB_SPREAD


def max_achievable_kl(q: CategoricalDistribution, p: CategoricalDistribution) -> float:
    """Supremum of D(T(q,p,alpha) || p) over alpha >= 0: log 1/p(argmax q)."""
    _check_same_alphabet(p, q)
    top = np.max(q.log_probs)
    maximizers = q.log_probs >= top - _UNIFORM_LOGPROB_SPREAD
    return -logsumexp(p.log_probs[maximizers])


def _bisect_monotone(f, lo: float, hi: float, increasing: bool) -> float:
    """Root of a monotone f with f(lo), f(hi) bracketing zero."""
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        r = f(mid)
        if abs(r) <= BISECTION_RESIDUAL:
            return mid
        if (r < 0.0) == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_alpha_for_kl(
    q: CategoricalDistribution, p: CategoricalDistribution, delta: float
) -> TiltSolution:
    """Find alpha >= 0 with D(T(q,p,alpha) || p) = delta.

    KL is strictly increasing in alpha for non-uniform q, so the root is
    unique.  Budgets within ``FEASIBILITY_MARGIN`` of the supremum are
    rejected (alpha diverges at the boundary).
    """
    _check_same_alphabet(p, q)
    if delta < 0.0:
        raise InfeasibleBudget(f"KL budget must be nonnegative, got {delta!r}")
    if delta == 0.0:
        return TiltSolution(0.0, p, 0.0, -cross_entropy(p, q))
    if _is_uniform(q):
        raise DegenerateFamily("uniform alignment target: the family is the single point p")
    max_kl = max_achievable_kl(q, p)
    if delta >= max_kl - FEASIBILITY_MARGIN:
        raise InfeasibleBudget(f"delta={delta!r} >= achievable supremum {max_kl!r}")

    def residual(alpha: float) -> float:
        return kl_divergence(mismatched_tilt(q, p, alpha), p) - delta

    lo, hi = 0.0, 1.0
    for _ in range(MAX_DOUBLINGS):
        if residual(hi) >= 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise InfeasibleBudget(f"could not bracket delta={delta!r}")
    alpha = _bisect_monotone(residual, lo, hi, increasing=True)
    phi = mismatched_tilt(q, p, alpha)
    return TiltSolution(alpha, phi, kl_divergence(phi, p), -cross_entropy(phi, q))


def reward_target_range(q: CategoricalDistribution) -> tuple[float, float]:
    """Open interval of reachable per-symbol cross entropies H(T(q,p,b) || q)."""
    return (-float(np.max(q.log_probs)), -float(np.min(q.log_probs)))


def solve_beta_for_reward(
    q: CategoricalDistribution, p: CategoricalDistribution, t: float
) -> float:
    """Find beta in R with H(T(q,p,beta) || q) = t.

    H is strictly decreasing in beta for non-uniform q; t must lie strictly
    inside ``reward_target_range(q)``.
    """
    _check_same_alphabet(p, q)
    lo_t, hi_t = reward_target_range(q)
    if not (lo_t < t < hi_t):
        raise TargetOutOfRange(f"t={t!r} outside achievable open range ({lo_t!r}, {hi_t!r})")

    def residual(beta: float) -> float:
        return cross_entropy(mismatched_tilt(q, p, beta), q) - t

    lo, hi = -1.0, 1.0
    for _ in range(MAX_DOUBLINGS):
        if residual(hi) <= 0.0:
            break
        lo, hi = hi, 2.0 * abs(hi)
    else:
        raise TargetOutOfRange(f"t={t!r} unreachable (upper bracket)")
    for _ in range(MAX_DOUBLINGS):
        if residual(lo) >= 0.0:
            break
        hi, lo = lo, -2.0 * abs(lo)
    else:
        raise TargetOutOfRange(f"t={t!r} unreachable (lower bracket)")
    return _bisect_monotone(residual, lo, hi, increasing=False)


def tradeoff_curve(
    q: CategoricalDistribution, p: CategoricalDistribution, deltas
) -> list[TradeoffPoint]:
    """Solve the budget inversion on a grid of KL budgets."""
    points = []
    for delta in deltas:
        sol = solve_alpha_for_kl(q, p, float(delta))
        points.append(TradeoffPoint(float(delta), sol.alpha, sol.expected_reward))
    return points


def tilt_compose_check(
    q: CategoricalDistribution, p: CategoricalDistribution, alpha: float, beta: float
) -> float:
    """L-inf distance between T(q, T(q,p,alpha), beta) and T(q,p,alpha+beta).

    The two are identical by the composition identity; the returned distance
    is a numerical diagnostic expected to stay below 1e-12.
    """
    composed = mismatched_tilt(q, mismatched_tilt(q, p, alpha), beta)
    direct = mismatched_tilt(q, p, alpha + beta)
    return float(np.max(np.abs(np.exp(composed.log_probs) - np.exp(direct.log_probs))))
