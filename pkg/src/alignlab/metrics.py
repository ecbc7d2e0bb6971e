"""Entropy, cross entropy, KL divergence, and Renyi cross entropy (nats)."""

from __future__ import annotations

import numpy as np

from .distributions import CategoricalDistribution
from .errors import AlphabetMismatch, NonPositiveOrder
from .logspace import logsumexp

# Inside this window around order 1 the closed form loses ~6 digits to
# cancellation, so the continuous extension (plain cross entropy) is used.
RENYI_ORDER_ONE_WINDOW = 1e-6


def _check_same_alphabet(p: CategoricalDistribution, q: CategoricalDistribution) -> None:
    if p.K != q.K:
        raise AlphabetMismatch(f"alphabet sizes differ: {p.K} vs {q.K}")


def cross_entropy(p: CategoricalDistribution, q: CategoricalDistribution) -> float:
    """H(p||q) = sum_k p_k log(1/q_k)."""
    _check_same_alphabet(p, q)
    return float(-np.sum(np.exp(p.log_probs) * q.log_probs))


def kl_divergence(p: CategoricalDistribution, q: CategoricalDistribution) -> float:
    """D(p||q) = sum_k p_k log(p_k/q_k); nonnegative, zero iff p == q."""
    _check_same_alphabet(p, q)
    return float(np.sum(np.exp(p.log_probs) * (p.log_probs - q.log_probs)))


def entropy(p: CategoricalDistribution) -> float:
    """H(p) = sum_k p_k log(1/p_k), between 0 and log K."""
    return float(-np.sum(np.exp(p.log_probs) * p.log_probs))


def renyi_cross_entropy(
    p: CategoricalDistribution, q: CategoricalDistribution, t: float
) -> float:
    """Order-t cross entropy (1/(1-t)) log sum_k p_k q_k^(t-1).

    Continuously extended to the plain cross entropy for |t - 1| below
    ``RENYI_ORDER_ONE_WINDOW``.
    """
    _check_same_alphabet(p, q)
    if not t > 0.0:
        raise NonPositiveOrder(f"order must be positive, got {t!r}")
    if abs(t - 1.0) < RENYI_ORDER_ONE_WINDOW:
        return cross_entropy(p, q)
    return logsumexp(p.log_probs + (t - 1.0) * q.log_probs) / (1.0 - t)
