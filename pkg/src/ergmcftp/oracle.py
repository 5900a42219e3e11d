"""Brute-force ground truth for tiny graphs (N <= 5).

States are indexed by adjacency bit pattern: state ``s`` is ``Graph(N, s)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .graph import Graph, n_slots, slot_pair
from .model import ErgmModel

MAX_ORACLE_N = 5


class MixingNotReached(RuntimeError):
    pass


@dataclass(frozen=True)
class ExactDistribution:
    n_vertices: int
    probabilities: np.ndarray
    log_z: float

    def __len__(self):
        return self.probabilities.shape[0]


def _check_size(model: ErgmModel) -> int:
    n = model.n_vertices
    if n > MAX_ORACLE_N:
        raise ValueError(
            f"exact computations are limited to N <= {MAX_ORACLE_N} "
            f"(N={n} has 2^{n_slots(n)} states)"
        )
    return 1 << n_slots(n)


def exact_distribution(model: ErgmModel) -> ExactDistribution:
    n_states = _check_size(model)
    n = model.n_vertices
    logw = np.array([model.log_weight(Graph(n, s)) for s in range(n_states)])
    log_z = float(logsumexp(logw))
    return ExactDistribution(n, np.exp(logw - log_z), log_z)


def exact_transition_matrix(model: ErgmModel) -> np.ndarray:
    """Row-stochastic Glauber kernel with a uniformly chosen slot."""
    n_states = _check_size(model)
    n = model.n_vertices
    m = n_slots(n)
    slots = [slot_pair(n, k) for k in range(m)]
    P = np.zeros((n_states, n_states))
    for s in range(n_states):
        x = Graph(n, s)
        for k, e in enumerate(slots):
            p1 = model.glauber_p1(x, e)
            P[s, s | (1 << k)] += p1 / m
            P[s, s & ~(1 << k)] += (1.0 - p1) / m
    return P


def tv_distance(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


def _max_pairwise_tv(R: np.ndarray) -> float:
    best = 0.0
    for x in range(R.shape[0] - 1):
        d = 0.5 * np.abs(R[x + 1 :] - R[x]).sum(axis=1)
        best = max(best, float(d.max()))
    return best


def dbar_curve(P: np.ndarray, n_max: int) -> np.ndarray:
    """``dbar[n]`` for ``n = 0..n_max``: worst TV distance between rows of P^n."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    P = np.asarray(P, dtype=float)
    R = np.eye(P.shape[0])
    out = np.empty(n_max + 1)
    out[0] = _max_pairwise_tv(R)
    for n in range(1, n_max + 1):
        R = R @ P
        out[n] = _max_pairwise_tv(R)
    return out


def exact_t_mix(P: np.ndarray, threshold: float = 1 / math.e, n_max: int = 100_000) -> int:
    """Smallest ``n > 0`` with ``dbar(n) <= threshold``."""
    P = np.asarray(P, dtype=float)
    R = np.eye(P.shape[0])
    for n in range(1, n_max + 1):
        R = R @ P
        if _max_pairwise_tv(R) <= threshold:
            return n
    raise MixingNotReached(f"dbar did not reach {threshold} within {n_max} steps")


def empirical_distribution(samples, n_vertices: int) -> np.ndarray:
    """Relative frequencies of sampled graphs over all ``2^(N(N-1)/2)`` states."""
    n_states = 1 << n_slots(n_vertices)
    counts = np.zeros(n_states)
    for g in samples:
        counts[g.bits if isinstance(g, Graph) else int(g)] += 1
    return counts / counts.sum()


def format_oracle_csv(dist: ExactDistribution, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append("state_bits,probability")
    lines.extend(f"{s},{p:.17g}" for s, p in enumerate(dist.probabilities))
    return "\n".join(lines) + "\n"
