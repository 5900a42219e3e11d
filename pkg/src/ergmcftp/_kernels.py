"""Compiled Glauber updates on dense adjacency matrices.

Only the builtin motif classes are supported here (codes below); models with
custom motifs run on the pure-Python reference path. Arithmetic mirrors
``ErgmModel.log_odds`` / ``glauber_update`` operation for operation so both
paths make identical decisions for the same ``(slot, u)`` stream.
"""
import math

import numpy as np
from numba import njit

EDGE_CODE, TWO_STAR_CODE, TRIANGLE_CODE = 0, 1, 2
KIND_CODES = {"edge": EDGE_CODE, "two_star": TWO_STAR_CODE, "triangle": TRIANGLE_CODE}


def model_arrays(model):
    codes = np.array([KIND_CODES[g.kind] for g in model.motifs], dtype=np.int64)
    beta = np.array(model.beta, dtype=np.float64)
    scales = np.array(model.scales, dtype=np.float64)
    return codes, beta, scales


@njit(cache=True)
def _delta(adj, deg, i, j, code):
    if code == EDGE_CODE:
        return 2
    if code == TWO_STAR_CODE:
        a = np.int64(adj[i, j])
        return 2 * (deg[i] + deg[j] - 2 * a)
    c = 0
    for v in range(adj.shape[0]):
        c += adj[i, v] & adj[j, v]
    return 6 * c


@njit(cache=True)
def _logistic(t):
    if t >= 0:
        return 1.0 / (1.0 + math.exp(-t))
    z = math.exp(t)
    return z / (1.0 + z)


@njit(cache=True)
def _step(adj, deg, i, j, u, codes, beta, scales, deltas):
    """Apply one update; fills ``deltas`` and returns new_bit - old_bit."""
    t = 0.0
    for k in range(codes.shape[0]):
        d = _delta(adj, deg, i, j, codes[k])
        deltas[k] = d
        t += beta[k] * d / scales[k]
    p0 = 1.0 - _logistic(t)
    new = 0 if u <= p0 else 1
    old = np.int64(adj[i, j])
    if new != old:
        adj[i, j] = new
        adj[j, i] = new
        s = 1 if new else -1
        deg[i] += s
        deg[j] += s
    return new - old


@njit(cache=True)
def apply_updates(adj, deg, slot_i, slot_j, slots, us, start, stop, step, codes, beta, scales):
    """Apply records ``start, start+step, ...`` (exclusive ``stop``) in place."""
    deltas = np.zeros(codes.shape[0], dtype=np.int64)
    for t in range(start, stop, step):
        k = slots[t]
        _step(adj, deg, slot_i[k], slot_j[k], us[t], codes, beta, scales, deltas)


@njit(cache=True, nogil=True)
def sandwich_pass(n, slot_i, slot_j, slots, us, depth, codes, beta, scales):
    """Run the chains from the complete and empty graphs through records
    ``depth-1, ..., 0`` (time ``-depth`` up to ``-1``).

    Returns ``(coalesced, upper, lower)``. Once the two chains agree they are
    carried forward as one.
    """
    upper = np.ones((n, n), dtype=np.uint8)
    for v in range(n):
        upper[v, v] = 0
    lower = np.zeros((n, n), dtype=np.uint8)
    deg_u = np.full(n, n - 1, dtype=np.int64)
    deg_l = np.zeros(n, dtype=np.int64)
    deltas = np.zeros(codes.shape[0], dtype=np.int64)
    diff = n * (n - 1) // 2
    t = depth - 1
    while t >= 0 and diff > 0:
        k = slots[t]
        i = slot_i[k]
        j = slot_j[k]
        before = upper[i, j] != lower[i, j]
        _step(upper, deg_u, i, j, us[t], codes, beta, scales, deltas)
        _step(lower, deg_l, i, j, us[t], codes, beta, scales, deltas)
        after = upper[i, j] != lower[i, j]
        diff += np.int64(after) - np.int64(before)
        t -= 1
    while t >= 0:
        k = slots[t]
        _step(lower, deg_l, slot_i[k], slot_j[k], us[t], codes, beta, scales, deltas)
        t -= 1
    if diff == 0:
        upper[:, :] = lower
    return diff == 0, upper, lower


@njit(cache=True, nogil=True)
def forward_block(adj, deg, counts, slot_i, slot_j, slots, us, codes, beta, scales,
                  first_step, stride, rec_steps, rec_counts, rec_n):
    """Forward updates for one randomness block, maintaining ordered counts.

    Record ``t`` of the block is global step ``first_step + t``. Steps that
    are multiples of ``stride`` are appended to ``rec_*`` starting at row
    ``rec_n``; the new row count is returned.
    """
    deltas = np.zeros(codes.shape[0], dtype=np.int64)
    for t in range(slots.shape[0]):
        k = slots[t]
        flip = _step(adj, deg, slot_i[k], slot_j[k], us[t], codes, beta, scales, deltas)
        if flip != 0:
            for m in range(codes.shape[0]):
                counts[m] += flip * deltas[m]
        step = first_step + t
        if stride > 0 and step % stride == 0:
            rec_steps[rec_n] = step
            for m in range(codes.shape[0]):
                rec_counts[rec_n, m] = counts[m]
            rec_n += 1
    return rec_n


@njit(cache=True, nogil=True)
def coupled_forward_block(upper, deg_u, lower, deg_l, diff, slot_i, slot_j, slots, us,
                          codes, beta, scales):
    """Forward chains sharing randomness; returns ``(t, diff)`` where ``t`` is
    the first block index after which they agree, or -1."""
    deltas = np.zeros(codes.shape[0], dtype=np.int64)
    for t in range(slots.shape[0]):
        k = slots[t]
        i = slot_i[k]
        j = slot_j[k]
        before = upper[i, j] != lower[i, j]
        _step(upper, deg_u, i, j, us[t], codes, beta, scales, deltas)
        _step(lower, deg_l, i, j, us[t], codes, beta, scales, deltas)
        after = upper[i, j] != lower[i, j]
        diff += np.int64(after) - np.int64(before)
        if diff == 0:
            return t, diff
    return -1, diff
