"""Forward Glauber chains: approximate sampling, traces and coupling times."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import Graph, complete_graph, empty_graph, n_slots, slot_arrays
from .model import ErgmModel
from .motifs import count_motif

BLOCK = 4096


@dataclass
class ChainTrace:
    """Ordered motif counts recorded every ``stride`` steps.

    ``counts[r, k]`` is the ordered count of ``motif_names[k]`` at
    ``steps[r]``. The edge column is ``counts[:, 0] // 2``.
    """

    model_id: str
    initial: str
    stride: int
    motif_names: list[str]
    steps: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    counts: np.ndarray = field(default_factory=lambda: np.empty((0, 0), dtype=np.int64))

    def __len__(self):
        return int(self.steps.shape[0])

    @property
    def edges(self) -> np.ndarray:
        return self.counts[:, 0] // 2

    def rows(self) -> list[tuple[int, ...]]:
        return [
            (int(s), int(c[0]) // 2, *(int(v) for v in c[1:]))
            for s, c in zip(self.steps, self.counts)
        ]

    def header(self) -> list[str]:
        return ["step", "edges", *self.motif_names[1:]]


def _model_id(model: ErgmModel) -> str:
    motifs = ",".join(g.label for g in model.motifs)
    beta = ",".join(repr(b) for b in model.beta)
    return f"N={model.n_vertices};motifs=[{motifs}];beta=[{beta}]"


def erdos_renyi(n: int, p: float, seed) -> Graph:
    """Each slot present independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    rng = np.random.default_rng(seed)
    return Graph.from_slot_array(n, rng.random(n_slots(n)) < p)


def _forward_python(model, x, n_steps, rng, stride, trace_rows):
    iu, ju = slot_arrays(model.n_vertices)
    counts = [count_motif(x, g) for g in model.motifs]
    done = 0
    while done < n_steps:
        size = BLOCK
        slots = rng.integers(0, len(iu), size=size)
        us = rng.random(size)
        for t in range(min(size, n_steps - done)):
            e = (int(iu[slots[t]]) + 1, int(ju[slots[t]]) + 1)
            old = x[e]
            deltas = model.change_statistics(x, e)
            x = model.glauber_update(x, e, float(us[t]))
            flip = x[e] - old
            if flip:
                counts = [c + flip * d for c, d in zip(counts, deltas)]
            step = done + t + 1
            if stride and step % stride == 0:
                trace_rows.append((step, list(counts)))
        done += size
    return x


def forward_run(model: ErgmModel, x0: Graph, n_steps: int, seed, record_stride: int = 100,
                initial: str = "custom", use_kernel: bool | None = None):
    """Run ``n_steps`` forward Glauber updates from ``x0`` with fresh randomness.

    Returns the final graph and a trace with one record per multiple of
    ``record_stride`` (the initial state is not recorded).
    """
    if x0.n != model.n_vertices:
        raise ValueError("graph order does not match the model")
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if record_stride < 0:
        raise ValueError("record_stride must be >= 0")
    if use_kernel is None:
        use_kernel = model.fast_kernel
    names = [g.label for g in model.motifs]
    trace = ChainTrace(_model_id(model), initial, record_stride, names)
    s = len(model.motifs)
    n_rec = n_steps // record_stride if record_stride else 0
    rng = np.random.default_rng(seed)

    if not use_kernel:
        rows: list = []
        x = _forward_python(model, x0, n_steps, rng, record_stride, rows)
        trace.steps = np.array([r[0] for r in rows], dtype=np.int64)
        trace.counts = np.array([r[1] for r in rows], dtype=np.int64).reshape(len(rows), s)
        return x, trace

    codes, beta, scales = _kernels.model_arrays(model)
    iu, ju = slot_arrays(model.n_vertices)
    adj = x0.to_matrix()
    deg = adj.sum(axis=1, dtype=np.int64)
    counts = np.array([count_motif(x0, g) for g in model.motifs], dtype=np.int64)
    rec_steps = np.zeros(n_rec, dtype=np.int64)
    rec_counts = np.zeros((n_rec, s), dtype=np.int64)
    rec_n = 0
    done = 0
    while done < n_steps:
        slots = rng.integers(0, len(iu), size=BLOCK)
        us = rng.random(BLOCK)
        take = min(BLOCK, n_steps - done)
        rec_n = _kernels.forward_block(
            adj, deg, counts, iu, ju, slots[:take], us[:take], codes, beta, scales,
            done + 1, record_stride, rec_steps, rec_counts, rec_n,
        )
        done += BLOCK
    trace.steps = rec_steps[:rec_n]
    trace.counts = rec_counts[:rec_n]
    return Graph.from_matrix(adj), trace


def forward_coalescence_times(model: ErgmModel, runs: int, seed, max_steps: int) -> np.ndarray:
    """Coupling times of forward chains started at the empty and complete graphs.

    Both chains share every ``(slot, u)``. Entry ``r`` is the first ``n > 0``
    at which the chains agree, or ``-1`` if they still differ after
    ``max_steps``. Runs use independent child seeds of ``seed``.
    """
    model.require_monotone()
    if not model.fast_kernel:
        raise NotImplementedError("forward coupling times need builtin motifs")
    codes, beta, scales = _kernels.model_arrays(model)
    N = model.n_vertices
    iu, ju = slot_arrays(N)
    children = np.random.SeedSequence(seed).spawn(runs)
    out = np.full(runs, -1, dtype=np.int64)
    for r, child in enumerate(children):
        rng = np.random.default_rng(child)
        upper = complete_graph(N).to_matrix()
        lower = empty_graph(N).to_matrix()
        deg_u = upper.sum(axis=1, dtype=np.int64)
        deg_l = np.zeros(N, dtype=np.int64)
        diff = n_slots(N)
        done = 0
        while done < max_steps:
            take = min(BLOCK, max_steps - done)
            slots = rng.integers(0, len(iu), size=BLOCK)[:take]
            us = rng.random(BLOCK)[:take]
            t, diff = _kernels.coupled_forward_block(
                upper, deg_u, lower, deg_l, diff, iu, ju, slots, us, codes, beta, scales
            )
            if t >= 0:
                out[r] = done + t + 1
                break
            done += take
    return out


def empirical_coalescence_curve(model: ErgmModel, depths: Sequence[int], runs_per_depth: int,
                                seed) -> dict[int, float]:
    """Fraction of coupled forward runs whose chains agree at each depth.

    One set of ``runs_per_depth`` runs is reused for every depth, so the curve
    is non-decreasing by construction.
    """
    depths = [int(d) for d in depths]
    if any(d < 0 for d in depths):
        raise ValueError("depths must be >= 0")
    times = forward_coalescence_times(model, runs_per_depth, seed, max(depths, default=0))
    met = np.where(times < 0, np.iinfo(np.int64).max, times)
    return {d: float(np.mean(met <= d)) if d > 0 else 0.0 for d in depths}


def replicate_runs(model: ErgmModel, initial_states: Iterable[Graph], n_steps: int,
                   seeds: Sequence[int], record_stride: int = 100, initial: str = "custom"):
    return [
        forward_run(model, x0, n_steps, s, record_stride, initial)
        for x0, s in zip(initial_states, seeds)
    ]
