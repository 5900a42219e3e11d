"""Monotone coupling from the past over single-edge Glauber dynamics."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .graph import Graph, complete_graph, empty_graph, leq, n_slots, slot_arrays
from .model import ErgmModel

SCHEDULES = ("unit", "doubling")
DEFAULT_MAX_DEPTH = 2**30


class CoalescenceError(RuntimeError):
    """No coalescence up to the depth limit.

    ``bracket`` is ``(last_failed_depth, max_depth)``.
    """

    def __init__(self, message, bracket):
        super().__init__(message)
        self.bracket = bracket


class RandomnessStream:
    """Replayable records ``(slot, u)`` for times -1, -2, ...

    Record ``k`` (0-based) belongs to time ``-(k + 1)``. Records are drawn from
    a PCG64 generator in fixed-size blocks, so the content of the stream is a
    function of ``(seed, slot count)`` only, whatever depth is requested first.
    """

    BLOCK = 4096

    def __init__(self, slot_count: int, seed: int):
        if slot_count < 1:
            raise ValueError("slot_count must be positive")
        self.slot_count = int(slot_count)
        self.seed = int(seed)
        self._rng = np.random.Generator(np.random.PCG64(self.seed))
        self._slots = np.empty(0, dtype=np.int64)
        self._us = np.empty(0, dtype=np.float64)
        self._size = 0

    def __len__(self):
        return self._size

    def _grow(self, depth: int) -> None:
        blocks = -(-(depth - self._size) // self.BLOCK)
        new_size = self._size + blocks * self.BLOCK
        if new_size > self._slots.shape[0]:
            cap = max(new_size, 2 * self._slots.shape[0])
            slots = np.empty(cap, dtype=np.int64)
            us = np.empty(cap, dtype=np.float64)
            slots[: self._size] = self._slots[: self._size]
            us[: self._size] = self._us[: self._size]
            self._slots, self._us = slots, us
        for _ in range(blocks):
            lo = self._size
            self._slots[lo : lo + self.BLOCK] = self._rng.integers(
                0, self.slot_count, size=self.BLOCK
            )
            self._us[lo : lo + self.BLOCK] = self._rng.random(self.BLOCK)
            self._size += self.BLOCK

    def ensure(self, depth: int) -> None:
        if depth > self._size:
            self._grow(depth)

    def arrays(self, depth: int) -> tuple[np.ndarray, np.ndarray]:
        """Records for times ``-1 .. -depth`` (index 0 is time -1)."""
        self.ensure(depth)
        return self._slots[:depth], self._us[:depth]

    def record(self, k: int) -> tuple[int, float]:
        """Record for time ``-k``, ``k >= 1``."""
        if k < 1:
            raise ValueError("time index must be >= 1")
        self.ensure(k)
        return int(self._slots[k - 1]), float(self._us[k - 1])


@dataclass(frozen=True)
class CftpResult:
    sample: Graph
    stop_time: int
    passes: int
    schedule: str
    seed: int
    wall_time: float


def backward_map(model: ErgmModel, stream: RandomnessStream, n: int, x0: Graph) -> Graph:
    """Apply the updates of times ``-n, ..., -1`` to ``x0`` (reference path)."""
    if x0.n != model.n_vertices:
        raise ValueError("graph order does not match the model")
    x = x0
    for k in range(n, 0, -1):
        slot, u = stream.record(k)
        iu, ju = slot_arrays(x.n)
        x = model.glauber_update(x, (int(iu[slot]) + 1, int(ju[slot]) + 1), u)
    return x


def sandwich_reference(model: ErgmModel, stream: RandomnessStream, n: int,
                       check: bool = True) -> tuple[Graph, Graph]:
    """Reference sandwich pass on ``Graph`` values.

    With ``check`` set, asserts ``lower <= upper`` after every update.
    """
    N = model.n_vertices
    upper, lower = complete_graph(N), empty_graph(N)
    iu, ju = slot_arrays(N)
    for k in range(n, 0, -1):
        slot, u = stream.record(k)
        e = (int(iu[slot]) + 1, int(ju[slot]) + 1)
        upper = model.glauber_update(upper, e, u)
        lower = model.glauber_update(lower, e, u)
        if check:
            assert leq(lower, upper), f"sandwich violated at time -{k}"
    return upper, lower


def _pass(model, stream, depth, arrays):
    """One sandwich pass; returns ``(coalesced, upper, lower)``."""
    if arrays is None:
        upper, lower = sandwich_reference(model, stream, depth, check=False)
        return upper == lower, upper, lower
    codes, beta, scales = arrays
    slots, us = stream.arrays(depth)
    iu, ju = slot_arrays(model.n_vertices)
    return _kernels.sandwich_pass(
        model.n_vertices, iu, ju, slots, us, depth, codes, beta, scales
    )


def _depths(schedule: str, max_depth: int, initial_depth: int):
    if schedule == "unit":
        n = 1
        while n <= max_depth:
            yield n
            n += 1
    elif schedule == "doubling":
        n = initial_depth
        while n < max_depth:
            yield n
            n *= 2
        yield max_depth
    else:
        raise ValueError(f"unknown schedule {schedule!r}; expected one of {SCHEDULES}")


def run_cftp(model: ErgmModel, seed: int, schedule: str = "doubling",
             max_depth: int = DEFAULT_MAX_DEPTH, initial_depth: int = 1,
             use_kernel: bool | None = None) -> CftpResult:
    """Draw one exact sample from ``model``.

    ``schedule="unit"`` tries depths 1, 2, 3, ... and reports the minimal
    coalescing depth; ``"doubling"`` tries ``initial_depth * 2**p`` (capped at
    ``max_depth``). Every pass restarts from the extreme graphs and replays the
    same stream.
    """
    model.require_monotone()
    if max_depth < 1 or initial_depth < 1:
        raise ValueError("depths must be >= 1")
    if schedule not in SCHEDULES:
        raise ValueError(f"unknown schedule {schedule!r}; expected one of {SCHEDULES}")
    if use_kernel is None:
        use_kernel = model.fast_kernel
    arrays = _kernels.model_arrays(model) if use_kernel else None
    stream = RandomnessStream(n_slots(model.n_vertices), seed)
    start = time.perf_counter()
    passes = 0
    last = 0
    for depth in _depths(schedule, max_depth, initial_depth):
        passes += 1
        coalesced, _, lower = _pass(model, stream, depth, arrays)
        if coalesced:
            if not isinstance(lower, Graph):
                lower = Graph.from_matrix(lower)
            return CftpResult(
                sample=lower,
                stop_time=depth,
                passes=passes,
                schedule=schedule,
                seed=int(seed),
                wall_time=time.perf_counter() - start,
            )
        last = depth
    raise CoalescenceError(
        f"no coalescence up to depth {max_depth} (seed {seed})", (last, max_depth)
    )


def run_cftp_batch(model: ErgmModel, seeds: Sequence[int], schedule: str = "doubling",
                   max_depth: int = DEFAULT_MAX_DEPTH, workers: int = 1,
                   **kwargs) -> list[CftpResult]:
    """One independent run per seed; results follow the order of ``seeds``."""
    model.require_monotone()

    def one(s):
        return run_cftp(model, s, schedule, max_depth, **kwargs)

    if workers <= 1:
        return [one(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, seeds))
