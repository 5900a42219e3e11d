"""ERGM weights, the single-edge Glauber conditional and its update function."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, slot_pair
from .motifs import EDGE, Motif, change_statistic, count_motif


class NotMonotoneError(ValueError):
    """Raised when an operation requires beta_k >= 0 for every k >= 2."""


def logistic(t: float) -> float:
    """``1 / (1 + exp(-t))`` without overflow for large ``|t|``."""
    if t >= 0:
        return 1.0 / (1.0 + math.exp(-t))
    z = math.exp(t)
    return z / (1.0 + z)


@dataclass(frozen=True)
class ErgmModel:
    """Exponential random graph model on ``n_vertices`` vertices.

    ``motifs[0]`` must be the single-edge motif. Each motif's ordered count is
    divided by ``N ** (m_k - 2)`` before being weighted by ``beta[k]``.
    """

    n_vertices: int
    motifs: tuple[Motif, ...]
    beta: tuple[float, ...]
    scales: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "motifs", tuple(self.motifs))
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        n = self.n_vertices
        if n < 2:
            raise ValueError("model needs at least two vertices")
        if not self.motifs:
            raise ValueError("model needs at least one motif")
        if self.motifs[0] != EDGE:
            raise ValueError("the first motif must be the single-edge motif")
        if len(self.beta) != len(self.motifs):
            raise ValueError(
                f"{len(self.beta)} parameters given for {len(self.motifs)} motifs"
            )
        if not all(math.isfinite(b) for b in self.beta):
            raise ValueError("parameters must be finite")
        for g in self.motifs:
            if g.n_vertices > n:
                raise ValueError(f"motif {g.label} does not fit in N={n}")
        object.__setattr__(
            self, "scales", tuple(float(n) ** (g.n_vertices - 2) for g in self.motifs)
        )

    @classmethod
    def build(cls, n: int, motifs: Sequence[Motif], beta: Sequence[float]):
        return cls(n, tuple(motifs), tuple(beta))

    def is_monotone(self) -> bool:
        return all(b >= 0 for b in self.beta[1:])

    def require_monotone(self) -> None:
        if not self.is_monotone():
            raise NotMonotoneError(
                "model not monotone: every parameter after the edge term must be >= 0"
            )

    @property
    def fast_kernel(self) -> bool:
        """True when every motif has a compiled change-statistic fast path."""
        return all(g.kind is not None for g in self.motifs)

    def _check(self, x: Graph) -> None:
        if x.n != self.n_vertices:
            raise ValueError(f"graph has order {x.n}, model expects {self.n_vertices}")

    def log_weight(self, x: Graph) -> float:
        self._check(x)
        return sum(
            b * count_motif(x, g) / s
            for b, g, s in zip(self.beta, self.motifs, self.scales)
        )

    def change_statistics(self, x: Graph, e) -> list[int]:
        self._check(x)
        return [change_statistic(x, g, e) for g in self.motifs]

    def log_odds(self, x: Graph, e) -> float:
        """``log p(x_e = 1 | rest) - log p(x_e = 0 | rest)``."""
        total = 0.0
        for b, d, s in zip(self.beta, self.change_statistics(x, e), self.scales):
            total += b * d / s
        return total

    def glauber_p1(self, x: Graph, e) -> float:
        return logistic(self.log_odds(x, e))

    def glauber_update(self, x: Graph, e, u: float) -> Graph:
        """Set slot ``e`` to 0 if ``u <= p(x_e = 0 | rest)``, otherwise to 1."""
        if not 0.0 <= u <= 1.0:
            raise ValueError(f"u must lie in [0, 1], got {u!r}")
        p0 = 1.0 - self.glauber_p1(x, e)
        return x.with_edge(e, 0 if u <= p0 else 1)


def log_weight(model: ErgmModel, x: Graph) -> float:
    return model.log_weight(x)


def glauber_p1(model: ErgmModel, x: Graph, e) -> float:
    return model.glauber_p1(x, e)


def glauber_update(model: ErgmModel, x: Graph, e, u: float) -> Graph:
    return model.glauber_update(x, e, u)


def is_monotone(model: ErgmModel) -> bool:
    return model.is_monotone()


def update_slot(model: ErgmModel, x: Graph, k: int, u: float) -> Graph:
    """``glauber_update`` addressed by canonical slot index."""
    return model.glauber_update(x, slot_pair(x.n, k), u)


__all__ = [
    "ErgmModel",
    "NotMonotoneError",
    "glauber_p1",
    "glauber_update",
    "is_monotone",
    "log_weight",
    "logistic",
    "update_slot",
]
