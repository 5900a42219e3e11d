"""Ordered subgraph counts and change statistics.

Counts are over ordered injective vertex tuples: a motif copy is counted once
for every labelling of its vertices that maps motif edges onto graph edges. The
single-edge motif therefore counts ``2 * |E|``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .graph import Graph, slot_index

BUILTIN_KINDS = ("edge", "two_star", "triangle")


@dataclass(frozen=True)
class Motif:
    """A counting pattern on vertices ``1..n_vertices``."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = None

    def __post_init__(self):
        m = self.n_vertices
        if m < 2:
            raise ValueError("a motif needs at least two vertices")
        if not self.edges:
            raise ValueError("a motif needs at least one edge")
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"motif has a loop at {a}")
            if not (1 <= a <= m and 1 <= b <= m):
                raise ValueError(f"motif edge ({a}, {b}) outside 1..{m}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def label(self) -> str:
        """Column-safe name, e.g. ``two_star`` or ``custom4_12_23_34``."""
        if self.name:
            return self.name
        return f"custom{self.n_vertices}_" + "_".join(f"{a}{b}" for a, b in self.edges)

    @property
    def kind(self) -> str | None:
        """Isomorphism class if it is one of the builtin fast-path motifs."""
        m, k = self.n_vertices, len(self.edges)
        if m == 2:
            return "edge"
        if m == 3 and k == 2:
            return "two_star"
        if m == 3 and k == 3:
            return "triangle"
        return None

    def spec(self) -> str:
        """Config-syntax representation (round-trips through ``parse_motif``)."""
        if self.name in BUILTIN_KINDS and BUILTINS[self.name] == self:
            return self.name
        body = ", ".join(f"{a}-{b}" for a, b in self.edges)
        return f"custom({self.n_vertices}; {body})"

    def __eq__(self, other):
        if not isinstance(other, Motif):
            return NotImplemented
        return (self.n_vertices, self.edges) == (other.n_vertices, other.edges)

    def __hash__(self):
        return hash((self.n_vertices, self.edges))


EDGE = Motif(2, ((1, 2),), "edge")
TWO_STAR = Motif(3, ((1, 2), (1, 3)), "two_star")
TRIANGLE = Motif(3, ((1, 2), (1, 3), (2, 3)), "triangle")
BUILTINS = {"edge": EDGE, "two_star": TWO_STAR, "triangle": TRIANGLE}

_CUSTOM_RE = re.compile(r"^custom\(\s*(\d+)\s*;(.*)\)$")


def parse_motif(text: str) -> Motif:
    """Parse ``edge``, ``two_star``, ``triangle`` or ``custom(m; i-j, ...)``."""
    s = text.strip()
    if s in BUILTINS:
        return BUILTINS[s]
    match = _CUSTOM_RE.match(s)
    if not match:
        raise ValueError(f"unknown motif {text!r}")
    m = int(match.group(1))
    edges = []
    for part in match.group(2).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            a, b = (int(t) for t in part.split("-"))
        except ValueError:
            raise ValueError(f"bad motif edge {part!r} in {text!r}") from None
        edges.append((a, b))
    return Motif(m, tuple(edges))


def _check(x: Graph, g: Motif) -> None:
    if g.n_vertices > x.n:
        raise ValueError(
            f"motif with {g.n_vertices} vertices is larger than graph of order {x.n}"
        )


def _neighbor_sets(x: Graph) -> list[set[int]]:
    a = x.to_matrix()
    return [set(np.flatnonzero(row).tolist()) for row in a]


def _back_edges(g: Motif) -> list[list[int]]:
    # for each motif vertex k (0-based), earlier motif vertices it must be adjacent to
    back = [[] for _ in range(g.n_vertices)]
    for a, b in g.edges:
        back[b - 1].append(a - 1)
    return back


def _enumerate(nbrs: list[set[int]], g: Motif, fixed: dict[int, int]) -> int:
    """Count injective assignments extending ``fixed`` (motif pos -> vertex)."""
    m = g.n_vertices
    n = len(nbrs)
    back = _back_edges(g)
    tup = [-1] * m
    used = set(fixed.values())

    def ok(pos, v):
        return all(tup[p] in nbrs[v] for p in back[pos])

    def rec(pos):
        if pos == m:
            return 1
        if pos in fixed:
            v = fixed[pos]
            if not ok(pos, v):
                return 0
            tup[pos] = v
            total = rec(pos + 1)
            tup[pos] = -1
            return total
        total = 0
        for v in range(n):
            if v in used or not ok(pos, v):
                continue
            tup[pos] = v
            used.add(v)
            total += rec(pos + 1)
            used.discard(v)
            tup[pos] = -1
        return total

    return rec(0)


def count_motif_generic(x: Graph, g: Motif) -> int:
    """Ordered count by exhaustive tuple enumeration with pruning."""
    _check(x, g)
    return _enumerate(_neighbor_sets(x), g, {})


def count_motif(x: Graph, g: Motif) -> int:
    """Number of ordered injective vertex tuples whose image contains ``g``."""
    _check(x, g)
    kind = g.kind
    if kind == "edge":
        return 2 * x.edge_count()
    if kind == "two_star":
        d = x.degrees()
        return int(np.sum(d * (d - 1)))
    if kind == "triangle":
        a = x.to_matrix().astype(np.int64)
        return int(np.trace(a @ a @ a))
    return count_motif_generic(x, g)


def count_motif_at_edge(x: Graph, g: Motif, e) -> int:
    """Ordered count restricted to tuples containing both endpoints of ``e``."""
    _check(x, g)
    i, j = e
    slot_index(x.n, i, j)
    nbrs = _neighbor_sets(x)
    total = 0
    for p, q in permutations(range(g.n_vertices), 2):
        total += _enumerate(nbrs, g, {p: i - 1, q: j - 1})
    return total


def change_statistic_generic(x: Graph, g: Motif, e) -> int:
    return count_motif_at_edge(x.with_edge(e, 1), g, e) - count_motif_at_edge(
        x.with_edge(e, 0), g, e
    )


def change_statistic(x: Graph, g: Motif, e) -> int:
    """``N_g(x with e) - N_g(x without e)``; does not depend on the bit at ``e``."""
    _check(x, g)
    i, j = e
    slot_index(x.n, i, j)
    kind = g.kind
    if kind == "edge":
        return 2
    if kind in ("two_star", "triangle"):
        a = x.to_matrix()
        a[i - 1, j - 1] = a[j - 1, i - 1] = 0
        if kind == "two_star":
            return 2 * int(a[i - 1].sum() + a[j - 1].sum())
        return 6 * int(np.dot(a[i - 1].astype(np.int64), a[j - 1]))
    return change_statistic_generic(x, g, e)
