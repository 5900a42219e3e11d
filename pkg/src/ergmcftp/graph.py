"""Undirected simple graphs stored as a bit set over the unordered vertex pairs.

Vertices are labelled ``1..N``. Slot ``k`` of the bit set is the ``k``-th pair
``(i, j)``, ``i < j``, in lexicographic order, so the integer ``Graph.bits`` is
also the state index used by the exact oracle.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np


class EdgeSlot(NamedTuple):
    i: int
    j: int


def n_slots(n: int) -> int:
    return n * (n - 1) // 2


def _check_order(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"graph order must be an integer >= 2, got {n!r}")


def slot_index(n: int, i: int, j: int) -> int:
    """Canonical index of the pair ``{i, j}`` (1-based labels, either order)."""
    if i > j:
        i, j = j, i
    if not (1 <= i < j <= n):
        raise ValueError(f"invalid vertex pair ({i}, {j}) for N={n}")
    # pairs starting with a < i: sum_{a=1}^{i-1} (n - a)
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def _slot_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(n, 1)
    iu = iu.astype(np.int64)
    ju = ju.astype(np.int64)
    iu.setflags(write=False)
    ju.setflags(write=False)
    return iu, ju


def slot_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based endpoint arrays ``(i, j)`` indexed by canonical slot index."""
    _check_order(n)
    return _slot_table(int(n))


def edge_slots(n: int) -> list[EdgeSlot]:
    """All pairs ``(i, j)``, ``1 <= i < j <= n``, in canonical order."""
    _check_order(n)
    return [EdgeSlot(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def slot_pair(n: int, k: int) -> EdgeSlot:
    iu, ju = slot_arrays(n)
    return EdgeSlot(int(iu[k]) + 1, int(ju[k]) + 1)


class Graph:
    """Immutable undirected simple graph on ``n`` labelled vertices.

    Equality and hashing are bitwise on the adjacency.
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        _check_order(n)
        n = int(n)
        if bits < 0 or bits >> n_slots(n):
            raise ValueError("bit pattern does not fit the slot count")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        bits = 0
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop ({i}, {i}) is not allowed")
            bits |= 1 << slot_index(n, i, j)
        return cls(n, bits)

    @classmethod
    def from_slot_array(cls, n: int, arr) -> "Graph":
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.shape != (n_slots(n),):
            raise ValueError("slot array has the wrong length")
        packed = np.packbits(arr, bitorder="little").tobytes()
        return cls(n, int.from_bytes(packed, "little"))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if np.any(np.diag(a)):
            raise ValueError("adjacency matrix has self-loops")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix is not symmetric")
        iu, ju = slot_arrays(n)
        return cls.from_slot_array(n, a[iu, ju] != 0)

    # queries --------------------------------------------------------------

    @property
    def n_slots(self) -> int:
        return n_slots(self.n)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.bits >> slot_index(self.n, i, j)) & 1)

    def __getitem__(self, e) -> int:
        i, j = e
        return int(self.has_edge(i, j))

    def edge_count(self) -> int:
        return self.bits.bit_count()

    def edges(self) -> list[EdgeSlot]:
        arr = self.to_slot_array()
        return [slot_pair(self.n, int(k)) for k in np.flatnonzero(arr)]

    def to_slot_array(self) -> np.ndarray:
        m = self.n_slots
        raw = self.bits.to_bytes((m + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:m]

    def to_matrix(self) -> np.ndarray:
        """Dense symmetric ``uint8`` adjacency matrix (0-based)."""
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        iu, ju = slot_arrays(self.n)
        s = self.to_slot_array()
        a[iu, ju] = s
        a[ju, iu] = s
        return a

    def degrees(self) -> np.ndarray:
        return self.to_matrix().sum(axis=1, dtype=np.int64)

    def neighbors(self, v: int) -> list[int]:
        row = self.to_matrix()[v - 1]
        return [int(u) + 1 for u in np.flatnonzero(row)]

    # modification ---------------------------------------------------------

    def with_edge(self, e, a: int) -> "Graph":
        """Return the graph with slot ``e`` set to ``a``; ``self`` is unchanged."""
        i, j = e
        k = slot_index(self.n, i, j)
        if a:
            return Graph(self.n, self.bits | (1 << k))
        return Graph(self.n, self.bits & ~(1 << k))

    # dunder ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def empty_graph(n: int) -> Graph:
    return Graph(n, 0)


def complete_graph(n: int) -> Graph:
    _check_order(n)
    return Graph(n, (1 << n_slots(n)) - 1)


def with_edge(x: Graph, e, a: int) -> Graph:
    return x.with_edge(e, a)


def leq(x: Graph, y: Graph) -> bool:
    """Partial order: every edge of ``x`` is an edge of ``y``."""
    if x.n != y.n:
        raise ValueError(f"graphs have different orders ({x.n} vs {y.n})")
    return x.bits & ~y.bits == 0


# edge-list text format ------------------------------------------------------


def format_edge_list(x: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(f"N {x.n}")
    lines.extend(f"{i} {j}" for i, j in x.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "N":
                raise ValueError(f"expected 'N <n>' header, got {line!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if not i < j:
            raise ValueError(f"edge line must have i < j, got {line!r}")
        edges.append((i, j))
    if n is None:
        raise ValueError("missing 'N <n>' header")
    return Graph.from_edges(n, edges)


def write_edge_list(path, x: Graph, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(x, comments))


def read_edge_list(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())
