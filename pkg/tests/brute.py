"""Independent brute-force oracles used by the tests.

Nothing here calls into the fast paths or the pruned enumerator.
"""
from itertools import permutations


def contains(x, tup, g):
    return all(x.has_edge(tup[a - 1] + 1, tup[b - 1] + 1) for a, b in g.edges)


def count_all(x, g):
    return sum(contains(x, t, g) for t in permutations(range(x.n), g.n_vertices))


def count_through(x, g, e):
    i, j = e[0] - 1, e[1] - 1
    return sum(
        contains(x, t, g)
        for t in permutations(range(x.n), g.n_vertices)
        if i in t and j in t
    )


def change(x, g, e):
    return count_all(x.with_edge(e, 1), g) - count_all(x.with_edge(e, 0), g)
