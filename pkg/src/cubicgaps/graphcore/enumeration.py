"""Exhaustive enumeration of connected cubic multigraphs up to isomorphism.

The generator completes the lowest-index vertex that is still short of
degree 3, choosing its next incident edge from a monotone menu (loop,
edge to an already-touched vertex, edge to a fresh vertex).  Forcing the
menu choices at each vertex to be non-decreasing kills most permuted
duplicates cheaply; the survivors are deduplicated exactly by bucketing
on (rounded spectrum, sorted vertex signatures) and running the
backtracking isomorphism test inside each bucket.

Known class counts for n = 2..10 (loops and parallel edges allowed):
2, 5, 17, 71, 388; simple graphs: 1 (n=4), 2, 5, 19.
"""

from __future__ import annotations

import numpy as np

from ..errors import BadInput
from .multigraph import Multigraph, are_isomorphic, canonical_code, signatures, spectrum

__all__ = ["enumerate_cubic_multigraphs", "named_graph", "NAMED_BUILDERS"]


def _generate_raw(n, allow_loops, allow_multi):
    """Yield edge tuples of connected degree-3 graphs on exactly n vertices.

    ``used`` counts how many vertices have been touched so far; vertex
    indices are assigned in first-touch order, which is what makes the
    non-decreasing menu sound.
    """
    deg = [0] * n
    edges = []
    out = []

    def emit():
        # connectivity check on the finished degree sequence
        nbr = [[] for _ in range(n)]
        for u, v in edges:
            if u != v:
                nbr[u].append(v)
                nbr[v].append(u)
        seen = [False] * n
        seen[0] = True
        stack = [0]
        cnt = 1
        while stack:
            u = stack.pop()
            for v in nbr[u]:
                if not seen[v]:
                    seen[v] = True
                    cnt += 1
                    stack.append(v)
        if cnt == n:
            out.append(tuple(edges))

    def fill(v, used, min_choice):
        """Add one more edge at vertex v.  Choices are encoded so that a
        loop is 0, an edge to touched vertex u is 1+u, and an edge to the
        fresh vertex is 1+used; requiring choice >= min_choice makes the
        incident-edge menu at v non-decreasing."""
        if deg[v] == 3:
            rec(used)
            return
        rem = 3 - deg[v]
        if allow_loops and min_choice == 0 and rem >= 2:
            deg[v] += 2
            edges.append((v, v))
            fill(v, used, 1 + v)
            edges.pop()
            deg[v] -= 2
        for u in range(v, used):
            choice = 1 + u
            if choice < min_choice:
                continue
            if deg[u] >= 3 or u == v:
                continue
            if not allow_multi and (v, u) in _edgeset(edges):
                continue
            deg[v] += 1
            deg[u] += 1
            edges.append((v, u) if v <= u else (u, v))
            fill(v, used, choice if allow_multi else choice + 1)
            edges.pop()
            deg[v] -= 1
            deg[u] -= 1
        if used < n:
            u = used
            choice = 1 + u
            if choice >= min_choice:
                deg[v] += 1
                deg[u] += 1
                edges.append((v, u))
                fill(v, used + 1, choice if allow_multi else choice + 1)
                edges.pop()
                deg[v] -= 1
                deg[u] -= 1

    def rec(used):
        v = next((i for i in range(used) if deg[i] < 3), None)
        if v is None:
            if used == n:
                emit()
            return
        fill(v, used, 0)

    deg[0] = 0
    fill(0, 1, 0)
    return out


def _edgeset(edges):
    return set(edges)


def enumerate_cubic_multigraphs(n: int, allow_loops: bool = True, allow_multi: bool = True):
    """All connected cubic multigraphs on n vertices up to isomorphism.

    Deterministic order: ascending by (rounded spectrum, sorted vertex
    signatures, edge list) of the chosen class representatives.
    """
    if n % 2 != 0 or not 2 <= n <= 12:
        raise BadInput("n must be even with 2 <= n <= 12")
    raw = _generate_raw(n, allow_loops, allow_multi)
    buckets = {}
    for edges in raw:
        g = Multigraph(n=n, edges=edges)
        spec_key = tuple(np.round(spectrum(g), 6))
        key = (spec_key, tuple(sorted(signatures(g))))
        buckets.setdefault(key, []).append(g)
    reps = []
    for key in sorted(buckets):
        classes = []
        for g in buckets[key]:
            if not any(are_isomorphic(g, h) for h in classes):
                classes.append(g)
        for g in classes:
            reps.append((key, g))
    reps.sort(key=lambda kg: (kg[0], kg[1].edges))
    return [g for _, g in reps]


# -- small named graphs used as seeds and fixtures -----------------------


def _k4():
    return Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], name="k4")


def _cube():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    return Multigraph(8, edges, name="cube")


def _prism3():
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return Multigraph(6, edges, name="prism3")


def _k33():
    return Multigraph(6, [(u, v) for u in (0, 1, 2) for v in (3, 4, 5)], name="k33")


def _theta_loop():
    # one loop, a cut edge into a theta block: spectrum {-2, -1, 2, 3}
    return Multigraph(4, [(0, 0), (0, 1), (1, 2), (1, 3), (2, 3), (2, 3)],
                      name="theta_loop")


def _star_loops():
    # center joined to three looped leaves: spectrum {-1, 2, 2, 3}
    return Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)],
                      name="star_loops")


NAMED_BUILDERS = {
    "k4": _k4,
    "cube": _cube,
    "prism3": _prism3,
    "k33": _k33,
    "theta_loop": _theta_loop,
    "star_loops": _star_loops,
}


def named_graph(name: str) -> Multigraph:
    try:
        return NAMED_BUILDERS[name]()
    except KeyError:
        raise BadInput(f"unknown graph name {name!r}; have {sorted(NAMED_BUILDERS)}")


def graph_id(G: Multigraph) -> str:
    """Short hex id from the canonical form (small graphs only)."""
    import hashlib

    return hashlib.sha256(canonical_code(G)).hexdigest()[:16]
