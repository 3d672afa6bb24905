"""The vertex-to-triangle map on cubic multigraphs and its inverse.

tmap replaces every vertex by a triangle and joins triangles along the
original edges (equivalently: subdivide every edge, then take the line
graph).  It triples the vertex count, preserves cubicity, planarity and
connectivity, and acts on spectra by a fixed quadratic substitution:
each eigenvalue y of the input contributes the two roots of
x^2 - x - 3 = y, and the remaining n/2 + n/2 slots are filled by 0 and
-2.  tmap_spectrum_predict computes that prediction; tmap_inverse
recovers the source graph from a triangle partition when one exists.
"""

from __future__ import annotations

import numpy as np

from ..errors import BadInput
from ..graphcore.multigraph import Multigraph, are_isomorphic
from .quadratic import f_preimage

__all__ = ["tmap", "tmap_spectrum_predict", "tmap_inverse", "NotInImage"]


class NotInImage:
    """Sentinel value: the graph is not tmap of anything."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotInImage"

    def __bool__(self):
        return False


NOT_IN_IMAGE = NotInImage()


def tmap(G: Multigraph) -> Multigraph:
    """Replace each vertex by a triangle; output has 3|G| vertices.

    Vertex v's triangle sits on slots 3v, 3v+1, 3v+2.  Every original
    edge connects one free slot at each endpoint; a loop at v connects
    two of v's own slots with an extra edge parallel to the triangle
    side.  Half-loops have no line-graph reading here and are rejected.
    """
    G.require_cubic("tmap input")
    if G.half_loops:
        raise BadInput("tmap is defined for ordinary multigraphs only")
    nxt = [0] * G.n

    def take(v):
        s = 3 * v + nxt[v]
        nxt[v] += 1
        return s

    edges = []
    for u, v in G.edges:
        if u == v:
            edges.append((take(u), take(u)))
        else:
            edges.append((take(u), take(v)))
    for v in range(G.n):
        base = 3 * v
        edges += [(base, base + 1), (base, base + 2), (base + 1, base + 2)]
    return Multigraph(3 * G.n, edges, name=f"tmap({G.name})" if G.name else "")


def tmap_spectrum_predict(sigma) -> np.ndarray:
    """Predicted spectrum of tmap(G) from the spectrum of G.

    Input of even size n gives 2n quadratic preimages plus n/2 zeros and
    n/2 copies of -2, sorted ascending.
    """
    sig = np.asarray(sigma, dtype=float)
    n = sig.size
    if n == 0 or n % 2:
        raise BadInput("spectrum size must be even and positive")
    if sig.min() < -3 - 1e-9:
        raise BadInput("input spectrum must lie in [-3, 3]")
    out = []
    for y in sig:
        roots = f_preimage(y)
        if len(roots) != 2:
            raise BadInput(f"eigenvalue {y} has no real preimages")
        out.extend(roots)
    out.extend([0.0] * (n // 2))
    out.extend([-2.0] * (n // 2))
    return np.sort(np.array(out))


def _triangle_partition(G: Multigraph):
    """Partition the vertices into vertex-disjoint triangles, if possible.

    Backtracking on the lowest unassigned vertex; for graphs that are
    tmap images the partition is forced almost immediately, so this
    terminates fast.  Returns a list of sorted 3-tuples or None.
    """
    mult = {}
    for u, v in G.edges:
        if u != v:
            key = (u, v)
            mult[key] = mult.get(key, 0) + 1
    adj = [set() for _ in range(G.n)]
    for u, v in mult:
        adj[u].add(v)
        adj[v].add(u)

    assigned = [False] * G.n
    out = []

    def rec():
        try:
            v = assigned.index(False)
        except ValueError:
            return True
        cands = sorted(w for w in adj[v] if not assigned[w])
        for i, a in enumerate(cands):
            for b in cands[i + 1:]:
                if b in adj[a]:
                    for x in (v, a, b):
                        assigned[x] = True
                    out.append((v, a, b))
                    if rec():
                        return True
                    out.pop()
                    for x in (v, a, b):
                        assigned[x] = False
        return False

    if rec():
        return out
    return None


def tmap_inverse(G: Multigraph):
    """Invert tmap: contract a triangle partition and verify the round
    trip by isomorphism.  Returns the source graph or NOT_IN_IMAGE."""
    G.require_cubic("tmap_inverse input")
    if G.half_loops or G.n % 3:
        return NOT_IN_IMAGE
    parts = _triangle_partition(G)
    if parts is None:
        return NOT_IN_IMAGE
    part_of = {}
    for i, tri in enumerate(parts):
        for v in tri:
            part_of[v] = i
    # one copy of each triangle side is structural; everything else
    # (cross edges, extra parallel sides, loops) becomes a source edge
    budget = {}
    for i, (a, b, c) in enumerate(parts):
        for e in ((a, b), (a, c), (b, c)):
            budget[e] = 1
    zedges = []
    for u, v in G.edges:
        e = (u, v)
        if budget.get(e, 0) > 0:
            budget[e] -= 1
            continue
        zedges.append((part_of[u], part_of[v]))
    if any(budget.values()):
        return NOT_IN_IMAGE
    Z = Multigraph(len(parts), zedges)
    if not Z.is_cubic:
        return NOT_IN_IMAGE
    if not are_isomorphic(tmap(Z), G):
        return NOT_IN_IMAGE
    return Z
