"""Finite multigraphs with adjacency spectra.

Conventions used throughout the package:

* edges are unordered pairs of 0-based vertex indices; a loop is a pair
  with equal endpoints and contributes 2 to its vertex's degree and 2 to
  the diagonal of the adjacency matrix (so row sums of a cubic multigraph
  are exactly 3 and the constant vector is an eigenvector for 3);
* ``half_loops`` lists vertices carrying a self-edge that counts only 1
  toward degree and diagonal.  These never come from user input; they are
  produced when an automorphism quotient folds an edge onto itself, and
  are kept explicit so folded graphs keep integer row sums of 3.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..errors import BadInput

__all__ = [
    "Multigraph",
    "adjacency_matrix",
    "spectrum",
    "diameter_and_geodesic",
    "is_bipartite",
    "signatures",
    "are_isomorphic",
    "canonical_code",
    "permute",
]


def _normalize_edges(edges):
    out = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        out.append((u, v) if u <= v else (v, u))
    out.sort()
    return tuple(out)


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple = ()
    half_loops: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "edges", _normalize_edges(self.edges))
        object.__setattr__(self, "half_loops", tuple(sorted(int(v) for v in self.half_loops)))
        if self.n <= 0:
            raise BadInput("vertex count must be positive")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise BadInput(f"edge ({u},{v}) out of range for n={self.n}")
        for v in self.half_loops:
            if not 0 <= v < self.n:
                raise BadInput(f"half loop at {v} out of range for n={self.n}")

    # -- basic structure -------------------------------------------------

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            if u == v:
                a[u, u] += 2
            else:
                a[u, v] += 1
                a[v, u] += 1
        for v in self.half_loops:
            a[v, v] += 1
        return a

    def degrees(self):
        deg = [0] * self.n
        for u, v in self.edges:
            if u == v:
                deg[u] += 2
            else:
                deg[u] += 1
                deg[v] += 1
        for v in self.half_loops:
            deg[v] += 1
        return deg

    @property
    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees())

    def require_cubic(self, what="operation"):
        if not self.is_cubic:
            raise BadInput(f"{what} requires a cubic multigraph; degrees are {self.degrees()}")

    def neighbors(self):
        """Neighbor lists of the underlying simple support (loops dropped,
        parallel edges collapsed), sorted for deterministic traversal."""
        nbr = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                nbr[u].add(v)
                nbr[v].add(u)
        return [sorted(s) for s in nbr]

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        nbr = self.neighbors()
        seen = [False] * self.n
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v in nbr[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return all(seen)

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges) or bool(self.half_loops)

    @property
    def has_multi(self) -> bool:
        seen = set()
        for e in self.edges:
            if e in seen and e[0] != e[1]:
                return True
            seen.add(e)
        return False

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        d = {"n": self.n, "edges": [list(e) for e in self.edges], "name": self.name}
        if self.half_loops:
            d["half_loops"] = list(self.half_loops)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Multigraph":
        try:
            return cls(
                n=int(d["n"]),
                edges=[tuple(e) for e in d["edges"]],
                half_loops=tuple(d.get("half_loops", ())),
                name=str(d.get("name", "")),
            )
        except (KeyError, TypeError) as exc:
            raise BadInput(f"malformed graph JSON: {exc}") from exc

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Multigraph":
        with open(path) as fh:
            try:
                d = json.load(fh)
            except json.JSONDecodeError as exc:
                raise BadInput(f"not valid JSON: {path}: {exc}") from exc
        return cls.from_json(d)


# -- spec operations -----------------------------------------------------


def adjacency_matrix(G: Multigraph) -> np.ndarray:
    """Symmetric integer adjacency matrix; (v,v) counts 2 per loop."""
    return G.adjacency()


def spectrum(G: Multigraph) -> np.ndarray:
    """Adjacency eigenvalues, ascending, with multiplicity."""
    return np.linalg.eigvalsh(G.adjacency().astype(np.float64))


def _bfs(G: Multigraph, src: int, nbr=None):
    if nbr is None:
        nbr = G.neighbors()
    dist = [-1] * G.n
    parent = [-1] * G.n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in nbr[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                q.append(v)
    return dist, parent


def diameter_and_geodesic(G: Multigraph):
    """Diameter d and one shortest path realizing it.

    Ties are broken toward the smallest (source, target) pair so the result
    is deterministic.  Raises on disconnected input.
    """
    nbr = G.neighbors()
    best = (-1, 0, 0)
    parents = {}
    for s in range(G.n):
        dist, parent = _bfs(G, s, nbr)
        if min(dist) < 0:
            raise BadInput("graph is disconnected")
        far = max(dist)
        t = dist.index(far)
        if far > best[0]:
            best = (far, s, t)
            parents[s] = parent
    d, s, t = best
    parent = parents.get(s)
    if parent is None:
        parent = _bfs(G, s, nbr)[1]
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return d, path


def is_bipartite(G: Multigraph) -> bool:
    """2-colorability; any loop or half loop forces False."""
    if G.has_loops:
        return False
    nbr = G.neighbors()
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in nbr[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    q.append(v)
                elif color[v] == color[u]:
                    return False
    return True


# -- isomorphism ---------------------------------------------------------


def signatures(G: Multigraph):
    """Per-vertex local invariants, one sorted tuple per vertex.

    Each vertex gets (degree, loop count, half-loop count, sorted nonzero
    off-diagonal row multiplicities).  Used to prune isomorphism search
    and to bucket graphs before pairwise comparison.
    """
    a = G.adjacency()
    deg = G.degrees()
    loops = [0] * G.n
    for u, v in G.edges:
        if u == v:
            loops[u] += 1
    halves = [0] * G.n
    for v in G.half_loops:
        halves[v] += 1
    sigs = []
    for v in range(G.n):
        row = sorted(int(a[v, w]) for w in range(G.n) if w != v and a[v, w])
        sigs.append((deg[v], loops[v], halves[v], tuple(row)))
    return tuple(sigs)


def permute(G: Multigraph, perm) -> Multigraph:
    """Relabel vertices: vertex v becomes perm[v]."""
    return Multigraph(
        n=G.n,
        edges=[(perm[u], perm[v]) for u, v in G.edges],
        half_loops=[perm[v] for v in G.half_loops],
        name=G.name,
    )


def _iso_backtrack(a1, a2, order, cand):
    n = a1.shape[0]
    mapping = [-1] * n
    used = [False] * n

    def place(i):
        if i == len(order):
            return True
        v = order[i]
        for w in cand[v]:
            if used[w] or a1[v, v] != a2[w, w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if a1[v, u] != a2[w, mapping[u]]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if place(i + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return place(0)


def are_isomorphic(G1: Multigraph, G2: Multigraph) -> bool:
    """Exact isomorphism test by signature-pruned backtracking.

    Intended for desk scale (n <= 16 or so); enumeration dedup calls it
    only within buckets of matching invariants.
    """
    if G1.n != G2.n or len(G1.edges) != len(G2.edges):
        return False
    if len(G1.half_loops) != len(G2.half_loops):
        return False
    s1, s2 = signatures(G1), signatures(G2)
    if sorted(s1) != sorted(s2):
        return False
    e1, e2 = spectrum(G1), spectrum(G2)
    if np.max(np.abs(e1 - e2)) > 1e-8:
        return False
    a1, a2 = G1.adjacency(), G2.adjacency()
    cand = [[w for w in range(G2.n) if s2[w] == s1[v]] for v in range(G1.n)]
    if any(not c for c in cand):
        return False
    order = sorted(range(G1.n), key=lambda v: len(cand[v]))
    return _iso_backtrack(a1, a2, order, cand)


def canonical_code(G: Multigraph, node_cap: int = 2_000_000) -> bytes:
    """Label-independent canonical form.

    Lexicographically minimal concatenation of adjacency rows (diagonal
    included, lower triangle) over all vertex orderings, found by a
    branch-and-bound over orderings with signature-based candidate
    restriction.  Exhaustive, so keep n small (fixtures and catalog seeds
    use n <= 8).  ``node_cap`` guards against symmetric blowups.
    """
    a = G.adjacency()
    n = G.n
    sigs = signatures(G)
    best = [None]
    nodes = [0]

    def extend(order, rows):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise RuntimeError("canonical_code search exceeded node cap")
        k = len(order)
        if k == n:
            if best[0] is None or rows < best[0]:
                best[0] = rows
            return
        used = set(order)
        cands = []
        for v in range(n):
            if v in used:
                continue
            row = tuple(int(a[v, u]) for u in order) + (int(a[v, v]),)
            cands.append((row, sigs[v], v))
        cands.sort()
        for row, _, v in cands:
            new_rows = rows + row
            m = len(new_rows)
            if best[0] is not None and new_rows > best[0][:m]:
                continue
            extend(order + [v], new_rows)

    extend([], ())
    return bytes(best[0])
