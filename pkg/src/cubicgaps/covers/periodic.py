"""Periodic graphs (Abelian covers of a finite base cell) and their bands.

A PeriodicGraph is a cubic base cell where every edge carries an integer
offset vector in Z^rank: offset 0 keeps the edge inside the cell, offset
e_i sends it to the neighboring cell along axis i.  The spectrum of the
infinite cover decomposes over unit-modulus characters z of the deck
group; twisted_adjacency builds the n x n Hermitian matrix at one z and
bands samples it over the whole torus grid.  Finite cyclic quotients
wrap the rank-1 covers; their spectra equal the twisted eigenvalues at
roots of unity, which the tests verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..dynamics.intervals import IntervalSet
from ..errors import BadInput
from ..graphcore.multigraph import Multigraph

__all__ = [
    "PeriodicGraph",
    "BandStructure",
    "GapReport",
    "twisted_adjacency",
    "bands",
    "restrict_subtorus",
    "flat_values",
    "gap_report",
    "cyclic_quotient",
    "torus_quotient",
]


@dataclass(frozen=True)
class PeriodicGraph:
    """Cubic base cell plus per-edge integer offsets (aligned with
    base.edges, which Multigraph keeps sorted).  Use from_links to build
    one from (u, v, offset) triples without worrying about orientation:
    stored edges satisfy u <= v and flipping an edge negates its offset.
    """

    base: Multigraph
    rank: int
    offsets: tuple
    name: str = ""

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise BadInput("rank must be 1 or 2")
        self.base.require_cubic("periodic base")
        if self.base.half_loops:
            raise BadInput("periodic base must not carry half-loops")
        offs = tuple(tuple(int(c) for c in o) for o in self.offsets)
        if len(offs) != len(self.base.edges):
            raise BadInput("offsets must align with base edges")
        if any(len(o) != self.rank for o in offs):
            raise BadInput(f"offsets must have length {self.rank}")
        object.__setattr__(self, "offsets", offs)
        if not cyclic_like_connected(self):
            raise BadInput("cover is disconnected")

    @classmethod
    def from_links(cls, n: int, links, rank: int = 1, name: str = "") -> "PeriodicGraph":
        """links: iterables (u, v, offset) with offset an int (rank 1) or
        a length-rank tuple, read as 'u in this cell to v offset cells
        over'."""
        norm = []
        for u, v, o in links:
            off = (int(o),) if rank == 1 and not isinstance(o, (tuple, list)) \
                else tuple(int(c) for c in o)
            if len(off) != rank:
                raise BadInput("offset arity mismatch")
            if u <= v:
                norm.append(((u, v), off))
            else:
                norm.append(((v, u), tuple(-c for c in off)))
        norm.sort()
        base = Multigraph(n, [e for e, _ in norm], name=name)
        return cls(base, rank, tuple(o for _, o in norm), name=name)

    def links(self):
        return tuple((u, v, o) for (u, v), o in zip(self.base.edges, self.offsets))

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "rank": self.rank,
                "offsets": [list(o) for o in self.offsets], "name": self.name}

    @classmethod
    def from_json(cls, data: dict) -> "PeriodicGraph":
        return cls(Multigraph.from_json(data["base"]), int(data["rank"]),
                   tuple(tuple(o) for o in data["offsets"]),
                   data.get("name", ""))


def twisted_adjacency(P: PeriodicGraph, z) -> np.ndarray:
    """Hermitian unit-cell adjacency at character z (one unit-modulus
    number per axis).  An edge with offset o contributes z^o at (u, v)
    and its conjugate at (v, u); a wrapped loop contributes both to the
    diagonal, so at z = 1 this reduces to the one-cell cyclic quotient's
    adjacency matrix (plain loops counting 2)."""
    zv = np.atleast_1d(np.asarray(z, dtype=complex))
    if zv.shape != (P.rank,):
        raise BadInput(f"need {P.rank} character value(s)")
    if np.any(np.abs(np.abs(zv) - 1.0) > 1e-9):
        raise BadInput("character values must have modulus 1")
    n = P.base.n
    A = np.zeros((n, n), dtype=complex)
    for (u, v), off in zip(P.base.edges, P.offsets):
        phase = np.prod(zv ** np.array(off))
        if u == v:
            A[u, u] += phase + np.conj(phase)
        else:
            A[u, v] += phase
            A[v, u] += np.conj(phase)
    return A


@dataclass(frozen=True)
class BandStructure:
    """Eigenvalue tracks over a torus grid.

    thetas: one angle array per axis (full circle, includes 0 and -pi).
    values: shape (samples, n) with rows sorted ascending; for rank 2
    the samples enumerate the angle grid in row-major order.
    """

    rank: int
    thetas: tuple
    values: np.ndarray

    @property
    def nbands(self) -> int:
        return self.values.shape[1]


def _angle_grid(N: int) -> np.ndarray:
    if N < 16 or N % 2:
        raise BadInput("grid size must be even and at least 16")
    return -math.pi + 2.0 * math.pi * np.arange(N) / N


def bands(P: PeriodicGraph, N: int) -> BandStructure:
    """Eigen-decompose the twisted adjacency over an N (or N x N) grid."""
    th = _angle_grid(N)
    n = P.base.n
    if P.rank == 1:
        phases = np.exp(1j * th)  # (N,)
        A = np.zeros((len(th), n, n), dtype=complex)
        for (u, v), (o,) in zip(P.base.edges, P.offsets):
            ph = phases ** o
            if u == v:
                A[:, u, u] += 2.0 * ph.real
            else:
                A[:, u, v] += ph
                A[:, v, u] += np.conj(ph)
        vals = np.linalg.eigvalsh(A)
        return BandStructure(1, (th,), vals)
    t1 = np.repeat(th, len(th))
    t2 = np.tile(th, len(th))
    A = np.zeros((len(t1), n, n), dtype=complex)
    for (u, v), (o1, o2) in zip(P.base.edges, P.offsets):
        ph = np.exp(1j * (o1 * t1 + o2 * t2))
        if u == v:
            A[:, u, u] += 2.0 * ph.real
        else:
            A[:, u, v] += ph
            A[:, v, u] += np.conj(ph)
    vals = np.linalg.eigvalsh(A)
    return BandStructure(2, (th, th), vals)


def restrict_subtorus(P: PeriodicGraph, a: int, b: int) -> PeriodicGraph:
    """Slice a rank-2 cover along the line (theta1, theta2) = (a t, b t).

    The resulting rank-1 offsets are a*o1 + b*o2, so (a, b) = (1, 0)
    reproduces the theta2 = 0 axis slice.  Requires gcd(a, b) = 1 so the
    slice winds the torus without retracing."""
    if P.rank != 2:
        raise BadInput("subtorus restriction applies to rank-2 covers")
    a, b = int(a), int(b)
    if a == 0 and b == 0:
        raise BadInput("direction must be nonzero")
    if math.gcd(abs(a), abs(b)) != 1:
        raise BadInput("direction components must be coprime")
    offs = tuple((a * o1 + b * o2,) for o1, o2 in P.offsets)
    name = f"{P.name}|({a},{b})" if P.name else f"slice({a},{b})"
    return PeriodicGraph(P.base, 1, offs, name=name)


@dataclass(frozen=True)
class GapReport:
    """Sampled spectrum, its complement in [-3, 3], and flat bands.

    Gap intervals are stored as closures of the open complementary
    intervals; interior gaps all exceed the detection threshold by
    construction, while boundary gaps (below the sampled minimum or
    above the sampled maximum) are reported at any width above solver
    noise (1e-9), since sampling cannot fabricate those.
    """

    spectrum_estimate: IntervalSet
    gaps: IntervalSet
    flat_bands: tuple
    threshold: float

    def to_json(self) -> dict:
        return {"spectrum": self.spectrum_estimate.to_json(),
                "gaps": self.gaps.to_json(),
                "flat_bands": [[v, m] for v, m in self.flat_bands],
                "threshold": self.threshold}


_FLAT_TOL = 1e-9


def flat_values(vals) -> tuple:
    """Flat-band values with multiplicities from sampled eigenvalue rows.

    A value is flat when every sample row contains an eigenvalue within
    1e-9 of it.  This is detected per value, not per sorted track: a
    flat band crossed by a dispersive band swaps sorted positions at the
    crossing, so no single track stays constant there.  Multiplicity is
    the minimum per-row hit count, which ignores angles where a
    dispersive band happens to touch or cross the flat value.
    """
    out = []
    candidates = []
    for x in np.sort(vals[0]):
        if not candidates or x - candidates[-1] > _FLAT_TOL:
            candidates.append(float(x))
    for v in candidates:
        hits = np.abs(vals - v) < _FLAT_TOL
        counts = hits.sum(axis=1)
        if counts.min() >= 1:
            out.append((v, int(counts.min())))
    return tuple(out)


def gap_report(B: BandStructure, threshold: float = 0.05) -> GapReport:
    """Pool all sampled eigenvalues; runs separated by more than the
    threshold become distinct spectral intervals, the rest is gap."""
    if threshold <= 0:
        raise BadInput("threshold must be positive")
    vals = B.values
    flat_bands = flat_values(vals)
    pooled = np.sort(vals.ravel())
    cuts = np.nonzero(np.diff(pooled) > threshold)[0]
    pieces = []
    start = 0
    for c in list(cuts) + [len(pooled) - 1]:
        pieces.append((float(pooled[start]), float(pooled[c])))
        start = c + 1
    est = IntervalSet(tuple(pieces))
    gaps = est.complement_in(-3.0, 3.0)
    kept = tuple(iv for iv in gaps.intervals
                 if iv[1] - iv[0] >= _FLAT_TOL
                 or (iv[0] > -3.0 + _FLAT_TOL and iv[1] < 3.0 - _FLAT_TOL))
    if kept != gaps.intervals:
        gaps = IntervalSet(kept, gaps.points)
    return GapReport(est, gaps, flat_bands, float(threshold))


def cyclic_quotient(P: PeriodicGraph, n: int) -> Multigraph:
    """Wrap n copies of the cell into a finite ring; vertex (deck c,
    base vertex v) becomes c*|base| + v.  Offsets wrap modulo n, so one
    deck turns nonzero offsets into loops and two decks into parallel
    edges; the spectrum equals the twisted eigenvalues at the n-th roots
    of unity."""
    if P.rank != 1:
        raise BadInput("cyclic quotients wrap rank-1 covers")
    if n < 1:
        raise BadInput("need n >= 1")
    bn = P.base.n
    edges = []
    for (u, v), (o,) in zip(P.base.edges, P.offsets):
        for c in range(n):
            edges.append((c * bn + u, ((c + o) % n) * bn + v))
    return Multigraph(n * bn, edges,
                      name=f"{P.name or 'cover'}/C{n}")


def torus_quotient(P: PeriodicGraph, n1: int, n2: int) -> Multigraph:
    """Wrap a rank-2 cover on an n1 x n2 torus of cells."""
    if P.rank != 2:
        raise BadInput("torus quotients wrap rank-2 covers")
    if n1 < 1 or n2 < 1:
        raise BadInput("need n1, n2 >= 1")
    bn = P.base.n

    def vid(c1, c2, v):
        return (c1 * n2 + c2) * bn + v

    edges = []
    for (u, v), (o1, o2) in zip(P.base.edges, P.offsets):
        for c1 in range(n1):
            for c2 in range(n2):
                edges.append((vid(c1, c2, u),
                              vid((c1 + o1) % n1, (c2 + o2) % n2, v)))
    return Multigraph(n1 * n2 * bn, edges, name=f"{P.name or 'cover'}/T{n1}x{n2}")


def cyclic_like_connected(P: PeriodicGraph) -> bool:
    """Connectivity of the infinite cover, decided on a 3-cell (or
    3 x 3) wrap: offsets are in {-1, 0, 1} in everything we search, and
    any offset pattern generating the deck group connects 3 decks."""
    bn = P.base.n
    if P.rank == 1:
        edges = []
        for (u, v), (o,) in zip(P.base.edges, P.offsets):
            for c in range(3):
                edges.append((c * bn + u, ((c + o) % 3) * bn + v))
        return Multigraph(3 * bn, edges).is_connected()

    def vid(c1, c2, v):
        return (c1 * 3 + c2) * bn + v

    edges = []
    for (u, v), (o1, o2) in zip(P.base.edges, P.offsets):
        for c1 in range(3):
            for c2 in range(3):
                edges.append((vid(c1, c2, u), vid((c1 + o1) % 3, (c2 + o2) % 3, v)))
    return Multigraph(9 * bn, edges).is_connected()
