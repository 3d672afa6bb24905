"""Exhaustive small-seed cover search and the persisted gap catalog.

Every cubic seed cell is turned into periodic covers by sending one
edge (or an ordered pair of edges) across to neighboring cells.  Global
conjugation of the character flips all offset signs at once, so singles
only need offset +1 and pairs only the relative signs (+1, +1) and
(+1, -1).  Rank-2 covers get every coprime direction |a|, |b| <= 3 of
the torus sliced back down to rank 1, which is how the two reference
band structures [-3,-1] u [1,3] and [-(1+sqrt17)/2,-2] u
[0,(sqrt17-1)/2] u [2,3] are rediscovered from 4- and 6-vertex seeds.

Catalog rows are JSON lines with deterministic content ids; duplicate
band pictures (same spectrum, gaps and flat bands after rounding) are
collapsed, keeping the first in (seed, edge indices, direction) order.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from ..dynamics.intervals import IntervalSet
from ..errors import BadInput
from ..graphcore.multigraph import Multigraph
from ..graphcore.planarity import is_planar
from .periodic import (GapReport, PeriodicGraph, bands, cyclic_quotient,
                       gap_report, restrict_subtorus)

__all__ = [
    "CatalogEntry",
    "search_covers",
    "search_planar_covers",
    "coverage_report",
    "save_catalog",
    "load_catalog",
    "catalog_hash",
    "entry_cover",
    "SUBTORUS_DIRECTIONS",
    "PLANAR_QUOTIENT_RANGE",
]

# Coprime (a, b) with |a|, |b| <= 3, one representative per line through
# the origin (negating both components conjugates the character).
SUBTORUS_DIRECTIONS = tuple(sorted(
    (a, b)
    for a in range(0, 4)
    for b in range(-3, 4)
    if (a, b) != (0, 0)
    and math.gcd(abs(a), abs(b)) == 1
    and (a > 0 or b > 0)
))

PLANAR_QUOTIENT_RANGE = tuple(range(3, 9))

_ROUND = 6


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: a cover, how it was built, and its gap report.

    For subtorus slices, base/offsets describe the rank-2 parent and
    cover holds the restricted rank-1 graph, so the row alone suffices
    to rebuild the cover.
    """

    entry_id: str
    cover: PeriodicGraph
    base: Multigraph
    offsets: tuple
    subtorus: tuple | None
    report: GapReport
    planar_quotients: bool

    def to_json(self) -> dict:
        return {
            "id": self.entry_id,
            "base": self.base.to_json(),
            "offsets": [list(o) for o in self.offsets],
            "subtorus": list(self.subtorus) if self.subtorus else None,
            "spectrum": self.report.spectrum_estimate.to_json(),
            "gaps": self.report.gaps.to_json(),
            "flat_bands": [[v, m] for v, m in self.report.flat_bands],
            "planar_quotients": self.planar_quotients,
        }


def _entry_id(base: Multigraph, offsets, subtorus) -> str:
    payload = json.dumps({
        "n": base.n,
        "edges": [list(e) for e in base.edges],
        "offsets": [list(o) for o in offsets],
        "subtorus": list(subtorus) if subtorus else None,
    }, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _dedup_key(base_n: int, report: GapReport):
    est = report.spectrum_estimate
    return (
        base_n,
        tuple((round(a, _ROUND), round(b, _ROUND)) for a, b in est.intervals),
        tuple(round(p, _ROUND) for p in est.points),
        tuple((round(v, _ROUND), m) for v, m in report.flat_bands),
    )


def _planar_quotients(P: PeriodicGraph) -> bool:
    if P.rank != 1:
        return False
    return all(bool(is_planar(cyclic_quotient(P, n)))
               for n in PLANAR_QUOTIENT_RANGE)


def _offsets_for(m: int, assignment: dict, rank: int):
    zero = (0,) * rank
    return tuple(assignment.get(j, zero) for j in range(m))


def search_covers(seeds, rank: int = 2, two_link: bool = True,
                  N: int = 256) -> list:
    """Sweep the seeds and return deduplicated CatalogEntry rows.

    rank=1: every single-edge redirect, plus every edge pair with
    relative signs (+,+) and (+,-) when two_link is set.  rank=2: every
    edge pair spans the torus, reported whole (on a reduced grid) and
    sliced along each coprime direction at the full grid N.
    """
    if rank not in (1, 2):
        raise BadInput("rank must be 1 or 2")
    if N < 16 or N % 2:
        raise BadInput("grid size must be even and at least 16")
    entries = []
    seen = set()

    def consider(base, offsets, subtorus, cover, B):
        report = gap_report(B)
        key = _dedup_key(base.n, report)
        if key in seen:
            return
        seen.add(key)
        entries.append(CatalogEntry(
            entry_id=_entry_id(base, offsets, subtorus),
            cover=cover, base=base, offsets=tuple(offsets),
            subtorus=subtorus, report=report,
            planar_quotients=_planar_quotients(cover)))

    for seed in seeds:
        seed.require_cubic("cover search seed")
        if seed.n > 12:
            raise BadInput("seeds must have at most 12 vertices")
        m = len(seed.edges)
        if rank == 1:
            for j in range(m):
                offs = _offsets_for(m, {j: (1,)}, 1)
                try:
                    P = PeriodicGraph(seed, 1, offs, name=seed.name)
                except BadInput:
                    continue
                consider(seed, offs, None, P, bands(P, N))
            if two_link:
                for j in range(m):
                    for k in range(j + 1, m):
                        for s in (1, -1):
                            offs = _offsets_for(m, {j: (1,), k: (s,)}, 1)
                            try:
                                P = PeriodicGraph(seed, 1, offs, name=seed.name)
                            except BadInput:
                                continue
                            consider(seed, offs, None, P, bands(P, N))
            continue
        N2 = max(32, N // 4)
        if N2 % 2:
            N2 += 1
        for j in range(m):
            for k in range(j + 1, m):
                offs = _offsets_for(m, {j: (1, 0), k: (0, 1)}, 2)
                try:
                    P2 = PeriodicGraph(seed, 2, offs, name=seed.name)
                except BadInput:
                    continue
                consider(seed, offs, None, P2, bands(P2, N2))
                for a, b in SUBTORUS_DIRECTIONS:
                    P1 = restrict_subtorus(P2, a, b)
                    consider(seed, offs, (a, b), P1, bands(P1, N))
    return entries


def coverage_report(entries, lo: float, hi: float, resolution: float = 0.01) -> dict:
    """Does the union of the cataloged gap sets cover [lo, hi]?

    Checked on a grid at the given resolution; also reports the longest
    covered interval starting at -3 (the stretch figure)."""
    gap_union = IntervalSet(())
    for e in entries:
        gaps = e.report.gaps if isinstance(e, CatalogEntry) else \
            IntervalSet.from_json(e["gaps"])
        gap_union = gap_union.union(gaps)
    steps = int(round((hi - lo) / resolution))
    missing = []
    for i in range(steps + 1):
        x = lo + i * (hi - lo) / max(steps, 1)
        if not gap_union.contains(x, tol=resolution / 2):
            missing.append(x)
    reach = -3.0
    x = -3.0
    step = resolution
    while x <= 3.0 and gap_union.contains(x, tol=resolution / 2):
        reach = x
        x += step
    return {
        "target": [lo, hi],
        "resolution": resolution,
        "covered": not missing,
        "missing_points": missing[:20],
        "union": gap_union.to_json(),
        "reach_from_minus3": reach,
    }


def search_planar_covers(seeds, N: int = 256) -> tuple:
    """Planar-quotient subset of the full rank-2 search, with the gap
    union coverage check of [-2, 0] attached."""
    entries = [e for e in search_covers(seeds, rank=2, two_link=True, N=N)
               if e.planar_quotients]
    stretch_hi = 2.0 * math.sqrt(2.0) - 0.01
    cover_main = coverage_report(entries, -2.0, 0.0, 0.01)
    cover_stretch = coverage_report(entries, -3.0, stretch_hi, 0.01)
    return entries, {"required": cover_main, "stretch": cover_stretch}


def save_catalog(entries, path) -> str:
    """Write JSON lines; returns the content hash of the written file."""
    with open(path, "w") as fh:
        for e in entries:
            row = e.to_json() if isinstance(e, CatalogEntry) else e
            fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")))
            fh.write("\n")
    return catalog_hash(path)


def load_catalog(path) -> list:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise BadInput(f"malformed catalog line: {exc}") from exc
    return rows


def catalog_hash(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def entry_cover(row) -> PeriodicGraph:
    """Rebuild the (possibly sliced) cover from a catalog JSON row."""
    if isinstance(row, CatalogEntry):
        return row.cover
    base = Multigraph.from_json(row["base"])
    offsets = tuple(tuple(o) for o in row["offsets"])
    rank = len(offsets[0]) if offsets else 1
    P = PeriodicGraph(base, rank, offsets, name=base.name)
    if row.get("subtorus"):
        a, b = row["subtorus"]
        P = restrict_subtorus(P, a, b)
    return P
