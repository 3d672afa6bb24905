"""Exact certification of band-structure touch points.

A rank-1 periodic cover whose spectrum owns a gap shows the gap edges at
one of the two real angles 0 or pi, where the twisted adjacency matrix
has integer entries.  At that angle the full spectrum can be certified
in integer arithmetic: claimed eigenpairs are multiplied out exactly,
completeness is established by rank counting over the rationals, and
gap endpoints are pinned to exact algebraic numbers (rationals or
quadratic integers (a + b*sqrt(d))/2).

The numerical side checks (transpose symmetry around the touch angle,
vanishing first derivative and nonzero second derivative of each
dispersive band) are recorded inside the certificate but never replace
the exact checks.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import BadInput, NumericalFailure, RefusedCertificate
from ..covers.periodic import (
    PeriodicGraph,
    bands,
    flat_values,
    gap_report,
    twisted_adjacency,
)
from .exact import (
    QuadExt,
    is_char_root,
    rational_kernel,
    rank_over_field,
    split_spectrum,
)

__all__ = [
    "GapCertificate",
    "certify_touchpoint",
    "exact_eigenpairs",
    "locate_touch_angle",
    "verify_band_extremum",
    "verify_transpose_symmetry",
    "encode_exact",
    "decode_exact",
    "verify_certificate",
]

_FLAT_TOL = 1e-9
_ANGLE_TOL = 1e-9
_ENDPOINT_MATCH = 1e-6
CERT_FORMAT = "gap-certificate/1"


def encode_exact(value):
    """Serialize a Fraction (string "p" or "p/q") or QuadExt ([a,b,d])."""
    if isinstance(value, QuadExt):
        return value.to_json()
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

def decode_exact(blob):
    if isinstance(blob, str):
        return Fraction(blob)
    if isinstance(blob, (list, tuple)) and len(blob) == 3:
        return QuadExt(int(blob[0]), int(blob[1]), int(blob[2]))
    if isinstance(blob, int):
        return Fraction(blob)
    raise BadInput(f"unrecognized exact value encoding: {blob!r}")


def _integer_touch_matrix(P: PeriodicGraph, theta_t: float):
    """Integer adjacency matrix at a touch angle (0 or pi)."""
    if abs(theta_t) <= _ANGLE_TOL:
        z = 1.0
    elif abs(theta_t - math.pi) <= _ANGLE_TOL:
        z = -1.0
    else:
        raise BadInput("touch angle must be 0 or pi")
    if P.rank != 1:
        raise BadInput("touch-point certification needs a rank-1 cover")
    A = twisted_adjacency(P, (z,))
    rounded = np.rint(A.real)
    if np.abs(A - rounded).max() > 1e-12:
        raise NumericalFailure("adjacency not integral at the touch angle")
    return [[int(x) for x in row] for row in rounded]


def cover_id(P: PeriodicGraph) -> str:
    payload = json.dumps(P.to_json(), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


@dataclass(frozen=True)
class GapCertificate:
    """Exact record of a certified touch point and gap interval."""

    cover_id: str
    cover: dict
    touch_angle: str            # "0" or "pi"
    eigenpairs: tuple           # ((lam_exact, int vector), ...)
    symmetry: dict              # {"ok", "max_err", "deltas"}
    extremum: tuple             # ((band, kind, second_derivative_sign), ...)
    gap: tuple                  # (lo_exact, hi_exact), the widest interior gap
    gaps: tuple                 # all gap intervals with exact endpoints

    def to_json(self) -> dict:
        return {
            "format": CERT_FORMAT,
            "cover_id": self.cover_id,
            "cover": self.cover,
            "touch_angle": self.touch_angle,
            "eigenpairs": [[encode_exact(lam), list(vec)]
                           for lam, vec in self.eigenpairs],
            "symmetry": self.symmetry,
            "extremum": [list(row) for row in self.extremum],
            "gap": [encode_exact(self.gap[0]), encode_exact(self.gap[1])],
            "gaps": [[encode_exact(a), encode_exact(b)] for a, b in self.gaps],
        }


def _theta_value(tag: str) -> float:
    if tag == "0":
        return 0.0
    if tag == "pi":
        return math.pi
    raise BadInput("touch angle tag must be '0' or 'pi'")


def locate_touch_angle(P: PeriodicGraph, N: int = 512) -> float:
    """Angle where a dispersive band comes closest to a gap-bounding
    flat band (or to a neighboring band when no such flat exists),
    snapped to {0, pi}.

    Only flats sitting at a gap endpoint participate: a flat band buried
    inside a spectral interval is crossed by dispersive bands at angles
    unrelated to the gap edges.
    """
    if P.rank != 1:
        raise BadInput("touch angles are defined for rank-1 covers")
    bs = bands(P, N=N)
    vals = bs.values
    angles = bs.thetas[0]
    report = gap_report(bs)
    endpoints = {e for iv in report.gaps.intervals for e in iv}
    bounding = [(fv, mult) for fv, mult in report.flat_bands
                if any(abs(fv - e) <= _ENDPOINT_MATCH for e in endpoints)]
    best = (math.inf, 0.0)
    if bounding:
        for fv, mult in bounding:
            dists = np.sort(np.abs(vals - fv), axis=1)
            # drop the flat band's own copies, look at the next value
            if dists.shape[1] <= mult:
                continue
            rest = dists[:, mult]
            i = int(np.argmin(rest))
            if rest[i] < best[0]:
                best = (float(rest[i]), float(angles[i]))
    else:
        for k in range(vals.shape[1] - 1):
            dist = vals[:, k + 1] - vals[:, k]
            i = int(np.argmin(dist))
            if dist[i] < best[0]:
                best = (float(dist[i]), float(angles[i]))
    theta = best[1]
    # distance to 0 and to pi on the circle
    d0 = abs(math.remainder(theta, 2 * math.pi))
    dpi = abs(abs(math.remainder(theta, 2 * math.pi)) - math.pi)
    snapped = 0.0 if d0 <= dpi else math.pi
    step = 2 * math.pi / N
    if min(d0, dpi) > 2 * step:
        raise NumericalFailure(
            f"closest approach at theta={theta:.6f}, not near 0 or pi")
    return snapped


def verify_transpose_symmetry(P: PeriodicGraph, theta_t: float,
                              deltas=(0.1, 0.7, 2.0)) -> bool:
    """A(theta_t + d) must equal A(theta_t - d) transposed, entrywise to
    1e-12, for every offset d."""
    if P.rank != 1:
        raise BadInput("transpose symmetry check needs a rank-1 cover")
    for d in deltas:
        left = twisted_adjacency(P, (complex(math.cos(theta_t + d),
                                             math.sin(theta_t + d)),))
        right = twisted_adjacency(P, (complex(math.cos(theta_t - d),
                                              math.sin(theta_t - d)),))
        if np.abs(left - right.T).max() > 1e-12:
            return False
    return True


def _sorted_eigs(P: PeriodicGraph, theta: float):
    z = complex(math.cos(theta), math.sin(theta))
    return np.linalg.eigvalsh(twisted_adjacency(P, (z,)))


def verify_band_extremum(P: PeriodicGraph, theta_t: float,
                         h: float = 1e-3) -> list:
    """Central-difference check that every dispersive band has a flat
    tangent and curvature at theta_t.

    Each band gets a dict {band, kind, first, second, ok}.  The first
    and second derivatives are Richardson-extrapolated from steps h and
    h/2; if the two raw estimates disagree beyond discretization error
    the touch angle is not a smooth extremum and NumericalFailure is
    raised rather than reporting a sign.

    A band whose five stencil values agree to 1e-9 is locally constant,
    hence an exactly flat branch (sorted tracks hand the flat value to
    whichever position it occupies near theta_t, even when a dispersive
    band crosses it elsewhere); such bands are exempt.
    """
    if P.rank != 1:
        raise BadInput("band extremum check needs a rank-1 cover")
    if h <= 0 or h > 0.1:
        raise BadInput("step must lie in (0, 0.1]")
    at = {s: _sorted_eigs(P, theta_t + s)
          for s in (0.0, h, -h, h / 2, -h / 2)}
    stencil = np.stack([at[s] for s in (0.0, h, -h, h / 2, -h / 2)])
    locally_flat = (stencil.max(axis=0) - stencil.min(axis=0)) < _FLAT_TOL
    report = []
    for j in range(stencil.shape[1]):
        if locally_flat[j]:
            report.append({"band": j, "kind": "flat", "first": 0.0,
                           "second": 0.0, "ok": True})
            continue
        d1_h = (at[h][j] - at[-h][j]) / (2 * h)
        d1_h2 = (at[h / 2][j] - at[-h / 2][j]) / h
        first = (4 * d1_h2 - d1_h) / 3
        if abs(d1_h - d1_h2) > 1e-3 * max(1.0, abs(first)):
            raise NumericalFailure(
                f"first-derivative Richardson pair inconsistent on band {j}")
        d2_h = (at[h][j] - 2 * at[0.0][j] + at[-h][j]) / (h * h)
        d2_h2 = (at[h / 2][j] - 2 * at[0.0][j] + at[-h / 2][j]) / (h * h / 4)
        second = (4 * d2_h2 - d2_h) / 3
        if abs(d2_h - d2_h2) > 1e-2 * max(1.0, abs(second)):
            raise NumericalFailure(
                f"second-derivative Richardson pair inconsistent on band {j}")
        ok = abs(first) < 1e-6 and abs(second) > 1e-3
        report.append({"band": j, "kind": "dispersive",
                       "first": float(first), "second": float(second),
                       "ok": bool(ok)})
    return report


def exact_eigenpairs(P: PeriodicGraph, theta_t: float) -> list:
    """Full list of (lambda, integer vector) at the touch angle, one
    vector per spectral multiplicity, produced by exact kernel
    elimination of lambda*I - A over the rationals."""
    A = _integer_touch_matrix(P, theta_t)
    n = len(A)
    pairs = []
    for lam, mult in split_spectrum(A):
        if isinstance(lam, QuadExt) or Fraction(lam).denominator != 1:
            raise BadInput(
                "touch-angle spectrum is not integral; integer eigenpairs "
                "do not exist")
        lam_i = int(lam)
        shifted = [[A[i][j] - (lam_i if i == j else 0) for j in range(n)]
                   for i in range(n)]
        basis = rational_kernel(shifted)
        if len(basis) != mult:
            raise NumericalFailure(
                f"kernel dimension {len(basis)} != multiplicity {mult} "
                f"at lambda={lam_i}")
        for vec in basis:
            pairs.append((Fraction(lam_i), vec))
    pairs.sort(key=lambda p: float(p[0]))
    return pairs


def _check_claimed(A, claimed):
    """Exact eigen-equation, independence and completeness checks.

    Raises RefusedCertificate with the index of the first claimed pair
    involved in a failure.
    """
    n = len(A)
    if len(claimed) != n:
        raise RefusedCertificate(
            f"claimed {len(claimed)} pairs for an order-{n} matrix",
            failing_index=min(len(claimed), n) - 1 if claimed else 0)
    by_lambda = {}
    for idx, (lam, vec) in enumerate(claimed):
        lam = Fraction(lam)
        if len(vec) != n:
            raise RefusedCertificate(f"vector {idx} has wrong length",
                                     failing_index=idx)
        ivec = []
        for x in vec:
            if int(x) != x:
                raise RefusedCertificate(
                    f"vector {idx} has non-integer entries",
                    failing_index=idx)
            ivec.append(int(x))
        if all(x == 0 for x in ivec):
            raise RefusedCertificate(f"vector {idx} is zero",
                                     failing_index=idx)
        for i in range(n):
            lhs = sum(A[i][j] * ivec[j] for j in range(n))
            if lhs != lam * ivec[i]:
                raise RefusedCertificate(
                    f"A v != lambda v at row {i} for pair {idx} "
                    f"(lambda={lam})", failing_index=idx)
        by_lambda.setdefault(lam, []).append((idx, ivec))
    total = 0
    for lam, group in sorted(by_lambda.items(), key=lambda kv: float(kv[0])):
        mult = len(group)
        vec_rank = rank_over_field([list(v) for _, v in group])
        if vec_rank != mult:
            raise RefusedCertificate(
                f"claimed vectors for lambda={lam} are dependent "
                f"(rank {vec_rank} < {mult})", failing_index=group[0][0])
        shifted = [[Fraction(lam if i == j else 0) - A[i][j]
                    for j in range(n)] for i in range(n)]
        if rank_over_field(shifted) != n - mult:
            raise RefusedCertificate(
                f"lambda={lam} claimed with multiplicity {mult} but "
                f"rank(lambda I - A) != n - {mult}",
                failing_index=group[0][0])
        total += mult
    if total != n:
        raise RefusedCertificate("claimed multiplicities do not sum to n",
                                 failing_index=len(claimed) - 1)
    return by_lambda


def _exact_gap_endpoints(P: PeriodicGraph, N: int = 256):
    """Gap intervals from the sampled band structure with every interior
    endpoint replaced by its exact value at a touch angle."""
    exact_values = []
    for theta in (0.0, math.pi):
        A = _integer_touch_matrix(P, theta)
        exact_values.extend(v for v, _ in split_spectrum(A))
    report = gap_report(bands(P, N=N))
    out = []
    for lo, hi in report.gaps.intervals:
        ends = []
        for x in (lo, hi):
            if abs(x - (-3.0)) <= _ENDPOINT_MATCH:
                ends.append(Fraction(-3))
                continue
            if abs(x - 3.0) <= _ENDPOINT_MATCH:
                ends.append(Fraction(3))
                continue
            match = next((v for v in exact_values
                          if abs(float(v) - x) <= _ENDPOINT_MATCH), None)
            if match is None:
                raise NumericalFailure(
                    f"gap endpoint {x:.9f} matches no touch-angle eigenvalue")
            ends.append(match)
        out.append((ends[0], ends[1]))
    return tuple(out)


def certify_touchpoint(P: PeriodicGraph, theta_t: float,
                       claimed: list) -> GapCertificate:
    """Certify the full spectrum of A(theta_t) from claimed eigenpairs.

    Exact checks (refusal on failure): every A v = lambda v in integer
    arithmetic, claimed vectors independent per eigenvalue, and for each
    claimed lambda the rank of lambda*I - A equals n minus the claimed
    multiplicity, so the multiset is the complete spectrum.  Flat-band
    values must appear among the claimed eigenvalues.  Numerical
    side-checks (transpose symmetry, band extrema) are recorded in the
    certificate; gap endpoints are matched to exact touch-angle
    eigenvalues.
    """
    A = _integer_touch_matrix(P, theta_t)
    by_lambda = _check_claimed(A, claimed)
    flats = [fv for fv, _ in flat_values(bands(P, N=128).values)]
    for fv in flats:
        hit = next((lam for lam in by_lambda
                    if abs(float(lam) - fv) <= _ENDPOINT_MATCH), None)
        if hit is None:
            raise RefusedCertificate(
                f"flat-band value {fv:.9f} missing from claimed spectrum",
                failing_index=len(claimed) - 1)
    symmetry_ok = verify_transpose_symmetry(P, theta_t)
    extremum_report = verify_band_extremum(P, theta_t)
    if not all(row["ok"] for row in extremum_report):
        bad = next(r["band"] for r in extremum_report if not r["ok"])
        raise RefusedCertificate(
            f"band {bad} fails the extremum check at the touch angle",
            failing_index=None)
    gaps = _exact_gap_endpoints(P)
    interior = [g for g in gaps
                if float(g[0]) > -3.0 + 1e-9 and float(g[1]) < 3.0 - 1e-9]
    pool = interior if interior else list(gaps)
    if not pool:
        raise RefusedCertificate("cover has no spectral gap to certify",
                                 failing_index=None)
    primary = max(pool, key=lambda g: float(g[1]) - float(g[0]))
    pairs = tuple((Fraction(lam), tuple(int(x) for x in vec))
                  for lam, vec in claimed)
    return GapCertificate(
        cover_id=cover_id(P),
        cover=P.to_json(),
        touch_angle="0" if abs(theta_t) <= _ANGLE_TOL else "pi",
        eigenpairs=pairs,
        symmetry={"ok": bool(symmetry_ok), "deltas": [0.1, 0.7, 2.0]},
        extremum=tuple((r["band"], r["kind"],
                        int(math.copysign(1, r["second"]))
                        if r["kind"] == "dispersive" else 0)
                       for r in extremum_report),
        gap=primary,
        gaps=gaps,
    )


def verify_certificate(doc: dict) -> GapCertificate:
    """Re-verify a serialized certificate in exact arithmetic.

    Rebuilds the cover, re-runs every exact check on the stored
    eigenpairs, and confirms each stored gap endpoint is +-3 or an exact
    eigenvalue at one of the touch angles.  Floating-point state never
    enters the decision.
    """
    if doc.get("format") != CERT_FORMAT:
        raise BadInput("not a gap certificate document")
    P = PeriodicGraph.from_json(doc["cover"])
    if cover_id(P) != doc["cover_id"]:
        raise RefusedCertificate("cover id does not match cover data",
                                 failing_index=None)
    theta_t = _theta_value(doc["touch_angle"])
    A = _integer_touch_matrix(P, theta_t)
    claimed = [(decode_exact(lam), tuple(int(x) for x in vec))
               for lam, vec in doc["eigenpairs"]]
    for lam, _ in claimed:
        if isinstance(lam, QuadExt):
            raise RefusedCertificate("eigenpair with irrational lambda",
                                     failing_index=None)
    _check_claimed(A, claimed)
    A0 = _integer_touch_matrix(P, 0.0)
    Api = _integer_touch_matrix(P, math.pi)
    gaps = []
    for blob in doc["gaps"]:
        lo, hi = (decode_exact(x) for x in blob)
        if float(lo) >= float(hi):
            raise RefusedCertificate("empty gap interval in certificate",
                                     failing_index=None)
        for v in (lo, hi):
            fv = float(v)
            if abs(fv) == 3.0 and not isinstance(v, QuadExt):
                continue
            if not (is_char_root(A0, v) or is_char_root(Api, v)):
                raise RefusedCertificate(
                    f"gap endpoint {fv:.9f} is not an exact touch-angle "
                    "eigenvalue", failing_index=None)
        gaps.append((lo, hi))
    lo, hi = (decode_exact(x) for x in doc["gap"])
    return GapCertificate(
        cover_id=doc["cover_id"],
        cover=doc["cover"],
        touch_angle=doc["touch_angle"],
        eigenpairs=tuple(claimed),
        symmetry=dict(doc["symmetry"]),
        extremum=tuple(tuple(row) for row in doc["extremum"]),
        gap=(lo, hi),
        gaps=tuple(gaps),
    )
