import json
import math
from fractions import Fraction

import pytest

from cubicgaps.certifier import (GapCertificate, certify_touchpoint,
                                 cover_id, exact_eigenpairs,
                                 locate_touch_angle, verify_band_extremum,
                                 verify_certificate,
                                 verify_transpose_symmetry)
from cubicgaps.certifier.exact import QuadExt
from cubicgaps.covers.reference import doubled_cycle_cover, prism_band_cover
from cubicgaps.errors import BadInput, RefusedCertificate

SQRT17 = math.sqrt(17.0)


@pytest.fixture(scope="module")
def wb_cert():
    P = doubled_cycle_cover()
    theta = locate_touch_angle(P)
    return P, theta, certify_touchpoint(P, theta, exact_eigenpairs(P, theta))


@pytest.fixture(scope="module")
def wa_cert():
    P = prism_band_cover()
    theta = locate_touch_angle(P)
    return P, theta, certify_touchpoint(P, theta, exact_eigenpairs(P, theta))


class TestTouchAngle:
    def test_doubled_cycle_touches_at_pi(self):
        assert locate_touch_angle(doubled_cycle_cover()) == pytest.approx(
            math.pi)

    def test_prism_cover_touches_at_zero(self):
        assert locate_touch_angle(prism_band_cover()) == pytest.approx(0.0)


class TestDoubledCycleCertificate:
    def test_eigenpairs(self, wb_cert):
        _, _, cert = wb_cert
        assert cert.touch_angle == "pi"
        assert cert.eigenpairs == (
            (Fraction(-1), (0, 1, -1, 0)),
            (Fraction(-1), (1, 0, 0, -1)),
            (Fraction(1), (0, 1, 1, 0)),
            (Fraction(1), (1, 0, 0, 1)),
        )

    def test_gap(self, wb_cert):
        _, _, cert = wb_cert
        assert cert.gap == (Fraction(-1), Fraction(1))
        assert cert.gaps == ((Fraction(-1), Fraction(1)),)

    def test_extremum_signs(self, wb_cert):
        # Two dispersive bands curve away from the touch values; the two
        # flat bands are exempt from the curvature requirement.
        _, _, cert = wb_cert
        assert cert.extremum == ((0, "dispersive", -1), (1, "flat", 0),
                                 (2, "flat", 0), (3, "dispersive", 1))

    def test_symmetry_block(self, wb_cert):
        _, _, cert = wb_cert
        assert cert.symmetry["ok"] is True
        assert cert.symmetry["deltas"] == [0.1, 0.7, 2.0]


class TestPrismCoverCertificate:
    def test_eigenpairs(self, wa_cert):
        _, _, cert = wa_cert
        assert cert.touch_angle == "0"
        lams = [lam for lam, _ in cert.eigenpairs]
        assert lams == [Fraction(-2), Fraction(-2), Fraction(0), Fraction(0),
                        Fraction(1), Fraction(3)]
        assert cert.eigenpairs[5] == (Fraction(3), (1, 1, 1, 1, 1, 1))
        for _, vec in cert.eigenpairs:
            assert all(isinstance(x, int) for x in vec)

    def test_three_gaps_with_quadratic_endpoints(self, wa_cert):
        _, _, cert = wa_cert
        assert cert.gap == (Fraction(-2), Fraction(0))
        assert len(cert.gaps) == 3
        lo0, hi0 = cert.gaps[0]
        assert lo0 == Fraction(-3)
        assert hi0 == QuadExt(-1, -1, 17)
        assert float(hi0) == pytest.approx(-(1.0 + SQRT17) / 2.0)
        lo2, hi2 = cert.gaps[2]
        assert lo2 == QuadExt(-1, 1, 17)
        assert hi2 == Fraction(2)

    def test_extremum_covers_six_bands(self, wa_cert):
        _, _, cert = wa_cert
        assert cert.extremum == ((0, "dispersive", -1), (1, "flat", 0),
                                 (2, "flat", 0), (3, "dispersive", 1),
                                 (4, "flat", 0), (5, "dispersive", -1))


class TestExtremumCheck:
    def test_rows_pass_at_touch_angle(self):
        P = doubled_cycle_cover()
        rows = verify_band_extremum(P, math.pi)
        assert [r["ok"] for r in rows] == [True] * 4
        for r in rows:
            if r["kind"] == "dispersive":
                assert abs(r["first"]) < 1e-6
                assert abs(r["second"]) > 1e-3

    def test_offset_angle_fails_dispersive_bands(self):
        # 0.3 away from the touch angle the dispersive branches have
        # nonzero slope, so only the flat bands still pass.
        P = doubled_cycle_cover()
        rows = verify_band_extremum(P, math.pi + 0.3)
        assert [r["ok"] for r in rows] == [False, True, True, False]


class TestTransposeSymmetry:
    def test_reference_covers(self):
        assert verify_transpose_symmetry(doubled_cycle_cover(), math.pi)
        assert verify_transpose_symmetry(prism_band_cover(), 0.0)


class TestSerialization:
    def test_round_trip_reverifies(self, wa_cert):
        P, _, cert = wa_cert
        doc = json.loads(json.dumps(cert.to_json()))
        back = verify_certificate(doc)
        assert isinstance(back, GapCertificate)
        assert back.cover_id == cert.cover_id == cover_id(P)
        assert back.gap == cert.gap
        assert back.gaps == cert.gaps
        assert back.eigenpairs == cert.eigenpairs

    def test_rejects_non_certificate(self):
        with pytest.raises(BadInput):
            verify_certificate({"format": "something-else"})

    def test_tampered_gap_endpoint_refused(self, wa_cert):
        _, _, cert = wa_cert
        doc = json.loads(json.dumps(cert.to_json()))
        doc["gaps"][1][0] = "-21/10"
        with pytest.raises(RefusedCertificate,
                           match="not an exact touch-angle"):
            verify_certificate(doc)

    def test_tampered_cover_id_refused(self, wa_cert):
        _, _, cert = wa_cert
        doc = json.loads(json.dumps(cert.to_json()))
        doc["cover_id"] = "0" * 16
        with pytest.raises(RefusedCertificate, match="cover id"):
            verify_certificate(doc)

    def test_tampered_eigenvector_refused(self, wa_cert):
        _, _, cert = wa_cert
        doc = json.loads(json.dumps(cert.to_json()))
        doc["eigenpairs"][0][1][0] += 1
        with pytest.raises(RefusedCertificate):
            verify_certificate(doc)


class TestRefusals:
    def test_wrong_eigenvalue_refused_with_index(self, wa_cert):
        P, theta, _ = wa_cert
        claimed = exact_eigenpairs(P, theta)
        wrong = [(Fraction(2), claimed[0][1])] + list(claimed[1:])
        with pytest.raises(RefusedCertificate) as exc:
            certify_touchpoint(P, theta, wrong)
        assert exc.value.failing_index == 0

    def test_dependent_vectors_refused(self, wa_cert):
        P, theta, _ = wa_cert
        claimed = list(exact_eigenpairs(P, theta))
        claimed[1] = (claimed[0][0], claimed[0][1])
        with pytest.raises(RefusedCertificate, match="dependent"):
            certify_touchpoint(P, theta, claimed)

    def test_incomplete_claim_refused(self, wa_cert):
        P, theta, _ = wa_cert
        claimed = exact_eigenpairs(P, theta)
        with pytest.raises(RefusedCertificate):
            certify_touchpoint(P, theta, claimed[:-1])
