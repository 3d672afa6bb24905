"""
Exact gap certificates
======================

Floating point can suggest a spectral gap but not certify one.  At the
band-touch angle the twisted adjacency matrix is integral, so its
spectrum and eigenvectors can be verified in exact arithmetic, and the
gap endpoints become exact rationals or quadratic integers.
"""

import json

from cubicgaps.certifier import (certify_touchpoint, exact_eigenpairs,
                                 locate_touch_angle, verify_certificate)
from cubicgaps.covers.reference import doubled_cycle_cover, prism_band_cover
from cubicgaps.errors import RefusedCertificate

for P in (doubled_cycle_cover(), prism_band_cover()):
    theta = locate_touch_angle(P)
    claimed = exact_eigenpairs(P, theta)
    cert = certify_touchpoint(P, theta, claimed)
    print(f"cover {cert.cover_id} touches at theta = {cert.touch_angle}")
    for lam, vec in cert.eigenpairs:
        print(f"  lambda = {lam}  v = {vec}")
    print("  certified gaps:",
          [(str(a), str(b)) for a, b in cert.gaps])

# Certificates survive serialization and re-verify with no floating
# point in the decision path.
doc = json.loads(json.dumps(cert.to_json()))
back = verify_certificate(doc)
print("reloaded certificate gap:", tuple(str(x) for x in back.gap))

# Any tampering is caught: nudge a stored gap endpoint and the exact
# root test fails.
doc["gaps"][1][0] = "-21/10"
try:
    verify_certificate(doc)
except RefusedCertificate as exc:
    print("tampered certificate refused:", exc)
