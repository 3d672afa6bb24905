from .capacity import capacity_estimate
from .intervals import IntervalSet
from .quadratic import (
    AMembership,
    CantorApprox,
    Itinerary,
    a_membership,
    f_apply,
    f_preimage,
    itinerary,
    preimage_intervals,
    pullback_spectral_set,
)
from .trianglemap import NOT_IN_IMAGE, NotInImage, tmap, tmap_inverse, tmap_spectrum_predict
from .witness import WitnessPlan, plan_gap_witness, realize_plan

__all__ = [
    "AMembership",
    "CantorApprox",
    "IntervalSet",
    "Itinerary",
    "NOT_IN_IMAGE",
    "NotInImage",
    "WitnessPlan",
    "a_membership",
    "capacity_estimate",
    "f_apply",
    "f_preimage",
    "itinerary",
    "plan_gap_witness",
    "preimage_intervals",
    "pullback_spectral_set",
    "realize_plan",
    "tmap",
    "tmap_inverse",
    "tmap_spectrum_predict",
]
