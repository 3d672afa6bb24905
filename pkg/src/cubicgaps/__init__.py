"""Spectral gap sets of cubic multigraphs.

Four layers: graph core (multigraphs, enumeration, planarity), triangle
dynamics (the tripling map and the quadratic interval machinery behind
it), periodic covers (band structures, gap reports, quotients, cover
search), and the certifier (exact touch-point certificates plus
eigenvalue-free distance bounds).
"""

__version__ = "0.1.0"

from .errors import (BadInput, MaxIterExceeded, NumericalFailure,
                     RefusedCertificate)
from .graphcore import (Multigraph, enumerate_cubic_multigraphs,
                        is_planar, named_graph, spectrum)

__all__ = [
    "__version__",
    "BadInput",
    "MaxIterExceeded",
    "NumericalFailure",
    "RefusedCertificate",
    "Multigraph",
    "enumerate_cubic_multigraphs",
    "is_planar",
    "named_graph",
    "spectrum",
]
