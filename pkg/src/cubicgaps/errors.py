"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific one that applies instead of bare ValueError where the
failure is part of a documented contract.
"""


class BadInput(ValueError):
    """Malformed or out-of-contract input (CLI exit code 4)."""


class NumericalFailure(RuntimeError):
    """A numerical consistency check failed, e.g. an inconsistent
    Richardson pair in a finite-difference derivative (CLI exit code 3)."""


class MaxIterExceeded(NumericalFailure):
    """An iterative search hit its iteration cap without succeeding
    (witness planning; CLI exit code 3 via NumericalFailure)."""


class RefusedCertificate(RuntimeError):
    """An exact certification check failed; carries the failing index
    (CLI exit code 2)."""

    def __init__(self, message, failing_index=None):
        super().__init__(message)
        self.failing_index = failing_index
