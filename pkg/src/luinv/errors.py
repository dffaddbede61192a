"""Exception types raised by luinv."""


class LUInvError(ValueError):
    """Base class for all luinv errors."""


class NotAState(LUInvError):
    """Matrix is not a trace-one (optionally Hermitian) 4x4 operator."""


class NotUnitary(LUInvError):
    """Matrix is not in SU(2)."""


class NotRotation(LUInvError):
    """Matrix is not special orthogonal."""


class NotSymmetric(LUInvError):
    """State is not invariant under swapping the two qubits."""


class DegenerateInvariants(LUInvError):
    """Invariant values that cannot come from a state in general position."""


class NonGeneric(LUInvError):
    """State lies outside the open set where canonical forms exist.

    Attributes:
        report: the GenericityReport that failed, when available.
        which: index of the offending input (1 or 2) for two-state queries.
    """

    def __init__(self, message, report=None, which=None):
        super().__init__(message)
        self.report = report
        self.which = which
