"""Polynomial local unitary invariants of two-qubit states.

For a Bloch matrix ``(u1, u2, C)`` the derived frame is::

    v1 = u1 x C u2        w1 = u1 x v1
    v2 = u2 x C^T u1      w2 = u2 x v2

and the nine generating invariants are the bilinear products::

    f1 = u1.u1   f2 = u2.u2   f3 = v1.v1   f4 = v2.v2
    f5 = u1.C u2 f6 = v1.C v2 f7 = w1.C w2 f8 = v1.C w2  f9 = w1.C v2

Symmetric states (``u1 = u2 = u``, ``C = C^T``) use the six invariants built
from ``v = u x Cu`` and ``w = u x v``.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotSymmetric
from .linalg3c import cross, dot
from .quantum import STRUCT_TOL, is_symmetric_state

__all__ = [
    "DerivedFrame",
    "GenericityReport",
    "GENERIC_TOL",
    "derived_frame",
    "symmetric_frame",
    "genericity",
    "invariants9",
    "invariants6_symmetric",
    "invariant_scales9",
    "invariant_scales6",
]

GENERIC_TOL = 1e-8


class DerivedFrame(NamedTuple):
    v1: np.ndarray
    w1: np.ndarray
    v2: np.ndarray
    w2: np.ndarray


def derived_frame(b):
    v1 = cross(b.u1, b.C @ b.u2)
    v2 = cross(b.u2, b.C.T @ b.u1)
    return DerivedFrame(v1, cross(b.u1, v1), v2, cross(b.u2, v2))


def symmetric_frame(b):
    """``(u, v, w)`` with ``v = u x Cu`` and ``w = u x v`` for a symmetric state."""
    u = b.u1
    v = cross(u, b.C @ u)
    return u, v, cross(u, v)


@dataclass(frozen=True)
class GenericityReport:
    """Which of ``u1.u1, u2.u2, v1.v1, v2.v2`` are safely away from zero.

    ``magnitudes`` holds the four ``|dot|`` values in that order and
    ``threshold`` the scaled cutoff they were compared against.
    """

    u1_ok: bool
    u2_ok: bool
    v1_ok: bool
    v2_ok: bool
    magnitudes: tuple
    threshold: float

    @property
    def generic(self):
        return self.u1_ok and self.u2_ok and self.v1_ok and self.v2_ok

    def failures(self):
        names = ("u1.u1", "u2.u2", "v1.v1", "v2.v2")
        flags = (self.u1_ok, self.u2_ok, self.v1_ok, self.v2_ok)
        return [n for n, ok in zip(names, flags) if not ok]

    def to_dict(self):
        return {
            "generic": self.generic,
            "u1_ok": self.u1_ok,
            "u2_ok": self.u2_ok,
            "v1_ok": self.v1_ok,
            "v2_ok": self.v2_ok,
            "magnitudes": list(self.magnitudes),
            "threshold": self.threshold,
        }


def genericity(b, tol=GENERIC_TOL):
    """Classify ``b`` against the general-position conditions.

    The cutoff is ``tol * max(1, max|B|^2)`` so that rescaled data is judged
    consistently.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    frame = derived_frame(b)
    mags = tuple(
        float(abs(dot(x, x))) for x in (b.u1, b.u2, frame.v1, frame.v2)
    )
    threshold = tol * max(1.0, b.max_abs() ** 2)
    flags = [m > threshold for m in mags]
    return GenericityReport(*flags, magnitudes=mags, threshold=threshold)


def invariants9(b):
    """The nine invariants ``(f1, ..., f9)`` as a length-9 array.

    Defined for every state; whether they separate orbits depends on
    :func:`genericity`.  Real input yields a float array.
    """
    u1, u2, c = b.u1, b.u2, b.C
    v1, w1, v2, w2 = derived_frame(b)
    cv2 = c @ v2
    cw2 = c @ w2
    return np.array(
        [
            dot(u1, u1),
            dot(u2, u2),
            dot(v1, v1),
            dot(v2, v2),
            dot(u1, c @ u2),
            dot(v1, cv2),
            dot(w1, cw2),
            dot(v1, cw2),
            dot(w1, cv2),
        ]
    )


def invariants6_symmetric(b, tol=STRUCT_TOL):
    """The six invariants of a symmetric state under the diagonal action.

    Order: ``u.u, v.v, u.Cu, v.Cv, w.Cw, w.Cv``.

    Raises:
        NotSymmetric: if ``b`` fails :func:`is_symmetric_state` at ``tol``.
    """
    if not is_symmetric_state(b, tol):
        raise NotSymmetric("state is not symmetric (u1 != u2 or C != C^T)")
    c = b.C
    u, v, w = symmetric_frame(b)
    cv = c @ v
    return np.array(
        [dot(u, u), dot(v, v), dot(u, c @ u), dot(v, cv), dot(w, c @ w), dot(w, cv)]
    )


def _n(x):
    return float(np.linalg.norm(x))


def invariant_scales9(b):
    """Norm products bounding each of the nine invariants, for relative errors.

    Uses Hermitian (Euclidean) norms and the Frobenius norm of ``C``, so
    ``|f_i| <= scale_i`` for real data and every scale is rotation invariant.
    """
    v1, w1, v2, w2 = (_n(x) for x in derived_frame(b))
    u1, u2, c = _n(b.u1), _n(b.u2), _n(b.C)
    return np.array(
        [u1 * u1, u2 * u2, v1 * v1, v2 * v2, u1 * c * u2, v1 * c * v2, w1 * c * w2, v1 * c * w2, w1 * c * v2]
    )


def invariant_scales6(b):
    """Symmetric counterpart of :func:`invariant_scales9`."""
    u, v, w = (_n(x) for x in symmetric_frame(b))
    c = _n(b.C)
    return np.array([u * u, v * v, u * c * u, v * c * v, w * c * w, w * c * v])
