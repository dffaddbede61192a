"""Canonical (section) forms of generic two-qubit states.

A state is in section form when ``u1 = (a, 0, 0)``, ``u2 = (b, 0, 0)`` and
``C[0, 1] = C[1, 0] = 0``.  Every state in general position is moved there by
the rotation pair whose rows are the normalized frames ``(u_i, v_i, w_i)``.
The rotations that keep the section form are the diagonal sign matrices of
determinant one (a Klein 4-group per qubit), so canonical forms are compared
modulo that finite group.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInvariants, NonGeneric, NotSymmetric
from .invariants import GENERIC_TOL, GenericityReport, derived_frame, genericity
from .linalg3c import cross, dot, norm
from .quantum import STRUCT_TOL, BlochMatrix, RotationPair, act, is_symmetric_state

__all__ = [
    "CanonicalForm",
    "KLEIN",
    "frame_rotation",
    "canonical_form_general",
    "canonical_form_symmetric",
    "canonical_from_invariants9",
    "canonical_from_invariants6",
    "weyl_group_general",
    "weyl_group_symmetric",
    "section_residual",
]

KLEIN = (
    np.diag([1, 1, 1]),
    np.diag([1, -1, -1]),
    np.diag([-1, 1, -1]),
    np.diag([-1, -1, 1]),
)


@dataclass(frozen=True)
class CanonicalForm:
    """Section-form representative with ``B_canon == act(witness, B)``."""

    B_canon: BlochMatrix
    witness: RotationPair
    report: GenericityReport


def _frame(u, v):
    # w-hat is taken as u-hat x v-hat rather than w/norm(w): over C the
    # principal root of w.w can carry the wrong sign and give det = -1.
    uh = u / norm(u)
    vh = v / norm(v)
    return np.array([uh, vh, cross(uh, vh)])


def frame_rotation(u, v, w, tol=GENERIC_TOL):
    """Rotation ``g`` with rows ``u/|u|, v/|v|, w/|w|``, so ``g`` maps the frame to ``e1, e2, e3``.

    ``u`` and ``v`` must be orthogonal for the bilinear dot product and
    ``w`` must equal ``u x v``; the result is then special orthogonal.

    Raises:
        NonGeneric: if ``|u.u|`` or ``|v.v|`` is at most ``tol``.
        ValueError: if ``w`` is not ``u x v``.
    """
    u, v, w = np.asarray(u), np.asarray(v), np.asarray(w)
    for name, x in (("u", u), ("v", v)):
        if abs(dot(x, x)) <= tol:
            raise NonGeneric(f"{name}.{name} is (numerically) zero")
    expected = cross(u, v)
    scale = max(1.0, float(np.max(np.abs(expected))))
    if np.max(np.abs(w - expected)) > 1e-8 * scale:
        raise ValueError("w must equal cross(u, v)")
    return _frame(u, v)


def section_residual(b):
    """Largest entry among those that vanish in section form."""
    return float(
        max(
            np.max(np.abs(b.u1[1:])),
            np.max(np.abs(b.u2[1:])),
            abs(b.C[0, 1]),
            abs(b.C[1, 0]),
        )
    )


def canonical_form_general(b, tol=GENERIC_TOL):
    """Rotate a generic state into section form.

    Raises:
        NonGeneric: with the failing :class:`GenericityReport` attached.
    """
    report = genericity(b, tol)
    if not report.generic:
        raise NonGeneric(
            "state is not in general position: " + ", ".join(report.failures()) + " vanish",
            report=report,
        )
    v1, _, v2, _ = derived_frame(b)
    witness = RotationPair(_frame(b.u1, v1), _frame(b.u2, v2))
    return CanonicalForm(act(witness, b), witness, report)


def canonical_form_symmetric(b, tol=GENERIC_TOL, sym_tol=STRUCT_TOL):
    """Section form of a symmetric state using one rotation applied to both qubits."""
    if not is_symmetric_state(b, sym_tol):
        raise NotSymmetric("state is not symmetric (u1 != u2 or C != C^T)")
    report = genericity(b, tol)
    if not report.generic:
        raise NonGeneric(
            "state is not in general position: " + ", ".join(report.failures()) + " vanish",
            report=report,
        )
    u = b.u1
    g = _frame(u, cross(u, b.C @ u))
    witness = RotationPair(g, g)
    return CanonicalForm(act(witness, b), witness, report)


def _roots(f, count):
    head = f[:count]
    if np.iscomplexobj(f) or np.any(head < 0):
        return np.sqrt(head.astype(np.complex128))
    return np.sqrt(head)


def _check_nonzero(f, count, tol):
    for i in range(count):
        if abs(f[i]) <= tol:
            raise DegenerateInvariants(f"f{i + 1} = {f[i]} is (numerically) zero")


def canonical_from_invariants9(f, tol=1e-12):
    """Section-form state with the prescribed nine invariants.

    ``sqrt(f_i f_j)`` is taken as the product of principal roots
    ``sqrt(f_i) sqrt(f_j)``, which keeps ``invariants9`` an exact left inverse
    for complex values too.

    Raises:
        DegenerateInvariants: if any of ``f1..f4`` is within ``tol`` of zero.
    """
    f = np.asarray(f)
    if f.shape != (9,):
        raise ValueError(f"expected 9 invariants, got shape {f.shape}")
    _check_nonzero(f, 4, tol)
    s1, s2, s3, s4 = _roots(f, 4)
    f5, f6, f7, f8, f9 = f[4:]
    s12 = s1 * s2
    c = np.array(
        [
            [f5 / s12, 0.0, -s4 / s12],
            [0.0, f6 / (s3 * s4), f8 / (s2 * s3 * s4)],
            [-s3 / s12, f9 / (s1 * s3 * s4), f7 / (s12 * s3 * s4)],
        ]
    )
    zero = 0.0 * s1
    return BlochMatrix(np.array([s1, zero, zero]), np.array([s2, zero, zero]), c)


def canonical_from_invariants6(f, tol=1e-12):
    """Symmetric section-form state with the prescribed six invariants.

    Raises:
        DegenerateInvariants: if ``f1`` or ``f2`` is within ``tol`` of zero.
    """
    f = np.asarray(f)
    if f.shape != (6,):
        raise ValueError(f"expected 6 invariants, got shape {f.shape}")
    _check_nonzero(f, 2, tol)
    s1, s2 = _roots(f, 2)
    f1, f2, f3, f4, f5, f6 = f
    c13 = -s2 / f1
    c23 = f6 / (f2 * s1)
    c = np.array(
        [
            [f3 / f1, 0.0, c13],
            [0.0, f4 / f2, c23],
            [c13, c23, f5 / (f1 * f2)],
        ]
    )
    zero = 0.0 * s1
    u = np.array([s1, zero, zero])
    return BlochMatrix(u, u.copy(), c)


def weyl_group_general():
    """The 16 sign pairs ``(k1, k2)``; element ``4*i + j`` is ``(KLEIN[i], KLEIN[j])``."""
    return [RotationPair(a, b) for a in KLEIN for b in KLEIN]


def weyl_group_symmetric():
    return [k.copy() for k in KLEIN]
