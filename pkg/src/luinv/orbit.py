"""Orbit equivalence with explicit witnesses, and numerical independence checks."""
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .canonical import (
    KLEIN,
    canonical_form_general,
    canonical_form_symmetric,
    weyl_group_general,
)
from .errors import NonGeneric
from .invariants import GENERIC_TOL, genericity, invariants6_symmetric, invariants9
from .quantum import STRUCT_TOL, BlochMatrix, RotationPair, act

__all__ = [
    "EquivalenceVerdict",
    "IndependenceCheck",
    "equivalent",
    "equivalent_symmetric",
    "finite_difference_jacobian",
    "numerical_rank",
    "invariant_jacobian",
    "jacobian_rank",
    "independence_check",
    "MAPS",
]

MATCH_TOL = 1e-8
_ZERO_ROW = 1e-13


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an equivalence query.

    When ``equivalent`` is true, ``act(witness, B1)`` reproduces ``B2`` with
    maximal entrywise error ``residual``.  Otherwise ``residual`` is the best
    canonical-form mismatch over the Weyl group.
    """

    equivalent: bool
    witness: Optional[RotationPair]
    residual: float
    weyl_index: Optional[int]


def _mismatch(a, b):
    return float(np.max(np.abs(a.to_vector() - b.to_vector())))


def _canonical(fn, b, which, **kw):
    try:
        return fn(b, **kw)
    except NonGeneric as exc:
        raise NonGeneric(f"input {which}: {exc}", report=exc.report, which=which) from exc


def _search(b1, b2, cf1, cf2, weyl, tol):
    best_idx, best = None, np.inf
    for idx, w in enumerate(weyl):
        r = _mismatch(act(w, cf1.B_canon), cf2.B_canon)
        if r < best:
            best_idx, best = idx, r
    if best > tol:
        return EquivalenceVerdict(False, None, best, None)
    w = weyl[best_idx]
    g, gp = cf1.witness, cf2.witness
    witness = RotationPair(gp.g1.T @ w.g1 @ g.g1, gp.g2.T @ w.g2 @ g.g2)
    residual = _mismatch(act(witness, b1), b2)
    if residual > tol:
        return EquivalenceVerdict(False, None, residual, None)
    return EquivalenceVerdict(True, witness, residual, best_idx)


def equivalent(b1, b2, tol=MATCH_TOL, generic_tol=GENERIC_TOL):
    """Decide whether ``b2`` lies in the SO(3) x SO(3) orbit of ``b1``.

    Both states are brought to section form and the 16 sign pairs are
    searched.  A positive verdict is only returned after the composed witness
    ``(g1'^T k1 g1, g2'^T k2 g2)`` has been checked against the inputs.

    Raises:
        NonGeneric: naming the offending input via ``which``.
    """
    cf1 = _canonical(canonical_form_general, b1, 1, tol=generic_tol)
    cf2 = _canonical(canonical_form_general, b2, 2, tol=generic_tol)
    return _search(b1, b2, cf1, cf2, weyl_group_general(), tol)


def equivalent_symmetric(b1, b2, tol=MATCH_TOL, generic_tol=GENERIC_TOL, sym_tol=STRUCT_TOL):
    """Symmetric analogue of :func:`equivalent` for the diagonal action.

    The witness has equal factors and ``weyl_index`` lies in ``range(4)``.
    """
    kw = {"tol": generic_tol, "sym_tol": sym_tol}
    cf1 = _canonical(canonical_form_symmetric, b1, 1, **kw)
    cf2 = _canonical(canonical_form_symmetric, b2, 2, **kw)
    return _search(b1, b2, cf1, cf2, [RotationPair(k, k) for k in KLEIN], tol)


# --- algebraic independence -------------------------------------------------


def _general_state(x):
    return BlochMatrix.from_vector(x)


def _symmetric_state(x):
    u = x[:3]
    c11, c12, c13, c22, c23, c33 = x[3:]
    c = np.array([[c11, c12, c13], [c12, c22, c23], [c13, c23, c33]])
    return BlochMatrix(u, u, c)


def _general_coords(b):
    return b.to_vector()


def _symmetric_coords(b):
    c = b.C
    return np.concatenate([b.u1, [c[0, 0], c[0, 1], c[0, 2], c[1, 1], c[1, 2], c[2, 2]]])


def _general_extra(b):
    # Further invariants; each must be dependent on f1..f9.
    c = b.C
    return np.array(
        [
            np.trace(c.T @ c),
            b.u1 @ c @ c.T @ b.u1,
            b.u2 @ c.T @ c @ b.u2,
            np.linalg.det(c),
        ]
    )


def _symmetric_extra(b):
    c = b.C
    return np.array([np.trace(c), np.trace(c @ c), b.u1 @ c @ c @ b.u1])


class _Map(NamedTuple):
    size: int
    coords: object
    state: object
    invariants: object
    extra: object


MAPS = {
    "general9": _Map(9, _general_coords, _general_state, invariants9, _general_extra),
    "symmetric6": _Map(
        6, _symmetric_coords, _symmetric_state, invariants6_symmetric, _symmetric_extra
    ),
}


def finite_difference_jacobian(func, x, h=1e-5):
    """Central-difference Jacobian of ``func`` at ``x``; shape ``(len(func(x)), len(x))``."""
    x = np.asarray(x)
    cols = []
    for k in range(x.size):
        step = np.zeros(x.size)
        step[k] = h
        cols.append((np.asarray(func(x + step)) - np.asarray(func(x - step))) / (2 * h))
    return np.stack(cols, axis=1)


def _normalized_singular_values(jac):
    # Rank is unchanged by row scaling; the invariants have degrees 2..9 and
    # their gradients differ by orders of magnitude at small coordinates.
    # Rows at rounding level are identically zero invariants; keep them zero.
    norms = np.linalg.norm(jac, axis=1, keepdims=True)
    live = norms > _ZERO_ROW * max(float(norms.max(initial=0.0)), np.finfo(float).tiny)
    jac = np.where(live, jac / np.where(live, norms, 1.0), 0.0)
    return np.linalg.svd(jac, compute_uv=False)


def numerical_rank(jac, tol_sv=1e-6):
    """Number of singular values above ``tol_sv`` times the largest (rows normalized)."""
    s = _normalized_singular_values(np.asarray(jac))
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol_sv * s[0]))


def _require(kind):
    try:
        return MAPS[kind]
    except KeyError:
        raise ValueError(f"unknown invariant map {kind!r}; choose from {sorted(MAPS)}") from None


def invariant_jacobian(kind, b, h=1e-5, extra=False):
    """Jacobian of the invariant map with respect to the state's free coordinates.

    ``general9`` differentiates 9 invariants in 15 coordinates; ``symmetric6``
    differentiates 6 invariants in the 9 coordinates of a symmetric state.
    With ``extra=True`` further known invariants are appended as rows.
    """
    m = _require(kind)

    def func(x):
        s = m.state(x)
        vals = m.invariants(s)
        return np.concatenate([vals, m.extra(s)]) if extra else vals

    return finite_difference_jacobian(func, m.coords(b), h)


def _check_generic(b, generic_tol):
    report = genericity(b, generic_tol)
    if not report.generic:
        raise NonGeneric(
            "state is not in general position: " + ", ".join(report.failures()) + " vanish",
            report=report,
        )


def jacobian_rank(kind, b, h=1e-5, tol_sv=1e-6, generic_tol=GENERIC_TOL):
    """Numerical rank of the invariant Jacobian at a generic point."""
    if h <= 0:
        raise ValueError("h must be positive")
    _check_generic(b, generic_tol)
    return numerical_rank(invariant_jacobian(kind, b, h), tol_sv)


class IndependenceCheck(NamedTuple):
    rank: int
    singular_values: np.ndarray
    augmented_singular_values: np.ndarray
    gap: float


def independence_check(kind, b, h=1e-5, tol_sv=1e-6, generic_tol=GENERIC_TOL):
    """Rank of the invariant Jacobian plus the gap that certifies it.

    The Jacobian is augmented with extra invariants, which must be
    functionally dependent on the generators.  ``gap`` is the ratio of the
    last expected nonzero singular value to the next one.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    _check_generic(b, generic_tol)
    n = _require(kind).size
    s = _normalized_singular_values(invariant_jacobian(kind, b, h))
    rank = int(np.sum(s > tol_sv * s[0])) if s[0] > 0 else 0
    aug = _normalized_singular_values(invariant_jacobian(kind, b, h, extra=True))
    gap = float(aug[n - 1] / aug[n]) if aug[n] > 0 else float("inf")
    return IndependenceCheck(rank, s, aug, gap)
