"""Randomized property checks behind ``luinv verify``.

Every trial draws from its own generator seeded with ``(seed, property, trial)``
so reports do not depend on execution order.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .canonical import (
    KLEIN,
    canonical_form_general,
    canonical_form_symmetric,
    canonical_from_invariants6,
    canonical_from_invariants9,
    section_residual,
    weyl_group_general,
)
from .invariants import (
    derived_frame,
    genericity,
    invariant_scales6,
    invariant_scales9,
    invariants6_symmetric,
    invariants9,
    symmetric_frame,
)
from .linalg3c import cross, dot, is_special_orthogonal, norm
from .orbit import equivalent, equivalent_symmetric, independence_check
from .quantum import (
    RotationPair,
    act,
    adjoint_rotation,
    bloch_to_density,
    conjugate_local,
    density_to_bloch,
    haar_rotation_pair,
    haar_su2,
    random_density,
    random_state,
)

__all__ = ["SUITES", "PropertyResult", "run_suite", "sample_generic", "complex_rotation"]

RNG_NAME = "numpy.random.Generator(PCG64)"
SUITES = ("identities", "invariance", "canonical", "independence")
_TINY = 1e-300


def sample_generic(rng, kind="hermitian-density", tol=1e-8):
    """Draw states of ``kind`` until one is in general position."""
    while True:
        b = random_state(rng, kind)
        if genericity(b, tol).generic:
            return b


def complex_rotation(rng, scale=0.5):
    """Element of SO(3, C) from the Cayley transform of a random antisymmetric matrix."""
    a = scale * (rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3))
    k = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    eye = np.eye(3)
    return np.linalg.solve(eye - k, eye + k)


def _cvec(rng):
    return rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)


def _n(x):
    return float(np.linalg.norm(x))


def _maxabs(x):
    return float(np.max(np.abs(x)))


# A check returns a bare value compared against the tolerance, or
# (ok, value[, rank]) when pass/fail is decided inside the check.


def _grassmann(rng):
    a, b, c = _cvec(rng), _cvec(rng), _cvec(rng)
    err = _maxabs(cross(a, cross(b, c)) - (dot(a, c) * b - dot(a, b) * c))
    return err / (_n(a) * _n(b) * _n(c))


def _binet_cauchy(rng):
    a, b, c, d = (_cvec(rng) for _ in range(4))
    lhs = dot(cross(a, b), cross(c, d))
    rhs = dot(a, c) * dot(b, d) - dot(b, c) * dot(a, d)
    return abs(lhs - rhs) / (_n(a) * _n(b) * _n(c) * _n(d))


def _frame_norm_identity(rng):
    u = _cvec(rng)
    c = rng.uniform(-1, 1, (3, 3)) + 1j * rng.uniform(-1, 1, (3, 3))
    v = cross(u, c @ u)
    w = cross(u, v)
    return abs(dot(w, w) - dot(u, u) * dot(v, v)) / (_n(u) ** 2 * _n(v) ** 2)


def _norm_square(rng):
    v = _cvec(rng)
    d = dot(v, v)
    return abs(norm(v) ** 2 - d) / _n(v) ** 2


def _cross_orthogonal(rng):
    a, b = _cvec(rng), _cvec(rng)
    return abs(dot(cross(a, b), a)) / (_n(a) ** 2 * _n(b))


def _round_trip(rng):
    rho = random_density(rng)
    return _maxabs(bloch_to_density(density_to_bloch(rho)) - rho)


def _homomorphism(rng):
    u, v = haar_su2(rng), haar_su2(rng)
    return _maxabs(adjoint_rotation(u @ v) - adjoint_rotation(u) @ adjoint_rotation(v))


def _equivariance(rng):
    rho = random_density(rng)
    u1, u2 = haar_su2(rng), haar_su2(rng)
    lhs = density_to_bloch(conjugate_local(rho, u1, u2))
    rhs = act(RotationPair(adjoint_rotation(u1), adjoint_rotation(u2)), density_to_bloch(rho))
    return _maxabs(lhs.to_vector() - rhs.to_vector())


def _rel(a, b, scale):
    return float(np.max(np.abs(a - b) / np.maximum(scale, _TINY)))


def _invariance9(rng):
    b = random_state(rng, "hermitian-density")
    g = haar_rotation_pair(rng)
    return _rel(invariants9(act(g, b)), invariants9(b), invariant_scales9(b))


def _invariance9_complex(rng):
    b = random_state(rng, "complex-bloch")
    gb = act(RotationPair(complex_rotation(rng), complex_rotation(rng)), b)
    scale = np.maximum(invariant_scales9(b), invariant_scales9(gb))
    return _rel(invariants9(gb), invariants9(b), scale)


def _invariance6(rng):
    b = random_state(rng, "symmetric")
    r = haar_rotation_pair(rng).g1
    return _rel(invariants6_symmetric(act(RotationPair(r, r), b)), invariants6_symmetric(b), invariant_scales6(b))


def _hidden_entries(rng):
    b = random_state(rng, "complex-bloch")
    f = invariants9(b)
    v1, w1, v2, w2 = derived_frame(b)
    c = b.C
    e1 = abs(dot(w1, c @ b.u2) + f[2]) / (_n(w1) * _n(c) * _n(b.u2))
    e2 = abs(dot(b.u1, c @ w2) + f[3]) / (_n(b.u1) * _n(c) * _n(w2))
    e3 = abs(dot(w1, w1) - f[0] * f[2]) / (_n(b.u1) ** 2 * _n(v1) ** 2)
    e4 = abs(dot(w2, w2) - f[1] * f[3]) / (_n(b.u2) ** 2 * _n(v2) ** 2)
    return max(e1, e2, e3, e4)


def _symmetric_hidden(rng):
    b = random_state(rng, "symmetric")
    u, v, w = symmetric_frame(b)
    f2 = dot(v, v)
    return abs(dot(u, b.C @ w) + f2) / (_n(u) * _n(b.C) * _n(w))


def _section_general(rng):
    return section_residual(canonical_form_general(sample_generic(rng)).B_canon)


def _section_symmetric(rng):
    return section_residual(canonical_form_symmetric(sample_generic(rng, "symmetric")).B_canon)


def _weyl_matches(a, b, weyl, tol):
    errs = [_maxabs(act(w, a).to_vector() - b.to_vector()) for w in weyl]
    return sum(e <= tol for e in errs), min(errs)


def _cross_validation9(rng):
    b = sample_generic(rng)
    canon = canonical_form_general(b).B_canon
    rebuilt = canonical_from_invariants9(invariants9(b))
    hits, err = _weyl_matches(rebuilt, canon, weyl_group_general(), 1e-7)
    return hits == 1, err


def _cross_validation6(rng):
    b = sample_generic(rng, "symmetric")
    canon = canonical_form_symmetric(b).B_canon
    rebuilt = canonical_from_invariants6(invariants6_symmetric(b))
    hits, err = _weyl_matches(rebuilt, canon, [RotationPair(k, k) for k in KLEIN], 1e-7)
    return hits == 1, err


def _random_invariants(rng, n, lead):
    while True:
        f = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        if np.all(np.abs(f[:lead]) > 1e-2):
            return f


def _round_trip9(rng):
    f = _random_invariants(rng, 9, 4)
    return float(np.max(np.abs(invariants9(canonical_from_invariants9(f)) - f) / np.maximum(1, np.abs(f))))


def _round_trip6(rng):
    f = _random_invariants(rng, 6, 2)
    out = invariants6_symmetric(canonical_from_invariants6(f))
    return float(np.max(np.abs(out - f) / np.maximum(1, np.abs(f))))


def _weyl_consistency(rng):
    canon = canonical_form_general(sample_generic(rng)).B_canon
    f, scale = invariants9(canon), invariant_scales9(canon)
    return max(_rel(invariants9(act(w, canon)), f, scale) for w in weyl_group_general())


def _frame_orthogonal(rng):
    b = sample_generic(rng, "complex-bloch")
    w = canonical_form_general(b).witness
    ok = is_special_orthogonal(w.g1, 1e-9) and is_special_orthogonal(w.g2, 1e-9)
    err = max(_maxabs(g.T @ g - np.eye(3)) for g in w)
    return ok, err


def _orbit_equivalent(rng):
    b = sample_generic(rng)
    verdict = equivalent(b, act(haar_rotation_pair(rng), b))
    return verdict.equivalent and verdict.residual <= 1e-8, verdict.residual


def _orbit_distinct(rng):
    verdict = equivalent(sample_generic(rng), sample_generic(rng))
    return not verdict.equivalent, verdict.residual


def _orbit_symmetric(rng):
    b = sample_generic(rng, "symmetric")
    r = haar_rotation_pair(rng).g1
    same = equivalent_symmetric(b, act(RotationPair(r, r), b))
    other = equivalent_symmetric(b, sample_generic(rng, "symmetric"))
    return same.equivalent and not other.equivalent, same.residual


def _fingerprint_separation(rng):
    f1 = invariants9(sample_generic(rng))
    f2 = invariants9(sample_generic(rng))
    return float(np.max(np.abs(f1 - f2) / np.maximum(np.abs(f1), np.abs(f2))))


def _independence(kind, expected, state_kind):
    def check(rng):
        res = independence_check(kind, sample_generic(rng, state_kind))
        return res.rank == expected and res.gap >= 1e3, res.gap, res.rank

    return check


@dataclass
class _Property:
    suite: str
    name: str
    check: Callable
    tol: float = None
    # "max": value must stay <= tol, "min": value must stay > tol (worst = smallest)
    mode: str = "max"


_PROPERTIES = [
    _Property("identities", "grassmann_identity", _grassmann, 1e-12),
    _Property("identities", "binet_cauchy_identity", _binet_cauchy, 1e-12),
    _Property("identities", "frame_norm_identity", _frame_norm_identity, 1e-12),
    _Property("identities", "norm_squared", _norm_square, 1e-12),
    _Property("identities", "cross_orthogonal", _cross_orthogonal, 1e-12),
    _Property("identities", "bloch_round_trip", _round_trip, 1e-12),
    _Property("identities", "adjoint_homomorphism", _homomorphism, 1e-10),
    _Property("identities", "equivariance", _equivariance, 1e-10),
    _Property("invariance", "invariants9_haar", _invariance9, 1e-9),
    _Property("invariance", "invariants9_complex_group", _invariance9_complex, 1e-9),
    _Property("invariance", "invariants6_diagonal", _invariance6, 1e-9),
    _Property("invariance", "hidden_entries", _hidden_entries, 1e-10),
    _Property("invariance", "symmetric_hidden_entry", _symmetric_hidden, 1e-10),
    _Property("canonical", "section_zeros_general", _section_general, 1e-8),
    _Property("canonical", "section_zeros_symmetric", _section_symmetric, 1e-8),
    _Property("canonical", "cross_validation9", _cross_validation9, 1e-7),
    _Property("canonical", "cross_validation6", _cross_validation6, 1e-7),
    _Property("canonical", "round_trip9", _round_trip9, 1e-9),
    _Property("canonical", "round_trip6", _round_trip6, 1e-9),
    _Property("canonical", "weyl_consistency", _weyl_consistency, 1e-10),
    _Property("canonical", "frame_special_orthogonal", _frame_orthogonal, 1e-9),
    _Property("canonical", "orbit_equivalent", _orbit_equivalent, 1e-8),
    _Property("canonical", "orbit_distinct", _orbit_distinct, None, "min"),
    _Property("canonical", "orbit_symmetric", _orbit_symmetric, 1e-8),
    _Property("canonical", "fingerprint_separation", _fingerprint_separation, 1e-3, "min"),
    _Property("independence", "rank_general9", _independence("general9", 9, "hermitian-density"), 1e3, "min"),
    _Property("independence", "rank_symmetric6", _independence("symmetric6", 6, "symmetric"), 1e3, "min"),
]


@dataclass
class PropertyResult:
    suite: str
    name: str
    tolerance: float
    trials: int
    passed: int
    failed: int
    worst: float

    @property
    def ok(self):
        return self.failed == 0

    def to_dict(self):
        return {
            "suite": self.suite,
            "name": self.name,
            "tolerance": self.tolerance,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "worst": self.worst,
        }


def _run_property(pid, prop, trials, seed, ranks):
    passed = 0
    worst = -np.inf if prop.mode == "max" else np.inf
    for t in range(trials):
        rng = np.random.default_rng([seed, pid, t])
        out = prop.check(rng)
        if isinstance(out, tuple):
            ok, value = out[0], out[1]
            if len(out) > 2:
                ranks.setdefault(prop.name.removeprefix("rank_"), set()).add(out[2])
        elif prop.mode == "max":
            ok, value = out <= prop.tol, out
        else:
            ok, value = out > prop.tol, out
        passed += bool(ok)
        worst = max(worst, value) if prop.mode == "max" else min(worst, value)
    return PropertyResult(prop.suite, prop.name, prop.tol, trials, passed, trials - passed, float(worst))


def run_suite(suite="all", trials=100, seed=0):
    """Run the selected suite and return ``(results, ranks)``.

    ``ranks`` maps each independence property to the sorted list of Jacobian
    ranks that were observed.
    """
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    results, ranks = [], {}
    for pid, prop in enumerate(_PROPERTIES):
        if suite in ("all", prop.suite):
            results.append(_run_property(pid, prop, trials, seed, ranks))
    return results, {k: sorted(int(r) for r in v) for k, v in ranks.items()}
