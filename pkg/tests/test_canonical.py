import itertools

import numpy as np
import pytest

from luinv.canonical import (
    KLEIN,
    canonical_form_general,
    canonical_form_symmetric,
    canonical_from_invariants6,
    canonical_from_invariants9,
    frame_rotation,
    section_residual,
    weyl_group_general,
    weyl_group_symmetric,
)
from luinv.errors import DegenerateInvariants, NonGeneric, NotSymmetric
from luinv.invariants import derived_frame, invariant_scales9, invariants6_symmetric, invariants9
from luinv.linalg3c import is_special_orthogonal
from luinv.quantum import BlochMatrix, RotationPair, act, density_to_bloch, random_state
from luinv.verify import sample_generic

WORKED_CANON = np.array([[1, 0, -1], [0, 2, 0], [-1, 0, 3]])


def _maxabs(x):
    return float(np.max(np.abs(x)))


@pytest.mark.parametrize(
    "u, v, w, expected",
    [
        (np.eye(3)[0], np.eye(3)[1], np.eye(3)[2], np.eye(3)),
        ([0, 3, 0], [0, 0, 5], [15, 0, 0], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        ([1, 0, 0], [0, -1, 0], [0, 0, -1], np.diag([1, -1, -1])),
    ],
)
def test_frame_rotation_examples(u, v, w, expected):
    g = frame_rotation(np.array(u, float), np.array(v, float), np.array(w, float))
    np.testing.assert_allclose(g, expected, atol=1e-15)
    assert is_special_orthogonal(g, 1e-9)
    np.testing.assert_allclose(g @ np.array(u, float), [np.linalg.norm(u), 0, 0], atol=1e-15)


def test_frame_rotation_errors():
    with pytest.raises(NonGeneric):
        frame_rotation(np.zeros(3), np.eye(3)[1], np.zeros(3))
    with pytest.raises(NonGeneric):
        frame_rotation(np.array([1, 1j, 0]), np.array([0, 0, 1.0]), np.array([1j, -1, 0]))
    with pytest.raises(ValueError):
        frame_rotation(np.eye(3)[0], np.eye(3)[1], -np.eye(3)[2])


def test_frame_rotation_complex_is_special_orthogonal(rng):
    for _ in range(200):
        b = random_state(rng, "complex-bloch")
        v1, w1, _, _ = derived_frame(b)
        g = frame_rotation(b.u1, v1, w1)
        assert is_special_orthogonal(g, 1e-9)


def test_canonical_form_general_worked_example(worked):
    cf = canonical_form_general(worked)
    np.testing.assert_allclose(cf.B_canon.u1, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(cf.B_canon.u2, [2, 0, 0], atol=1e-15)
    np.testing.assert_allclose(cf.B_canon.C, WORKED_CANON, atol=1e-15)
    np.testing.assert_allclose(cf.witness.g1, np.diag([1, -1, -1]), atol=1e-15)
    np.testing.assert_allclose(act(cf.witness, worked).to_vector(), cf.B_canon.to_vector(), atol=1e-15)
    np.testing.assert_allclose(invariants9(cf.B_canon), invariants9(worked), atol=1e-12)


def test_canonical_form_idempotent_up_to_weyl(worked):
    canon = canonical_form_general(worked).B_canon
    again = canonical_form_general(canon)
    assert section_residual(again.B_canon) <= 1e-8
    assert any(_maxabs(again.witness.g1 - w.g1) + _maxabs(again.witness.g2 - w.g2) <= 1e-12 for w in weyl_group_general())


def test_canonical_form_general_rejects_degenerate(bell_rho):
    with pytest.raises(NonGeneric) as err:
        canonical_form_general(density_to_bloch(bell_rho))
    assert err.value.report is not None and not err.value.report.generic


@pytest.mark.parametrize("kind", ["generic-bloch", "hermitian-density", "complex-bloch"])
def test_canonical_form_general_properties(rng, kind):
    for _ in range(200):
        b = sample_generic(rng, kind)
        cf = canonical_form_general(b)
        assert section_residual(cf.B_canon) <= 1e-8
        assert is_special_orthogonal(cf.witness.g1, 1e-9)
        assert is_special_orthogonal(cf.witness.g2, 1e-9)
        np.testing.assert_allclose(act(cf.witness, b).to_vector(), cf.B_canon.to_vector(), atol=1e-9)
        f = invariants9(b)
        np.testing.assert_allclose(cf.B_canon.u1[0] ** 2, f[0], rtol=1e-10)
        np.testing.assert_allclose(cf.B_canon.u2[0] ** 2, f[1], rtol=1e-10)
        if kind != "complex-bloch":
            assert cf.B_canon.u1[0] > 0 and cf.B_canon.u2[0] > 0


def test_canonical_form_symmetric_worked_example(worked_symmetric):
    cf = canonical_form_symmetric(worked_symmetric)
    np.testing.assert_allclose(cf.witness.g1, np.diag([1, -1, -1]), atol=1e-15)
    np.testing.assert_array_equal(cf.witness.g1, cf.witness.g2)
    np.testing.assert_allclose(cf.B_canon.C, WORKED_CANON, atol=1e-15)
    np.testing.assert_allclose(cf.B_canon.u1, [1, 0, 0], atol=1e-15)


def test_canonical_form_symmetric_errors(worked):
    with pytest.raises(NotSymmetric):
        canonical_form_symmetric(worked)
    with pytest.raises(NonGeneric):
        canonical_form_symmetric(BlochMatrix(np.zeros(3), np.zeros(3), np.eye(3)))


def test_canonical_form_symmetric_properties(rng):
    for _ in range(200):
        cf = canonical_form_symmetric(sample_generic(rng, "symmetric"))
        c = cf.B_canon.C
        assert section_residual(cf.B_canon) <= 1e-8
        assert _maxabs(c - c.T) <= 1e-12
        assert _maxabs(cf.B_canon.u1 - cf.B_canon.u2) <= 1e-12


def test_canonical_from_invariants9_worked_example():
    b = canonical_from_invariants9(np.array([1, 4, 4, 4, 2, 8, 24, 0, 0], float))
    np.testing.assert_array_equal(b.u1, [1, 0, 0])
    np.testing.assert_array_equal(b.u2, [2, 0, 0])
    np.testing.assert_array_equal(b.C, WORKED_CANON)
    # (3,1) entry is -sqrt(f3)/sqrt(f1 f2) = -1.
    assert b.C[2, 0] == -1


def test_canonical_from_invariants6_worked_example():
    b = canonical_from_invariants6(np.array([1, 1, 1, 2, 3, 0], float))
    np.testing.assert_array_equal(b.u1, [1, 0, 0])
    np.testing.assert_array_equal(b.C, WORKED_CANON)


def test_canonical_from_invariants_degenerate():
    with pytest.raises(DegenerateInvariants):
        canonical_from_invariants9([0, 4, 4, 4, 2, 8, 24, 0, 0])
    with pytest.raises(DegenerateInvariants):
        canonical_from_invariants9([1, 4, 4, 1e-14, 2, 8, 24, 0, 0])
    with pytest.raises(DegenerateInvariants):
        canonical_from_invariants6([1, 0, 1, 2, 3, 0])
    with pytest.raises(ValueError):
        canonical_from_invariants9([1, 2, 3])


def _random_f(rng, n, lead):
    while True:
        f = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        if np.all(np.abs(f[:lead]) > 1e-2):
            return f


def test_round_trip_from_invariants(rng):
    for _ in range(300):
        f = _random_f(rng, 9, 4)
        out = invariants9(canonical_from_invariants9(f))
        assert np.all(np.abs(out - f) <= 1e-9 * np.maximum(1, np.abs(f)))
        g = _random_f(rng, 6, 2)
        out = invariants6_symmetric(canonical_from_invariants6(g))
        assert np.all(np.abs(out - g) <= 1e-9 * np.maximum(1, np.abs(g)))


def test_round_trip_real_negative_invariants():
    f = np.array([-1.0, 2, -3, 4, 0.5, 0.1, -0.2, 0.3, 0.7])
    np.testing.assert_allclose(invariants9(canonical_from_invariants9(f)), f, atol=1e-12)


def _weyl_hits(a, b, weyl, tol):
    return [i for i, w in enumerate(weyl) if _maxabs(act(w, a).to_vector() - b.to_vector()) <= tol]


@pytest.mark.parametrize("kind", ["hermitian-density", "generic-bloch", "complex-bloch"])
def test_cross_validation_general(rng, kind):
    weyl = weyl_group_general()
    for _ in range(200):
        b = sample_generic(rng, kind)
        rebuilt = canonical_from_invariants9(invariants9(b))
        canon = canonical_form_general(b).B_canon
        assert len(_weyl_hits(rebuilt, canon, weyl, 1e-7)) == 1


def test_cross_validation_symmetric(rng):
    weyl = [RotationPair(k, k) for k in weyl_group_symmetric()]
    for _ in range(200):
        b = sample_generic(rng, "symmetric")
        rebuilt = canonical_from_invariants6(invariants6_symmetric(b))
        canon = canonical_form_symmetric(b).B_canon
        assert len(_weyl_hits(rebuilt, canon, weyl, 1e-7)) == 1


def test_weyl_groups():
    general = weyl_group_general()
    sym = weyl_group_symmetric()
    assert len(general) == 16
    assert len(sym) == 4
    for k in sym:
        assert k.dtype.kind == "i"
        assert round(np.linalg.det(k)) == 1
        np.testing.assert_array_equal(k @ k, np.eye(3))
    for w in general:
        np.testing.assert_array_equal(w.g1 @ w.g1, np.eye(3))
        np.testing.assert_array_equal(w.g2 @ w.g2, np.eye(3))
    keys = {(tuple(np.diag(w.g1)), tuple(np.diag(w.g2))) for w in general}
    assert len(keys) == 16
    for a, b in itertools.product(sym, sym):
        assert any(np.array_equal(a @ b, k) for k in sym)
    np.testing.assert_array_equal(general[4 * 2 + 3].g1, KLEIN[2])
    np.testing.assert_array_equal(general[4 * 2 + 3].g2, KLEIN[3])


def test_weyl_elements_preserve_section_and_invariants(rng):
    for _ in range(50):
        canon = canonical_form_general(sample_generic(rng)).B_canon
        f, scale = invariants9(canon), invariant_scales9(canon)
        for w in weyl_group_general():
            moved = act(w, canon)
            assert section_residual(moved) <= 1e-8
            assert np.all(np.abs(invariants9(moved) - f) <= 1e-10 * scale)
