import numpy as np
import pytest

from luinv.errors import NonGeneric
from luinv.invariants import invariants9
from luinv.orbit import (
    MAPS,
    equivalent,
    equivalent_symmetric,
    finite_difference_jacobian,
    independence_check,
    invariant_jacobian,
    jacobian_rank,
    numerical_rank,
)
from luinv.quantum import BlochMatrix, RotationPair, act, haar_rotation_pair, haar_su2, adjoint_rotation
from luinv.verify import complex_rotation, sample_generic


def _residual(g, a, b):
    return float(np.max(np.abs(act(g, a).to_vector() - b.to_vector())))


def test_equivalent_self(worked):
    v = equivalent(worked, worked)
    assert v.equivalent and v.residual <= 1e-14
    assert v.weyl_index == 0


@pytest.mark.parametrize("kind", ["hermitian-density", "generic-bloch", "complex-bloch"])
def test_rotated_copies_are_equivalent(rng, kind):
    for _ in range(100):
        b = sample_generic(rng, kind)
        g = haar_rotation_pair(rng)
        if kind == "complex-bloch":
            g = RotationPair(complex_rotation(rng), complex_rotation(rng))
        v = equivalent(b, act(g, b))
        assert v.equivalent
        assert v.residual <= 1e-8
        assert _residual(v.witness, b, act(g, b)) == pytest.approx(v.residual, abs=1e-15)


def test_independent_states_are_distinct(rng):
    for _ in range(100):
        v = equivalent(sample_generic(rng), sample_generic(rng))
        assert not v.equivalent
        assert v.witness is None and v.weyl_index is None
        assert v.residual > 1e-8


def test_perturbed_copy_is_distinct(rng):
    b = sample_generic(rng)
    moved = act(haar_rotation_pair(rng), b)
    bumped = BlochMatrix(moved.u1, moved.u2, moved.C + 1e-4 * np.eye(3))
    assert not equivalent(b, bumped).equivalent


def test_nongeneric_names_input(worked, bell_rho):
    zero = BlochMatrix(np.zeros(3), np.zeros(3), np.eye(3))
    with pytest.raises(NonGeneric) as err:
        equivalent(worked, zero)
    assert err.value.which == 2
    assert str(err.value).startswith("input 2:")
    with pytest.raises(NonGeneric) as err:
        equivalent(zero, worked)
    assert err.value.which == 1


def test_symmetric_equivalence(rng, worked_symmetric):
    assert equivalent_symmetric(worked_symmetric, worked_symmetric).equivalent
    for _ in range(100):
        b = sample_generic(rng, "symmetric")
        g = adjoint_rotation(haar_su2(rng))
        v = equivalent_symmetric(b, act(RotationPair(g, g), b))
        assert v.equivalent and v.residual <= 1e-8
        np.testing.assert_array_equal(v.witness.g1, v.witness.g2)
        assert v.weyl_index in range(4)
        assert not equivalent_symmetric(b, sample_generic(rng, "symmetric")).equivalent


@pytest.mark.parametrize("kind", ["hermitian-density", "generic-bloch", "complex-bloch"])
def test_jacobian_rank_general(rng, kind):
    for _ in range(10):
        assert jacobian_rank("general9", sample_generic(rng, kind)) == 9


def test_jacobian_rank_symmetric(rng):
    for _ in range(10):
        assert jacobian_rank("symmetric6", sample_generic(rng, "symmetric")) == 6


def test_independence_gap(rng):
    for _ in range(10):
        chk = independence_check("general9", sample_generic(rng))
        assert chk.rank == 9 and chk.gap >= 1e3
        assert chk.augmented_singular_values.size == 13
        chk = independence_check("symmetric6", sample_generic(rng, "symmetric"))
        assert chk.rank == 6 and chk.gap >= 1e3


def test_product_states_have_deficient_rank(rng):
    # With C = u1 u2^T the frame vectors vanish; only |u1| and |u2| survive.
    def func(x):
        u1, u2 = x[:3], x[3:]
        return invariants9(BlochMatrix(u1, u2, np.outer(u1, u2)))

    jac = finite_difference_jacobian(func, rng.normal(size=6))
    assert numerical_rank(jac) == 2


def test_jacobian_matches_analytic_column(worked):
    # d(u1.u1)/du1 = 2 u1, d(u2.u2)/du2 = 2 u2.
    jac = invariant_jacobian("general9", worked)
    assert jac.shape == (9, 15)
    np.testing.assert_allclose(jac[0, :3], [2, 0, 0], atol=1e-8)
    np.testing.assert_allclose(jac[1, 3:6], [4, 0, 0], atol=1e-8)
    assert MAPS["symmetric6"].size == 6


def test_jacobian_rank_errors(worked):
    with pytest.raises(ValueError):
        jacobian_rank("nope", worked)
    with pytest.raises(ValueError):
        jacobian_rank("general9", worked, h=0)
    with pytest.raises(NonGeneric):
        jacobian_rank("general9", BlochMatrix(np.zeros(3), np.zeros(3), np.eye(3)))


def test_numerical_rank_basics():
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.array([[1.0, 2.0], [2.0, 4.0]])) == 1
