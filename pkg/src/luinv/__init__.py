"""Rational local unitary invariants of two-qubit mixed states."""
__version__ = "0.1.0"

from .canonical import (
    CanonicalForm,
    canonical_form_general,
    canonical_form_symmetric,
    canonical_from_invariants6,
    canonical_from_invariants9,
    frame_rotation,
    weyl_group_general,
    weyl_group_symmetric,
)
from .errors import (
    DegenerateInvariants,
    LUInvError,
    NonGeneric,
    NotAState,
    NotRotation,
    NotSymmetric,
    NotUnitary,
)
from .invariants import derived_frame, genericity, invariants6_symmetric, invariants9
from .orbit import EquivalenceVerdict, equivalent, equivalent_symmetric, jacobian_rank
from .quantum import (
    BlochMatrix,
    RotationPair,
    act,
    adjoint_rotation,
    bloch_to_density,
    density_to_bloch,
    haar_rotation_pair,
    haar_su2,
    is_symmetric_state,
    pauli_basis,
    random_state,
)
