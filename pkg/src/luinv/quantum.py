"""Two-qubit states in the Bloch matrix picture and the local unitary action.

A density matrix is a plain 4x4 numpy array.  Positivity is never enforced:
everything here works on the affine space of trace-one operators, with or
without the Hermitian condition.

Bloch coordinates are ``c_ij = tr(rho sigma_i (x) sigma_j)``.  The first column
(``i > 0, j = 0``) is ``u1``, the first row is ``u2`` and the 3x3 block is ``C``.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotAState, NotRotation, NotUnitary
from .linalg3c import is_special_orthogonal, mat3, vec3

__all__ = [
    "BlochMatrix",
    "RotationPair",
    "pauli_basis",
    "DIRAC",
    "density_to_bloch",
    "bloch_to_density",
    "check_density",
    "adjoint_rotation",
    "act",
    "conjugate_local",
    "haar_su2",
    "haar_rotation_pair",
    "random_density",
    "random_state",
    "is_symmetric_state",
    "STATE_KINDS",
]

STRUCT_TOL = 1e-10

_SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

# DIRAC[i, j] = sigma_i (x) sigma_j; np.kron puts A[i,j]B[k,l] at [2i+k, 2j+l].
DIRAC = np.array([[np.kron(a, b) for b in _SIGMA] for a in _SIGMA])


def pauli_basis():
    """Return ``[sigma_0, sigma_1, sigma_2, sigma_3]`` as fresh 2x2 arrays."""
    return [s.copy() for s in _SIGMA]


@dataclass(frozen=True, eq=False)
class BlochMatrix:
    """Correlation data ``(u1, u2, C)`` of a two-qubit state.

    The constant ``c_00 = tr(rho) = 1`` is implicit.  Arrays are float64 when
    every entry is real and complex128 otherwise.
    """

    u1: np.ndarray
    u2: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        u1, u2, c = vec3(self.u1), vec3(self.u2), mat3(self.C)
        if np.iscomplexobj(u1) or np.iscomplexobj(u2) or np.iscomplexobj(c):
            u1, u2, c = (x.astype(np.complex128) for x in (u1, u2, c))
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)
        object.__setattr__(self, "C", c)

    @property
    def is_real(self):
        return not np.iscomplexobj(self.C)

    def to_vector(self):
        """Flatten to 15 coordinates: u1, u2, then C row-major."""
        return np.concatenate([self.u1, self.u2, self.C.ravel()])

    @classmethod
    def from_vector(cls, x):
        x = np.asarray(x)
        if x.shape != (15,):
            raise ValueError(f"expected 15 coordinates, got shape {x.shape}")
        return cls(x[0:3], x[3:6], x[6:].reshape(3, 3))

    def max_abs(self):
        return float(np.max(np.abs(self.to_vector())))

    def real_part(self):
        """Drop imaginary parts (for Hermitian data carrying rounding dust)."""
        return BlochMatrix(self.u1.real, self.u2.real, self.C.real)

    def allclose(self, other, atol):
        return float(np.max(np.abs(self.to_vector() - other.to_vector()))) <= atol

    def __repr__(self):
        return f"BlochMatrix(u1={self.u1!r}, u2={self.u2!r}, C={self.C!r})"


class RotationPair(NamedTuple):
    """Element ``(g1, g2)`` of SO(3) x SO(3) acting on Bloch matrices."""

    g1: np.ndarray
    g2: np.ndarray

    def compose(self, other):
        """Group product ``self * other`` (apply ``other`` first)."""
        return RotationPair(self.g1 @ other.g1, self.g2 @ other.g2)

    def inverse(self):
        return RotationPair(self.g1.T, self.g2.T)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.eye(3))


def check_density(rho, hermitian=False, tol=STRUCT_TOL):
    """Validate a density matrix and return it as a complex 4x4 array.

    Raises:
        NotAState: wrong shape, non-finite entries, trace off by more than
            ``tol``, or (with ``hermitian=True``) not Hermitian within ``tol``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise NotAState(f"density matrix must be 4x4, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NotAState("density matrix has non-finite entries")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise NotAState(f"trace is {tr}, expected 1")
    if hermitian and np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NotAState("density matrix is not Hermitian")
    return rho


def density_to_bloch(rho, tol=STRUCT_TOL, real=None):
    """Bloch matrix of ``rho`` from the trace formulas ``tr(rho sigma_i (x) sigma_j)``.

    With ``real=None`` the imaginary parts are dropped whenever ``rho`` is
    Hermitian within ``tol``; pass ``real=False`` to keep complex output.
    """
    rho = check_density(rho, tol=tol)
    coeffs = np.einsum("ijab,ba->ij", DIRAC, rho)
    if real is None:
        real = bool(np.max(np.abs(rho - rho.conj().T)) <= tol)
    if real:
        coeffs = coeffs.real
    return BlochMatrix(coeffs[1:, 0], coeffs[0, 1:], coeffs[1:, 1:])


def bloch_to_density(b):
    """Inverse of :func:`density_to_bloch`: ``rho = 1/4 sum c_ij sigma_i (x) sigma_j``."""
    coeffs = np.empty((4, 4), dtype=np.complex128)
    coeffs[0, 0] = 1.0
    coeffs[1:, 0] = b.u1
    coeffs[0, 1:] = b.u2
    coeffs[1:, 1:] = b.C
    return 0.25 * np.einsum("ij,ijab->ab", coeffs, DIRAC)


def _check_su2(u, tol):
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise NotUnitary(f"expected a 2x2 matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > tol:
        raise NotUnitary("matrix is not unitary")
    if abs(np.linalg.det(u) - 1.0) > tol:
        raise NotUnitary("determinant is not 1")
    return u


def adjoint_rotation(u, tol=STRUCT_TOL):
    """Image of ``u`` in SO(3) under the covering map, ``R_ij = tr(s_i U s_j U^+)/2``.

    ``U`` and ``-U`` give the same rotation.
    """
    u = _check_su2(u, tol)
    s = _SIGMA[1:]
    conj = u @ s @ u.conj().T
    r = 0.5 * np.einsum("iab,jba->ij", s, conj)
    return np.ascontiguousarray(r.real)


def act(g, b, tol=1e-8):
    """Local unitary action in Bloch form: ``(g1 u1, g2 u2, g1 C g2^T)``.

    Raises:
        NotRotation: if either factor fails :func:`is_special_orthogonal`.
    """
    g1, g2 = g
    if not (is_special_orthogonal(g1, tol) and is_special_orthogonal(g2, tol)):
        raise NotRotation("rotation pair is not in SO(3) x SO(3)")
    return BlochMatrix(g1 @ b.u1, g2 @ b.u2, g1 @ b.C @ g2.T)


def conjugate_local(rho, u1, u2):
    """``(U1 (x) U2) rho (U1 (x) U2)^+`` by direct 4x4 products."""
    big = np.kron(u1, u2)
    return big @ rho @ big.conj().T


def haar_su2(rng):
    """Haar-random SU(2) element from a normalized Gaussian quaternion."""
    a, b, c, d = rng.standard_normal(4)
    n = np.sqrt(a * a + b * b + c * c + d * d)
    a, b, c, d = a / n, b / n, c / n, d / n
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def haar_rotation_pair(rng):
    return RotationPair(adjoint_rotation(haar_su2(rng)), adjoint_rotation(haar_su2(rng)))


def random_density(rng):
    """Positive trace-one 4x4 matrix ``A A^+ / tr(A A^+)`` for Gaussian ``A``."""
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


STATE_KINDS = ("generic-bloch", "hermitian-density", "symmetric", "complex-bloch")


def random_state(rng, kind="generic-bloch"):
    """Draw a random Bloch matrix.

    Kinds:
        generic-bloch: real entries uniform in [-1, 1] (Hermitian, not
            necessarily positive).
        hermitian-density: a genuinely physical state from :func:`random_density`.
        symmetric: like generic-bloch with ``u1 = u2`` and ``C = C^T``.
        complex-bloch: real and imaginary parts uniform in [-1, 1]; exercises
            the complexified Liouville space.
    """
    if kind == "generic-bloch":
        x = rng.uniform(-1.0, 1.0, 15)
        return BlochMatrix.from_vector(x)
    if kind == "hermitian-density":
        return density_to_bloch(random_density(rng))
    if kind == "symmetric":
        u = rng.uniform(-1.0, 1.0, 3)
        m = rng.uniform(-1.0, 1.0, (3, 3))
        c = np.triu(m) + np.triu(m, 1).T
        return BlochMatrix(u, u.copy(), c)
    if kind == "complex-bloch":
        x = rng.uniform(-1.0, 1.0, 15) + 1j * rng.uniform(-1.0, 1.0, 15)
        return BlochMatrix.from_vector(x)
    raise ValueError(f"unknown state kind {kind!r}; choose from {STATE_KINDS}")


def is_symmetric_state(b, tol=STRUCT_TOL):
    """True iff ``u1 == u2`` and ``C == C^T`` within ``tol`` (max-norm)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return bool(
        np.max(np.abs(b.u1 - b.u2)) <= tol and np.max(np.abs(b.C - b.C.T)) <= tol
    )
