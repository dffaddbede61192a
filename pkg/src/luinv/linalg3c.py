"""Fixed-size complex 3-vector and 3x3 matrix algebra.

Vectors are numpy arrays of shape ``(3,)`` and matrices of shape ``(3, 3)``,
either float64 or complex128.  Real inputs stay real, which gives the fast path
for Hermitian states for free.

``dot`` is the symmetric *bilinear* form ``a1*b1 + a2*b2 + a3*b3``.  It never
conjugates: for complex vectors it is not an inner product and ``(1, i, 0)``
has zero length.
"""
import cmath
import math

import numpy as np

__all__ = [
    "vec3",
    "mat3",
    "dot",
    "cross",
    "norm",
    "matvec",
    "transpose",
    "matmul",
    "is_special_orthogonal",
]


def _coerce(values, shape):
    arr = np.asarray(values)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128)
    else:
        arr = arr.astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    return arr


def vec3(values):
    """Validate and return a 3-vector (float64 or complex128)."""
    return _coerce(values, (3,))


def mat3(values):
    """Validate and return a 3x3 matrix (float64 or complex128)."""
    return _coerce(values, (3, 3))


def dot(a, b):
    """Bilinear dot product, no conjugation."""
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    """Standard cross product; works unchanged over the complex numbers."""
    return np.array(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


def norm(v):
    """Complex length ``sqrt(dot(v, v))`` on the principal branch.

    For real ``v`` this is the usual Euclidean norm and is returned as a float.
    The result may be zero for a nonzero isotropic vector.
    """
    d = dot(v, v)
    if isinstance(d, complex) or np.iscomplexobj(d):
        return cmath.sqrt(complex(d))
    return math.sqrt(float(d))


def matvec(m, v):
    return m @ v


def transpose(m):
    return m.T


def matmul(a, b):
    return a @ b


def is_special_orthogonal(m, tol=1e-10):
    """True iff ``M^T M == I`` and ``det M == 1`` up to ``tol`` (max-norm).

    Uses the plain transpose, so complex orthogonal matrices of SO(3, C)
    qualify too.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m)
    if m.shape != (3, 3):
        return False
    gram = m.T @ m
    if np.max(np.abs(gram - np.eye(3))) > tol:
        return False
    return bool(abs(np.linalg.det(m) - 1.0) <= tol)
