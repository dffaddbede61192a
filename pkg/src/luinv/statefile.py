"""JSON state files.

Two kinds are accepted::

    {"kind": "density", "payload": [[z00, z01, z02, z03], ...],  "metadata": {...}}
    {"kind": "bloch",   "payload": {"u1": [...], "u2": [...], "C": [[...], ...]}}

Every complex number is either a bare real number or an ``[re, im]`` pair.
``metadata`` is optional and may carry ``label`` and ``seed``.
"""
import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import LUInvError, NotAState
from .quantum import BlochMatrix, density_to_bloch

__all__ = [
    "MalformedInput",
    "StateFile",
    "TRACE_TOL",
    "parse_state",
    "load_state",
    "bloch_payload",
    "density_payload",
    "encode_scalar",
    "encode_array",
]

STATE_SCHEMA = "luinv.state/1"
TRACE_TOL = 1e-8


class MalformedInput(LUInvError):
    """State file cannot be parsed or has the wrong shape."""


@dataclass
class StateFile:
    kind: str
    bloch: BlochMatrix
    density: object = None
    metadata: dict = field(default_factory=dict)
    sha256: str = ""


def _scalar(x, where):
    if isinstance(x, bool):
        raise MalformedInput(f"{where}: booleans are not numbers")
    if isinstance(x, (int, float)):
        return complex(x)
    if (
        isinstance(x, list)
        and len(x) == 2
        and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in x)
    ):
        return complex(x[0], x[1])
    raise MalformedInput(f"{where}: expected a number or an [re, im] pair, got {x!r}")


def _array(obj, shape, where):
    if len(shape) == 1:
        if not isinstance(obj, list) or len(obj) != shape[0]:
            raise MalformedInput(f"{where}: expected a list of {shape[0]} numbers")
        return [_scalar(x, f"{where}[{i}]") for i, x in enumerate(obj)]
    if not isinstance(obj, list) or len(obj) != shape[0]:
        raise MalformedInput(f"{where}: expected {shape[0]} rows")
    return [_array(row, shape[1:], f"{where}[{i}]") for i, row in enumerate(obj)]


def _as_numeric(values):
    arr = np.array(values, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise MalformedInput("non-finite entry")
    if np.all(arr.imag == 0):
        return arr.real.copy()
    return arr


def parse_state(data, trace_tol=TRACE_TOL):
    """Build a :class:`StateFile` from raw bytes or text."""
    if isinstance(data, str):
        data = data.encode()
    digest = hashlib.sha256(data).hexdigest()
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedInput("state file must be a JSON object")
    kind = doc.get("kind")
    payload = doc.get("payload")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise MalformedInput("metadata must be an object")
    if kind == "density":
        rho = np.array(_array(payload, (4, 4), "payload"), dtype=np.complex128)
        try:
            bloch = density_to_bloch(rho, tol=trace_tol)
        except NotAState as exc:
            raise MalformedInput(str(exc)) from None
        return StateFile(kind, bloch, rho, metadata, digest)
    if kind == "bloch":
        if not isinstance(payload, dict):
            raise MalformedInput("bloch payload must be an object with u1, u2, C")
        parts = []
        for key, shape in (("u1", (3,)), ("u2", (3,)), ("C", (3, 3))):
            if key not in payload:
                raise MalformedInput(f"bloch payload is missing {key!r}")
            parts.append(_array(payload[key], shape, key))
        u1, u2, c = (_as_numeric(p) for p in parts)
        return StateFile(kind, BlochMatrix(u1, u2, c), None, metadata, digest)
    raise MalformedInput(f"unknown kind {kind!r}; expected 'density' or 'bloch'")


def load_state(path, trace_tol=TRACE_TOL):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None
    return parse_state(data, trace_tol)


def encode_scalar(z, force_pair=False):
    # "+ 0.0" folds -0.0 into 0.0 so output does not depend on rounding signs.
    re, im = float(complex(z).real) + 0.0, float(complex(z).imag) + 0.0
    if not force_pair and im == 0:
        return re
    return [re, im]


def encode_array(arr):
    """Nested lists; bare numbers for real dtypes, ``[re, im]`` pairs otherwise."""
    arr = np.asarray(arr)
    pair = np.iscomplexobj(arr)
    if pair:
        return (np.stack([arr.real, arr.imag], axis=-1) + 0.0).tolist()
    return (arr.astype(float) + 0.0).tolist()


def bloch_payload(b, metadata=None):
    doc = {
        "schema": STATE_SCHEMA,
        "kind": "bloch",
        "payload": {"u1": encode_array(b.u1), "u2": encode_array(b.u2), "C": encode_array(b.C)},
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def density_payload(rho, metadata=None):
    doc = {
        "schema": STATE_SCHEMA,
        "kind": "density",
        "payload": encode_array(np.asarray(rho, dtype=np.complex128)),
    }
    if metadata:
        doc["metadata"] = metadata
    return doc
