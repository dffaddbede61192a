"""Command-line interface: ``luinv {invariants,equiv,random,verify}``.

Exit codes: 0 ok/equivalent, 1 malformed input or flags, 2 non-generic,
3 not symmetric, 4 distinct, 5 verification failure.

``LUINV_TOL`` overrides the default genericity tolerance and ``LUINV_SEED``
the default seed.
"""
import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import NonGeneric, NotSymmetric
from .invariants import GENERIC_TOL, genericity, invariants6_symmetric, invariants9
from .orbit import MATCH_TOL, equivalent, equivalent_symmetric
from .quantum import (
    STATE_KINDS,
    RotationPair,
    act,
    adjoint_rotation,
    conjugate_local,
    haar_su2,
    is_symmetric_state,
    random_density,
    random_state,
)
from .statefile import (
    MalformedInput,
    bloch_payload,
    density_payload,
    encode_array,
    encode_scalar,
    load_state,
)
from .verify import RNG_NAME, SUITES, run_suite

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_NONGENERIC = 2
EXIT_NOT_SYMMETRIC = 3
EXIT_DISTINCT = 4
EXIT_VERIFY_FAILED = 5

REPORT_SCHEMA = "luinv.report/1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _env_float(name, default):
    raw = os.environ.get(name)
    return default if raw is None else float(raw)


def _env_int(name, default):
    raw = os.environ.get(name)
    return default if raw is None else int(raw)


def _dumps(obj):
    # json uses repr() for floats: shortest round-trip, at most 17 digits.
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(obj):
    sys.stdout.write(_dumps(obj) + "\n")


def _fail(code, message):
    print(message, file=sys.stderr)
    return code


def cmd_invariants(args):
    state = load_state(args.input)
    b = state.bloch
    symmetric = is_symmetric_state(b)
    if args.symmetric:
        try:
            values = invariants6_symmetric(b)
        except NotSymmetric as exc:
            return _fail(EXIT_NOT_SYMMETRIC, f"NotSymmetric: {exc}")
        names = [f"f{i}" for i in range(1, 7)]
    else:
        values = invariants9(b)
        names = [f"f{i}" for i in range(1, 10)]
    report = genericity(b, args.tol)

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"{n}_{part}" for n in names for part in ("re", "im")])
        writer.writerow([repr(x) for v in values for x in encode_scalar(v, force_pair=True)])
        sys.stdout.write(buf.getvalue())
    else:
        _emit(
            {
                "schema": REPORT_SCHEMA,
                "tool_version": __version__,
                "input_sha256": state.sha256,
                "label": state.metadata.get("label"),
                "invariant_set": "symmetric6" if args.symmetric else "general9",
                "invariants": [encode_scalar(v, force_pair=True) for v in values],
                "symmetric": symmetric,
                "genericity": report.to_dict(),
            }
        )
    if not report.generic:
        return _fail(EXIT_NONGENERIC, "NonGeneric: " + ", ".join(report.failures()) + " vanish")
    return EXIT_OK


def cmd_equiv(args):
    b1 = load_state(args.input1).bloch
    b2 = load_state(args.input2).bloch
    fn = equivalent_symmetric if args.symmetric else equivalent
    try:
        verdict = fn(b1, b2, tol=args.tol, generic_tol=args.generic_tol)
    except NonGeneric as exc:
        print(f"NONGENERIC {exc}")
        return _fail(EXIT_NONGENERIC, f"NonGeneric: {exc}")
    except NotSymmetric as exc:
        return _fail(EXIT_NOT_SYMMETRIC, f"NotSymmetric: {exc}")

    print("EQUIVALENT" if verdict.equivalent else "DISTINCT")
    print(f"residual {verdict.residual!r}")
    if verdict.equivalent:
        print(f"weyl_index {verdict.weyl_index}")
        if args.witness_out:
            g1, g2 = verdict.witness
            doc = {
                "schema": "luinv.witness/1",
                "g1": encode_array(g1),
                "g2": encode_array(g2),
                "residual": verdict.residual,
                "weyl_index": verdict.weyl_index,
            }
            Path(args.witness_out).write_text(_dumps(doc) + "\n")
    return EXIT_OK if verdict.equivalent else EXIT_DISTINCT


def _orbit_copies(path, rng, count, diagonal, seed):
    state = load_state(path)
    out = []
    for i in range(count):
        u1 = haar_su2(rng)
        u2 = u1 if diagonal else haar_su2(rng)
        meta = {"label": f"orbit-{i}", "seed": seed, "index": i, "rng": RNG_NAME, "source_sha256": state.sha256}
        if state.kind == "density":
            out.append(density_payload(conjugate_local(state.density, u1, u2), meta))
        else:
            g = RotationPair(adjoint_rotation(u1), adjoint_rotation(u2))
            out.append(bloch_payload(act(g, state.bloch), meta))
    return out


def _fresh_states(kind, rng, count, seed):
    out = []
    for i in range(count):
        meta = {"label": f"{kind}-{i}", "seed": seed, "index": i, "rng": RNG_NAME}
        if kind == "hermitian-density":
            out.append(density_payload(random_density(rng), meta))
        else:
            out.append(bloch_payload(random_state(rng, kind), meta))
    return out


def cmd_random(args):
    if args.count < 1:
        return _fail(EXIT_MALFORMED, "--count must be positive")
    rng = np.random.default_rng(args.seed)
    if args.orbit_of:
        docs = _orbit_copies(args.orbit_of, rng, args.count, args.diagonal, args.seed)
    else:
        docs = _fresh_states(args.kind, rng, args.count, args.seed)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, doc in enumerate(docs):
            path = out / f"state_{i:04d}.json"
            path.write_text(_dumps(doc) + "\n")
            print(path)
    elif len(docs) == 1:
        _emit(docs[0])
    else:
        _emit(docs)
    return EXIT_OK


def cmd_verify(args):
    if args.trials < 1:
        return _fail(EXIT_MALFORMED, "--trials must be positive")
    results, ranks = run_suite(args.suite, args.trials, args.seed)
    ok = all(r.ok for r in results)
    _emit(
        {
            "schema": "luinv.verify/1",
            "tool_version": __version__,
            "seed": args.seed,
            "rng": RNG_NAME,
            "suite": args.suite,
            "trials": args.trials,
            "properties": [r.to_dict() for r in results],
            "ranks": ranks,
            "ok": ok,
        }
    )
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser():
    tol = _env_float("LUINV_TOL", GENERIC_TOL)
    seed = _env_int("LUINV_SEED", 0)

    parser = _Parser(prog="luinv", description="Local unitary invariants of two-qubit states.")
    parser.add_argument("--version", action="version", version=f"luinv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="print the invariant fingerprint of a state file")
    p.add_argument("input")
    p.add_argument("--symmetric", action="store_true", help="use the six symmetric-state invariants")
    p.add_argument("--tol", type=float, default=tol, help="genericity tolerance")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equiv", help="decide local unitary equivalence of two states")
    p.add_argument("input1")
    p.add_argument("input2")
    p.add_argument("--tol", type=float, default=MATCH_TOL, help="max entrywise witness residual")
    p.add_argument("--generic-tol", type=float, default=tol)
    p.add_argument("--symmetric", action="store_true", help="restrict to the diagonal action")
    p.add_argument("--witness-out", metavar="PATH")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("random", help="generate random state files")
    p.add_argument("--kind", choices=STATE_KINDS, default="generic-bloch")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--orbit-of", metavar="PATH", help="emit Haar-rotated copies of this state")
    p.add_argument("--diagonal", action="store_true", help="with --orbit-of, rotate both qubits alike")
    p.add_argument("--out-dir", metavar="DIR")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="run the randomized property suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    try:
        parser = build_parser()
    except ValueError as exc:
        return _fail(EXIT_MALFORMED, f"bad environment override: {exc}")
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        return _fail(EXIT_MALFORMED, f"malformed input: {exc}")


if __name__ == "__main__":
    sys.exit(main())
