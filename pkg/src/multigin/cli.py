"""Command-line surface.

JSON results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
2 schema error, 3 precondition error (wrong grading or size), 4
verification mismatch, 5 oracle instability or resource exhaustion.
The ``MULTIGIN_FIELD`` environment variable ("Q", "Fp" or "Fp:<prime>")
sets the default coefficient field for instance generation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    OracleInstabilityError,
    PreconditionError,
    ResourceError,
    SchemaError,
)
from .fields import GF, QQ, DEFAULT_PRIME, Field
from .formulas import gin_2minors, gin_maxminors_col, gin_maxminors_row
from .gradedmatrix import instance_from_json, instance_to_json, phi_from_kernels, ROW
from .hilbert import h_phi_series
from .instances import random_instance
from .verify import run_verification

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4
EXIT_UNSTABLE = 5


def _default_field() -> Field:
    raw = os.environ.get("MULTIGIN_FIELD", "Fp").strip()
    if raw == "Q":
        return QQ
    if raw == "Fp":
        return GF(DEFAULT_PRIME)
    if raw.startswith("Fp:"):
        try:
            return GF(int(raw[3:]))
        except ValueError as exc:
            raise SchemaError(f"bad MULTIGIN_FIELD value {raw!r}: {exc}") from exc
    raise SchemaError(f"bad MULTIGIN_FIELD value {raw!r}")


def _load_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc
    return instance_from_json(doc)


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_gin(args, which: str) -> int:
    L, _ = _load_instance(args.file)
    if which == "row":
        result = gin_maxminors_row(L)
    elif which == "col":
        result = gin_maxminors_col(L)
    else:
        result = gin_2minors(L)
    _emit(result.to_json())
    return EXIT_OK


def _cmd_hilbert(args) -> int:
    L, extras = _load_instance(args.file)
    if L.grading != ROW:
        raise PreconditionError("the series command needs a row-graded instance")
    cap = args.cap if args.cap is not None else extras.get("cap", 8)
    phi = phi_from_kernels(L)
    _emit(h_phi_series(phi, cap).to_json())
    return EXIT_OK


def _cmd_verify(args) -> int:
    L, extras = _load_instance(args.file)
    base = extras.get("seed", 0)
    seeds = [base * 100003 + 1 + i for i in range(args.seeds)]
    order = args.order or extras.get("order", "degrevlex")
    report = run_verification(L, order_kind=order, seeds=seeds, cap=extras.get("cap"))
    doc = {
        "grading": L.grading,
        "m": L.m,
        "n": L.n,
        "order": order,
        "seeds": seeds,
    }
    doc.update(report.to_json())
    _emit(doc)
    if not report.ok:
        for check in report.checks:
            if not check["ok"]:
                print(f"FAILED: {check['name']}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_random(args) -> int:
    field = _default_field()
    if args.field == "Q":
        field = QQ
    elif args.field == "Fp":
        field = GF(args.prime)
    L = random_instance(field, args.grading, args.m, args.n, args.seed, args.degenerate)
    _emit(instance_to_json(L, seed=args.seed))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multigin",
        description=(
            "Generic initial ideals of determinantal ideals of graded matrices "
            "of linear forms: closed-form constructions, prime decompositions, "
            "Hilbert series, and Groebner-oracle verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gin-max-row", help="gin of the maximal minors of a row-graded instance")
    p.add_argument("file")
    p.set_defaults(func=lambda a: _cmd_gin(a, "row"))

    p = sub.add_parser("gin-max-col", help="gin of the maximal minors of a column-graded instance")
    p.add_argument("file")
    p.set_defaults(func=lambda a: _cmd_gin(a, "col"))

    p = sub.add_parser("gin-2minors", help="gin of the 2-minors of a row-graded instance")
    p.add_argument("file")
    p.set_defaults(func=lambda a: _cmd_gin(a, "two"))

    p = sub.add_parser("hilbert", help="truncated multigraded Hilbert series of the 2-minor quotient")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None, help="total-degree truncation (default 8)")
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("verify", help="compare every applicable formula against the Groebner oracle")
    p.add_argument("file")
    p.add_argument("--order", choices=["lex", "degrevlex"], default=None)
    p.add_argument("--seeds", type=int, default=2, help="number of independent oracle seeds")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("random", help="emit a reproducible random instance file")
    p.add_argument("--grading", choices=["row", "column"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--degenerate", default=None, help="comma-separated degeneracy directives")
    p.add_argument("--field", choices=["Q", "Fp"], default=None, help="override MULTIGIN_FIELD")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.set_defaults(func=_cmd_random)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OracleInstabilityError, ResourceError) as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE


if __name__ == "__main__":
    sys.exit(main())
