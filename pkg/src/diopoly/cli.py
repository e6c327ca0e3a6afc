"""Command-line interface: construct, verify, search.

All big integers in emitted JSON are decimal strings so nothing is ever
squeezed through a binary float; small structural numbers (pair indices,
degree bounds) stay JSON integers.  Output is byte-deterministic for a
fixed seed: fixed key order, compact separators, one document per line.

Exit codes: 0 success, 1 usage error (including a refused search box),
2 construction failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from .forge import (
    DEFAULT_MAX_ATTEMPTS,
    DEFAULT_PARAM_BOUND,
    DEFAULT_SEARCH_CEILING,
    ConstructionError,
    SearchSpaceError,
    Witness,
    brute_force_search,
    construct_witness,
    verify_witness,
)
from .twist import DegenerateTwistError, TwistPointSet, twist_points

__all__ = [
    "WITNESS_DOCUMENT_SCHEMA",
    "witness_document",
    "parse_witness_document",
    "document_to_inputs",
    "main",
    "entrypoint",
]

SCHEMA_VERSION = "1"
CEILING_ENV_VAR = "DIOPOLY_SEARCH_CEILING"

_DECIMAL = {"type": "string", "pattern": "^-?[0-9]+$"}
_RATIONAL = {"type": "string", "pattern": "^-?[0-9]+(/[1-9][0-9]*)?$"}

WITNESS_DOCUMENT_SCHEMA = {
    "type": "object",
    "required": [
        "schema_version",
        "set",
        "poly",
        "method",
        "parameter",
        "padding",
        "pair_roots",
        "flags",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "set": {"type": "array", "items": _DECIMAL, "minItems": 3},
        "poly": {"type": "array", "items": _DECIMAL, "minItems": 1},
        "method": {"enum": ["quadric", "plane"]},
        "parameter": {"type": "array", "items": _DECIMAL, "minItems": 2},
        "padding": {"type": "array", "items": _DECIMAL},
        "pair_roots": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "root"],
                "additionalProperties": False,
                "properties": {
                    "i": {"type": "integer", "minimum": 0},
                    "j": {"type": "integer", "minimum": 0},
                    "root": _DECIMAL,
                },
            },
        },
        "flags": {
            "type": "array",
            "items": {"enum": ["degree-dropped", "trivial-family", "zero-value"]},
        },
        "twist": {
            "type": ["object", "null"],
            "required": ["twist_scalar", "poly", "points", "genus_note"],
            "additionalProperties": False,
            "properties": {
                "twist_scalar": _RATIONAL,
                "poly": {"type": "array", "items": _DECIMAL, "minItems": 1},
                "points": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["x", "y"],
                        "additionalProperties": False,
                        "properties": {"x": _RATIONAL, "y": _RATIONAL},
                    },
                },
                "genus_note": {"type": ["string", "null"]},
            },
        },
    },
}


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _twist_block(points: TwistPointSet) -> dict:
    return {
        "twist_scalar": _frac_str(points.curve.twist_scalar),
        "poly": [str(c) for c in points.curve.coeffs],
        "points": [{"x": _frac_str(x), "y": _frac_str(y)} for x, y in points.points],
        "genus_note": points.genus_note,
    }


def witness_document(witness: Witness, include_twist: bool = False) -> dict:
    """Serializable document for one witness, in fixed key order."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "set": [str(x) for x in witness.elements],
        "poly": [str(c) for c in witness.poly.coeffs],
        "method": witness.method,
        "parameter": [str(c) for c in witness.parameter.coords],
        "padding": [str(x) for x in witness.padding],
        "pair_roots": [
            {"i": i, "j": j, "root": str(r)} for i, j, r in sorted(witness.pair_roots)
        ],
        "flags": sorted(witness.flags),
    }
    if include_twist:
        try:
            doc["twist"] = _twist_block(twist_points(witness.certificate))
        except DegenerateTwistError:
            doc["twist"] = None
    return doc


def _parse_decimal_list(values, label: str) -> list[int]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise ValueError(f"document field {label!r} must be a list of decimal strings")
    try:
        return [int(v, 10) for v in values]
    except ValueError as exc:
        raise ValueError(f"document field {label!r} holds a non-decimal entry") from exc


def parse_witness_document(text: str) -> dict:
    """Parse and structurally validate one witness document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("witness document must be a JSON object")
    for key in ("schema_version", "set", "poly"):
        if key not in doc:
            raise ValueError(f"witness document misses required field {key!r}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc['schema_version']!r}")
    _parse_decimal_list(doc["set"], "set")
    _parse_decimal_list(doc["poly"], "poly")
    return doc


def document_to_inputs(doc: dict) -> tuple[list[int], list[int]]:
    """Extract (set, polynomial coefficients) from a parsed document."""
    return _parse_decimal_list(doc["set"], "set"), _parse_decimal_list(doc["poly"], "poly")


def _verify_report_document(report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "set": [str(x) for x in report.elements],
        "poly": [str(c) for c in report.coeffs],
        "ok": report.ok,
        "zero_products": report.zero_products,
        "pairs": [
            {
                "i": c.i,
                "j": c.j,
                "a": str(c.a),
                "b": str(c.b),
                "product": str(c.product),
                "root": None if c.root is None else str(c.root),
            }
            for c in report.checks
        ],
    }


def _search_report_document(report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "set": [str(x) for x in report.elements],
        "max_degree": report.max_degree,
        "max_height": report.max_height,
        "candidates": str(report.candidates),
        "exhausted": report.exhausted,
        "found": [[str(c) for c in poly.coeffs] for poly in report.found],
    }


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; the contract here is 1
    def error(self, message):
        raise _UsageError(message)


def _int_list(text: str, label: str) -> list[int]:
    try:
        return [int(part.strip(), 10) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise _UsageError(f"--{label} expects comma-separated integers, got {text!r}") from exc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="diopoly", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="construct a certified witness polynomial")
    c.add_argument("--set", required=True, help="comma-separated distinct integers")
    c.add_argument("--method", choices=["quadric", "plane"], default="quadric")
    c.add_argument("--param", help="explicit projective parameter, comma-separated")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--count", type=int, default=1)
    c.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
    c.add_argument("--param-bound", type=int, default=DEFAULT_PARAM_BOUND)
    c.add_argument("--emit-twist", action="store_true")

    v = sub.add_parser("verify", help="verify a polynomial against a set")
    v.add_argument("--set", help="comma-separated distinct integers")
    v.add_argument("--poly", help="ascending coefficients, comma-separated")
    v.add_argument(
        "--from-json",
        metavar="FILE",
        help="read witness documents (JSON lines) from FILE, or - for stdin",
    )

    s = sub.add_parser("search", help="exhaustive search over a coefficient box")
    s.add_argument("--set", required=True, help="comma-separated distinct integers")
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--max-height", type=int, required=True)
    return parser


def _cmd_construct(args) -> int:
    elements = _int_list(args.set, "set")
    parameter = _int_list(args.param, "param") if args.param is not None else None
    if args.count < 1:
        raise _UsageError("--count must be at least 1")
    if parameter is not None and args.count != 1:
        raise _UsageError("--param pins one witness; drop it or use --count 1")
    rng = random.Random(args.seed)
    for _ in range(args.count):
        witness = construct_witness(
            elements,
            args.method,
            parameter=parameter,
            rng=rng,
            max_attempts=args.max_attempts,
            param_bound=args.param_bound,
        )
        _emit(witness_document(witness, include_twist=args.emit_twist))
    return 0


def _cmd_verify(args) -> int:
    if args.from_json is not None:
        if args.set is not None or args.poly is not None:
            raise _UsageError("--from-json replaces --set/--poly")
        if args.from_json == "-":
            text = sys.stdin.read()
        else:
            with open(args.from_json, "r", encoding="utf-8") as fh:
                text = fh.read()
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise _UsageError("no witness documents on input")
        jobs = [document_to_inputs(parse_witness_document(line)) for line in lines]
    else:
        if args.set is None or args.poly is None:
            raise _UsageError("verify needs --set and --poly, or --from-json")
        jobs = [(_int_list(args.set, "set"), _int_list(args.poly, "poly"))]

    all_ok = True
    for elements, coeffs in jobs:
        report = verify_witness(elements, coeffs)
        _emit(_verify_report_document(report))
        all_ok = all_ok and report.ok
    return 0 if all_ok else 3


def _cmd_search(args) -> int:
    elements = _int_list(args.set, "set")
    ceiling = DEFAULT_SEARCH_CEILING
    override = os.environ.get(CEILING_ENV_VAR)
    if override is not None:
        try:
            ceiling = int(override, 10)
        except ValueError as exc:
            raise _UsageError(f"{CEILING_ENV_VAR} must be an integer, got {override!r}") from exc
    report = brute_force_search(elements, args.max_degree, args.max_height, ceiling=ceiling)
    _emit(_search_report_document(report))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"diopoly: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_search(args)
    except _UsageError as exc:
        print(f"diopoly: error: {exc}", file=sys.stderr)
        return 1
    except SearchSpaceError as exc:
        print(f"diopoly: error: {exc} (ceiling override: {CEILING_ENV_VAR})", file=sys.stderr)
        return 1
    except ConstructionError as exc:
        detail = f" {exc.stats}" if exc.stats else ""
        print(f"diopoly: construction failed: {exc}{detail}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"diopoly: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
