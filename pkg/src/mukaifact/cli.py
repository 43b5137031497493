"""Command-line front end.

Exit codes: 0 success, 1 input or schema error, 2 mathematical precondition
violated, 3 indeterminate (missing assumption or oracle).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from .factoriality import (
    Outcome,
    Target,
    beauville_lattice,
    classify,
    gamma_extension,
    hv_lattice,
    picard_lattice,
)
from .fuzz import run_fuzz
from .intmat import determinant
from .lattice import (
    Lattice,
    PreconditionError,
    fingerprint,
    fingerprint_to_json,
    fraction_to_json,
    lattice_to_json,
)
from .mukai import (
    EmbeddingRequiredError,
    MukaiVector,
    SurfaceModel,
    full_coords,
    full_mukai_lattice,
    require_ols,
    surface_from_json,
    v_perp_algebraic,
    v_perp_full,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INDETERMINATE = 0, 1, 2, 3

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["surface", "vector"],
    "additionalProperties": False,
    "properties": {
        "surface": {
            "type": "object",
            "required": ["kind", "ns"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["k3", "abelian"]},
                "ns": {
                    "type": "object",
                    "required": ["gram"],
                    "additionalProperties": False,
                    "properties": {
                        "rank": {"type": "integer", "minimum": 1},
                        "gram": {**_INT_MATRIX, "minItems": 1},
                        "label": {"type": "string"},
                    },
                },
                "ns_labels": {"type": "array", "items": {"type": "string"}},
                "full_embedding": _INT_MATRIX,
                "generic_polarization": {"type": "boolean"},
            },
        },
        "vector": {
            "type": "object",
            "required": ["r", "c1", "s"],
            "additionalProperties": False,
            "properties": {
                "r": {"type": "integer"},
                "c1": {"type": "array", "items": {"type": "integer"}},
                "s": {"type": "integer"},
            },
        },
        "m": {"type": "integer", "minimum": 1},
    },
}


class InputError(Exception):
    pass


@dataclass(frozen=True)
class ModelFile:
    surface: SurfaceModel
    vector: MukaiVector


def _pointer(path) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in path)


def load_model(path: str) -> ModelFile:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(MODEL_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise InputError("\n".join(f"{path}: {_pointer(e.absolute_path)}: {e.message}" for e in errors))
    try:
        surface = surface_from_json(doc["surface"])
    except (ValueError, TypeError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise InputError(f"{path}: /surface: {exc}") from None
    v = MukaiVector.from_json(doc["vector"])
    if len(v.c1) != surface.rho:
        raise InputError(f"{path}: /vector/c1: expected {surface.rho} coordinates, got {len(v.c1)}")
    if "m" in doc:
        v = v * doc["m"]
    return ModelFile(surface, v)


# -- formatting -------------------------------------------------------------


def _fmt_q(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_matrix(rows) -> list[str]:
    if not rows:
        return ["  (empty)"]
    cells = [[str(a) for a in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    return ["  [" + " ".join(c.rjust(width) for c in r) + "]" for r in cells]


def _lattice_report(L: Lattice, basis=None) -> tuple[dict, list[str]]:
    obj = {"lattice": lattice_to_json(L)}
    lines = [f"lattice: {L.label or '(unlabelled)'}", f"rank: {L.rank}", "gram:"] + _fmt_matrix(L.gram)
    if basis is not None:
        basis = [[Fraction(a) for a in r] for r in basis]
        obj["basis"] = [[int(a) if a.denominator == 1 else fraction_to_json(a) for a in r] for r in basis]
        lines += ["basis (ambient coordinates):"] + _fmt_matrix([[_fmt_q(a) for a in r] for r in basis])
    if determinant(L.gram) == 0:
        obj["fingerprint"] = None
        lines.append("fingerprint: degenerate form")
        return obj, lines
    fp = fingerprint(L)
    obj["fingerprint"] = fingerprint_to_json(fp)
    factors = " x ".join(f"Z/{d}" for d in fp.invariant_factors) or "trivial"
    lines += [
        "fingerprint:",
        f"  signature: ({fp.signature[0]}, {fp.signature[1]})",
        f"  parity: {fp.parity}",
        f"  |det|: {fp.determinant_abs}",
        f"  discriminant group: {factors}",
        "  form values: " + (", ".join(_fmt_q(q) for q in fp.form_values) or "none"),
    ]
    return obj, lines


def _emit(args, obj: dict, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


# -- commands ---------------------------------------------------------------


def cmd_verdict(args) -> int:
    model = load_model(args.model)
    verdict = classify(model.surface, model.vector, Target(args.target))
    lines = [f"outcome: {verdict.outcome.value}", "trace:"]
    lines += [f"  {i + 1}. [{t.rule}] {t.anchor}" for i, t in enumerate(verdict.trace)]
    _emit(args, verdict.to_json(), lines)
    return EXIT_INDETERMINATE if verdict.outcome is Outcome.INDETERMINATE_ASSUMPTION_MISSING else EXIT_OK


def _lattice_for(what: str, model: ModelFile, target: Target) -> tuple[Lattice, object]:
    M, v = model.surface, model.vector
    if what == "perp":
        E = v_perp_algebraic(M, v)
        return E.lattice.with_label("v-perp (algebraic)"), E.basis
    if what == "perp-full":
        E = v_perp_full(M, v)
        return E.lattice.with_label("v-perp"), E.basis
    if what == "pic":
        return picard_lattice(M, v), v_perp_algebraic(M, v).basis
    if what == "gamma":
        if M.full_embedding is None:
            raise EmbeddingRequiredError()
        require_ols(M, v)
        return gamma_extension(v_perp_full(M, v).lattice).result.with_label("Gamma_v"), None
    if what == "beauville":
        return beauville_lattice(M, v, target), None
    if what == "hv":
        if M.full_embedding is None:
            raise EmbeddingRequiredError()
        w = require_ols(M, v)
        hv = hv_lattice(full_mukai_lattice(M.kind), full_coords(M, w))
        return hv.lattice, hv.basis
    raise InputError(f"unknown lattice {what!r}")


def cmd_lattice(args) -> int:
    model = load_model(args.model)
    L, basis = _lattice_for(args.what, model, Target(args.target))
    obj, lines = _lattice_report(L, basis)
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    report = run_fuzz(args.seed, args.cases)
    obj = report.to_json()
    lines = [
        f"seed: {report.seed}",
        f"cases: {len(report.cases)}",
        f"gamma true: {obj['gamma_true']}",
        f"criterion disagreements: {len(report.disagreements)}",
        f"H_v failures: {len(report.hv_failures)}",
    ]
    for c in obj["disagreements"] + obj["hv_failures"]:
        lines.append(f"  case {c['index']}: ns={c['ns_gram']} w={c['w']} gamma={c['gamma']} beta={c['beta']} hv_ok={c['hv_ok']}")
    lines.append("result: " + ("ok" if report.ok else "FAILED"))
    _emit(args, obj, lines)
    return EXIT_OK if report.ok else EXIT_PRECONDITION


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mukaifact", description="Factoriality verdicts and Mukai lattice reports.")
    sub = p.add_subparsers(dest="command", required=True)
    targets = [t.value for t in Target]

    pv = sub.add_parser("verdict", help="classify M_v / K_v")
    pv.add_argument("model")
    pv.add_argument("--target", choices=targets, default="m")
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(func=cmd_verdict)

    pl = sub.add_parser("lattice", help="print a lattice and its fingerprint")
    pl.add_argument("model")
    pl.add_argument("--what", choices=["perp", "perp-full", "gamma", "beauville", "pic", "hv"], required=True)
    pl.add_argument("--target", choices=targets, default="m")
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(func=cmd_lattice)

    pf = sub.add_parser("fuzz", help="cross-check the two 2-factoriality criteria on random models")
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--cases", type=_nonneg, default=100)
    pf.add_argument("--json", action="store_true")
    pf.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
