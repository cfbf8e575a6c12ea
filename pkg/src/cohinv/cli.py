"""Command line front-end.

Exit codes: 0 success, 1 internal invariant violation, 2 unsupported or
malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from . import invariants as inv
from . import torsors
from .errors import (InvalidTorsorError, InvariantViolation, SpecError, UnsupportedShapeError,
                     UnsupportedTypeError)
from .gfp import enumerate_subspaces
from .lattice import GroupSpec, fundamental_weight_orders, j_set_data, t_star_basis
from .rootdata import CENTER_CHARACTERS, KERNEL_BACKEND, SimpleType

SHAPES = {"E6": (SimpleType.E6,), "E7": (SimpleType.E7,), "D6A1": (SimpleType.D6, SimpleType.A1)}


def load_spec(text: str) -> GroupSpec:
    """Inline JSON, or a path to a JSON file."""
    if not text.lstrip().startswith("{") and os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    return GroupSpec.from_json(text)


def _vector(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise SpecError(f"not a comma-separated integer vector: {text!r}", "") from None


# -- commands ---------------------------------------------------------------------


def cmd_describe(spec: GroupSpec, args) -> dict:
    out: dict[str, Any] = {
        "spec": spec.to_json(),
        "mu": spec.describe_mu(),
        "center_characters": [[m, list(c)] for t in spec.components for m, c in CENTER_CHARACTERS[t]],
    }
    if not spec.has_markers and spec.components:
        out["t_star_basis"] = t_star_basis(spec)
        out["fundamental_weight_orders"] = fundamental_weight_orders(spec)
        out["q_generators"] = [str(inv.q_generator(t)) for t in spec.components]
    if spec.is_d6a1():
        out["j_sets"] = j_set_data(spec).to_json()
    return out


def cmd_ind(spec: GroupSpec, args) -> dict:
    return {"spec": spec.to_json(), "result": str(inv.inv3_ind(spec)),
            "Q": str(inv.q_of(spec)), "Dec": str(inv.dec(spec))}


def _closed(spec: GroupSpec, **kw) -> str | None:
    try:
        return str(inv.red_closed_form(spec, **kw))
    except UnsupportedShapeError:
        return None


def cmd_red(spec: GroupSpec, args) -> dict:
    g = inv.inv3_red(spec)
    out = {"spec": spec.to_json(), "result": str(g), "closed_form": _closed(spec)}
    if spec.is_d6a1():
        out["closed_form_j2_corrected"] = _closed(spec, j2_correction=True)
    if args.p:
        out["p"] = args.p
        out["p_part"] = str(g.p_part(args.p))
    return out


def cmd_nr(spec: GroupSpec, args) -> dict:
    if not args.p:
        raise SpecError("nr requires --p <prime>", "")
    g, trace = inv.inv3_nr(spec, args.p, evidence=not args.no_evidence)
    return {"spec": spec.to_json(), "p": args.p, "result": str(g), "trace": [s.to_json() for s in trace]}


def cmd_dec(spec: GroupSpec, args) -> dict:
    out: dict[str, Any] = {"spec": spec.to_json(), "bound": args.bound}
    try:
        out["closed"] = str(inv.dec_closed(spec))
    except UnsupportedShapeError:
        out["closed"] = None
    search = inv.dec_search(spec, args.bound)
    out["search"] = str(search)
    out["result"] = out["closed"] or out["search"]
    out["agree"] = None if out["closed"] is None else out["closed"] == out["search"]
    return out


def cmd_qlattice(spec: GroupSpec, args) -> dict:
    q = inv.q_of(spec)
    return {"spec": spec.to_json(), "result": str(q), "basis": q.rows(),
            "q_generators": [str(inv.q_generator(t)) for t in spec.components]}


def _sweep_row(spec: GroupSpec) -> dict:
    red = inv.inv3_red(spec)
    closed = inv.red_closed_form(spec)
    return {
        "R": [list(g) for g in spec.R],
        "ind": str(inv.inv3_ind(spec)),
        "red": str(red),
        "closed": str(closed),
        "agree": red == closed,
    }


def sweep_specs(shape: str, max_n: int) -> list[GroupSpec]:
    block = SHAPES[shape]
    p = CENTER_CHARACTERS[block[0]][0][0]
    per = sum(len(CENTER_CHARACTERS[t]) for t in block)
    out = []
    for n in range(1, max_n + 1):
        for sub in enumerate_subspaces(p, per * n):
            out.append(GroupSpec(block * n, sub.rows))
    return out


def cmd_sweep(args) -> dict:
    if args.shape not in SHAPES:
        raise SpecError(f"--shape must be one of {sorted(SHAPES)}", "")
    specs = sweep_specs(args.shape, args.max_n)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_sweep_row, specs, chunksize=32))
    else:
        rows = [_sweep_row(s) for s in specs]
    for s, row in zip(specs, rows):
        row["n"] = len(s.components) // len(SHAPES[args.shape])
    return {"shape": args.shape, "max_n": args.max_n, "count": len(rows),
            "disagreements": sum(1 for r in rows if not r["agree"]), "rows": rows}


def cmd_witness(args) -> dict:
    kind = args.kind
    if kind == "lemma22":
        if not args.r:
            raise SpecError("witness lemma22 requires --r", "")
        t, res = torsors.witness_lemma22(_vector(args.r))
        return {"kind": kind, "r": _vector(args.r), "torsor": t.to_json(), "residue": res.format()}
    if not args.spec:
        raise SpecError(f"witness {kind} requires a spec", "")
    spec = load_spec(args.spec)
    if kind == "cor43":
        if args.j is None:
            raise SpecError("witness cor43 requires --j", "")
        eta, res = torsors.witness_cor43(spec, args.j)
        return {"kind": kind, "j": args.j, "torsor": eta.to_json(), "residue": res.format()}
    if kind == "rbar":
        if not args.r:
            raise SpecError("witness rbar requires --r", "")
        rho, eta, res = torsors.rbar_witness(spec, _vector(args.r))
        return {"kind": kind, "rbar": _vector(args.r), "type_a": rho.to_json(), "torsor": eta.to_json(),
                "residue": res.format()}
    raise SpecError(f"unknown witness kind {kind!r}", "")


SPEC_COMMANDS = {
    "describe": cmd_describe, "ind": cmd_ind, "red": cmd_red, "nr": cmd_nr,
    "dec": cmd_dec, "qlattice": cmd_qlattice,
}


# -- output -----------------------------------------------------------------------


def _tsv_cell(x) -> str:
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return "" if x is None else str(x)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)
    rows = doc.get("rows")
    if rows is None:
        rows = [doc]
    keys = sorted({k for r in rows for k in r})
    lines = ["\t".join(keys)]
    lines += ["\t".join(_tsv_cell(r.get(k)) for k in keys) for r in rows]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cohinv", description="Degree-3 invariants of split semisimple groups")
    ap.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)

    for name in SPEC_COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("spec", help="inline JSON spec or path to a JSON file")
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--bound", type=int, default=2)
        p.add_argument("--no-evidence", action="store_true", help="nr: skip witness construction")
        common(p)
    p = sub.add_parser("sweep")
    p.add_argument("--shape", required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p = sub.add_parser("witness")
    p.add_argument("kind", choices=("lemma22", "cor43", "rbar"))
    p.add_argument("spec", nargs="?")
    p.add_argument("--r")
    p.add_argument("--j", type=int)
    common(p)
    sub.add_parser("backend")
    return ap


def run(argv: list[str]) -> tuple[int, str]:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command in SPEC_COMMANDS:
            doc = SPEC_COMMANDS[args.command](load_spec(args.spec), args)
        elif args.command == "sweep":
            doc = cmd_sweep(args)
        elif args.command == "witness":
            doc = cmd_witness(args)
        else:
            doc = {"backend": KERNEL_BACKEND}
    except SpecError as exc:
        return 2, json.dumps({"error": "spec", "message": str(exc), "pointer": exc.pointer},
                             sort_keys=True, ensure_ascii=False)
    except (UnsupportedShapeError, UnsupportedTypeError, InvalidTorsorError, torsors.WitnessUnavailable,
            ValueError) as exc:
        return 2, json.dumps({"error": "unsupported", "message": str(exc)}, sort_keys=True, ensure_ascii=False)
    except (InvariantViolation, AssertionError) as exc:
        return 1, json.dumps({"error": "invariant-violation", "message": str(exc)},
                             sort_keys=True, ensure_ascii=False)
    return 0, render(doc, args.format)


def main(argv: list[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    stream.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
