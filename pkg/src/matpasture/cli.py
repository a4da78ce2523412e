"""Command-line front end.  Every verb prints one JSON document on stdout.

Exit codes: 0 success, 2 invalid input, 3 resource cap, 4 undecided null sum.
"""
from __future__ import annotations

import argparse
import itertools
import json
import re
import sys

from .errors import ResourceLimitError, UndecidedAtBound, ValidationError
from .foundation import (
    classify,
    count_rescaling_classes,
    count_strong_lifts,
    count_weak_lifts,
    cross_ratio,
    foundation_report,
    omega,
)
from .matroid import (
    GPFunction,
    Matroid,
    check_strong_gp,
    check_weak_gp,
    dual,
    enumerate_lifts,
    rescaling_orbits,
    subsets,
    underlying,
)
from .matspace import support_census
from .pasture import mk_builtin

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))
CATALOG_NAMES = ("uniform(r,n)", "fano", "u12", "u23", "single-basis(n)")


def catalog(name: str) -> Matroid:
    """Named matroid: uniform(r,n), fano, u<r><n>, single-basis(n)."""
    key = name.strip().lower().replace(" ", "")
    if key == "fano":
        bases = [c for c in itertools.combinations(range(1, 8), 3) if c not in FANO_LINES]
        return Matroid(7, 3, bases)
    m = re.fullmatch(r"uniform\((\d+),(\d+)\)", key) or re.fullmatch(r"u(\d)(\d)", key)
    if m:
        r, n = int(m.group(1)), int(m.group(2))
        if not 0 <= r <= n:
            raise ValidationError(f"uniform matroid needs 0 <= r <= n, got {name!r}")
        return Matroid(n, r, subsets(n, r))
    m = re.fullmatch(r"single-basis\((\d+)\)", key)
    if m:
        n = int(m.group(1))
        return Matroid(n, n, [(1 << n) - 1])
    raise ValidationError(f"unknown catalog matroid {name!r}")


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        err = ValidationError(f"malformed JSON in {path}: {exc.msg}")
        err.position = {"line": exc.lineno, "column": exc.colno}
        raise err from None


def load_matroid(source: str) -> Matroid:
    """A JSON file path, or a catalog name when no such file exists."""
    if source.endswith(".json") or "/" in source:
        return Matroid.from_json(_load_json(source))
    try:
        return catalog(source)
    except ValidationError:
        return Matroid.from_json(_load_json(source))


def load_gp(path: str) -> GPFunction:
    data = _load_json(path)
    if not isinstance(data, dict) or "pasture" not in data:
        raise ValidationError("GP function JSON needs a 'pasture' field")
    return GPFunction.from_json(data, mk_builtin(str(data["pasture"])))


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise ValidationError(f"--{n.replace('_', '-')} is required for {args.verb}")


def _cmd_check(args):
    _need(args, "gp")
    g = load_gp(args.gp)
    ok = check_strong_gp(g) if args.mode == "strong" else check_weak_gp(g)
    return {"ok": ok}


def _cmd_dual(args):
    _need(args, "gp")
    return dual(load_gp(args.gp)).to_json()


def _cmd_cross_ratios(args):
    _need(args, "gp")
    g = load_gp(args.gp)
    if not check_weak_gp(g):
        raise ValidationError("cross ratios need a weak Grassmann-Pluecker function")
    p = g.pasture
    quads = omega(underlying(g), canonical=True)
    return {
        "cross_ratios": [
            {"quadrangle": str(q), "degenerate": q.degenerate, "value": p.format_element(cross_ratio(g, q))}
            for q in quads
        ]
    }


def _cmd_foundation(args):
    _need(args, "matroid")
    return foundation_report(load_matroid(args.matroid))


def _cmd_classify(args):
    _need(args, "matroid")
    return classify(load_matroid(args.matroid))


def _cmd_count(args):
    _need(args, "matroid", "pasture")
    m = load_matroid(args.matroid)
    p = mk_builtin(args.pasture)
    what = args.what
    if what == "rescaling-classes":
        count = count_rescaling_classes(m, p)
        oracle = len(rescaling_orbits(enumerate_lifts(m, p, "weak"), p))
    elif what == "weak-lifts":
        count = count_weak_lifts(m, p)
        oracle = len(enumerate_lifts(m, p, "weak"))
    else:
        count = count_strong_lifts(m, p)
        oracle = len(enumerate_lifts(m, p, "strong"))
    return {"count": count, "oracle": oracle, "agree": count == oracle}


def _cmd_enumerate_lifts(args):
    _need(args, "matroid", "pasture")
    m = load_matroid(args.matroid)
    lifts = enumerate_lifts(m, mk_builtin(args.pasture), args.mode)
    return {"count": len(lifts), "lifts": [g.to_json() for g in lifts]}


def _cmd_matspace(args):
    _need(args, "rank", "ground")
    return support_census(args.ground, args.rank, args.space)


def _cmd_catalog(args):
    if not args.name:
        return {"names": list(CATALOG_NAMES)}
    return catalog(args.name).to_json()


COMMANDS = {
    "check": _cmd_check,
    "dual": _cmd_dual,
    "cross-ratios": _cmd_cross_ratios,
    "foundation": _cmd_foundation,
    "classify": _cmd_classify,
    "count": _cmd_count,
    "enumerate-lifts": _cmd_enumerate_lifts,
    "matspace": _cmd_matspace,
    "catalog": _cmd_catalog,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="matpasture", description="Matroids over pastures.")
    ap.add_argument("--seed", type=int, default=None, help="accepted and ignored; output is deterministic")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in COMMANDS:
        sp = sub.add_parser(verb)
        sp.add_argument("--seed", type=int, default=None, help=argparse.SUPPRESS)
        if verb == "catalog":
            sp.add_argument("name", nargs="?")
            continue
        sp.add_argument("--matroid", help="matroid JSON file or catalog name")
        sp.add_argument("--gp", help="Grassmann-Pluecker function JSON file")
        sp.add_argument("--pasture", help="F1pm, K, S, F2, F3, GF4, GF5, ..., T")
        sp.add_argument("--mode", choices=("weak", "strong"), default="weak")
        sp.add_argument(
            "--what",
            choices=("rescaling-classes", "weak-lifts", "strong-lifts"),
            default="weak-lifts",
        )
        sp.add_argument("--rank", type=int)
        sp.add_argument("--ground", type=int)
        sp.add_argument("--space", choices=("strong", "weak"), default="strong")
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.verb](args)
        code = 0
    except ValidationError as exc:
        result = {"error": "validation", "message": str(exc)}
        result.update(getattr(exc, "position", {}))
        code = 2
    except ResourceLimitError as exc:
        result, code = {"error": "resource-limit", "message": str(exc)}, 3
    except UndecidedAtBound as exc:
        result, code = {"error": "undecided-at-bound", "message": str(exc)}, 4
    out.write(json.dumps(result) + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
