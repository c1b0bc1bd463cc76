"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import AugmentedAlgebra, format_element
from .errors import HopfSchemeError
from .exactalg import RingDescriptor, free_basis
from .groups import Tower, parse_group, parse_tower
from .hopf import HopfAlgebra, nonnull_ideal
from .primitive import (
    is_nonnull_point,
    is_primitive_point,
    make_point,
    nonnull_scheme,
    primitive_scheme,
)
from .serialize import algebra_to_json, hopf_to_json, point_values_from_json, report_to_json
from .suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _ring(args) -> RingDescriptor:
    try:
        return RingDescriptor.parse(args.ring)
    except ValueError as exc:
        raise UsageError(f"bad ring spec {args.ring!r}: {exc}") from None


def _object(args, ring):
    if bool(args.group) == bool(args.tower):
        raise UsageError("give exactly one of --group or --tower")
    try:
        if args.group:
            return parse_group(args.group, ring)
        return parse_tower(args.tower, ring)
    except HopfSchemeError as exc:
        if isinstance(exc, ValueError):
            raise UsageError(str(exc)) from None
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _gens(alg, rows) -> str:
    return "<" + ", ".join(format_element(alg, r) for r in rows) + ">"


def _summary(obj) -> tuple[str, object]:
    if isinstance(obj, HopfAlgebra):
        alg = obj.algebra
        kind = "Hopf algebra"
        payload = hopf_to_json(obj)
    else:
        alg = obj.algebra
        kind = "augmented algebra"
        payload = algebra_to_json(obj)
    text = f"{kind} over {alg.ring}, rank {alg.rank}\nbasis: {', '.join(alg.labels)}"
    return text, payload


def cmd_catalog(args) -> int:
    ring = _ring(args)
    obj = _object(args, ring)
    if isinstance(obj, Tower):
        texts, payload = [], {"p": obj.p, "h": obj.h, "levels": []}
        for i, g in enumerate(obj.levels, start=1):
            t, j = _summary(g)
            texts.append(f"level {i}: {t}")
            payload["levels"].append(j)
        _emit(args, "\n".join(texts), payload)
    else:
        _emit(args, *_summary(obj))
    return EXIT_OK


def cmd_nonnull(args) -> int:
    ring = _ring(args)
    if args.tower:
        raise UsageError("nonnull takes --group")
    obj = _object(args, ring)
    rep = nonnull_scheme(obj)
    alg = obj.algebra
    gens = free_basis(rep.ideal) or list(rep.ideal.rows)
    ok = rep.rank == rep.expected_rank and rep.ideal_is_summand
    text = f"J = {_gens(alg, gens)}, rank(G^x) = {rep.rank}"
    if not ok:
        text += f", expected {rep.expected_rank}, FAIL"
    payload = report_to_json(rep, gens)
    payload["ok"] = ok
    _emit(args, text, payload)
    return EXIT_OK if ok else EXIT_FAIL


def _level(args, tower: Tower) -> int:
    if args.level is None:
        raise UsageError("--level is required")
    if not 1 <= args.level <= len(tower):
        raise UsageError(f"level {args.level} outside 1..{len(tower)}")
    return args.level


def cmd_primitive(args) -> int:
    ring = _ring(args)
    if not args.tower:
        raise UsageError("primitive takes --tower")
    tower = _object(args, ring)
    i = _level(args, tower)
    alg = tower.levels[i - 1].algebra
    phi = tower.power_maps[i - 1]
    gens = [phi.apply(r) for r in (free_basis(nonnull_ideal(tower.levels[0])) or [])]
    try:
        rep = primitive_scheme(tower, i)
    except HopfSchemeError as exc:
        _emit(args, f"ideal = {_gens(alg, gens)}, FAIL: {exc}", {"ok": False, "error": str(exc)})
        return EXIT_FAIL
    text = f"ideal = {_gens(alg, gens)}, rank = {rep.rank}, expected = {rep.expected_rank}, OK"
    payload = report_to_json(rep, gens)
    payload["ok"] = True
    _emit(args, text, payload)
    return EXIT_OK


def _load_points(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read points file: {exc}") from None
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise UsageError("points file must hold an object or a list of objects")
    return data


def cmd_point(args) -> int:
    ring = _ring(args)
    if not args.points:
        raise UsageError("--points is required")
    obj = _object(args, ring)
    records = _load_points(args.points)
    lines, payload = [], []
    for rec in records:
        try:
            target, vals = point_values_from_json(rec)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad point record {rec!r}: {exc}") from None
        shown = "(" + ", ".join(target.element_to_json(v) for v in vals) + ")"
        if isinstance(obj, Tower):
            i = _level(args, obj)
            pt = make_point(obj.levels[i - 1], vals, target)
            verdict = is_primitive_point(obj, i, pt)
            word = "primitive" if verdict else "not primitive"
            key = "primitive"
        else:
            pt = make_point(obj, vals, target)
            verdict = is_nonnull_point(obj, pt)
            word = "non-null" if verdict else "not non-null"
            key = "nonnull"
        lines.append(f"{shown} in {target}: {word}")
        payload.append({"target_ring": target.to_json(), "values": [target.element_to_json(v) for v in vals], key: verdict})
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = [c for n in names for c in SUITES[n]()]
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        print(json.dumps([c.to_json() for c in checks], indent=2, ensure_ascii=False))
    else:
        for c in failed:
            print(f"FAIL {c.check} {c.subject} {c.detail}".rstrip())
        status = "OK" if not failed else "FAILED"
        print(f"{len(checks) - len(failed)}/{len(checks)} {status}")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfscheme", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, objects=True):
        if objects:
            p.add_argument("--group")
            p.add_argument("--tower")
            p.add_argument("--ring", default="z")
        p.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("catalog", help="describe a catalog group or tower"))
    common(sub.add_parser("nonnull", help="the non-null subscheme of a group"))
    p = sub.add_parser("primitive", help="primitive points of a tower level")
    common(p)
    p.add_argument("--level", type=int)
    p = sub.add_parser("point", help="test points read from a JSON file")
    common(p)
    p.add_argument("--level", type=int)
    p.add_argument("--points")
    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    common(p, objects=False)
    return parser


COMMANDS = {
    "catalog": cmd_catalog,
    "nonnull": cmd_nonnull,
    "primitive": cmd_primitive,
    "point": cmd_point,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # invalid points, characteristic mismatches and similar bad input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HopfSchemeError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
