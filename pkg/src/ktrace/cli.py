"""Command line front end: ``ktrace <command> [options]``.

Polynomials print in descending powers with alpha written as ``a``
(``-q^2a``, ``q^{-5/2}a + 1``).  ``--json`` (or KTRACE_JSON=1) switches every
command to JSON output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactq import QPoly, poly_order, to_json, to_text
from .paths import Slope, line_point, noncrossing_dyck_tpaths, tpath_dump
from .satake import LEQ, STRICT, kottwitz_composite, kottwitz_simple
from .shim import (GlobalRigidSpec, PlaceData, UnsupportedRepresentation, dimension,
                   euler_characteristic, is_b_type, order_report, worked_examples,
                   trace_global)
from .traces import (InvariantViolation, oracle_check, trace_monomial_oracle_standard,
                     trace_rigid_local, trace_speh, trace_speh_tadic_oracle, trace_standard,
                     trace_steinberg, trace_trivial)
from .zel import (SpehSpec, format_perm, format_segments, parse_segments, speh_segments,
                  tadic_terms)


class UsageError(ValueError):
    pass


# -- argument parsing helpers -------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _rats(text: str) -> list[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated rationals p/q, got {text!r}") from None


def parse_places(text: str) -> list[PlaceData]:
    """``"s=2;s=3"`` or ``"sv=1,1|sv=3"``: one entry per place."""
    out = []
    for part in text.replace("|", ";").split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        if key.strip() not in ("s", "sv") or not val:
            raise UsageError(f"place must look like s=2 or sv=1,1: {part!r}")
        sig = _ints(val)
        if not sig:
            raise UsageError(f"empty signature list in {part!r}")
        out.append(PlaceData(sig))
    if not out:
        raise UsageError("no places given")
    return out


def parse_rigid(text: str, n: int, nplaces: int) -> GlobalRigidSpec:
    """``"y=3;x=1,1|y=3;x=2"``, or the keywords ``trivial`` / ``steinberg``.

    A single place description is repeated for every place.
    """
    t = text.strip().lower()
    if t == "trivial":
        return GlobalRigidSpec.trivial(n, nplaces)
    if t == "steinberg":
        return GlobalRigidSpec.steinberg(n, nplaces)
    ys, xs = set(), []
    for part in text.split("|"):
        fields = dict(kv.strip().partition("=")[::2] for kv in part.split(";") if kv.strip())
        if set(fields) != {"y", "x"}:
            raise UsageError(f"place spec must look like y=3;x=1,1: {part!r}")
        ys.add(_ints(fields["y"]))
        xs.append(_ints(fields["x"]))
    if len(ys) != 1 or len(next(iter(ys))) != 1:
        raise UsageError("y must be a single integer, the same at every place")
    if len(xs) == 1 and nplaces > 1:
        xs = xs * nplaces
    return GlobalRigidSpec(n, next(iter(ys))[0], tuple(xs))


# -- output ---------------------------------------------------------------------

def _emit(args, text: str, obj) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _poly_out(args, p: QPoly, extra: dict | None = None) -> None:
    obj = {"value": to_json(p), "text": to_text(p)}
    if extra:
        obj.update(extra)
    _emit(args, to_text(p), obj)


def _order_json(o):
    return None if not isinstance(o, Fraction) else str(o)


# -- commands -------------------------------------------------------------------

def cmd_speh(args) -> int:
    spec = SpehSpec(args.h, args.t)
    if args.oracle:
        r = trace_speh_tadic_oracle(spec, args.s, args.branch)
    else:
        r = trace_speh(spec, args.s, args.branch)
    text = to_text(r.value)
    if args.verbose:
        text += f"\n  w0 = {format_perm(r.w0)}, sign = {r.sign}, branch = {r.branch}"
    _emit(args, text, r.to_json())
    return 0


def _parse_mode(text: str):
    return {"strict": STRICT, "leq": LEQ}[text]


def cmd_standard(args) -> int:
    segs = parse_segments(args.segments)
    mode = _parse_mode(args.mode)
    fn = trace_monomial_oracle_standard if args.oracle else trace_standard
    _poly_out(args, fn(segs, args.n, args.s, mode),
              {"route": "monomial_oracle" if args.oracle else "path_formula"})
    return 0


def _kottwitz(args):
    if args.sigma:
        sigma = _ints(args.sigma)
        return kottwitz_composite(args.n, sigma), sum(sigma)
    if args.s is None:
        raise UsageError("give --s or --sigma")
    return kottwitz_simple(args.n, args.s), args.s


def cmd_steinberg(args) -> int:
    f, s = _kottwitz(args)
    _poly_out(args, trace_steinberg(f, args.n, s))
    return 0


def cmd_trivial(args) -> int:
    f, s = _kottwitz(args)
    _poly_out(args, trace_trivial(f, args.n, s))
    return 0


def cmd_rigid(args) -> int:
    blocks = [(x, args.y) for x in _ints(args.x)]
    _poly_out(args, trace_rigid_local(blocks, args.n, args.s))
    return 0


def cmd_global(args) -> int:
    places = parse_places(args.places)
    spec = parse_rigid(args.rigid, args.n, len(places))
    p = trace_global(spec, places)
    rep = order_report(spec, places)
    obj = {"poly": to_json(p), "text": to_text(p), "order": _order_json(poly_order(p)),
           "b_type": is_b_type(spec, places), "dimension": dimension(places, args.n),
           "bound_satisfied": rep.bound_satisfied,
           "euler_characteristic": str(euler_characteristic(p))}
    text = to_text(p)
    if args.verbose:
        text += (f"\n  order = {poly_order(p)}, b_type = {obj['b_type']}, "
                 f"dimension = {obj['dimension']}, bound ok = {rep.bound_satisfied}")
    _emit(args, text, obj)
    return 0


def cmd_dyck(args) -> int:
    slope = Slope(args.s, args.n)
    froms = [line_point(slope, x) for x in _rats(args.frm)]
    tos = [line_point(slope, x) for x in _rats(args.to)]
    if len(froms) != len(tos) or not froms:
        raise UsageError("--from and --to need the same number of abscissas")
    tpaths = list(noncrossing_dyck_tpaths(froms, tos, slope, args.strict))
    total = QPoly()
    for t in tpaths:
        total = total + t.weight()
    if args.json:
        obj = {"value": to_json(total), "text": to_text(total), "count": len(tpaths)}
        if args.dump:
            obj["paths"] = [tpath_dump(t) for t in tpaths]
        print(json.dumps(obj, sort_keys=True))
        return 0
    print(to_text(total))
    if args.dump:
        for i, t in enumerate(tpaths, 1):
            print(f"# {i}: weight {to_text(t.weight())}")
            print(t.to_ascii())
    return 0


def cmd_dim(args) -> int:
    places = parse_places(args.places)
    d = dimension(places, args.n, args.rounding)
    _emit(args, str(d), {"dimension": d})
    return 0


def cmd_check(args) -> int:
    tallies = oracle_check(args.max_n)
    ok = all(t.failed == 0 for t in tallies)
    if args.json:
        print(json.dumps({"ok": ok, "suites": [
            {"name": t.name, "passed": t.passed, "failed": t.failed,
             "failures": [str(f) for f in t.failures[:20]]} for t in tallies]}))
    else:
        for t in tallies:
            print(f"{'PASS' if t.failed == 0 else 'FAIL'}  {t.name}: "
                  f"{t.passed} passed, {t.failed} failed")
            for f in t.failures[:5]:
                print(f"      {f}")
    return 0 if ok else 1


def cmd_examples(args) -> int:
    rows = worked_examples()
    if args.json:
        print(json.dumps([{"label": r.label, "printed": to_text(r.printed),
                           "derived": to_text(r.derived), "agrees": r.agrees,
                           "note": r.note} for r in rows]))
        return 0
    w = max(len(r.label) for r in rows)
    print(f"{'quantity':<{w}}  {'printed':<26}  {'derived':<26}  status")
    for r in rows:
        status = "agree" if r.agrees else "DISCREPANCY"
        print(f"{r.label:<{w}}  {to_text(r.printed):<26}  {to_text(r.derived):<26}  {status}"
              + (f"  ({r.note})" if r.note and not r.agrees else ""))
    print(f"{sum(not r.agrees for r in rows)} discrepancies")
    return 0


def cmd_speh_segments(args) -> int:
    spec = SpehSpec(args.h, args.t)
    segs = speh_segments(spec)
    terms = tadic_terms(spec)
    if args.json:
        print(json.dumps({"segments": format_segments(segs), "tadic_terms": [
            {"w": format_perm(t.w), "sign": t.sign, "segments": format_segments(t.segments)}
            for t in terms]}))
        return 0
    print(format_segments(segs))
    if args.verbose:
        for t in terms:
            print(f"  {'+' if t.sign > 0 else '-'} {format_perm(t.w):<10} {format_segments(t.segments)}")
    return 0


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="JSON output (also KTRACE_JSON=1)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="ktrace", parents=[common],
                                description="Compact traces of Kottwitz functions on GL_n.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("speh", cmd_speh, "trace on Speh(h, t): t segments of length h")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--branch", choices=["auto", "direct", "dual"], default="auto")
    sp.add_argument("--oracle", action="store_true", help="use the full Tadic sum")

    sp = add("standard", cmd_standard, "trace on a standard representation")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--segments", required=True, help='e.g. "(0,1);(-1,0)"')
    sp.add_argument("--mode", choices=["strict", "leq"], default="strict",
                    help="strict: the standard representation; leq: product of duals")
    sp.add_argument("--oracle", action="store_true", help="use the Satake-monomial oracle")

    for name, fn in (("steinberg", cmd_steinberg), ("trivial", cmd_trivial)):
        sp = add(name, fn, f"trace on the {name} representation")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--s", type=int)
        sp.add_argument("--sigma", help="convolution of f_{n a s_v}, e.g. 1,1")

    sp = add("rigid", cmd_rigid, "trace on Speh(x_1, y) x ... x Speh(x_k, y)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--y", type=int, required=True)
    sp.add_argument("--x", required=True, help="block parameters, e.g. 1,1")

    sp = add("global", cmd_global, "product over places of the local traces")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--places", required=True, help='e.g. "s=2;s=3" or "sv=1,1|sv=3"')
    sp.add_argument("--rigid", default="trivial",
                    help='"y=3;x=1,1|y=3;x=2", "trivial" or "steinberg"')

    sp = add("dyck", cmd_dyck, "(non-crossing) Dyck polynomial between points of the line")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--from", dest="frm", required=True, help="start abscissas, e.g. -3/2,-1/2")
    sp.add_argument("--to", required=True, help="end abscissas")
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--dump", action="store_true", help="list the path tuples and their vertices")

    sp = add("dim", cmd_dim, "dimension formula")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--places", required=True)
    sp.add_argument("--rounding", choices=["floor", "ceil"], default="floor")

    sp = add("check", cmd_check, "run the cross-route self checks")
    sp.add_argument("--max-n", type=int, default=8)

    add("examples", cmd_examples, "re-derived explicit polynomials vs printed values")

    sp = add("speh-segments", cmd_speh_segments, "segments (and Tadic terms with -v)")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False) or os.environ.get("KTRACE_JSON") == "1"
    args.verbose = getattr(args, "verbose", False)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"ktrace: invariant violated: {e}", file=sys.stderr)
        return 1
    except UnsupportedRepresentation as e:
        print(f"ktrace: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as e:
        parser.print_usage(sys.stderr)
        print(f"ktrace: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
