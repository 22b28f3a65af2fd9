"""Compact traces of Kottwitz functions.

Closed path formulas (Steinberg, segments, standard and dual-standard
representations, Speh representations, rigid products) together with two
independent oracles: the full signed Tadic sum, and direct truncation of the
Satake monomials of f_{n alpha s}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exactq import ONE, ZERO, QPoly, RatLike, poly_sum, rat
from .paths import (DyckClass, Graph, Slope, dyck_classify, dyck_poly, line_point,
                    noncrossing_dyck_poly)
from .satake import (DELTA_HALF, DELTA_MINUS_HALF, LEQ, STRICT, SymPoly, Truncation,
                     RankMismatch, eval_halfsum, kottwitz_simple, monomial_graph, truncate)
from .zel import (Perm, Segment, SpehSpec, perm_sign, speh_segments, tadic_terms,
                  w0_permutation, nonvanishing)


class Route(enum.Enum):
    PATH_FORMULA = "path_formula"
    TADIC_SUM = "tadic_sum"
    MONOMIAL_ORACLE = "monomial_oracle"


class InvariantViolation(AssertionError):
    """Two routes that must agree did not."""


@dataclass(frozen=True)
class TraceResult:
    value: QPoly
    route: Route
    w0: Optional[Perm] = None
    sign: int = 1
    prefactor_exp: Fraction = Fraction(0)
    branch: str = ""
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        from .exactq import to_json
        from .zel import format_perm
        return {
            "value": to_json(self.value),
            "route": self.route.value,
            "w0": None if self.w0 is None else format_perm(self.w0),
            "sign": self.sign,
            "prefactor_exp": _fmt(self.prefactor_exp),
        }


def _fmt(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def prefactor_exp(n: int, s: int) -> Fraction:
    return Fraction(s * (n - s), 2)


def _check_rank(f: SymPoly, n: int):
    if f.n != n:
        raise RankMismatch(f"function of rank {f.n} used with n={n}")


# -- arbitrary spherical f ---------------------------------------------------

def trace_steinberg(f: SymPoly, n: int, s: int) -> QPoly:
    """Compact trace on St: sign times the strict truncation at delta^(1/2)."""
    _check_rank(f, n)
    v = eval_halfsum(truncate(f, Slope(s, n), STRICT), DELTA_HALF)
    return v if (n - 1) % 2 == 0 else -v


def trace_trivial(f: SymPoly, n: int, s: int) -> QPoly:
    """Compact trace on the trivial representation via the closed opposite chamber."""
    _check_rank(f, n)
    return eval_halfsum(truncate(f, Slope(s, n), LEQ), DELTA_MINUS_HALF)


# -- segments and standard representations -----------------------------------

@lru_cache(maxsize=None)
def _block_dyck(frm, to, slope: Slope, strict: bool) -> QPoly:
    # Tadic expansions repeat the same blocks many times over
    return dyck_poly(frm, to, slope, strict)


def _block_data(segs: Sequence[Segment], n: int, s: int):
    """Non-STAR blocks with their signatures, or None if the trace vanishes."""
    if any(seg.is_empty for seg in segs):
        return None
    blocks = [seg for seg in segs if not seg.is_star]
    if sum(b.length for b in blocks) != n:
        raise ValueError(f"segment lengths sum to {sum(b.length for b in blocks)}, not n={n}")
    out = []
    for b in blocks:
        s_a = Fraction(b.length * s, n)
        if s_a.denominator != 1:
            return None
        out.append((b, int(s_a)))
    return out


def trace_segment(seg: Segment, n: int, s: int) -> QPoly:
    """Compact trace on the essentially square-integrable Delta<x,y>."""
    if seg.is_star:
        return ONE
    if seg.is_empty:
        return ZERO
    if seg.length != n:
        raise ValueError(f"segment {seg} has length {seg.length}, not {n}")
    slope = Slope(s, n)
    d = dyck_poly(line_point(slope, seg.x), line_point(slope, seg.y + 1), slope, strict=True)
    v = d.shift(prefactor_exp(n, s))
    return v if (n - 1) % 2 == 0 else -v


def trace_standard(segs: Sequence[Segment], n: int, s: int,
                   strictness: Truncation = STRICT) -> QPoly:
    """Compact trace on Delta S_1 x ... x Delta S_t (STRICT) or on the product
    of the Zelevinsky duals (LEQ).  Blocks multiply independently."""
    data = _block_data(segs, n, s)
    if data is None:
        return ZERO
    slope = Slope(s, n)
    strict = strictness is STRICT
    v = ONE
    for b, _ in data:
        v = v * _block_dyck(line_point(slope, b.x), line_point(slope, b.y + 1), slope, strict)
        if not v:
            return ZERO
    v = v.shift(prefactor_exp(n, s))
    if strict and (n - len(data)) % 2:
        v = -v
    return v


def trace_monomial_oracle_standard(segs: Sequence[Segment], n: int, s: int,
                                   strictness: Truncation = STRICT) -> QPoly:
    """Same quantity as :func:`trace_standard`, from the Satake monomials.

    Each monomial of f_{n alpha s} gives a graph; the graph is cut into one
    piece per block, piece a anchored at l(x_a).  The monomial survives when
    every piece has the block's height and is Dyck of the requested kind.
    """
    data = _block_data(segs, n, s)
    if data is None:
        return ZERO
    slope = Slope(s, n)
    strict = strictness is STRICT
    orient = DELTA_HALF if strict else DELTA_MINUS_HALF
    anchors = [line_point(slope, b.x) for b, _ in data]
    sizes = [b.length for b, _ in data]
    heights = [s_a for _, s_a in data]
    total = []
    for e, coeff in kottwitz_simple(n, s).terms.items():
        rises = monomial_graph(e, slope, orient).rises
        pos, w, ok = 0, coeff, True
        for anchor, size, height in zip(anchors, sizes, heights):
            piece = Graph(anchor, rises[pos:pos + size])
            pos += size
            if sum(piece.rises) != height:
                ok = False
                break
            cls = dyck_classify(piece, slope)
            if cls is DyckClass.NOT_DYCK or (strict and cls is not DyckClass.DYCK_STRICT):
                ok = False
                break
            w = w * piece.weight()
        if ok:
            total.append(w)
    v = poly_sum(total)
    if strict and (n - len(data)) % 2:
        v = -v
    return v


# -- Speh representations ----------------------------------------------------

def _speh_branch(spec: SpehSpec, s: int, dual: bool) -> TraceResult:
    n = spec.n
    slope = Slope(s, n)
    segs = speh_segments(spec.dual() if dual else spec)
    starts = [line_point(slope, seg.x) for seg in segs]
    ends = [line_point(slope, seg.y + 1) for seg in segs]
    pre = prefactor_exp(n, s)
    branch = "dual" if dual else "direct"
    w0 = w0_permutation(starts, ends)
    if w0 is None:
        return TraceResult(ZERO, Route.PATH_FORMULA, None, 0, pre, branch)
    sgn = perm_sign(w0)
    if not dual and (n - spec.t) % 2:
        sgn = -sgn
    froms = [starts[w0[a] - 1] for a in range(len(starts))]
    d = noncrossing_dyck_poly(froms, ends, slope, strict=not dual)
    v = d.shift(pre)
    return TraceResult(v if sgn > 0 else -v, Route.PATH_FORMULA, w0, sgn, pre, branch)


def trace_speh(spec: SpehSpec, s: int, branch: str = "auto") -> TraceResult:
    """Compact trace of f_{n alpha s} on Speh(h, t) from non-crossing paths.

    h >= t uses strict non-crossing paths between the segment endpoints of
    the representation; h <= t uses non-strict ones between the endpoints
    of its Zelevinsky dual.  When h == t both are computed and must agree.
    ``branch`` may force "direct" or "dual".
    """
    n = spec.n
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}")
    if branch not in ("auto", "direct", "dual"):
        raise ValueError(f"unknown branch {branch!r}")
    if not nonvanishing(spec.h, spec.t, n, s):
        return TraceResult(ZERO, Route.PATH_FORMULA, None, 0, prefactor_exp(n, s), "vanishing")
    if branch == "direct":
        return _speh_branch(spec, s, dual=False)
    if branch == "dual":
        return _speh_branch(spec, s, dual=True)
    if spec.h > spec.t:
        return _speh_branch(spec, s, dual=False)
    if spec.h < spec.t:
        return _speh_branch(spec, s, dual=True)
    direct = _speh_branch(spec, s, dual=False)
    dual = _speh_branch(spec, s, dual=True)
    if direct.value != dual.value:
        raise InvariantViolation(
            f"{spec}, s={s}: direct branch {direct.value} != dual branch {dual.value}")
    return direct


def trace_speh_tadic_oracle(spec: SpehSpec, s: int, branch: str = "auto") -> TraceResult:
    """Signed sum of standard traces over Tadic's expansion.

    "direct" expands Speh(h, t) into standard representations (strict
    blocks); "dual" expands the dual Speh(t, h) and uses the duals of the
    standard terms (non-strict blocks).  "auto" picks direct for h >= t.
    """
    n = spec.n
    if branch == "auto":
        branch = "direct" if spec.h >= spec.t else "dual"
    if branch == "direct":
        terms, mode = tadic_terms(spec), STRICT
    elif branch == "dual":
        terms, mode = tadic_terms(spec.dual()), LEQ
    else:
        raise ValueError(f"unknown branch {branch!r}")
    parts = []
    for term in terms:
        v = trace_standard(term.segments, n, s, mode)
        parts.append(v if term.sign > 0 else -v)
    return TraceResult(poly_sum(parts), Route.TADIC_SUM, None, 1, prefactor_exp(n, s), branch)


@lru_cache(maxsize=None)
def _speh_value(h: int, t: int, s: int) -> QPoly:
    return trace_speh(SpehSpec(h, t), s).value


# -- rigid representations ---------------------------------------------------

def rigid_constant(blocks: Sequence[tuple[int, int]], n: int, s: int) -> Optional[Fraction]:
    """Exponent C = s(n-s)/2 - sum s_a(n_a-s_a)/2, or None if some s_a is not integral."""
    c = prefactor_exp(n, s)
    for x_a, y in blocks:
        n_a = x_a * y
        s_a = Fraction(n_a * s, n)
        if s_a.denominator != 1:
            return None
        c -= s_a * (n_a - s_a) / 2
    return c


def trace_rigid_local(blocks: Sequence[tuple[int, int]], n: int, s: int) -> QPoly:
    """Compact trace on Speh(x_1, y) x ... x Speh(x_k, y) (untwisted).

    Each block is given as (x_a, y) and stands for Speh(h=x_a, t=y), a
    representation of GL_{x_a*y}.
    """
    blocks = [(int(x), int(y)) for x, y in blocks]
    if sum(x * y for x, y in blocks) != n:
        raise ValueError(f"blocks {blocks} do not fill n={n}")
    c = rigid_constant(blocks, n, s)
    if c is None:
        return ZERO
    v = QPoly.monomial(c)
    for x_a, y in blocks:
        n_a = x_a * y
        v = v * _speh_value(x_a, y, n_a * s // n)
        if not v:
            return ZERO
    return v


# -- twists ------------------------------------------------------------------

def twist_exponent(s: int, alpha: int = 1) -> int:
    """The exponent alpha*s at which a twisting character is evaluated on the uniformizer."""
    return alpha * s


def unramified_twist_multiplier(c: RatLike, s: int) -> QPoly:
    """Multiplier for a twist by nu^c, nu(uniformizer) = q^-1."""
    return QPoly.monomial(-rat(c) * twist_exponent(s))


# -- batch self-check ---------------------------------------------------------

@dataclass
class CheckTally:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, what):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(what)


def oracle_check(max_n: int) -> list[CheckTally]:
    """Run every cross-route equality for n <= max_n.

    * closed Speh formula vs. both Tadic expansions (direct and dual);
    * direct vs. dual closed formula at h == t;
    * standard traces vs. the monomial oracle, both strictness modes, on
      every segment list occurring in those expansions;
    * vanishing exactly off the divisibility condition, for 0 < s < n.
    """
    speh = CheckTally("speh == tadic sum")
    selfdual = CheckTally("self-duality at h == t")
    mono = CheckTally("standard == monomial oracle")
    vanish = CheckTally("vanishing <=> condition (0<s<n)")
    for n in range(1, max_n + 1):
        for h in range(1, n + 1):
            if n % h:
                continue
            spec = SpehSpec(h, n // h)
            seg_lists = {t.segments for t in tadic_terms(spec)}
            seg_lists |= {t.segments for t in tadic_terms(spec.dual())}
            for s in range(n + 1):
                try:
                    v = trace_speh(spec, s).value
                except InvariantViolation as e:
                    selfdual.record(False, str(e))
                    continue
                if spec.h == spec.t:
                    selfdual.record(True, None)
                for br in ("direct", "dual"):
                    o = trace_speh_tadic_oracle(spec, s, br).value
                    speh.record(o == v, (str(spec), s, br, str(v), str(o)))
                if 0 < s < n:
                    vanish.record((not v) != nonvanishing(spec.h, spec.t, n, s), (str(spec), s))
                for segs in seg_lists:
                    for mode in (STRICT, LEQ):
                        a = trace_standard(segs, n, s, mode)
                        b = trace_monomial_oracle_standard(segs, n, s, mode)
                        mono.record(a == b, ([str(x) for x in segs], s, mode.value))
    return [speh, selfdual, mono, vanish]
