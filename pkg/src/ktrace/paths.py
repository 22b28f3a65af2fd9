"""Lattice paths, graphs and Dyck polynomials below the line of slope s/n.

Steps are encoded by their rise: 0 is an east step (1, 0), 1 a north-east
step (1, 1).  A general graph step (1, e) may have any integer rise.  A step
leaving the vertex (a, b) with rise e weighs q^(-alpha*e*a).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

from .exactq import ONE, ZERO, QPoly, RatLike, rat, poly_sum

E, NE = 0, 1


@dataclass(frozen=True)
class Slope:
    """The line x -> (x, s*x/n).  Kept unreduced so s and n stay visible."""

    s: int
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("n must be positive")
        if not 0 <= self.s <= self.n:
            raise ValueError(f"need 0 <= s <= n, got s={self.s}, n={self.n}")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.s, self.n)

    def __call__(self, x: RatLike) -> "Point":
        return line_point(self, x)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RatLike, y: RatLike) -> "Point":
        return cls(rat(x), rat(y))

    def __str__(self):
        return f"({_fmt(self.x)},{_fmt(self.y)})"


def _fmt(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def line_point(slope: Slope, x: RatLike) -> Point:
    x = rat(x)
    return Point(x, slope.ratio * x)


@dataclass(frozen=True)
class Graph:
    start: Point
    rises: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "start", Point(rat(self.start[0]), rat(self.start[1])))
        object.__setattr__(self, "rises", tuple(int(e) for e in self.rises))

    def __len__(self):
        return len(self.rises)

    def vertices(self) -> list[Point]:
        x, y = self.start
        out = [Point(x, y)]
        for e in self.rises:
            x, y = x + 1, y + e
            out.append(Point(x, y))
        return out

    @property
    def end(self) -> Point:
        return Point(self.start.x + len(self.rises), self.start.y + sum(self.rises))

    def weight(self) -> QPoly:
        return graph_weight(self)

    def height(self) -> Fraction:
        return graph_height(self)

    def translate(self, dx: RatLike, dy: RatLike) -> "Graph":
        return type(self)(Point(self.start.x + rat(dx), self.start.y + rat(dy)), self.rises)

    def is_path(self) -> bool:
        return all(e in (0, 1) for e in self.rises)

    def concat(self, other: "Graph") -> "Graph":
        if other.start != self.end:
            raise ValueError("graphs do not meet")
        return type(self)(self.start, self.rises + other.rises)


class LatticePath(Graph):
    """A graph whose steps are all east or north-east."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_path():
            raise ValueError(f"path steps must be 0 (E) or 1 (NE), got {self.rises}")

    @property
    def steps(self) -> tuple[int, ...]:
        return self.rises


def _weight_exponent(start: Point, rises: Sequence[int]) -> Fraction:
    x = start.x
    total = Fraction(0)
    for e in rises:
        if e:
            total -= e * x
        x += 1
    return total


def graph_weight(g: Graph) -> QPoly:
    return QPoly.monomial(_weight_exponent(g.start, g.rises))


def path_weight(p: Graph) -> QPoly:
    return graph_weight(p)


def graph_height(g: Graph) -> Fraction:
    return Fraction(sum(g.rises))


class DyckClass(enum.Enum):
    NOT_DYCK = "not_dyck"
    DYCK_TOUCHING = "dyck_touching"
    DYCK_STRICT = "dyck_strict"

    @property
    def is_dyck(self) -> bool:
        return self is not DyckClass.NOT_DYCK


def dyck_classify(p: Graph, slope: Slope) -> DyckClass:
    """Position of the vertices of ``p`` relative to the line through 0.

    Endpoints lying on the line never spoil strictness; any vertex above the
    line (endpoints included) makes the graph non-Dyck.
    """
    r = slope.ratio
    verts = p.vertices()
    touching = False
    for i, v in enumerate(verts):
        ly = r * v.x
        if v.y > ly:
            return DyckClass.NOT_DYCK
        if v.y == ly and 0 < i < len(verts) - 1:
            touching = True
    return DyckClass.DYCK_TOUCHING if touching else DyckClass.DYCK_STRICT


def _span(frm: Point, to: Point):
    """(steps, rises) between two points, or None when no path can exist."""
    dx, dy = to.x - frm.x, to.y - frm.y
    if dx.denominator != 1 or dy.denominator != 1:
        return None
    dx, dy = int(dx), int(dy)
    if dx < 0 or dy < 0 or dy > dx:
        return None
    return dx, dy


def dyck_paths(frm: Point, to: Point, slope: Slope, strict: bool) -> Iterator[LatticePath]:
    """All (strict) Dyck paths from ``frm`` to ``to`` below the line of ``slope``.

    Walks the step sequences depth first and cuts a branch as soon as a vertex
    violates the condition, so only admissible prefixes are extended.
    """
    span = _span(frm, to)
    if span is None:
        return
    dx, dy = span
    r = slope.ratio
    if frm.y > r * frm.x or to.y > r * to.x:
        return
    rises: list[int] = []

    def walk(i: int, x: Fraction, y: Fraction, left: int):
        if i == dx:
            yield LatticePath(frm, tuple(rises))
            return
        for e in (0, 1):
            if e > left or left - e > dx - i - 1:
                continue
            nx, ny = x + 1, y + e
            if i + 1 < dx:
                ly = r * nx
                if ny > ly or (strict and ny == ly):
                    continue
            rises.append(e)
            yield from walk(i + 1, nx, ny, left - e)
            rises.pop()

    yield from walk(0, frm.x, frm.y, dy)


def all_paths(frm: Point, to: Point) -> Iterator[LatticePath]:
    """Every E/NE path between two points, unfiltered."""
    span = _span(frm, to)
    if span is None:
        return
    dx, dy = span
    for pos in combinations(range(dx), dy):
        rises = [0] * dx
        for i in pos:
            rises[i] = 1
        yield LatticePath(frm, tuple(rises))


def dyck_poly(frm: Point, to: Point, slope: Slope, strict: bool) -> QPoly:
    return poly_sum(path_weight(p) for p in dyck_paths(frm, to, slope, strict))


@dataclass(frozen=True)
class TPath:
    components: tuple[LatticePath, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def weight(self) -> QPoly:
        w = ONE
        for c in self.components:
            w = w * path_weight(c)
        return w

    def to_json(self) -> str:
        return json.dumps(tpath_dump(self))

    def to_ascii(self) -> str:
        lines = []
        for i, c in enumerate(self.components, 1):
            lines.append(f"L{i}: " + " -> ".join(str(v) for v in c.vertices()))
        return "\n".join(lines)


def tpath_dump(t: TPath) -> list:
    return [[[_fmt(v.x), _fmt(v.y)] for v in c.vertices()] for c in t.components]


def tpath_noncrossing(t: TPath) -> bool:
    """True iff no two components share a vertex of their defining lists."""
    seen: set[Point] = set()
    for c in t.components:
        vs = set(c.vertices())
        if seen & vs:
            return False
        seen |= vs
    return True


def _segment_intersections(p0: Point, p1: Point, r0: Point, r1: Point) -> list[Point]:
    # Both segments have x-extent 1; solve on the overlap of their x-ranges.
    lo, hi = max(p0.x, r0.x), min(p1.x, r1.x)
    if lo > hi:
        return []
    sp = (p1.y - p0.y) / (p1.x - p0.x)
    sr = (r1.y - r0.y) / (r1.x - r0.x)
    fp = lambda x: p0.y + sp * (x - p0.x)
    fr = lambda x: r0.y + sr * (x - r0.x)
    if sp == sr:
        if fp(lo) != fr(lo):
            return []
        return [Point(lo, fp(lo))] if lo == hi else [Point(lo, fp(lo)), Point(hi, fp(hi))]
    x = (r0.y - p0.y + sp * p0.x - sr * r0.x) / (sp - sr)
    if lo <= x <= hi:
        return [Point(x, fp(x))]
    return []


def _on_polyline(v: Point, verts: list[Point]) -> bool:
    if len(verts) == 1:
        return v == verts[0]
    for p0, p1 in zip(verts, verts[1:]):
        if p0.x <= v.x <= p1.x and p0.y + (p1.y - p0.y) * (v.x - p0.x) == v.y:
            return True
    return False


def topological_intersections(t: TPath) -> list[Point]:
    """Diagnostic: points where two drawn components meet, vertices or not.

    Overlapping collinear pieces are reported by their endpoints.
    """
    found: set[Point] = set()
    comps = [c.vertices() for c in t.components]
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            a, b = comps[i], comps[j]
            if len(a) == 1 or len(b) == 1:
                lone, other = (a, b) if len(a) == 1 else (b, a)
                if _on_polyline(lone[0], other):
                    found.add(lone[0])
                continue
            for p0, p1 in zip(a, a[1:]):
                for r0, r1 in zip(b, b[1:]):
                    found.update(_segment_intersections(p0, p1, r0, r1))
    return sorted(found)


def noncrossing_dyck_tpaths(froms: Sequence[Point], tos: Sequence[Point], slope: Slope,
                            strict: bool) -> Iterator[TPath]:
    """Non-crossing Dyck t-paths, component a running from froms[a] to tos[a]."""
    if len(froms) != len(tos) or not froms:
        raise ValueError("froms and tos must have the same positive length")
    choices = [list(dyck_paths(f, t, slope, strict)) for f, t in zip(froms, tos)]
    if any(not c for c in choices):
        return
    vsets = [[frozenset(p.vertices()) for p in c] for c in choices]
    picked: list[int] = []

    def walk(a: int, used: frozenset):
        if a == len(choices):
            yield TPath(tuple(choices[i][k] for i, k in enumerate(picked)))
            return
        for k, vs in enumerate(vsets[a]):
            if used & vs:
                continue
            picked.append(k)
            yield from walk(a + 1, used | vs)
            picked.pop()

    yield from walk(0, frozenset())


def noncrossing_dyck_poly(froms: Sequence[Point], tos: Sequence[Point], slope: Slope,
                          strict: bool) -> QPoly:
    return poly_sum(t.weight() for t in noncrossing_dyck_tpaths(froms, tos, slope, strict))


def product_dyck_poly(froms: Sequence[Point], tos: Sequence[Point], slope: Slope,
                      strict: bool) -> QPoly:
    """Dyck polynomial of t-paths with no crossing constraint: a plain product."""
    out = ONE
    for f, t in zip(froms, tos):
        out = out * dyck_poly(f, t, slope, strict)
        if not out:
            return ZERO
    return out
