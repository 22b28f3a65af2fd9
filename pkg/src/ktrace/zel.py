"""Zelevinsky segments, Speh parameters, Tadic's expansion and the pairing w0."""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exactq import RatLike, rat
from .paths import Point

Perm = tuple[int, ...]  # w[a-1] = w(a), 1-based images


class SegKind(enum.Enum):
    PROPER = "proper"
    STAR = "star"
    EMPTY = "empty"


@dataclass(frozen=True)
class Segment:
    """The segment <x, y> = {x, x+1, ..., y}.

    Build with :meth:`make`, which applies the conventions: y = x - 1 gives
    the one-point segment STAR, y < x - 1 gives EMPTY.  The raw endpoints are
    kept for STAR and EMPTY so that the points l(x), l(y+1) stay available.
    """

    kind: SegKind
    x: Fraction
    y: Fraction

    @classmethod
    def make(cls, x: RatLike, y: RatLike) -> "Segment":
        x, y = rat(x), rat(y)
        if (y - x).denominator != 1:
            raise ValueError(f"segment endpoints must differ by an integer: <{x},{y}>")
        if y >= x:
            kind = SegKind.PROPER
        elif y == x - 1:
            kind = SegKind.STAR
        else:
            kind = SegKind.EMPTY
        return cls(kind, x, y)

    @property
    def length(self) -> int:
        if self.kind is SegKind.EMPTY:
            return -1
        return int(self.y - self.x + 1)

    @property
    def is_star(self) -> bool:
        return self.kind is SegKind.STAR

    @property
    def is_empty(self) -> bool:
        return self.kind is SegKind.EMPTY

    def shift(self, c: RatLike) -> "Segment":
        c = rat(c)
        return Segment.make(self.x + c, self.y + c)

    def __str__(self):
        if self.kind is SegKind.STAR:
            return "*"
        if self.kind is SegKind.EMPTY:
            return "{}"
        return f"({_fmt(self.x)},{_fmt(self.y)})"


def _fmt(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def parse_segments(text: str) -> list[Segment]:
    """Parse "(x,y);(x,y);..." with rationals written p/q."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if not (part.startswith("(") and part.endswith(")")):
            raise ValueError(f"segment must look like (x,y): {part!r}")
        xs = part[1:-1].split(",")
        if len(xs) != 2:
            raise ValueError(f"segment must have two endpoints: {part!r}")
        out.append(Segment.make(Fraction(xs[0].strip()), Fraction(xs[1].strip())))
    if not out:
        raise ValueError("no segments given")
    return out


def format_segments(segs: Sequence[Segment]) -> str:
    return ";".join(str(s) for s in segs)


@dataclass(frozen=True)
class SpehSpec:
    h: int
    t: int

    def __post_init__(self):
        if self.h <= 0 or self.t <= 0:
            raise ValueError("h and t must be positive")

    @property
    def n(self) -> int:
        return self.h * self.t

    def dual(self) -> "SpehSpec":
        return SpehSpec(self.t, self.h)

    def segments(self) -> list[Segment]:
        return speh_segments(self)

    def __str__(self):
        return f"Speh({self.h},{self.t})"


def speh_segments(spec: SpehSpec) -> list[Segment]:
    h, t = spec.h, spec.t
    return [Segment.make(Fraction(t - h, 2) - (a - 1), Fraction(t + h, 2) - a)
            for a in range(1, t + 1)]


def perm_sign(w: Perm) -> int:
    inv = sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])
    return -1 if inv % 2 else 1


def perm_inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for a, b in enumerate(w, 1):
        out[b - 1] = a
    return tuple(out)


def format_perm(w: Optional[Perm]) -> str:
    """Cycle notation, e.g. (12); the identity prints as ()."""
    if w is None:
        return "none"
    seen, cycles = set(), []
    for a in range(1, len(w) + 1):
        if a in seen or w[a - 1] == a:
            continue
        cyc, b = [], a
        while b not in seen:
            seen.add(b)
            cyc.append(b)
            b = w[b - 1]
        cycles.append("(" + ("".join(map(str, cyc)) if len(w) < 10 else " ".join(map(str, cyc))) + ")")
    return "".join(cycles) or "()"


@dataclass(frozen=True)
class TadicTerm:
    w: Perm
    sign: int
    segments: tuple[Segment, ...]  # S_a^w = <x_{w(a)}, y_a>, STAR included
    composition: tuple[int, ...]  # lengths of the non-STAR blocks

    @property
    def blocks(self) -> tuple[Segment, ...]:
        return tuple(s for s in self.segments if not s.is_star)

    @property
    def n_star(self) -> int:
        return sum(1 for s in self.segments if s.is_star)


def tadic_terms_for_segments(segs: Sequence[Segment]) -> list[TadicTerm]:
    """Signed standard terms of Tadic's determinant for the given segment list.

    Permutations producing an EMPTY segment contribute zero and are omitted.
    """
    t = len(segs)
    out = []
    w: list[int] = []
    new: list[Segment] = []
    free = set(range(1, t + 1))

    xs = [s.x for s in segs]
    caps = [s.y + 1 for s in segs]  # <x_b, y_a> is non-EMPTY iff x_b <= y_a + 1

    def completable(a: int) -> bool:
        # The admissible sets {b : x_b <= cap} are nested, so Hall's condition
        # reduces to: the k-th tightest remaining cap admits >= k free b.
        free_x = sorted(xs[b - 1] for b in free)
        for k, cap in enumerate(sorted(caps[a:]), 1):
            if sum(1 for x in free_x if x <= cap) < k:
                return False
        return True

    # Depth first over w(1), w(2), ...; prefixes that cannot be completed
    # without an EMPTY segment are cut, so only contributing terms are visited.
    def walk(a: int):
        if a == t:
            comp = tuple(s.length for s in new if not s.is_star)
            out.append(TadicTerm(tuple(w), perm_sign(tuple(w)), tuple(new), comp))
            return
        for b in sorted(free):
            if xs[b - 1] > caps[a]:
                continue
            free.remove(b)
            if completable(a + 1):
                w.append(b)
                new.append(Segment.make(segs[b - 1].x, segs[a].y))
                walk(a + 1)
                new.pop()
                w.pop()
            free.add(b)

    walk(0)
    return out


@lru_cache(maxsize=None)
def _tadic_terms_cached(spec: SpehSpec) -> tuple[TadicTerm, ...]:
    return tuple(tadic_terms_for_segments(speh_segments(spec)))


def tadic_terms(spec: SpehSpec) -> list[TadicTerm]:
    return list(_tadic_terms_cached(spec))


def point_invariant(p: Point) -> Fraction:
    """Second coordinate modulo 1, in [0, 1)."""
    y = rat(p[1])
    return y - math.floor(y)


def w0_permutation(starts: Sequence[Point], ends: Sequence[Point]) -> Optional[Perm]:
    """The pairing permutation w0, or None when the invariants do not match up.

    Built inductively: start k is sent to the smallest end index with the same
    invariant, then start k-1 to the smallest remaining one, and so on.  The
    returned tuple has w[b-1] = a when start a is joined to end b, so the
    t-path runs from starts[w(b)] to ends[b].
    """
    k = len(starts)
    if len(ends) != k:
        raise ValueError("starts and ends must have equal length")
    rs = [point_invariant(p) for p in starts]
    re = [point_invariant(p) for p in ends]
    if Counter(rs) != Counter(re):
        return None
    w = [0] * k
    taken = set()
    for a in range(k, 0, -1):
        b = next(b for b in range(1, k + 1) if b not in taken and re[b - 1] == rs[a - 1])
        taken.add(b)
        w[b - 1] = a
    return tuple(w)


def w0_characterization_holds(starts: Sequence[Point], ends: Sequence[Point], w: Perm) -> bool:
    """Check the defining property of w0 directly.

    Every start is joined to an end of the same invariant, and among starts of
    one invariant a larger index is joined to a smaller end index.
    """
    winv = perm_inverse(w)
    rs = [point_invariant(p) for p in starts]
    re = [point_invariant(p) for p in ends]
    k = len(starts)
    for a in range(1, k + 1):
        if re[winv[a - 1] - 1] != rs[a - 1]:
            return False
        for b in range(a + 1, k + 1):
            if rs[a - 1] == rs[b - 1] and not winv[a - 1] > winv[b - 1]:
                return False
    return True


def nonvanishing(h: int, t: int, n: int, s: int) -> bool:
    """m | t or m | h, where m = n / gcd(n, s) is the order of s/n in Q/Z."""
    if n != h * t:
        raise ValueError(f"n={n} is not h*t={h * t}")
    m = n // math.gcd(n, s)
    return t % m == 0 or h % m == 0
