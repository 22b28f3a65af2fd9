"""Global layer: rigid representations across the places above p.

A place is the Galois orbit of some infinite places; it carries the list of
their signatures s_v.  A place with one (non-zero) signature contributes the
compact trace of f_{n alpha s_v}; a place whose orbit holds several infinite
places contributes through the convolution product f_{n alpha sigma}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactq import ONE, QPoly, poly_eval, poly_order
from .satake import kottwitz_composite, kottwitz_simple
from .traces import trace_rigid_local, trace_steinberg, trace_trivial


@lru_cache(maxsize=None)
def _composite(n: int, sigma: tuple[int, ...]):
    return kottwitz_composite(n, sigma)


class DimensionMismatch(ValueError):
    pass


class UnsupportedRepresentation(NotImplementedError):
    """Composite places only have closed formulas on trivial and Steinberg."""


@dataclass(frozen=True)
class PlaceData:
    signatures: tuple[int, ...]

    def __post_init__(self):
        sig = tuple(int(s) for s in self.signatures)
        if not sig:
            raise ValueError("a place needs at least one signature")
        if any(s < 0 for s in sig):
            raise ValueError(f"signatures must be non-negative: {sig}")
        object.__setattr__(self, "signatures", sig)

    @property
    def s_wp(self) -> int:
        return sum(self.signatures)

    @property
    def is_composite(self) -> bool:
        return sum(1 for s in self.signatures if s) > 1

    def kottwitz(self, n: int):
        if self.is_composite:
            return _composite(n, tuple(sorted(s for s in self.signatures if s)))
        return kottwitz_simple(n, self.s_wp)

    def __str__(self):
        return "sv=" + ",".join(map(str, self.signatures))


@dataclass(frozen=True)
class GlobalRigidSpec:
    """Speh(x_{p,1}, y) x ... x Speh(x_{p,r}, y) at every place p, y global."""

    n: int
    y: int
    per_place: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "per_place", tuple(tuple(int(x) for x in xs)
                                                    for xs in self.per_place))
        if self.n <= 0 or self.y <= 0:
            raise ValueError("n and y must be positive")
        if self.n % self.y:
            raise DimensionMismatch(f"y={self.y} does not divide n={self.n}")
        for xs in self.per_place:
            if not xs or any(x <= 0 for x in xs):
                raise ValueError(f"block sizes must be positive: {xs}")
            if sum(xs) * self.y != self.n:
                raise DimensionMismatch(f"sum{xs} * y={self.y} != n={self.n}")

    def blocks(self, place: int) -> list[tuple[int, int]]:
        return [(x, self.y) for x in self.per_place[place]]

    @classmethod
    def trivial(cls, n: int, nplaces: int) -> "GlobalRigidSpec":
        return cls(n, n, ((1,),) * nplaces)

    @classmethod
    def steinberg(cls, n: int, nplaces: int) -> "GlobalRigidSpec":
        return cls(n, 1, ((n,),) * nplaces)


def _check(spec: GlobalRigidSpec, places: Sequence[PlaceData]):
    if len(spec.per_place) != len(places):
        raise DimensionMismatch(
            f"spec has {len(spec.per_place)} places, {len(places)} signatures given")
    for p in places:
        if p.s_wp > spec.n:
            raise DimensionMismatch(f"s_wp={p.s_wp} exceeds n={spec.n}")


def is_b_type(spec: GlobalRigidSpec, places: Sequence[PlaceData]) -> bool:
    """Divisibility conditions under which the global trace can be non-zero.

    For each place and block: s_a = (y x_a / n) s_wp must be an integer and
    m_a = y x_a / gcd(y x_a, s_a) must divide x_a or y.
    """
    _check(spec, places)
    n, y = spec.n, spec.y
    for xs, place in zip(spec.per_place, places):
        for x in xs:
            n_a = y * x
            s_a = Fraction(n_a * place.s_wp, n)
            if s_a.denominator != 1:
                return False
            m = n_a // math.gcd(n_a, int(s_a))
            if x % m and y % m:
                return False
    return True


def place_trace(spec: GlobalRigidSpec, place_index: int, place: PlaceData) -> QPoly:
    return _place_factor(spec.n, spec.y, spec.per_place[place_index], place)


@lru_cache(maxsize=None)
def _place_factor(n: int, y: int, xs: tuple[int, ...], place: PlaceData) -> QPoly:
    s = place.s_wp
    blocks = [(x, y) for x in xs]
    if not place.is_composite:
        return trace_rigid_local(blocks, n, s)
    if blocks == [(1, n)]:
        return trace_trivial(place.kottwitz(n), n, s)
    if blocks == [(n, 1)]:
        return trace_steinberg(place.kottwitz(n), n, s)
    raise UnsupportedRepresentation(
        f"place {place} with several signatures: only trivial and Steinberg are supported")


def trace_global(spec: GlobalRigidSpec, places: Sequence[PlaceData]) -> QPoly:
    """Untwisted compact trace of f_alpha on the rigid representation: the
    product of the per-place factors, as a polynomial in q^alpha."""
    _check(spec, places)
    out = ONE
    for i, place in enumerate(places):
        out = out * place_trace(spec, i, place)
        if not out:
            break
    return out


def place_dimension(place: PlaceData, n: int, rounding: str = "floor") -> int:
    """One summand of the dimension formula.

    ``rounding="floor"`` sums floor(j n / s_wp), which is the order of the
    trivial trace; ``"ceil"`` gives the variant with ceilings, which agrees
    with it exactly when s_wp divides n.
    """
    sp = place.s_wp
    if sp == 0:
        return 0
    if rounding == "floor":
        tail = sum(j * n // sp for j in range(sp))
    elif rounding == "ceil":
        tail = sum(-(-j * n // sp) for j in range(sp))
    else:
        raise ValueError(f"unknown rounding {rounding!r}")
    head = sum(Fraction(s * (1 - s), 2) for s in place.signatures)
    return int(head + tail)


def dimension(places: Sequence[PlaceData], n: int, rounding: str = "floor") -> int:
    return sum(place_dimension(p, n, rounding) for p in places)


@dataclass(frozen=True)
class OrderReport:
    order: object
    trivial_order: object
    bound_satisfied: bool
    per_place_dimension_ok: bool

    def as_tuple(self):
        return self.order, self.trivial_order, self.bound_satisfied


def order_report(spec: GlobalRigidSpec, places: Sequence[PlaceData]) -> OrderReport:
    """Compare the order of the spec's trace with that of the trivial representation."""
    _check(spec, places)
    n = spec.n
    triv = GlobalRigidSpec.trivial(n, len(places))
    o = poly_order(trace_global(spec, places))
    per_place_ok = True
    ot = 0
    for i, p in enumerate(places):
        po = poly_order(place_trace(triv, i, p))
        per_place_ok &= po == place_dimension(p, n)
        ot = ot + po
    return OrderReport(o, ot, o <= ot, per_place_ok)


def euler_characteristic(p: QPoly) -> Fraction:
    """Value at q = 1: signed count of the underlying path tuples."""
    return poly_eval(p, 1, 1)


# -- the explicit polynomials for n = 6, signatures 2 and 3 -------------------

@dataclass(frozen=True)
class ExampleRow:
    label: str
    printed: QPoly
    derived: QPoly
    note: str = ""

    @property
    def agrees(self) -> bool:
        return self.printed == self.derived


def worked_examples() -> list[ExampleRow]:
    """Re-derive the printed example values and pair them with the printed ones.

    Speh(h, t) here always means t segments of length h.  The printed list of
    explicit polynomials labels the Speh(3, 2) values with the exponent of the
    figure captions; the caption value is used for f63.
    """
    from .exactq import q
    from .zel import SpehSpec
    from .traces import trace_speh

    f62, f63 = kottwitz_simple(6, 2), kottwitz_simple(6, 3)
    one = QPoly.const(1)
    rows = [
        ExampleRow("Tr(f62, 1_G6)", one + q(1) + q(2), trace_trivial(f62, 6, 2)),
        ExampleRow("Tr(f62, St_G6)", -(q(1) + q(2)), trace_steinberg(f62, 6, 2),
                   "surviving monomials X1X2, X1X3 give -(1 + q^a)"),
        ExampleRow("Tr(f63, 1_G6)", one + q(1) + q(2, 2) + q(3), trace_trivial(f63, 6, 3)),
        ExampleRow("Tr(f63, St_G6)", -(one + q(1)), trace_steinberg(f63, 6, 3)),
        ExampleRow("Tr(f42, Speh(2,2))", q(3), trace_speh(SpehSpec(2, 2), 2).value,
                   "q^3a exceeds the trivial-representation order 1"),
        ExampleRow("Tr(f63, Speh(3,2))", -q(2), trace_speh(SpehSpec(3, 2), 3).value,
                   "figure value; the list prints the exponent as -2a"),
        ExampleRow("Tr(f62, Speh(3,2))", -q(3), trace_speh(SpehSpec(3, 2), 2).value,
                   "w0 = id, Dyck+ = q^{-2}a, sign +1: +q^2a"),
        ExampleRow("Tr(f63, Speh(2,3))", q(2) + q(3), trace_speh(SpehSpec(2, 3), 3).value,
                   "overall sign is -1"),
        ExampleRow("Tr(f62, Speh(2,3))", q(2), trace_speh(SpehSpec(2, 3), 2).value),
    ]
    return rows
