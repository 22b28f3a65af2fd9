"""Spherical Hecke elements as fully expanded symmetric Laurent polynomials.

A :class:`SymPoly` of rank n maps exponent vectors (e_1, ..., e_n) to QPoly
coefficients; the vector stands for the monomial prod X_i^(alpha*e_i).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .exactq import ONE, QPoly, poly_sum
from .paths import Graph, Slope, line_point


class RankMismatch(ValueError):
    pass


class Orientation(enum.Enum):
    DELTA_HALF = "delta_half"
    DELTA_MINUS_HALF = "delta_minus_half"


DELTA_HALF = Orientation.DELTA_HALF
DELTA_MINUS_HALF = Orientation.DELTA_MINUS_HALF


class Truncation(enum.Enum):
    STRICT = "strict"
    LEQ = "leq"


STRICT = Truncation.STRICT
LEQ = Truncation.LEQ


class SymPoly:
    """Immutable polynomial in X_1..X_n with QPoly coefficients.

    Symmetric unless ``truncated`` is set; truncation output is not symmetric
    and is rejected by :func:`convolve`.
    """

    __slots__ = ("n", "_terms", "truncated")

    def __init__(self, n: int, terms: Mapping[tuple, QPoly] | Iterable = (),
                 truncated: bool = False, check: bool = True):
        if n <= 0:
            raise ValueError("rank must be positive")
        acc: dict[tuple, QPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != n:
                raise RankMismatch(f"exponent {e} has length {len(e)} != {n}")
            if not isinstance(c, QPoly):
                c = QPoly.const(c)
            acc[e] = acc[e] + c if e in acc else c
        self.n = n
        self._terms = {e: c for e, c in acc.items() if c}
        self.truncated = truncated
        if check and not truncated:
            self._check_symmetric()

    def _check_symmetric(self):
        # adjacent transpositions generate S_n
        for e, c in self._terms.items():
            for i in range(self.n - 1):
                if e[i] == e[i + 1]:
                    continue
                f = e[:i] + (e[i + 1], e[i]) + e[i + 2:]
                if self._terms.get(f) != c:
                    raise ValueError(f"not symmetric: {e} and {f} differ")

    @property
    def terms(self) -> dict[tuple, QPoly]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __add__(self, other: "SymPoly") -> "SymPoly":
        _same_rank(self, other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return SymPoly(self.n, acc, truncated=self.truncated or other.truncated, check=False)

    def scale(self, c: QPoly) -> "SymPoly":
        return SymPoly(self.n, {e: v * c for e, v in self._terms.items()},
                       truncated=self.truncated, check=False)

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            return convolve(self, other)
        return self.scale(other if isinstance(other, QPoly) else QPoly.const(other))

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def to_json(self) -> list:
        from .exactq import to_json
        return [{"exps": list(e), "coeff": to_json(c)} for e, c in self.items()]

    def __repr__(self):
        return f"SymPoly(n={self.n}, {len(self._terms)} terms)"


def _same_rank(a: SymPoly, b: SymPoly):
    if a.n != b.n:
        raise RankMismatch(f"rank {a.n} != rank {b.n}")


def sympoly_from_json(n: int, obj: list) -> SymPoly:
    from .exactq import from_json
    return SymPoly(n, [(tuple(t["exps"]), from_json(t["coeff"])) for t in obj])


def unit(n: int) -> SymPoly:
    return SymPoly(n, {(0,) * n: ONE}, check=False)


def kottwitz_simple(n: int, s: int, degree: int = 1) -> SymPoly:
    """f_{n, degree*alpha, s}: q^(degree*s(n-s)/2) * e_s(X^(degree*alpha)).

    Zero when s > n.
    """
    if s < 0:
        raise ValueError("signature must be non-negative")
    if s > n:
        return SymPoly(n, {}, check=False)
    coeff = QPoly.monomial(Fraction(degree * s * (n - s), 2))
    terms = {}
    for idx in combinations(range(n), s):
        e = [0] * n
        for i in idx:
            e[i] = degree
        terms[tuple(e)] = coeff
    return SymPoly(n, terms, check=False)


def kottwitz_composite(n: int, sigma: Iterable[int]) -> SymPoly:
    """Convolution product of the simple functions f_{n alpha s_v}, s_v in sigma."""
    out = unit(n)
    for s in sigma:
        out = convolve(out, kottwitz_simple(n, s))
    return out


def convolve(a: SymPoly, b: SymPoly) -> SymPoly:
    """Convolution of Hecke functions, i.e. the product of Satake transforms."""
    _same_rank(a, b)
    if a.truncated or b.truncated:
        raise ValueError("convolution is only defined on untruncated (symmetric) elements")
    acc: dict[tuple, list] = {}
    for e1, c1 in a._terms.items():
        for e2, c2 in b._terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            acc.setdefault(e, []).append(c1 * c2)
    return SymPoly(a.n, {e: poly_sum(cs) for e, cs in acc.items()}, check=False)


def monomial_kept(e: tuple, slope: Slope, mode: Truncation) -> bool:
    r = slope.ratio
    partial = 0
    for i in range(1, len(e)):
        partial += e[i - 1]
        if mode is STRICT:
            if not partial > r * i:
                return False
        elif partial > r * i:
            return False
    return True


def truncate(f: SymPoly, slope: Slope, mode: Truncation) -> SymPoly:
    """Keep the ordered monomials whose partial sums pass the chamber test.

    STRICT keeps e_1+...+e_i > (s/n) i for all i < n; LEQ keeps <=.
    """
    if slope.n != f.n:
        raise RankMismatch(f"slope for rank {slope.n} applied to rank {f.n}")
    kept = {e: c for e, c in f._terms.items() if monomial_kept(e, slope, mode)}
    return SymPoly(f.n, kept, truncated=True, check=False)


def halfsum_point(n: int, orient: Orientation) -> list[Fraction]:
    """Exponents of q at which X_1..X_n are evaluated."""
    half = Fraction(1 - n, 2)
    if orient is DELTA_HALF:
        return [half + i for i in range(n)]
    return [-half - i for i in range(n)]


def eval_monomial(e: tuple, orient: Orientation) -> QPoly:
    pt = halfsum_point(len(e), orient)
    return QPoly.monomial(sum((c * x for c, x in zip(pt, e)), Fraction(0)))


def eval_halfsum(f: SymPoly, orient: Orientation) -> QPoly:
    pt = halfsum_point(f.n, orient)
    return poly_sum(c.shift(sum((x * k for x, k in zip(pt, e)), Fraction(0)))
                    for e, c in f._terms.items())


def monomial_graph(e: tuple, slope: Slope, orient: Orientation) -> Graph:
    """Graph of the monomial X^e, started at l((1-n)/2).

    DELTA_HALF reads the exponents backwards (e_n first); DELTA_MINUS_HALF
    reads them forwards.
    """
    n = len(e)
    if n != slope.n:
        raise RankMismatch(f"exponent length {n} != slope rank {slope.n}")
    start = line_point(slope, Fraction(1 - n, 2))
    rises = tuple(reversed(e)) if orient is DELTA_HALF else tuple(e)
    return Graph(start, rises)

