"""Exact rationals and polynomials in rational powers of q^alpha.

A :class:`QPoly` is a finite sum ``sum c_e * q^(e*alpha)`` with rational
exponents ``e`` and rational coefficients ``c``.  Exponents are stored as
multiples of the symbolic degree alpha.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Fraction
RatLike = Union[int, str, Fraction]


class _NegInfinity:
    """Order of the zero polynomial; compares below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - -inf")
        return self

    def __repr__(self):
        return "NEG_INFINITY"

    def __str__(self):
        return "-inf"

    def __hash__(self):
        return hash("NEG_INFINITY")


NEG_INFINITY = _NegInfinity()


class NonIntegralExponent(ValueError):
    pass


def rat(x: RatLike) -> Fraction:
    """Parse ``x`` as an exact rational ("p/q", int or Fraction)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    return Fraction(x)


def _fmt(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


class QPoly:
    """Immutable element of Q[q^a | a in Q] with exponents in units of alpha."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[RatLike, RatLike] | Iterable = ()):
        acc: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e, c = rat(e), rat(c)
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def monomial(cls, exp: RatLike, coeff: RatLike = 1) -> "QPoly":
        return cls({rat(exp): rat(coeff)})

    @classmethod
    def const(cls, c: RatLike) -> "QPoly":
        return cls({Fraction(0): rat(c)})

    @classmethod
    def _raw(cls, terms: dict) -> "QPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> dict[Fraction, Fraction]:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs by descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return QPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        out = QPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exp: RatLike) -> "QPoly":
        """Multiply by q^(exp*alpha)."""
        d = rat(exp)
        return QPoly._raw({e + d: c for e, c in self._terms.items()})

    def coefficients_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def order(self):
        return poly_order(self)

    def __repr__(self):
        return f"QPoly({self})"

    def __str__(self):
        return to_text(self)


ZERO = QPoly()
ONE = QPoly.const(1)


def poly_mul(a: QPoly, b: QPoly) -> QPoly:
    acc: dict[Fraction, Fraction] = {}
    for e1, c1 in a._terms.items():
        for e2, c2 in b._terms.items():
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return QPoly._raw({e: c for e, c in acc.items() if c})


def poly_sum(polys: Iterable[QPoly]) -> QPoly:
    acc: dict[Fraction, Fraction] = {}
    for p in polys:
        for e, c in p._terms.items():
            acc[e] = acc.get(e, 0) + c
    return QPoly._raw({e: c for e, c in acc.items() if c})


def poly_order(a: QPoly):
    """Largest exponent with nonzero coefficient, NEG_INFINITY for 0."""
    if not a._terms:
        return NEG_INFINITY
    return max(a._terms)


def poly_eval(a: QPoly, q_val: RatLike, alpha_val: int) -> Fraction:
    """Evaluate at q = q_val and alpha = alpha_val.

    Exact; raises NonIntegralExponent when q_val != 1 and some exponent
    times alpha_val is not an integer.
    """
    q_val = rat(q_val)
    if not isinstance(alpha_val, int) or alpha_val <= 0:
        raise ValueError("alpha must be a positive integer")
    total = Fraction(0)
    for e, c in a._terms.items():
        k = e * alpha_val
        if q_val == 1:
            total += c
            continue
        if k.denominator != 1:
            raise NonIntegralExponent(f"exponent {_fmt(k)} is not integral at q={q_val}")
        total += c * q_val ** int(k)
    return total


# -- text / JSON forms ------------------------------------------------------

def to_text(p: QPoly, alpha: str = "a") -> str:
    """Canonical text form, descending exponents: ``-q^2a + q^{1/2}a - 1``."""
    if not p._terms:
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = _fmt(mag)
        else:
            if e == 1:
                body = f"q^{alpha}"
            else:
                ex = _fmt(e) if e.denominator == 1 and e > 0 else "{" + _fmt(e) + "}"
                body = f"q^{ex}{alpha}"
            if mag != 1:
                body = f"{_fmt(mag)}*{body}"
        if i == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coeff>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<qq>q\^(?:\{(?P<bexp>-?\d+(?:/\d+)?)\}|(?P<exp>\d+(?:/\d+)?))?(?P<alpha>[a-zA-Z]*))?
        \s*""",
    re.VERBOSE,
)


def from_text(s: str) -> QPoly:
    """Inverse of :func:`to_text`."""
    s = s.strip()
    if s == "0":
        return ZERO
    terms = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coeff") is None
                                        and m.group("qq") is None):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and m.group("sign") is None:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        coeff = Fraction(m.group("coeff") or 1)
        if m.group("sign") == "-":
            coeff = -coeff
        ex = m.group("bexp") or m.group("exp")
        if m.group("qq") is None:
            e = Fraction(0)
        else:
            e = Fraction(ex) if ex is not None else Fraction(1)
        terms.append((e, coeff))
        pos = m.end()
    return QPoly(terms)


def to_json(p: QPoly) -> list:
    return [{"coeff": _fmt(c), "exp": _fmt(e)} for e, c in p.items()]


def from_json(obj: list) -> QPoly:
    return QPoly((Fraction(t["exp"]), Fraction(t["coeff"])) for t in obj)


def q(exp: RatLike = 1, coeff: RatLike = 1) -> QPoly:
    """Shorthand: ``q(e, c)`` is ``c * q^(e*alpha)``."""
    return QPoly.monomial(exp, coeff)
