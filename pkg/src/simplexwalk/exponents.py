"""Exact linear forms over named parameters, used as exponents of n.

A big-O expression like n^(a_1 + b_12/2 - 3/2) is represented by a
LinearExponent.  Products of such expressions add exponents; sums take the
max of exponents, represented by MaxExpr.  All arithmetic is exact over
Fraction; there is deliberately no parameter-times-parameter multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction, str]


def _frac(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class UnboundParameterError(KeyError):
    """Raised when evaluating a form with unbound parameter names."""

    def __init__(self, names: Iterable[str]):
        self.names = sorted(names)
        super().__init__(f"unbound parameters: {', '.join(self.names)}")


@dataclass(frozen=True)
class LinearExponent:
    """constant + sum of coeff * parameter; canonical (no zero coeffs stored)."""

    constant: Fraction = Fraction(0)
    coeffs: tuple[tuple[str, Fraction], ...] = field(default=())

    @staticmethod
    def of(constant: Rational = 0, **coeffs: Rational) -> "LinearExponent":
        return LinearExponent.from_map(constant, coeffs)

    @staticmethod
    def from_map(constant: Rational, coeffs: Mapping[str, Rational]) -> "LinearExponent":
        items = tuple(
            sorted((name, _frac(v)) for name, v in coeffs.items() if _frac(v) != 0)
        )
        return LinearExponent(_frac(constant), items)

    @staticmethod
    def var(name: str) -> "LinearExponent":
        return LinearExponent.from_map(0, {name: 1})

    @staticmethod
    def const(value: Rational) -> "LinearExponent":
        return LinearExponent(_frac(value), ())

    def coeff_map(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "LinearExponent | Rational") -> "LinearExponent":
        if not isinstance(other, LinearExponent):
            other = LinearExponent.const(other)
        merged = self.coeff_map()
        for name, v in other.coeffs:
            merged[name] = merged.get(name, Fraction(0)) + v
        return LinearExponent.from_map(self.constant + other.constant, merged)

    def __radd__(self, other: Rational) -> "LinearExponent":
        return self + other

    def __sub__(self, other: "LinearExponent | Rational") -> "LinearExponent":
        if not isinstance(other, LinearExponent):
            other = LinearExponent.const(other)
        return self + other * -1

    def __mul__(self, scalar: Rational) -> "LinearExponent":
        s = _frac(scalar)
        return LinearExponent.from_map(
            self.constant * s, {name: v * s for name, v in self.coeffs}
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar: Rational) -> "LinearExponent":
        return self * (Fraction(1) / _frac(scalar))

    def evaluate(self, assignment: Mapping[str, Rational]) -> Fraction:
        missing = [name for name, _ in self.coeffs if name not in assignment]
        if missing:
            raise UnboundParameterError(missing)
        total = self.constant
        for name, v in self.coeffs:
            total += v * _frac(assignment[name])
        return total

    def __str__(self) -> str:
        return format_exponent(self)


@dataclass(frozen=True)
class MaxExpr:
    """Nonempty finite max of LinearExponent terms (exponent of a sum)."""

    terms: tuple[LinearExponent, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("MaxExpr needs at least one term")

    def evaluate(self, assignment: Mapping[str, Rational]) -> Fraction:
        return max(t.evaluate(assignment) for t in self.terms)

    def __str__(self) -> str:
        return "max(" + ", ".join(str(t) for t in self.terms) + ")"


def combine(*factors: LinearExponent) -> LinearExponent:
    """Exponent of a product of big-O terms: the sum of the exponents."""
    out = LinearExponent.const(0)
    for f in factors:
        out = out + f
    return out


def max_of(terms: Iterable[LinearExponent | MaxExpr]) -> MaxExpr:
    """Exponent of a sum of big-O terms: the max of the exponents."""
    flat: list[LinearExponent] = []
    for t in terms:
        if isinstance(t, MaxExpr):
            flat.extend(t.terms)
        else:
            flat.append(t)
    return MaxExpr(tuple(dict.fromkeys(flat)))


def sqrt(term: LinearExponent | MaxExpr) -> "LinearExponent | MaxExpr":
    """Exponent of a square root: halve."""
    if isinstance(term, MaxExpr):
        return MaxExpr(tuple(t / 2 for t in term.terms))
    return term / 2


_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<num>\d+(?:/\d+)?|\d*\.\d+)\s*\*?\s*(?P<name1>[A-Za-z_][\w]*)?"
    r"|(?P<name2>[A-Za-z_][\w]*))"
)


def parse_exponent(text: str) -> LinearExponent:
    """Parse forms like "1/2*a_1 + b_12 - 3/2" into a LinearExponent."""
    pos = 0
    sign = 1
    pending_sign = True
    constant = Fraction(0)
    coeffs: dict[str, Fraction] = {}
    text = text.strip()
    if not text:
        return LinearExponent.const(0)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse exponent at {text[pos:]!r}")
        pos = m.end()
        if m.group("sign"):
            if not pending_sign:
                sign = 1
            sign *= -1 if m.group("sign") == "-" else 1
            pending_sign = True
            continue
        value = Fraction(1)
        name = None
        if m.group("num") is not None:
            value = Fraction(m.group("num"))
            name = m.group("name1")
        else:
            name = m.group("name2")
        term = value * sign
        if name:
            coeffs[name] = coeffs.get(name, Fraction(0)) + term
        else:
            constant += term
        sign = 1
        pending_sign = False
    if pending_sign:
        raise ValueError(f"dangling sign in {text!r}")
    return LinearExponent.from_map(constant, coeffs)


def format_exponent(e: LinearExponent) -> str:
    """Inverse of parse_exponent, e.g. "1/2*a_1 + b_12 - 3/2"."""
    parts: list[str] = []
    for name, v in e.coeffs:
        if v == 1:
            term = name
        elif v == -1:
            term = f"-{name}"
        else:
            term = f"{v}*{name}"
        parts.append(term)
    if e.constant != 0 or not parts:
        parts.append(str(e.constant))
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
