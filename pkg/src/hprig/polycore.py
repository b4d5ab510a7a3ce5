"""Exact rational univariate polynomials and their sign patterns.

Coefficients are :class:`fractions.Fraction` values stored in descending
order, leading coefficient first. No floating point is used anywhere; every
sign decision is exact.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from hprig import kernels

Rat = Fraction
RatLike = Union[int, str, Fraction]

__all__ = [
    "Rat",
    "Sign",
    "SignPattern",
    "Poly",
    "PolySyntaxError",
    "parse_poly",
    "render",
    "poly_to_json",
    "poly_from_json",
    "multiply",
    "negate_arg",
    "revert",
    "normalize_positive",
    "sign_pattern",
    "parse_sp",
    "descartes_counts",
    "run_lengths",
    "poly_gcd",
    "poly_divmod",
    "exact_div",
    "derivative",
    "linear",
]


class Sign(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __str__(self) -> str:
        return {1: "+", -1: "−", 0: "0"}[int(self)]

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))


@dataclass(frozen=True)
class SignPattern:
    """Signs of the coefficients from the leading one to the constant term.

    ``allows_zero`` distinguishes a strict pattern from one admitting zeros.
    """

    signs: tuple[Sign, ...]
    allows_zero: bool = field(default=False, compare=False)

    def __post_init__(self):
        signs = tuple(Sign(s) for s in self.signs)
        object.__setattr__(self, "signs", signs)
        if not signs:
            raise ValueError("empty sign pattern")
        if signs[0] is not Sign.PLUS:
            raise ValueError("sign pattern must start with +")
        if not self.allows_zero and Sign.ZERO in signs:
            raise ValueError("zero sign in a strict sign pattern")

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)

    def __getitem__(self, i):
        return self.signs[i]

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.signs)

    @property
    def has_zero(self) -> bool:
        return Sign.ZERO in self.signs

    @classmethod
    def from_ints(cls, values: Iterable[int], allows_zero: bool = False) -> "SignPattern":
        return cls(tuple(Sign(v) for v in values), allows_zero)


def parse_sp(text: str) -> SignPattern:
    """Parse "+ + - +" (ASCII or Unicode minus; spaces optional)."""
    table = {"+": 1, "-": -1, "−": -1, "0": 0}
    signs = []
    for pos, ch in enumerate(text):
        if ch.isspace() or ch == ",":
            continue
        if ch not in table:
            raise ValueError(f"bad sign character {ch!r} at position {pos}")
        signs.append(table[ch])
    zero = 0 in signs
    return SignPattern.from_ints(signs, allows_zero=zero)


def _rat(value: RatLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(value)


@dataclass(frozen=True)
class Poly:
    """Nonzero polynomial with exact rational coefficients, descending order."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(_rat(c) for c in self.coeffs)
        if not cs:
            raise ValueError("empty coefficient list")
        if cs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RatLike]) -> "Poly":
        """Build from a descending list, stripping leading zeros."""
        cs = [_rat(c) for c in coeffs]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i == len(cs):
            raise ValueError("the zero polynomial is not representable")
        return cls(tuple(cs[i:]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[0]

    @property
    def constant(self) -> Fraction:
        return self.coeffs[-1]

    def coeff(self, power: int) -> Fraction:
        """Coefficient of x**power."""
        if power < 0 or power > self.degree:
            return Fraction(0)
        return self.coeffs[self.degree - power]

    def __call__(self, x: RatLike) -> Fraction:
        x = _rat(x)
        acc = Fraction(0)
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __mul__(self, other: "Poly") -> "Poly":
        if isinstance(other, Poly):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def scale(self, k: RatLike) -> "Poly":
        k = _rat(k)
        if k == 0:
            raise ValueError("scaling by zero")
        return Poly(tuple(k * c for c in self.coeffs))

    def monic(self) -> "Poly":
        return self.scale(1 / self.lc)

    def is_monic(self) -> bool:
        return self.lc == 1

    def integer_coeffs(self) -> list[int]:
        """Primitive integer multiple with the same signs (positive scaling)."""
        den = lcm(*(c.denominator for c in self.coeffs))
        return kernels.primitive([int(c * den) for c in self.coeffs])

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)!r})"


def linear(root: RatLike) -> Poly:
    """The monic polynomial x - root."""
    return Poly((Fraction(1), -_rat(root)))


def multiply(P: Poly, Q: Poly) -> Poly:
    """Exact product; the integer convolution runs in the kernel backend."""
    dp = lcm(*(c.denominator for c in P.coeffs))
    dq = lcm(*(c.denominator for c in Q.coeffs))
    a = [int(c * dp) for c in P.coeffs]
    b = [int(c * dq) for c in Q.coeffs]
    prod = kernels.poly_mul(a, b)
    den = dp * dq
    return Poly(tuple(Fraction(c, den) for c in prod))


def negate_arg(Q: Poly) -> Poly:
    """(-1)**d * Q(-x); the leading coefficient keeps its sign."""
    return Poly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(Q.coeffs)))


def revert(Q: Poly) -> Poly:
    """x**d * Q(1/x): the coefficient sequence reversed."""
    if Q.constant == 0:
        raise ValueError("cannot revert a polynomial with zero constant term")
    return Poly(tuple(reversed(Q.coeffs)))


def normalize_positive(Q: Poly) -> Poly:
    """Multiply by -1 if needed so the leading coefficient is positive."""
    return -Q if Q.lc < 0 else Q


def sign_pattern(Q: Poly, allow_zero: bool = False) -> SignPattern:
    if Q.lc < 0:
        raise ValueError("negative leading coefficient; normalize first")
    signs = tuple(Sign.of(c) for c in Q.coeffs)
    if not allow_zero and Sign.ZERO in signs:
        raise ValueError(f"zero coefficient in {render(Q)}; a strict sign pattern needs all coefficients nonzero")
    return SignPattern(signs, allows_zero=allow_zero)


def descartes_counts(sp: SignPattern) -> tuple[int, int]:
    """(sign changes, sign preservations) after erasing zeros."""
    nz = [s for s in sp.signs if s is not Sign.ZERO]
    changes = sum(1 for a, b in zip(nz, nz[1:]) if a != b)
    return changes, len(nz) - 1 - changes


def run_lengths(sp: SignPattern) -> list[int]:
    if sp.has_zero:
        raise ValueError("run lengths are defined for strict sign patterns only")
    runs = [1]
    for a, b in zip(sp.signs, sp.signs[1:]):
        if a == b:
            runs[-1] += 1
        else:
            runs.append(1)
    return runs


def derivative(Q: Poly) -> Poly:
    d = Q.degree
    if d == 0:
        raise ValueError("derivative of a constant is zero")
    return Poly(tuple(c * (d - i) for i, c in enumerate(Q.coeffs[:-1])))


def poly_divmod(A: Poly, B: Poly) -> tuple[Poly | None, Poly | None]:
    """Euclidean division; a zero quotient or remainder is returned as None."""
    rem = list(A.coeffs)
    db = B.degree
    quot = []
    while len(rem) - 1 >= db:
        q = rem[0] / B.lc
        quot.append(q)
        for j in range(db + 1):
            rem[j] -= q * B.coeffs[j]
        rem.pop(0)
    while rem and rem[0] == 0:
        rem.pop(0)
    return (Poly.from_coeffs(quot) if any(quot) else None,
            Poly(tuple(rem)) if rem else None)


def exact_div(A: Poly, B: Poly) -> Poly:
    q, r = poly_divmod(A, B)
    if r is not None or q is None:
        raise ArithmeticError(f"{render(B)} does not divide {render(A)}")
    return q


def poly_gcd(A: Poly, B: Poly) -> Poly:
    """Monic gcd, computed by a primitive pseudo-remainder sequence."""
    a, b = A.integer_coeffs(), B.integer_coeffs()
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, kernels.primitive(kernels.pseudo_rem(a, b)) if len(b) > 1 else []
    return Poly(tuple(Fraction(c) for c in a)).monic()


# -- text and JSON forms -----------------------------------------------------

class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_NUMBER = re.compile(r"\d+(?:\.\d+|/\d+)?")


def _parse_number(text: str, pos: int) -> tuple[Fraction, int]:
    m = _NUMBER.match(text, pos)
    if not m:
        raise PolySyntaxError("expected a number", pos)
    lit = m.group(0)
    if "/" in lit:
        num, den = lit.split("/")
        if int(den) == 0:
            raise PolySyntaxError("zero denominator", pos)
    return Fraction(lit), m.end()


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_list(text: str) -> Poly:
    pos = _skip_ws(text, 1)
    coeffs = []
    while True:
        sign = 1
        if pos < len(text) and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = _skip_ws(text, pos + 1)
        value, pos = _parse_number(text, pos)
        coeffs.append(sign * value)
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            raise PolySyntaxError("unterminated coefficient list", pos)
        if text[pos] == "]":
            pos = _skip_ws(text, pos + 1)
            if pos != len(text):
                raise PolySyntaxError("trailing characters", pos)
            break
        if text[pos] != ",":
            raise PolySyntaxError(f"unexpected {text[pos]!r}", pos)
        pos = _skip_ws(text, pos + 1)
    if coeffs[0] == 0:
        raise PolySyntaxError("zero leading coefficient", 1)
    return Poly(tuple(coeffs))


def _parse_expression(text: str) -> Poly:
    terms: dict[int, Fraction] = {}
    pos = _skip_ws(text, 0)
    first = True
    while pos < len(text):
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = _skip_ws(text, pos + 1)
        elif not first:
            raise PolySyntaxError(f"expected '+' or '-', found {text[pos]!r}", pos)
        start = pos
        coeff = Fraction(1)
        has_coeff = False
        if pos < len(text) and text[pos].isdigit():
            coeff, pos = _parse_number(text, pos)
            has_coeff = True
            pos = _skip_ws(text, pos)
        power = 0
        if pos < len(text) and text[pos] == "x":
            power = 1
            pos = _skip_ws(text, pos + 1)
            if pos < len(text) and text[pos] == "^":
                pos = _skip_ws(text, pos + 1)
                m = re.compile(r"\d+").match(text, pos)
                if not m:
                    raise PolySyntaxError("expected an exponent", pos)
                power = int(m.group(0))
                pos = _skip_ws(text, m.end())
        elif not has_coeff:
            if pos >= len(text):
                raise PolySyntaxError("unexpected end of input", pos)
            raise PolySyntaxError(f"unknown symbol {text[pos]!r}", pos)
        if pos == start:
            raise PolySyntaxError("empty term", pos)
        terms[power] = terms.get(power, Fraction(0)) + sign * coeff
        first = False
    if not terms:
        raise PolySyntaxError("empty input", 0)
    deg = max(terms)
    coeffs = [terms.get(k, Fraction(0)) for k in range(deg, -1, -1)]
    if coeffs[0] == 0:
        raise PolySyntaxError("zero leading coefficient", 0)
    return Poly(tuple(coeffs))


def parse_poly(text: str) -> Poly:
    """Parse a coefficient list "[1, 9/10, -5.2]" or an expression "x^2-0.5x+1".

    Decimal literals are converted exactly.
    """
    stripped = text.strip()
    if not stripped:
        raise PolySyntaxError("empty input", 0)
    if stripped.startswith("["):
        return _parse_list(stripped)
    return _parse_expression(text)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(Q: Poly) -> str:
    """Canonical expression text; ``parse_poly(render(Q)) == Q``."""
    parts = []
    d = Q.degree
    for i, c in enumerate(Q.coeffs):
        if c == 0:
            continue
        power = d - i
        mag = abs(c)
        if power == 0:
            body = _fmt(mag)
        else:
            mono = "x" if power == 1 else f"x^{power}"
            body = mono if mag == 1 else _fmt(mag) + mono
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts)


def poly_to_json(Q: Poly) -> dict:
    return {"degree": Q.degree, "coeffs": [_fmt(c) for c in Q.coeffs]}


def poly_from_json(obj: Union[dict, str]) -> Poly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    P = Poly(tuple(Fraction(c) for c in obj["coeffs"]))
    if P.degree != obj["degree"]:
        raise ValueError("degree does not match the coefficient list")
    return P
