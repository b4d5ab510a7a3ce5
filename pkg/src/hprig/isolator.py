"""Exact real-root isolation and moduli orders of hyperbolic polynomials.

Root counting uses Sturm chains of the squarefree part evaluated at
rational points through the integer kernels. Equal moduli of opposite-sign
roots are detected algebraically with ``gcd(Q(x), Q(-x))``; interval
refinement is only ever used to separate moduli that are strictly distinct,
so it always terminates.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from hprig import kernels
from hprig.polycore import (
    Poly,
    Sign,
    derivative,
    exact_div,
    negate_arg,
    poly_gcd,
    revert,
)

__all__ = [
    "NotHyperbolicError",
    "RootAtZeroError",
    "IsoBox",
    "ModuliOrder",
    "ModuliOrderAE",
    "ModulusGroup",
    "parse_mo",
    "cauchy_bound",
    "squarefree_part",
    "squarefree_multiplicities",
    "sturm_count",
    "is_hyperbolic",
    "isolate_roots",
    "refine_box",
    "equal_moduli_pairs",
    "moduli_layout",
    "moduli_order",
]


class NotHyperbolicError(ValueError):
    """The polynomial has non-real roots."""


class RootAtZeroError(ValueError):
    """The polynomial vanishes at zero."""


@dataclass(frozen=True)
class IsoBox:
    """Interval (lo, hi] holding exactly one distinct real root."""

    lo: Fraction
    hi: Fraction
    multiplicity: int
    root_sign: Sign

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("IsoBox needs lo < hi")
        if self.lo < 0 < self.hi or self.hi == 0:
            raise ValueError("IsoBox must not contain 0")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def letter(self) -> str:
        return "P" if self.root_sign is Sign.PLUS else "N"

    def modulus_bounds(self) -> tuple[Fraction, Fraction]:
        if self.root_sign is Sign.PLUS:
            return self.lo, self.hi
        return -self.hi, -self.lo


_MO_STRICT = re.compile(r"[PN](<[PN])*")
_MO_AE = re.compile(r"[PN]([<=][PN])*")


@dataclass(frozen=True)
class ModuliOrder:
    """Letters P/N listed by strictly increasing root modulus."""

    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"P", "N"}:
            raise ValueError(f"invalid moduli order letters {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> "ModuliOrder":
        if not _MO_STRICT.fullmatch(text):
            raise ValueError(f"not a strict moduli order: {text!r}")
        return cls(text.replace("<", ""))

    def __str__(self) -> str:
        return "<".join(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def counts(self) -> tuple[int, int]:
        """(number of P, number of N)."""
        return self.letters.count("P"), self.letters.count("N")

    def is_alternating(self) -> bool:
        return all(a != b for a, b in zip(self.letters, self.letters[1:]))

    def is_single_letter(self) -> bool:
        return len(set(self.letters)) == 1

    def flipped(self) -> "ModuliOrder":
        return ModuliOrder(self.letters.translate(str.maketrans("PN", "NP")))

    def as_ae(self) -> "ModuliOrderAE":
        return ModuliOrderAE(self.letters, "<" * (len(self.letters) - 1))


@dataclass(frozen=True)
class ModuliOrderAE:
    """Moduli order admitting equalities.

    Inside an '='-joined group the letters are sorted N before P; repeated
    letters of one sign stand for a multiple root.
    """

    letters: str
    separators: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"P", "N"}:
            raise ValueError(f"invalid moduli order letters {self.letters!r}")
        if len(self.separators) != len(self.letters) - 1 or set(self.separators) - {"<", "="}:
            raise ValueError("separators must be '<' or '=' between letters")
        for group in self.groups():
            if group != "".join(sorted(group, key="NP".index)):
                raise ValueError(f"equality group {group!r} must list N before P")

    @classmethod
    def from_groups(cls, groups) -> "ModuliOrderAE":
        groups = ["".join(sorted(g, key="NP".index)) for g in groups]
        letters = "".join(groups)
        seps = "<".join("=" * (len(g) - 1) for g in groups)
        return cls(letters, seps)

    @classmethod
    def parse(cls, text: str) -> "ModuliOrderAE":
        if not _MO_AE.fullmatch(text):
            raise ValueError(f"not a moduli order: {text!r}")
        return cls(text[0::2], text[1::2])

    def __str__(self) -> str:
        out = [self.letters[0]]
        for sep, letter in zip(self.separators, self.letters[1:]):
            out.append(sep + letter)
        return "".join(out)

    def __len__(self) -> int:
        return len(self.letters)

    def groups(self) -> list[str]:
        groups = [self.letters[0]]
        for sep, letter in zip(self.separators, self.letters[1:]):
            if sep == "=":
                groups[-1] += letter
            else:
                groups.append(letter)
        return groups

    @property
    def counts(self) -> tuple[int, int]:
        return self.letters.count("P"), self.letters.count("N")

    def strict(self) -> Optional[ModuliOrder]:
        """The strict moduli order, or None when an equality occurs."""
        if "=" in self.separators:
            return None
        return ModuliOrder(self.letters)

    def flipped(self) -> "ModuliOrderAE":
        swap = str.maketrans("PN", "NP")
        return ModuliOrderAE.from_groups(g.translate(swap) for g in self.groups())

    def reversed(self) -> "ModuliOrderAE":
        return ModuliOrderAE.from_groups(reversed(self.groups()))

    def alternating_readings(self) -> list[ModuliOrder]:
        """Alternating letter sequences compatible with the weak order.

        Every arrangement of the letters inside each equality group is
        tried; the result has at most two entries.
        """
        partial = [""]
        for group in self.groups():
            n_p, n_n = group.count("P"), group.count("N")
            if abs(n_p - n_n) > 1:
                return []
            if n_p > n_n:
                options = ["PN" * n_n + "P"]
            elif n_n > n_p:
                options = ["NP" * n_p + "N"]
            else:
                options = ["PN" * n_p, "NP" * n_p]
            partial = [s + o for s in partial for o in options if not s or s[-1] != o[0]]
            if not partial:
                return []
        return [ModuliOrder(s) for s in partial]


def parse_mo(text: str) -> ModuliOrderAE:
    return ModuliOrderAE.parse(text)


# -- squarefree machinery ----------------------------------------------------

def cauchy_bound(Q: Poly) -> Fraction:
    """1 + max |a_j / a_d|; every root modulus is strictly below it."""
    if Q.degree == 0:
        return Fraction(1)
    return 1 + max(abs(c) for c in Q.coeffs[1:]) / abs(Q.lc)


def squarefree_part(Q: Poly) -> Poly:
    if Q.degree == 0:
        return Poly((Fraction(1),))
    return exact_div(Q, poly_gcd(Q, derivative(Q))).monic()


def squarefree_multiplicities(Q: Poly) -> list[tuple[Poly, int]]:
    """Yun's squarefree decomposition; factors monic, sorted by multiplicity."""
    if Q.degree < 1:
        raise ValueError("degree must be at least 1")
    dQ = derivative(Q)
    a = poly_gcd(Q, dQ)
    b = exact_div(Q, a)
    c = exact_div(dQ, a)
    out = []
    i = 1
    while b.degree > 0:
        d = _sub(c, derivative(b))
        if d is None:
            out.append((b.monic(), i))
            break
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g.monic(), i))
        b = exact_div(b, g)
        c = exact_div(d, g)
        i += 1
    return out


def _sub(A: Poly, B: Poly) -> Optional[Poly]:
    n = max(A.degree, B.degree)
    cs = [A.coeff(k) - B.coeff(k) for k in range(n, -1, -1)]
    if not any(cs):
        return None
    return Poly.from_coeffs(cs)


class _Chain:
    """Sturm chain of a squarefree integer polynomial, evaluated exactly."""

    def __init__(self, P: Poly):
        self.ints = P.integer_coeffs()
        self.chain = kernels.sturm_chain(self.ints)

    def sign(self, x: Fraction) -> int:
        return kernels.sign_at(self.ints, x.numerator, x.denominator)

    def var(self, x: Fraction) -> int:
        return kernels.variations_at(self.chain, x.numerator, x.denominator)

    def count(self, a: Fraction, b: Fraction) -> int:
        return self.var(a) - self.var(b)

    def real_root_count(self) -> int:
        signs_pos = [1 if f[0] > 0 else -1 for f in self.chain]
        signs_neg = [s if (len(f) - 1) % 2 == 0 else -s for s, f in zip(signs_pos, self.chain)]
        return _variations(signs_neg) - _variations(signs_pos)


def _variations(signs) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sturm_count(Q: Poly, a, b) -> int:
    """Distinct real roots of Q in (a, b]; neither endpoint may be a root."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if Q(a) == 0 or Q(b) == 0:
        raise ValueError("interval endpoint is a root; perturb the endpoint")
    if Q.degree == 0:
        return 0
    return _Chain(squarefree_part(Q)).count(a, b)


def is_hyperbolic(Q: Poly) -> bool:
    if Q.degree < 1:
        raise ValueError("degree must be at least 1")
    S = squarefree_part(Q)
    return _Chain(S).real_root_count() == S.degree


# -- isolation ---------------------------------------------------------------

def _log2_floor(x: Fraction) -> int:
    return x.numerator.bit_length() - x.denominator.bit_length()


def _split_points(lo: Fraction, hi: Fraction) -> Iterator[Fraction]:
    """Candidate split points inside (lo, hi), best first.

    Intervals spanning several binary orders of magnitude are split near
    their geometric mean so tiny and huge roots are reached quickly.
    """
    if lo > 0 and hi > 4 * lo:
        k = (_log2_floor(lo) + _log2_floor(hi)) // 2
        mid = Fraction(2) ** k
        if lo < mid < hi:
            yield mid
    elif hi < 0 and lo < 4 * hi:
        k = (_log2_floor(-lo) + _log2_floor(-hi)) // 2
        mid = -(Fraction(2) ** k)
        if lo < mid < hi:
            yield mid
    yield (lo + hi) / 2
    n = 3
    while True:
        for j in range(1, n):
            yield lo + (hi - lo) * j / n
        n += 2


def _split(chain: _Chain, lo: Fraction, hi: Fraction) -> Fraction:
    for m in _split_points(lo, hi):
        if chain.sign(m) != 0:
            return m
    raise AssertionError("unreachable")


class _Context:
    """Everything isolation needs for one polynomial, computed once."""

    def __init__(self, Q: Poly):
        if Q.degree < 1:
            raise ValueError("degree must be at least 1")
        if Q.constant == 0:
            raise RootAtZeroError(f"{Q} has a root at 0")
        self.Q = Q
        self.S = squarefree_part(Q)
        self.chain = _Chain(self.S)
        if self.chain.real_root_count() != self.S.degree:
            raise NotHyperbolicError(f"{Q} has non-real roots")
        if self.S.degree == Q.degree:
            self.factors = [(self.chain, 1)]
        else:
            self.factors = [(_Chain(f), m) for f, m in squarefree_multiplicities(Q)]

    def multiplicity(self, lo: Fraction, hi: Fraction) -> int:
        if len(self.factors) == 1:
            return self.factors[0][1]
        for ch, m in self.factors:
            if ch.count(lo, hi) == 1:
                return m
        raise AssertionError("root not found in any squarefree factor")

    def bisect(self, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        out = []
        stack = [(lo, self.chain.var(lo), hi, self.chain.var(hi))]
        while stack:
            a, va, b, vb = stack.pop()
            n = va - vb
            if n == 0:
                continue
            if n == 1:
                out.append((a, b))
                continue
            m = _split(self.chain, a, b)
            vm = self.chain.var(m)
            stack.append((m, vm, b, vb))
            stack.append((a, va, m, vm))
        return out

    def narrow(self, box: IsoBox) -> IsoBox:
        """One bisection step on an isolating box."""
        m = _split(self.chain, box.lo, box.hi)
        if self.chain.count(box.lo, m) == 1:
            return IsoBox(box.lo, m, box.multiplicity, box.root_sign)
        return IsoBox(m, box.hi, box.multiplicity, box.root_sign)

    def boxes(self) -> list[IsoBox]:
        big = cauchy_bound(self.Q)
        small = 1 / cauchy_bound(revert(self.Q))
        out = []
        for a, b in self.bisect(-big, -small) + self.bisect(small, big):
            sign = Sign.PLUS if a > 0 else Sign.MINUS
            out.append(IsoBox(a, b, self.multiplicity(a, b), sign))
        out.sort(key=lambda bx: bx.lo)
        if sum(bx.multiplicity for bx in out) != self.Q.degree:
            raise AssertionError("root count with multiplicity does not match the degree")
        return out


def isolate_roots(Q: Poly) -> list[IsoBox]:
    """One isolating box per distinct root, sorted left to right."""
    return _Context(Q).boxes()


def refine_box(Q: Poly, box: IsoBox, width_bound) -> IsoBox:
    width_bound = Fraction(width_bound)
    if width_bound <= 0:
        raise ValueError("width bound must be positive")
    if box.width <= width_bound:
        return box
    chain = _Chain(squarefree_part(Q))
    while box.width > width_bound:
        m = _split(chain, box.lo, box.hi)
        if chain.count(box.lo, m) == 1:
            box = IsoBox(box.lo, m, box.multiplicity, box.root_sign)
        else:
            box = IsoBox(m, box.hi, box.multiplicity, box.root_sign)
    return box


def equal_moduli_pairs(Q: Poly) -> Poly:
    """gcd(Q(x), (-1)^d Q(-x)), monic; an even polynomial."""
    if Q.constant == 0:
        raise RootAtZeroError(f"{Q} has a root at 0")
    return poly_gcd(Q, negate_arg(Q))


# -- moduli order ------------------------------------------------------------

@dataclass(frozen=True)
class ModulusGroup:
    """Roots sharing one modulus, with certified bounds lo <= modulus <= hi."""

    letters: str
    lo: Fraction
    hi: Fraction


class _Group:
    def __init__(self, boxes: list[IsoBox]):
        self.boxes = boxes

    def bounds(self) -> tuple[Fraction, Fraction]:
        lows, highs = zip(*(b.modulus_bounds() for b in self.boxes))
        return max(lows), min(highs)

    def letters(self) -> str:
        return "".join(sorted((b.letter * b.multiplicity for b in self.boxes), key=lambda s: "NP".index(s[0])))


def moduli_layout(Q: Poly) -> list[ModulusGroup]:
    """Roots grouped by modulus, groups in strictly increasing modulus order."""
    ctx = _Context(Q)
    boxes = ctx.boxes()
    G = equal_moduli_pairs(Q)
    paired: set[int] = set()
    groups: list[_Group] = []
    if G.degree > 0:
        g_chain = _Chain(squarefree_part(G))
        hits = [i for i, b in enumerate(boxes) if g_chain.count(b.lo, b.hi) == 1]
        pos = sorted((i for i in hits if boxes[i].root_sign is Sign.PLUS), key=lambda i: boxes[i].lo)
        neg = sorted((i for i in hits if boxes[i].root_sign is Sign.MINUS), key=lambda i: -boxes[i].hi)
        if len(pos) != len(neg):
            raise AssertionError("unbalanced opposite-root pairs")
        for i, j in zip(pos, neg):
            groups.append(_Group([boxes[j], boxes[i]]))
            paired.update((i, j))
    groups.extend(_Group([b]) for i, b in enumerate(boxes) if i not in paired)

    while True:
        groups.sort(key=lambda g: g.bounds()[0])
        bounds = [g.bounds() for g in groups]
        overlapping = set()
        for k in range(len(groups) - 1):
            if bounds[k][1] >= bounds[k + 1][0]:
                overlapping.update((k, k + 1))
        if not overlapping:
            break
        for k in overlapping:
            groups[k].boxes = [ctx.narrow(b) for b in groups[k].boxes]
    return [ModulusGroup(g.letters(), *g.bounds()) for g in groups]


def moduli_order(Q: Poly) -> ModuliOrderAE:
    """Moduli order of a hyperbolic polynomial with nonzero constant term."""
    return ModuliOrderAE.from_groups(g.letters for g in moduli_layout(Q))
