"""Constructive realization of moduli orders and sign patterns.

New roots are attached by multiplying with ``x -/+ eps`` (tiny modulus,
left end of the order) or ``-(1 - eps x)`` / ``1 + eps x`` (huge modulus,
right end). ``eps`` is chosen from certified modulus bounds, rounded down to
a power of ten, and every product is validated by recomputing its moduli
order; on failure ``eps`` shrinks by a factor 100.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hprig.isolator import ModuliOrder, moduli_layout, moduli_order
from hprig.polycore import (
    Poly,
    Sign,
    SignPattern,
    multiply,
    negate_arg,
    normalize_positive,
    revert,
    sign_pattern,
)

__all__ = [
    "LEFT",
    "RIGHT",
    "ExtensionError",
    "WitnessFalsification",
    "WitnessPair",
    "from_roots",
    "multiplier",
    "extend_mo",
    "canonical_mo",
    "realize_sp",
    "realize_mo",
    "base_pair",
    "witness_pair",
    "sample_moduli",
    "sample_hp_with_mo",
    "even_hp",
]

LEFT = "LEFT"
RIGHT = "RIGHT"
SHRINK = 100
MAX_RETRIES = 64

ONE = Poly((Fraction(1),))


class ExtensionError(RuntimeError):
    """An eps-product could not be validated within the retry budget."""


class WitnessFalsification(AssertionError):
    """A witness pair stopped defining two different sign patterns."""


@dataclass(frozen=True)
class WitnessPair:
    first: Poly
    second: Poly
    mo: ModuliOrder


def from_roots(roots: Sequence[tuple[Fraction, int]]) -> Poly:
    """Monic expansion of prod (x - r)**m."""
    if not roots:
        raise ValueError("empty root list")
    out = ONE
    for r, m in roots:
        r = Fraction(r)
        if r == 0:
            raise ValueError("zero root")
        if m < 1:
            raise ValueError("multiplicity must be positive")
        for _ in range(m):
            out = multiply(out, Poly((Fraction(1), -r)))
    return out


def multiplier(side: str, letter: str, eps: Fraction) -> Poly:
    """The linear factor attaching one root of modulus eps or 1/eps."""
    if side == LEFT:
        return Poly((Fraction(1), -eps if letter == "P" else eps))
    if side == RIGHT:
        return Poly((eps, Fraction(-1) if letter == "P" else Fraction(1)))
    raise ValueError(f"unknown side {side!r}")


def _pow10_floor(x: Fraction) -> Fraction:
    eps = Fraction(1)
    while eps > x:
        eps /= 10
    return eps


def _initial_eps(layouts, side: str) -> Fraction:
    if side == LEFT:
        smallest = min([lay[0].lo for lay in layouts if lay] + [Fraction(1)])
        return _pow10_floor(min(Fraction(1), smallest) / 100)
    largest = max([lay[-1].hi for lay in layouts if lay] + [Fraction(1)])
    return _pow10_floor(1 / (100 * max(Fraction(1), largest)))


def _sp_extends(old: Poly, new: Poly, side: str) -> bool:
    """Whether new's sign pattern is old's with one sign added on `side`.

    On the right end the remaining signs are compared up to a global sign,
    i.e. after renormalizing them to start with +.
    """
    if 0 in old.coeffs:
        return True
    if 0 in new.coeffs:
        return False
    a = sign_pattern(old).signs
    b = sign_pattern(new).signs
    if side == LEFT:
        return b[:-1] == a
    tail = b[1:]
    if tail[0] is Sign.MINUS:
        tail = tuple(Sign(-s) for s in tail)
    return tail == a


def _extended(mo: str, side: str, letter: str) -> str:
    return letter + mo if side == LEFT else mo + letter


def _strict_layout(Q: Poly):
    if Q.degree == 0:
        return []
    groups = moduli_layout(Q)
    if any(len(g.letters) != 1 for g in groups):
        raise ValueError(f"{Q} has equal root moduli; a strict moduli order is required")
    return groups


def _extend_all(polys: Sequence[Poly], side: str, letter: str) -> list[Poly]:
    """Apply one shared validated eps-multiplier to every polynomial."""
    if letter not in ("P", "N"):
        raise ValueError(f"letter must be P or N, got {letter!r}")
    layouts = [_strict_layout(Q) for Q in polys]
    targets = ["<".join(_extended("".join(g.letters for g in lay), side, letter)) for lay in layouts]
    eps = _initial_eps(layouts, side)
    for _ in range(MAX_RETRIES):
        m = multiplier(side, letter, eps)
        out = [multiply(m, Q) for Q in polys]
        if all(
            str(moduli_order(R)) == t and _sp_extends(Q, R, side)
            for Q, R, t in zip(polys, out, targets)
        ):
            return out
        eps /= SHRINK
    raise ExtensionError(f"could not validate a {side}/{letter} extension after {MAX_RETRIES} retries")


def extend_mo(Q: Poly, side: str, letter: str) -> Poly:
    """Attach one root of the given sign at the small (LEFT) or large (RIGHT) end."""
    return _extend_all([Q], side, letter)[0]


def canonical_mo(sp: SignPattern) -> ModuliOrder:
    """Read the pattern from the back: equal neighbours give N, different give P."""
    if sp.has_zero:
        raise ValueError("canonical moduli order needs a strict sign pattern")
    if len(sp) < 2:
        raise ValueError("sign pattern must have length at least 2")
    s = sp.signs
    letters = ["N" if s[i - 1] == s[i] else "P" for i in range(len(s) - 1, 0, -1)]
    return ModuliOrder("".join(letters))


def realize_sp(sp: SignPattern) -> Poly:
    """A hyperbolic polynomial with the given signs and its canonical order."""
    if sp.has_zero:
        raise ValueError("realize_sp needs a strict sign pattern")
    Q = ONE
    s = sp.signs
    for i in range(1, len(s)):
        Q = extend_mo(Q, LEFT, "N" if s[i] == s[i - 1] else "P")
    return Q


def realize_mo(mo: ModuliOrder) -> Poly:
    letters = mo.letters
    Q = Poly((Fraction(1), Fraction(-1) if letters[0] == "P" else Fraction(1)))
    for letter in letters[1:]:
        Q = extend_mo(Q, RIGHT, letter)
    return Q


# -- non-rigidity witnesses --------------------------------------------------

_P1 = from_roots([(Fraction(1), 1), (Fraction(11, 10), 1), (Fraction(-3), 1)])
_P2 = from_roots([(Fraction(1), 1), (Fraction(3), 1), (Fraction(-31, 10), 1)])


def base_pair(pattern: str) -> tuple[Poly, Poly]:
    """The cubic pair realizing `pattern` (PPN, NNP, NPP or PNN) with two SPs."""
    if pattern == "PPN":
        return _P1, _P2
    if pattern == "NNP":
        return negate_arg(_P1), negate_arg(_P2)
    if pattern == "NPP":
        return normalize_positive(revert(_P1)), normalize_positive(revert(_P2))
    if pattern == "PNN":
        return (normalize_positive(revert(negate_arg(_P1))),
                normalize_positive(revert(negate_arg(_P2))))
    raise ValueError(f"no base pair for {pattern!r}")


_FORBIDDEN = ("PPN", "NNP", "NPP", "PNN")


def witness_pair(mo: ModuliOrder) -> WitnessPair:
    """Two polynomials with moduli order `mo` and different sign patterns."""
    letters = mo.letters
    if len(letters) < 3 or mo.is_alternating() or mo.is_single_letter():
        raise ValueError(f"{mo} is rigid or trivial; no witness pair exists")
    k = min(i for i in range(len(letters) - 2) if letters[i:i + 3] in _FORBIDDEN)
    pair = list(base_pair(letters[k:k + 3]))
    for letter in reversed(letters[:k]):
        pair = _extend_all(pair, LEFT, letter)
        _check_distinct(pair, mo)
    for letter in letters[k + 3:]:
        pair = _extend_all(pair, RIGHT, letter)
        _check_distinct(pair, mo)
    first, second = pair
    for Q in pair:
        if moduli_order(Q).strict() != mo:
            raise WitnessFalsification(f"{Q} does not realize {mo}")
    _check_distinct(pair, mo)
    return WitnessPair(first, second, mo)


def _check_distinct(pair, mo) -> None:
    a, b = (sign_pattern(Q) for Q in pair)
    if a == b:
        raise WitnessFalsification(
            f"witness extension for {mo} produced one sign pattern ({a}) from {pair[0]} and {pair[1]}"
        )


# -- sampling ----------------------------------------------------------------

def sample_moduli(d: int, rng: random.Random) -> list[Fraction]:
    """d strictly increasing positive rationals with bounded numerators."""
    m = Fraction(rng.randint(1, 20), rng.randint(1, 20))
    out = [m]
    for _ in range(d - 1):
        m += Fraction(rng.randint(1, 50), rng.randint(1, 20))
        out.append(m)
    return out


def sample_hp_with_mo(mo: ModuliOrder, seed: int) -> Poly:
    """Deterministic random hyperbolic polynomial realizing `mo`.

    Uses ``random.Random(seed)`` (Mersenne Twister); see ``sample_moduli``.
    """
    rng = random.Random(seed)
    moduli = sample_moduli(len(mo), rng)
    return from_roots([(m if ch == "P" else -m, 1) for m, ch in zip(moduli, mo.letters)])


def even_hp(moduli: Sequence[Fraction]) -> Poly:
    """prod (x**2 - a**2) over the given (not necessarily distinct) moduli."""
    if not moduli:
        raise ValueError("need at least one modulus")
    out = ONE
    for a in moduli:
        a = Fraction(a)
        if a == 0:
            raise ValueError("zero modulus")
        out = multiply(out, Poly((Fraction(1), Fraction(0), -a * a)))
    return out
