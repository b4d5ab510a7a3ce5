"""Rigidity verdicts for moduli orders and theorem-checking harnesses.

Alternating orders are reported rigid from the characterization itself;
the sampling harnesses below are consistency checks and never the basis
of a verdict.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from hprig.isolator import (
    ModuliOrder,
    equal_moduli_pairs,
    is_hyperbolic,
    moduli_layout,
    moduli_order,
    sturm_count,
)
from hprig.polycore import (
    Poly,
    Sign,
    SignPattern,
    multiply,
    negate_arg,
    render,
    run_lengths,
    sign_pattern,
)
from hprig.realizer import (
    WitnessPair,
    even_hp,
    from_roots,
    sample_hp_with_mo,
    sample_moduli,
    witness_pair,
)

__all__ = [
    "Status",
    "Theorem2Case",
    "Verdict",
    "Failure",
    "Report",
    "PrecondError",
    "TheoremViolation",
    "THEOREM1_TABLE",
    "derive_seed",
    "sigma",
    "alternating_mos",
    "expected_sp",
    "classify",
    "realizable_sps",
    "canonical_sp_necessary",
    "verify_theorem1",
    "verify_homotopy_step",
    "verify_homotopy_batch",
    "classify_theorem2",
    "verify_theorem2",
    "verify_witnesses",
    "verify_canonical_necessary",
]


class Status(str, Enum):
    RIGID_BY_THEOREM = "RIGID_BY_THEOREM"
    NONRIGID_WITNESSED = "NONRIGID_WITNESSED"
    TRIVIAL_SINGLE_SIGN = "TRIVIAL_SINGLE_SIGN"


class Theorem2Case(str, Enum):
    EVEN_CASE = "EVEN_CASE"
    FULL_SP_CASE = "FULL_SP_CASE"


class PrecondError(ValueError):
    pass


class TheoremViolation(AssertionError):
    """Observed behaviour contradicts the rigidity characterization."""


@dataclass(frozen=True)
class Verdict:
    status: Status
    predicted_sp: Optional[SignPattern] = None
    witness: Optional[WitnessPair] = None


@dataclass
class Failure:
    description: str
    expected: str
    observed: str
    repro: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"input": self.description, "expected": self.expected,
                "observed": self.observed, "repro": self.repro}


@dataclass
class Report:
    name: str = ""
    cases_run: int = 0
    cases_passed: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed_s: float = 0.0
    exceptions: list[dict] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cases_passed == self.cases_run and not self.failures

    def record(self, passed: bool, description: str = "", expected: str = "",
               observed: str = "", **repro) -> None:
        self.cases_run += 1
        if passed:
            self.cases_passed += 1
        else:
            self.failures.append(Failure(description, expected, observed, repro))

    def merge(self, other: "Report") -> None:
        self.cases_run += other.cases_run
        self.cases_passed += other.cases_passed
        self.failures.extend(other.failures)
        self.exceptions.extend(other.exceptions)

    def to_json(self) -> dict:
        out = {
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "failures": [f.to_json() for f in self.failures],
            "elapsed_s": round(self.elapsed_s, 6),
        }
        if self.name:
            out["name"] = self.name
        if self.exceptions:
            out["exceptions"] = self.exceptions
        if self.rows:
            out["rows"] = self.rows
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)


def derive_seed(seed: int, index: int) -> int:
    """Per-case seed: seed XOR a hash of the case index."""
    h = hashlib.sha256(str(index).encode()).digest()
    return seed ^ int.from_bytes(h[:8], "big")


# -- predicted sign patterns -------------------------------------------------

def sigma(plus: bool, length: int) -> SignPattern:
    """Sigma_+ = (+,+,-,-,...) or Sigma_- = (+,-,-,+,...) truncated to `length`."""
    keep = (0, 1) if plus else (0, 3)
    return SignPattern.from_ints(1 if i % 4 in keep else -1 for i in range(length))


def alternating_mos(d: int) -> list[ModuliOrder]:
    """The two alternating orders of length d, starting with P then N."""
    return [ModuliOrder("".join("PN"[(i + s) % 2] for i in range(d))) for s in (0, 1)]


def expected_sp(mo: ModuliOrder) -> SignPattern:
    """Sign pattern forced by an alternating or single-letter order."""
    d = len(mo)
    if mo.is_single_letter():
        if mo.letters[0] == "N":
            return SignPattern.from_ints([1] * (d + 1))
        return SignPattern.from_ints((-1) ** i for i in range(d + 1))
    if not mo.is_alternating():
        raise PrecondError(f"{mo} is neither alternating nor single-letter")
    return sigma(mo.letters[-1] == "N", d + 1)


# (d mod 4) -> [(order name, pattern name, last three signs), ...]
THEOREM1_TABLE = {
    0: [("r_NP", "Σ−", "− + +"), ("r_PN", "Σ+", "− − +")],
    1: [("r_PP", "Σ−", "+ + −"), ("r_NN", "Σ+", "− + +")],
    2: [("r_NP", "Σ−", "+ − −"), ("r_PN", "Σ+", "+ + −")],
    3: [("r_PP", "Σ−", "− − +"), ("r_NN", "Σ+", "+ − −")],
}


def mo_name(mo: ModuliOrder) -> str:
    return f"r_{mo.letters[0]}{mo.letters[-1]}"


def classify(mo: ModuliOrder, validate: bool = True) -> Verdict:
    if mo.is_single_letter():
        return Verdict(Status.TRIVIAL_SINGLE_SIGN, predicted_sp=expected_sp(mo))
    if mo.is_alternating():
        return Verdict(Status.RIGID_BY_THEOREM, predicted_sp=expected_sp(mo))
    w = witness_pair(mo)
    if validate:
        a, b = sign_pattern(w.first), sign_pattern(w.second)
        for Q in (w.first, w.second):
            if moduli_order(Q).strict() != mo:
                raise TheoremViolation(f"witness {render(Q)} does not realize {mo}")
        if a == b:
            raise TheoremViolation(f"witness pair for {mo} shares the sign pattern {a}")
    return Verdict(Status.NONRIGID_WITNESSED, witness=w)


def realizable_sps(mo: ModuliOrder, samples: int, seed: int) -> set[SignPattern]:
    """Sign patterns observed on sampled realizations of `mo`."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    found = set()
    for i in range(samples):
        Q = sample_hp_with_mo(mo, derive_seed(seed, i))
        found.add(sign_pattern(Q, allow_zero=True))
    if len(mo) >= 3 and not mo.is_alternating() and not mo.is_single_letter():
        w = witness_pair(mo)
        found.update({sign_pattern(w.first), sign_pattern(w.second)})
    return found


def canonical_sp_necessary(sp: SignPattern) -> bool:
    """Necessary condition for a canonical sign pattern (not sufficient)."""
    runs = run_lengths(sp)
    if any(a > 1 and b > 1 for a, b in zip(runs, runs[1:])):
        return False
    return all(p != 2 for p in runs[1:-1])


# -- alternating-order table ---------------------------------------------

def _last_three(sp: SignPattern) -> str:
    return " ".join(str(s) for s in sp.signs[-3:])


def verify_theorem1(max_degree: int, samples: int, seed: int) -> Report:
    """Sample every alternating order up to max_degree and compare sign patterns."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    start = time.perf_counter()
    rep = Report(name="theorem1")
    case = 0
    observed_rows: dict[tuple[int, str], set[tuple[str, str, str]]] = {}
    for d in range(1, max_degree + 1):
        for mo in alternating_mos(d):
            want = expected_sp(mo)
            name = mo_name(mo)
            sig = "Σ+" if mo.letters[-1] == "N" else "Σ−"
            row = next(r for r in THEOREM1_TABLE[d % 4] if r[0] == name)
            for _ in range(samples):
                s = derive_seed(seed, case)
                case += 1
                Q = sample_hp_with_mo(mo, s)
                got = sign_pattern(Q, allow_zero=True)
                tail_ok = row[2].endswith(_last_three(got))
                rep.record(got == want and row[1] == sig and tail_ok,
                           f"d={d} mo={mo}", str(want), str(got),
                           seed=s, poly=render(Q))
                if d >= 2:
                    observed_rows.setdefault((d % 4, name), set()).add((sig, _last_three(got)))
    for r in sorted(observed_rows):
        for sig, tail in sorted(observed_rows[r]):
            rep.rows.append({"d_mod_4": r[0], "mo": r[1], "sp": sig, "last_three": tail})
    rep.elapsed_s = time.perf_counter() - start
    return rep


# -- homotopy step -----------------------------------------------------------

def verify_homotopy_step(V: Poly, psi, grid: int) -> Report:
    """Check sign constancy of Z_t = (x + t psi)(x - psi) V on t in {1/grid, ..., 1}.

    psi must be the root of smallest modulus among psi and the roots of V,
    and prepending the letters of -t*psi and psi to V's order must keep it
    alternating.
    """
    psi = Fraction(psi)
    if psi == 0:
        raise PrecondError("psi must be nonzero")
    if grid < 1:
        raise PrecondError("grid must be at least 1")
    psi_letter = "P" if psi > 0 else "N"
    if V.degree > 0:
        if V.lc < 0 or not is_hyperbolic(V) or V.constant == 0:
            raise PrecondError("V must be hyperbolic with positive leading and nonzero constant coefficient")
        layout = moduli_layout(V)
        if any(len(g.letters) != 1 for g in layout):
            raise PrecondError("V must have a strict moduli order")
        r = ModuliOrder("".join(g.letters for g in layout))
        if not r.is_alternating():
            raise PrecondError(f"V's moduli order {r} is not alternating")
        a = abs(psi)
        if V(a) == 0 or V(-a) == 0 or sturm_count(V, -a, a) != 0:
            raise PrecondError("|psi| must be smaller than every root modulus of V")
        if r.letters[0] == psi_letter:
            raise PrecondError("prepending psi's letter breaks alternation")
        rest = r.letters
    else:
        rest = ""
    full = ModuliOrder(("N" if psi_letter == "P" else "P") + psi_letter + rest)
    want = expected_sp(full)
    rep = Report(name="homotopy")
    start = time.perf_counter()
    base = multiply(Poly((Fraction(1), -psi)), V)
    for k in range(1, grid + 1):
        t = Fraction(k, grid)
        Z = multiply(Poly((Fraction(1), t * psi)), base)
        got = sign_pattern(Z, allow_zero=True)
        if got.has_zero and k == grid:
            rep.exceptions.append({"t": str(t), "sp": str(got), "poly": render(Z)})
            continue
        rep.record(got == want, f"V={render(V)} psi={psi} t={t}", str(want), str(got),
                   poly=render(Z))
    # coefficient identity at t = 1: sgn(c_j - psi^2 c_{j+2}) = sgn(c_j)
    n = V.degree
    for j in range(0, n - 1):
        cj, cj2 = V.coeff(j), V.coeff(j + 2)
        lhs = Sign.of(cj - psi * psi * cj2)
        rep.record(lhs == Sign.of(cj), f"V={render(V)} psi={psi} j={j}",
                   str(Sign.of(cj)), str(lhs))
    rep.elapsed_s = time.perf_counter() - start
    return rep


def verify_homotopy_batch(instances: int, grid: int, seed: int, max_degree: int = 9) -> Report:
    """Random (V, psi) instances: V realizes an alternating order, psi below it."""
    rep = Report(name="homotopy")
    start = time.perf_counter()
    for i in range(instances):
        s = derive_seed(seed, i)
        rng = random.Random(s)
        k = rng.randint(0, max_degree)
        if k == 0:
            V = Poly((Fraction(1),))
            psi = Fraction(rng.randint(1, 20), rng.randint(1, 20)) * rng.choice((1, -1))
        else:
            mo = rng.choice(alternating_mos(k))
            moduli = sample_moduli(k, rng)
            V = from_roots([(m if ch == "P" else -m, 1) for m, ch in zip(moduli, mo.letters)])
            frac = Fraction(rng.randint(1, 99), 100)
            psi = moduli[0] * frac * (-1 if mo.letters[0] == "P" else 1)
        sub = verify_homotopy_step(V, psi, grid)
        for f in sub.failures:
            f.repro["seed"] = s
        rep.merge(sub)
    rep.elapsed_s = time.perf_counter() - start
    return rep


# -- pair-insertion dichotomy --------------------------------------------

def _zero_gap_pattern(d: int) -> SignPattern:
    vals = []
    for i in range(d + 1):
        vals.append(0 if i % 2 else (1 if i % 4 == 0 else -1))
    return SignPattern.from_ints(vals, allows_zero=True)


def classify_theorem2(Q: Poly) -> Theorem2Case:
    """Even-degree dichotomy for a weakly alternating moduli order."""
    if Q.degree % 2 or Q.degree < 2:
        raise PrecondError("classify_theorem2 needs even degree >= 2")
    if Q.lc < 0:
        raise PrecondError("leading coefficient must be positive")
    if Q.constant == 0 or not is_hyperbolic(Q):
        raise PrecondError("Q must be hyperbolic with nonzero constant term")
    readings = moduli_order(Q).alternating_readings()
    if not readings:
        raise PrecondError(f"moduli order {moduli_order(Q)} is not weakly alternating")
    if negate_arg(Q) == Q:
        got = sign_pattern(Q, allow_zero=True)
        want = _zero_gap_pattern(Q.degree)
        if got != want:
            raise TheoremViolation(f"even polynomial {render(Q)} has pattern {got}, expected {want}")
        return Theorem2Case.EVEN_CASE
    if equal_moduli_pairs(Q).degree == Q.degree:
        raise TheoremViolation(f"{render(Q)} pairs all roots but is not even")
    got = sign_pattern(Q, allow_zero=True)
    if got.has_zero:
        raise TheoremViolation(f"{render(Q)} has a vanishing coefficient: {got}")
    want = {expected_sp(mo) for mo in readings}
    if got not in want:
        raise TheoremViolation(f"{render(Q)} has pattern {got}, expected {' or '.join(map(str, want))}")
    return Theorem2Case.FULL_SP_CASE


def _pair_moduli(base_moduli: list[Fraction], count: int, rng: random.Random) -> list[Fraction]:
    """Moduli for inserted opposite-root pairs.

    Roughly one in four coincides with an existing modulus (same-sign
    multiplicity); the rest are fresh values.
    """
    out = []
    for _ in range(count):
        if base_moduli and rng.random() < 0.25:
            out.append(rng.choice(base_moduli))
        else:
            out.append(Fraction(rng.randint(1, 400), rng.randint(1, 20)))
    return out


def _dichotomy_case(d: int, even_only: bool, rng: random.Random):
    """Build one sample polynomial of degree d; returns (poly, description)."""
    if even_only:
        moduli = [Fraction(rng.randint(1, 30), rng.randint(1, 10)) for _ in range(d // 2)]
        if len(moduli) > 1 and rng.random() < 0.3:
            moduli[-1] = moduli[0]
        return even_hp(moduli), "even"
    k = rng.randrange(1 if d % 2 else 2, d + 1, 2)
    mo = rng.choice(alternating_mos(k))
    base = sample_moduli(k, rng)
    Q = from_roots([(m if ch == "P" else -m, 1) for m, ch in zip(base, mo.letters)])
    pairs = _pair_moduli(base, (d - k) // 2, rng)
    if pairs:
        Q = multiply(Q, even_hp(pairs))
    return Q, f"mixed k={k} mo={mo} pairs={[str(p) for p in pairs]}"


def verify_theorem2(max_degree: int, samples: int, seed: int) -> Report:
    """Odd d: products with pairs keep every coefficient and the table's SP.
    Even d: even products give (+,0,-,0,...), mixed ones the full pattern."""
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    start = time.perf_counter()
    rep = Report(name="theorem2")
    case = 0
    for d in range(2, max_degree + 1):
        kinds = [False] if d % 2 else ([True] if d == 2 else [True, False])
        for even_only in kinds:
            for _ in range(samples):
                s = derive_seed(seed, case)
                case += 1
                rng = random.Random(s)
                Q, desc = _dichotomy_case(d, even_only, rng)
                label = f"d={d} {desc}"
                try:
                    readings = moduli_order(Q).alternating_readings()
                    if d % 2:
                        got = sign_pattern(Q, allow_zero=True)
                        want = {expected_sp(mo) for mo in readings}
                        ok = bool(readings) and not got.has_zero and got in want
                        rep.record(ok, label, " or ".join(map(str, want)), str(got),
                                   seed=s, poly=render(Q))
                    else:
                        case_kind = classify_theorem2(Q)
                        expect = Theorem2Case.EVEN_CASE if even_only else Theorem2Case.FULL_SP_CASE
                        rep.record(case_kind is expect, label, expect.value, case_kind.value,
                                   seed=s, poly=render(Q))
                except (TheoremViolation, PrecondError) as exc:
                    rep.record(False, label, "theorem holds", str(exc), seed=s, poly=render(Q))
    rep.elapsed_s = time.perf_counter() - start
    return rep


# -- exhaustive harnesses ----------------------------------------------------

def verify_witnesses(min_length: int = 3, max_length: int = 8) -> Report:
    """Witness pairs for every non-alternating two-letter order in a length range."""
    start = time.perf_counter()
    rep = Report(name="witnesses")
    for d in range(min_length, max_length + 1):
        for letters in itertools.product("PN", repeat=d):
            mo = ModuliOrder("".join(letters))
            if mo.is_alternating() or mo.is_single_letter():
                continue
            try:
                w = witness_pair(mo)
                mo1 = moduli_order(w.first).strict()
                mo2 = moduli_order(w.second).strict()
                a, b = sign_pattern(w.first), sign_pattern(w.second)
                rep.record(mo1 == mo and mo2 == mo and a != b, str(mo),
                           f"MO {mo}, two sign patterns",
                           f"MO {mo1}/{mo2}, SPs {a} | {b}")
            except (AssertionError, RuntimeError, ValueError) as exc:
                rep.record(False, str(mo), "witness pair", repr(exc))
    rep.elapsed_s = time.perf_counter() - start
    return rep


def verify_canonical_necessary(max_length: int = 12) -> Report:
    """Sigma_+/- fail the necessary condition exactly from length 4 on, and
    the families Sigma_{1,p}, Sigma_{p,1}, Sigma_{1,p,1} (p >= 3), Sigma_{p,1,q}
    pass it."""
    start = time.perf_counter()
    rep = Report(name="canonical-necessary")
    for n in range(2, max_length + 1):
        for plus in (True, False):
            sp = sigma(plus, n)
            got = canonical_sp_necessary(sp)
            rep.record(got == (n <= 3), f"Σ{'+' if plus else '−'} length {n}",
                       str(n <= 3), str(got))

    def from_runs(runs):
        vals, s = [], 1
        for p in runs:
            vals += [s] * p
            s = -s
        return SignPattern.from_ints(vals)

    families = []
    for p in range(1, max_length):
        families += [[1, p], [p, 1]]
    for p in range(3, max_length - 1):
        families.append([1, p, 1])
    for p in range(1, max_length):
        for q in range(1, max_length - p):
            families.append([p, 1, q])
    for runs in families:
        if sum(runs) > max_length:
            continue
        got = canonical_sp_necessary(from_runs(runs))
        rep.record(got, f"Σ_{tuple(runs)}", "True", str(got))
    rep.elapsed_s = time.perf_counter() - start
    return rep
