import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hprig.isolator import ModuliOrder
from hprig.polycore import SignPattern, parse_poly, parse_sp, sign_pattern
from hprig.realizer import even_hp, from_roots
from hprig.rigidity import (
    PrecondError,
    Report,
    Status,
    Theorem2Case,
    canonical_sp_necessary,
    classify,
    classify_theorem2,
    derive_seed,
    expected_sp,
    realizable_sps,
    sigma,
    verify_canonical_necessary,
    verify_homotopy_step,
)

F = Fraction
P = parse_poly

# hand-transcribed: alternating order -> forced signs
EXPECTED = {
    "P": "+-", "N": "++",
    "PN": "++-", "NP": "+--",
    "PNP": "+--+", "NPN": "++--",
    "PNPN": "++--+", "NPNP": "+--++",
    "PNPNP": "+--++-", "NPNPN": "++--++",
    "PP": "+-+", "NNN": "++++",
}


@pytest.mark.parametrize("letters,sp", sorted(EXPECTED.items()))
def test_expected_sp_table(letters, sp):
    assert expected_sp(ModuliOrder(letters)) == parse_sp(sp)


def test_expected_sp_rejects_non_alternating():
    with pytest.raises(PrecondError):
        expected_sp(ModuliOrder("PPN"))


def test_sigma_prefixes():
    assert str(sigma(True, 6)) == "+ + − − + +"
    assert str(sigma(False, 6)) == "+ − − + + −"


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(1, 5) == derive_seed(1, 5)
    assert len({derive_seed(1, i) for i in range(1000)}) == 1000


class TestClassify:
    def test_rigid(self):
        v = classify(ModuliOrder("PNP"))
        assert v.status is Status.RIGID_BY_THEOREM and str(v.predicted_sp) == "+ − − +"

    def test_trivial(self):
        v = classify(ModuliOrder("NNN"))
        assert v.status is Status.TRIVIAL_SINGLE_SIGN and str(v.predicted_sp) == "+ + + +"

    def test_nonrigid(self):
        v = classify(ModuliOrder("PPN"))
        assert v.status is Status.NONRIGID_WITNESSED
        assert sign_pattern(v.witness.first) != sign_pattern(v.witness.second)

    def test_realizable_sps(self):
        assert realizable_sps(ModuliOrder("PN"), 20, 3) == {parse_sp("++-")}
        assert len(realizable_sps(ModuliOrder("PPN"), 5, 3)) >= 2
        with pytest.raises(ValueError):
            realizable_sps(ModuliOrder("P"), 0, 1)


class TestCanonicalNecessary:
    @pytest.mark.parametrize("sp,ok", [
        ("++-", True), ("++--", False), ("+-", True), ("+---+", True),
        ("+--+", False), ("++-+", True), ("+-++-", False),
    ])
    def test_examples(self, sp, ok):
        assert canonical_sp_necessary(parse_sp(sp)) is ok

    def test_harness(self):
        rep = verify_canonical_necessary(10)
        assert rep.ok and rep.cases_run > 50


class TestHomotopy:
    def test_constant_v(self):
        rep = verify_homotopy_step(P("1"), -1, 4)
        assert rep.ok and rep.cases_run == 3
        assert [e["t"] for e in rep.exceptions] == ["1"]

    def test_single_grid_point(self):
        rep = verify_homotopy_step(from_roots([(2, 1)]), F(-1, 2), 1)
        assert rep.ok

    def test_larger_v(self):
        V = from_roots([(-2, 1), (3, 1), (-5, 1)])
        rep = verify_homotopy_step(V, F(1), 16)
        assert rep.ok and not rep.exceptions

    @pytest.mark.parametrize("V,psi", [
        ("x-1", -3),  # psi is not the smallest modulus
        ("x-1", 1),   # psi equal to a root modulus
        ("x+1", F(-1, 2)),  # letter clash breaks alternation
        ("x^2+1", F(1, 2)),
        ("x-1", 0),
    ])
    def test_preconditions(self, V, psi):
        with pytest.raises(PrecondError):
            verify_homotopy_step(P(V), psi, 4)

    def test_bad_grid(self):
        with pytest.raises(PrecondError):
            verify_homotopy_step(P("1"), 1, 0)


class TestDichotomy:
    def test_even(self):
        assert classify_theorem2(even_hp([1, 2])) is Theorem2Case.EVEN_CASE
        assert classify_theorem2(even_hp([3, 3])) is Theorem2Case.EVEN_CASE

    def test_full(self):
        Q = from_roots([(1, 1), (-1, 1), (2, 1), (-3, 1)])
        assert classify_theorem2(Q) is Theorem2Case.FULL_SP_CASE

    @pytest.mark.parametrize("text", ["x^3-x", "x^2+1", "-x^2+1", "x^2-3x+2"])
    def test_preconditions(self, text):
        with pytest.raises(PrecondError):
            classify_theorem2(P(text))


class TestReport:
    def test_json_invariants(self):
        rep = Report()
        rep.record(True)
        rep.record(False, "case", "a", "b", seed=3)
        obj = json.loads(rep.dumps())
        assert {"cases_run", "cases_passed", "failures", "elapsed_s"} <= set(obj)
        assert obj["cases_run"] == 2 and obj["cases_passed"] == 1
        assert obj["failures"] == [{"input": "case", "expected": "a", "observed": "b", "repro": {"seed": 3}}]
        assert rep.dumps() == rep.dumps()

    def test_merge(self):
        a, b = Report(), Report()
        a.record(True)
        b.record(False, "x")
        a.merge(b)
        assert (a.cases_run, a.cases_passed, len(a.failures)) == (2, 1, 1)
        assert not a.ok


@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=12))
def test_sign_pattern_round_trip(tail):
    sp = SignPattern.from_ints([1] + tail)
    assert parse_sp(str(sp)) == sp
