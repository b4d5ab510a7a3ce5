from fractions import Fraction

from hypothesis import strategies as st

from hprig.polycore import Poly
from hprig.realizer import from_roots

nonzero_rats = st.builds(
    Fraction,
    st.integers(1, 40).flatmap(lambda n: st.sampled_from([n, -n])),
    st.integers(1, 12),
)

rats = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))

polys = st.lists(rats, min_size=1, max_size=8).filter(lambda cs: cs[0] != 0).map(lambda cs: Poly(tuple(cs)))

root_lists = st.lists(st.tuples(nonzero_rats, st.integers(1, 3)), min_size=1, max_size=5)

hyperbolic = root_lists.map(from_roots)

mo_letters = st.text(alphabet="PN", min_size=1, max_size=7)


def _backends():
    from hprig import _purekernels

    try:
        from hprig import _speedups
    except ImportError:  # extension not built
        return [_purekernels]
    return [_purekernels, _speedups]


BACKENDS = _backends()


def oracle_moduli_order(roots) -> str:
    """Moduli order computed directly from known (root, multiplicity) pairs."""
    by_modulus: dict = {}
    for r, m in roots:
        by_modulus.setdefault(abs(r), []).extend(["N" if r < 0 else "P"] * m)
    groups = ["=".join(sorted(by_modulus[k], key="NP".index)) for k in sorted(by_modulus)]
    return "<".join(groups)
