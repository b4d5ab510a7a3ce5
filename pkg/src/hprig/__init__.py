"""Sign patterns and moduli orders of hyperbolic polynomials, computed exactly."""
from hprig.kernels import BACKEND
from hprig.polycore import (
    Poly,
    Sign,
    SignPattern,
    descartes_counts,
    multiply,
    negate_arg,
    parse_poly,
    parse_sp,
    render,
    revert,
    run_lengths,
    sign_pattern,
)
from hprig.isolator import (
    IsoBox,
    ModuliOrder,
    ModuliOrderAE,
    equal_moduli_pairs,
    is_hyperbolic,
    isolate_roots,
    moduli_order,
    sturm_count,
)
from hprig.realizer import (
    canonical_mo,
    even_hp,
    extend_mo,
    from_roots,
    realize_mo,
    realize_sp,
    sample_hp_with_mo,
    witness_pair,
)
from hprig.rigidity import classify, expected_sp

__version__ = "0.1.0"
