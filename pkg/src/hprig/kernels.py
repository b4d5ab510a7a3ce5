"""Backend selection for the integer polynomial kernels.

The compiled ``_speedups`` extension is used when it was built; otherwise
the pure-Python module is loaded. Setting ``HPRIG_PURE_PYTHON=1`` forces
the fallback.
"""
import os

if os.environ.get("HPRIG_PURE_PYTHON", "") not in ("", "0"):
    from hprig import _purekernels as _impl
    BACKEND = "python"
else:
    try:
        from hprig import _speedups as _impl
        BACKEND = "cython"
    except ImportError:
        from hprig import _purekernels as _impl
        BACKEND = "python"

poly_mul = _impl.poly_mul
sign_at = _impl.sign_at
variations_at = _impl.variations_at
primitive = _impl.primitive
pseudo_rem = _impl.pseudo_rem
sturm_chain = _impl.sturm_chain

__all__ = [
    "BACKEND",
    "poly_mul",
    "sign_at",
    "variations_at",
    "primitive",
    "pseudo_rem",
    "sturm_chain",
]
