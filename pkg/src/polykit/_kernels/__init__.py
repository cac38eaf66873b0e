"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback is imported. Setting ``POLYKIT_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels as python_backend

try:
    if os.environ.get("POLYKIT_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python kernels requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend

BACKEND = _impl.BACKEND
products = _impl.products
node_products = _impl.node_products
horner = _impl.horner
fft_inplace = _impl.fft_inplace
recursion_r = _impl.recursion_r
leja_permutation = _impl.leja_permutation
reduce_columns = _impl.reduce_columns
cauchy_sum = _impl.cauchy_sum

__all__ = [
    "BACKEND",
    "products",
    "node_products",
    "horner",
    "fft_inplace",
    "recursion_r",
    "leja_permutation",
    "reduce_columns",
    "cauchy_sum",
    "python_backend",
    "compiled_backend",
]
