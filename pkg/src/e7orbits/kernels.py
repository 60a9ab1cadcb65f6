"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``E7ORBITS_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("E7ORBITS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

sparse_bilinear = _impl.sparse_bilinear
curve_energy = _impl.curve_energy
curve_energy_many = _impl.curve_energy_many
line_search = _impl.line_search

__all__ = ["BACKEND", "sparse_bilinear", "curve_energy", "curve_energy_many",
           "line_search"]
