"""Selects the compiled enumeration kernels when available.

Set ``WPSCOUNT_PURE=1`` to force the pure-Python fallback.
"""
import os

from . import _pykernels as pure

compiled = None
if os.environ.get("WPSCOUNT_PURE") != "1":
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"


def _validate(weights, bounds, nonzero, lo, hi):
    if not (len(weights) == len(bounds) == len(nonzero)) or not weights:
        raise ValueError("weights/bounds/nonzero length mismatch or empty")
    if any(int(w) < 1 for w in weights) or any(int(n) < 0 for n in bounds):
        raise ValueError("weights must be positive and bounds nonnegative")
    if weights[0] % 2 and lo < 0:
        raise ValueError("the first coordinate has odd weight, so lo must be >= 0")
    if hi > bounds[0] or lo < -bounds[0]:
        raise ValueError("first-coordinate range exceeds its bound")


def count_box(weights, bounds, nonzero, lo, hi, backend=None):
    _validate(weights, bounds, nonzero, lo, hi)
    return _pick(backend).count_box(weights, bounds, nonzero, lo, hi)


def size_histogram(weights, bounds, nonzero, L, lo, hi, backend=None):
    _validate(weights, bounds, nonzero, lo, hi)
    return _pick(backend).size_histogram(weights, bounds, nonzero, L, lo, hi)


def _pick(backend):
    if backend is None:
        return _active
    if backend == "python":
        return pure
    if backend == "cython":
        if compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return compiled
    raise ValueError(f"unknown backend {backend!r}")
