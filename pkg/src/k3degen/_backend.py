"""Kernel selection: the compiled kernel when importable, else pure Python."""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

_KERNELS = {"python": _pykernels}
if _ckernels is not None:
    _KERNELS["cython"] = _ckernels

_active = _KERNELS.get("cython", _pykernels)


def available():
    return sorted(_KERNELS)


def name():
    return _active.NAME


def use(backend):
    """Switch the active kernel; returns the previous backend name."""
    global _active
    if backend not in _KERNELS:
        raise ValueError(f"unknown or unavailable backend {backend!r}; have {available()}")
    prev = _active.NAME
    _active = _KERNELS[backend]
    return prev


def rref(mat, p, modulus):
    return _active.rref(mat, p, modulus)


def reduce(vecs, basis, pivots, p, modulus):
    return _active.reduce(vecs, basis, pivots, p, modulus)
