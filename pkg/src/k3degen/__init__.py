"""Exact finite-field and lattice toolkit for the log Hodge-de Rham degeneracy criterion."""

__version__ = "0.1.0"

from . import gf, linalg, lattice, charsub, hodge, degeneracy  # noqa: E402

from ._backend import name as backend_name  # noqa: E402

__all__ = ["gf", "linalg", "lattice", "charsub", "hodge", "degeneracy", "backend_name", "__version__"]
