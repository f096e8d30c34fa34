"""Subspaces of GF(p^n)^r in canonical reduced row-echelon form.

A :class:`Subspace` is identified with its RREF basis, so equality of
subspaces is equality of basis arrays. Bases are stored as read-only int64
arrays of shape (dim, ambient, n) holding one coefficient vector per entry.

The Frobenius twist phi acts entrywise relative to the standard basis,
which is taken to be GF(p)-rational. Quotients are never materialized:
:func:`reduce_modulo` returns the canonical representative of v + W
obtained by eliminating against W's RREF basis.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _backend
from .gf import FieldDescriptor, FieldElement, frobenius_array, make_field


def to_array(field: FieldDescriptor, vectors, ambient: int | None = None) -> np.ndarray:
    """Coerce ``vectors`` to an int64 array of shape (k, ambient, n).

    Accepts such an array directly, a (k, ambient) integer array (read as
    prime-field entries), or nested lists of FieldElement / int / coefficient
    sequences.
    """
    n, p = field.n, field.p
    if isinstance(vectors, np.ndarray):
        arr = vectors.astype(np.int64, copy=False)
        if arr.ndim == 2:
            out = np.zeros(arr.shape + (n,), dtype=np.int64)
            out[..., 0] = arr % p
            arr = out
        elif arr.ndim != 3 or arr.shape[2] != n:
            raise ValueError(f"expected shape (k, r, {n}), got {arr.shape}")
        else:
            arr = arr % p
    else:
        vectors = list(vectors)
        if not vectors:
            if ambient is None:
                raise ValueError("ambient dimension required for an empty vector list")
            return np.zeros((0, ambient, n), dtype=np.int64)
        rows = []
        for v in vectors:
            row = []
            for x in v:
                if isinstance(x, FieldElement):
                    if x.field != field:
                        raise ValueError(f"field mismatch: {x.field} vs {field}")
                    row.append(x.coeffs)
                else:
                    row.append(field.element(x).coeffs)
            rows.append(row)
        lengths = {len(r) for r in rows}
        if len(lengths) != 1:
            raise ValueError(f"vectors have differing lengths {sorted(lengths)}")
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), lengths.pop(), n)
    if ambient is not None and arr.shape[1] != ambient:
        raise ValueError(f"dimension mismatch: vectors of length {arr.shape[1]}, ambient {ambient}")
    return arr


class Subspace:
    __slots__ = ("field", "ambient", "basis_array", "pivots")

    def __init__(self, field: FieldDescriptor, ambient: int, basis_array: np.ndarray, pivots):
        # Callers must pass an RREF basis; use span() otherwise.
        basis_array = np.ascontiguousarray(basis_array, dtype=np.int64)
        basis_array.setflags(write=False)
        self.field = field
        self.ambient = ambient
        self.basis_array = basis_array
        self.pivots = tuple(int(c) for c in pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, np.zeros((0, ambient, field.n), dtype=np.int64), ())

    @classmethod
    def full(cls, field, ambient):
        basis = np.zeros((ambient, ambient, field.n), dtype=np.int64)
        basis[np.arange(ambient), np.arange(ambient), 0] = 1
        return cls(field, ambient, basis, range(ambient))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    @property
    def basis(self) -> list[list[FieldElement]]:
        f = self.field
        return [[FieldElement(f, tuple(int(c) for c in e)) for e in row] for row in self.basis_array]

    def contains(self, vectors) -> bool:
        """True if every vector given lies in this subspace."""
        arr = to_array(self.field, vectors, self.ambient)
        return not reduce_modulo(self, arr).any()

    def __contains__(self, vector):
        return self.contains([vector])

    def __le__(self, other: Subspace) -> bool:
        _check_same(self, other)
        return other.contains(self.basis_array)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and np.array_equal(self.basis_array, other.basis_array)
        )

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.ambient, self.pivots, self.basis_array.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field=GF({self.field.p}^{self.field.n}))"

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": self.basis_array.tolist()}

    @classmethod
    def from_json(cls, field: FieldDescriptor, data) -> Subspace:
        ambient = int(data["ambient"])
        basis = np.array(data["basis"], dtype=np.int64).reshape(-1, ambient, field.n)
        return span(field, basis, ambient)


def _check_same(V: Subspace, W: Subspace):
    if V.field != W.field:
        raise ValueError(f"field mismatch: {V.field} vs {W.field}")
    if V.ambient != W.ambient:
        raise ValueError(f"ambient mismatch: {V.ambient} vs {W.ambient}")


def rref(field: FieldDescriptor, arr: np.ndarray):
    return _backend.rref(arr, field.p, field.modulus_array)


def span(field: FieldDescriptor, vectors, ambient: int | None = None) -> Subspace:
    arr = to_array(field, vectors, ambient)
    basis, pivots = rref(field, arr)
    return Subspace(field, arr.shape[1], basis, pivots)


def sum(V: Subspace, W: Subspace) -> Subspace:  # noqa: A001 - mirrors the math name
    _check_same(V, W)
    return span(V.field, np.concatenate([V.basis_array, W.basis_array]), V.ambient)


def sum_all(spaces, field=None, ambient=None) -> Subspace:
    spaces = list(spaces)
    if not spaces:
        return Subspace.zero(field, ambient)
    for W in spaces[1:]:
        _check_same(spaces[0], W)
    return span(spaces[0].field, np.concatenate([W.basis_array for W in spaces]), spaces[0].ambient)


def intersect(V: Subspace, W: Subspace) -> Subspace:
    """Zassenhaus: row-reduce [[V, V], [W, 0]]; rows with zero left half span V cap W."""
    _check_same(V, W)
    r, n = V.ambient, V.field.n
    if V.dim == 0 or W.dim == 0:
        return Subspace.zero(V.field, r)
    top = np.concatenate([V.basis_array, V.basis_array], axis=1)
    bottom = np.concatenate([W.basis_array, np.zeros_like(W.basis_array)], axis=1)
    red, pivots = rref(V.field, np.concatenate([top, bottom]))
    rows = [i for i, c in enumerate(pivots) if c >= r]
    return span(V.field, red[rows, r:, :].reshape(len(rows), r, n), r)


def intersect_all(spaces) -> Subspace:
    spaces = list(spaces)
    out = spaces[0]
    for W in spaces[1:]:
        out = intersect(out, W)
    return out


def reduce_modulo(W: Subspace, vectors) -> np.ndarray:
    """Canonical representatives of v + W for each row v."""
    arr = to_array(W.field, vectors, W.ambient)
    if W.dim == 0 or arr.shape[0] == 0:
        return arr.copy()
    return _backend.reduce(arr, W.basis_array, W.pivots, W.field.p, W.field.modulus_array)


def kernel(field: FieldDescriptor, matrix) -> Subspace:
    """Right kernel {x : M x = 0} of a (rows, cols[, n]) matrix."""
    m = to_array(field, matrix)
    cols, n = m.shape[1], field.n
    red, pivots = rref(field, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols, n), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc, 0] = 1
        for row, pc in enumerate(pivots):
            # x_pc = -M[row, fc]
            basis[k, pc] = (-red[row, fc]) % field.p
    return span(field, basis, cols)


def phi_subspace(V: Subspace, power: int = 1) -> Subspace:
    # Frobenius fixes 0 and 1, so an RREF basis stays in RREF.
    return Subspace(V.field, V.ambient, frobenius_array(V.field, V.basis_array, power), V.pivots)


def phi_inverse_subspace(V: Subspace) -> Subspace:
    return phi_subspace(V, -1)


def is_rational(V: Subspace) -> bool:
    return not V.basis_array[..., 1:].any()


def rational_points(V: Subspace) -> Subspace:
    """The GF(p)-form T of a phi-stable V, as a subspace of GF(p)^r."""
    if not is_rational(V):
        raise ValueError("rational_points requires a phi-stable (rational) subspace")
    prime = make_field(V.field.p, 1)
    return Subspace(prime, V.ambient, V.basis_array[..., :1], V.pivots)


def extend_scalars(T: Subspace, field: FieldDescriptor) -> Subspace:
    """T tensor k for a subspace T over the prime field."""
    if not T.field.is_prime_field or T.field.p != field.p:
        raise ValueError("scalar extension is only supported from the prime field GF(p)")
    if field == T.field:
        return T
    basis = np.zeros((T.dim, T.ambient, field.n), dtype=np.int64)
    basis[..., 0] = T.basis_array[..., 0]
    return Subspace(field, T.ambient, basis, T.pivots)


def largest_stable_subspace(V: Subspace) -> Subspace:
    """The largest phi-stable subspace of V: the intersection of its n Frobenius conjugates."""
    return intersect_all(phi_subspace(V, i) for i in range(V.field.n))


def vectors(V: Subspace):
    """Every vector of V as a list of FieldElement; only for tiny fields."""
    f = V.field
    elems = list(f.elements())
    basis = V.basis
    for combo in itertools.product(elems, repeat=V.dim):
        out = [f.zero()] * V.ambient
        for c, row in zip(combo, basis):
            if c:
                out = [o + c * b for o, b in zip(out, row)]
        yield out


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^d."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field: FieldDescriptor, d: int, k: int | None = None):
    """Yield every subspace of GF(p)^d (or only those of dimension k).

    Walks pivot sets and fills the free RREF positions with every value in
    GF(p), so each subspace appears exactly once.
    """
    if not field.is_prime_field:
        raise ValueError("subspace enumeration is only supported over the prime field")
    p = field.p
    dims = range(d + 1) if k is None else [k]
    for kk in dims:
        for pivots in itertools.combinations(range(d), kk):
            free = [
                (i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, d) if j not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(free)):
                basis = np.zeros((kk, d, 1), dtype=np.int64)
                for i, pc in enumerate(pivots):
                    basis[i, pc, 0] = 1
                for (i, j), val in zip(free, values):
                    basis[i, j, 0] = val
                yield Subspace(field, d, basis, pivots)


def random_vectors(field: FieldDescriptor, rng, count: int, ambient: int) -> np.ndarray:
    return rng.integers(0, field.p, size=(count, ambient, field.n), dtype=np.int64)
