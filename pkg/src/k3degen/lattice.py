"""Integral lattices given by symmetric Gram matrices.

All integer arithmetic is exact Python ``int``; rank-22 determinants with
p = 7 and Artin invariant 10 already exceed 64 bits.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .gf import is_prime, make_field

K3_RANK = 22


class LatticeError(ValueError):
    """A Gram matrix fails a structural requirement."""


@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        r = len(gram)
        if any(len(row) != r for row in gram):
            raise LatticeError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(r) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        if r and determinant(gram) == 0:
            raise LatticeError("Gram matrix must be nondegenerate (nonzero determinant)")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return determinant(self.gram)

    def pair(self, u, v) -> int:
        g = self.gram
        return sum(int(u[i]) * g[i][j] * int(v[j]) for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, data) -> IntegralLattice:
        lat = cls(tuple(tuple(row) for row in data["gram"]))
        if "rank" in data and int(data["rank"]) != lat.rank:
            raise LatticeError(f"rank field {data['rank']} disagrees with Gram size {lat.rank}")
        return lat


def determinant(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(matrix) -> list[int]:
    """Invariant factors d_1 | d_2 | ... (nonnegative) by row/column reduction."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = []
    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                return out + [0] * (min(rows, cols) - t)
            _, i, j = min(nz)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            piv = a[t][t]
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                out.append(abs(piv))
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
    return out


def smith_normal_form_by_minors(matrix) -> list[int]:
    """Invariant factors as ratios of successive gcds of k x k minors.

    Exponential in the size; intended as an independent check on small matrices.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, determinant([[a[i][j] for j in ci] for i in ri]))
        if g == 0:
            return out + [0] * (min(rows, cols) - k + 1)
        out.append(g // prev)
        prev = g
    return out


def p_kernel(lattice: IntegralLattice, p: int) -> linalg.Subspace:
    """Kernel of the Gram matrix mod p, a subspace of GF(p)^rank."""
    if not is_prime(p):
        raise LatticeError(f"p must be prime, got {p}")
    field = make_field(p, 1)
    gram = np.array(lattice.gram, dtype=object) % p
    return linalg.kernel(field, gram.astype(np.int64))


def artin_invariant(lattice: IntegralLattice, p: int) -> int:
    """sigma_0 with |disc| having p-part p^(2 sigma_0) and discriminant group killed by p.

    Returns 0 for a lattice that is unimodular at p.
    """
    if not is_prime(p):
        raise LatticeError(f"p must be prime, got {p}")
    factors = smith_normal_form(lattice.gram)
    if any(d % (p * p) == 0 for d in factors):
        raise LatticeError("discriminant group not killed by p (an invariant factor is divisible by p^2)")
    count = sum(1 for d in factors if d % p == 0)
    if count % 2:
        raise LatticeError(f"odd p-rank {count} of the discriminant group (not K3-like)")
    sigma0 = count // 2
    det = abs(lattice.det)
    ppart = 0
    while det % p == 0:
        det //= p
        ppart += 1
    kdim = p_kernel(lattice, p).dim
    if ppart != 2 * sigma0 or kdim != 2 * sigma0:
        raise ArithmeticError(
            f"inconsistent p-adic data: p-adic valuation of det {ppart}, "
            f"mod-p kernel dim {kdim}, p-divisible invariant factors {count}"
        )
    return sigma0


def require_supersingular(lattice: IntegralLattice, p: int) -> int:
    """artin_invariant, additionally insisting on 1 <= sigma_0 <= 10."""
    sigma0 = artin_invariant(lattice, p)
    if not 1 <= sigma0 <= 10:
        raise LatticeError(
            f"Artin invariant {sigma0} at p={p} is outside 1..10; not a supersingular K3 lattice"
        )
    return sigma0


U_BLOCK = ((0, 1), (1, 0))


def synthesize_gram(p: int, sigma0: int) -> IntegralLattice:
    """Rank-22 Gram matrix U^(11 - sigma0) + U(p)^sigma0 with det -p^(2 sigma0)."""
    if not is_prime(p):
        raise LatticeError(f"p must be prime, got {p}")
    if not 1 <= sigma0 <= 10:
        raise LatticeError(f"sigma0 must be in 1..10, got {sigma0}")
    scales = [1] * (11 - sigma0) + [p] * sigma0
    gram = [[0] * K3_RANK for _ in range(K3_RANK)]
    for b, s in enumerate(scales):
        gram[2 * b][2 * b + 1] = gram[2 * b + 1][2 * b] = s
    return IntegralLattice(tuple(map(tuple, gram)))


_SS = re.compile(r"^ss:p=(\d+),sigma0=(\d+)$")


def load_lattice(source: str) -> tuple[IntegralLattice, int | None]:
    """Read a lattice from a JSON path or the shorthand ``ss:p=<p>,sigma0=<s>``.

    Returns the lattice and the prime implied by the source (None for files).
    """
    m = _SS.match(source.strip())
    if m:
        p, s = int(m.group(1)), int(m.group(2))
        return synthesize_gram(p, s), p
    if source.startswith("ss:"):
        raise LatticeError(f"malformed synthesize shorthand {source!r}; expected ss:p=<p>,sigma0=<s>")
    data = json.loads(Path(source).read_text())
    return IntegralLattice.from_json(data), None


def infer_prime(lattice: IntegralLattice) -> int:
    """The prime p when |det| is a power of a single prime."""
    d = abs(lattice.det)
    if d == 1:
        raise LatticeError("lattice is unimodular; pass --p explicitly")
    q = 2
    while q * q <= d:
        if d % q == 0:
            break
        q += 1
    else:
        q = d
    while d % q == 0:
        d //= q
    if d != 1:
        raise LatticeError("|det| is not a prime power; pass --p explicitly")
    return q
