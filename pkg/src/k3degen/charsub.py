"""Characteristic subspaces K inside a 2*sigma0-dimensional space over GF(p^n).

K is parametrized by a generator e whose Frobenius iterates
e_m = phi^(m-1)(e), m = 1..2*sigma0, are linearly independent; then
K = span(e_1..e_sigma0) and the flag U_m = span(e_1..e_m) is recovered
from K alone by intersecting inverse Frobenius images (m <= sigma0) or
summing forward images (m >= sigma0).

The working field has degree n = 2*sigma0, the least degree that admits
2*sigma0 independent iterates.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .gf import FieldDescriptor, frobenius_array, make_field
from .linalg import Subspace

STRATEGIES = ("seeded-random", "normal-basis")


class CharsubError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CharacteristicSubspace:
    p: int
    sigma0: int
    field: FieldDescriptor
    generator: np.ndarray  # (2*sigma0, n) coefficient array

    def __post_init__(self):
        gen = np.array(self.generator, dtype=np.int64) % self.p
        if gen.shape != (self.ambient_dim, self.field.n):
            raise CharsubError(
                f"generator must have shape ({self.ambient_dim}, {self.field.n}), got {gen.shape}"
            )
        gen.setflags(write=False)
        object.__setattr__(self, "generator", gen)
        if self.field.p != self.p:
            raise CharsubError("field characteristic differs from p")
        if linalg.span(self.field, self.iterates).dim != self.ambient_dim:
            raise CharsubError("Frobenius iterates of the generator are linearly dependent")

    @property
    def ambient_dim(self) -> int:
        return 2 * self.sigma0

    @functools.cached_property
    def iterates(self) -> np.ndarray:
        """Rows e_1, ..., e_{2 sigma0}."""
        rows = [self.generator]
        for _ in range(self.ambient_dim - 1):
            rows.append(frobenius_array(self.field, rows[-1]))
        return np.stack(rows)

    @functools.cached_property
    def K(self) -> Subspace:
        return linalg.span(self.field, self.iterates[: self.sigma0])

    @functools.cached_property
    def phi_K(self) -> Subspace:
        return linalg.phi_subspace(self.K)

    @functools.cached_property
    def K_plus_phi_K(self) -> Subspace:
        return linalg.sum(self.K, self.phi_K)

    @functools.cached_property
    def U(self) -> Subspace:
        return linalg.sum_all(linalg.phi_subspace(self.K, i) for i in range(self.ambient_dim))

    @functools.cached_property
    def flag(self) -> tuple[Subspace, ...]:
        """U_0, ..., U_{2 sigma0} computed from K."""
        d = self.ambient_dim
        return (Subspace.zero(self.field, d), *(_filtration_step(self, m) for m in range(1, d + 1)))

    def __eq__(self, other):
        if not isinstance(other, CharacteristicSubspace):
            return NotImplemented
        return (self.p, self.sigma0, self.field) == (other.p, other.sigma0, other.field) and np.array_equal(
            self.generator, other.generator
        )

    def __hash__(self):
        return hash((self.p, self.sigma0, self.generator.tobytes()))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "sigma0": self.sigma0,
            "n": self.field.n,
            "modulus": list(self.field.modulus),
            "generator": self.generator.tolist(),
        }

    @classmethod
    def from_json(cls, data) -> CharacteristicSubspace:
        field = FieldDescriptor.from_json({"p": data["p"], "n": data["n"], "modulus": data["modulus"]})
        return cls(int(data["p"]), int(data["sigma0"]), field, np.array(data["generator"], dtype=np.int64))


def working_field(p: int, sigma0: int) -> FieldDescriptor:
    return make_field(p, 2 * sigma0)


def _is_normal(field: FieldDescriptor, alpha: np.ndarray) -> bool:
    conj = [alpha]
    for _ in range(field.n - 1):
        conj.append(frobenius_array(field, conj[-1]))
    return linalg.span(make_field(field.p, 1), np.stack(conj)).dim == field.n


def normal_element(field: FieldDescriptor, max_attempts: int = 100_000) -> np.ndarray:
    """A deterministic alpha whose conjugates alpha, alpha^p, ... form a GF(p)-basis.

    The first 64 element codes are tried in order, then candidates drawn
    from PCG64 seeded with (p, n). A plain scan is not enough: for binomial
    moduli such as t^8 + 2 over GF(5), Frobenius sends monomials to scaled
    monomials and low-degree candidates fail for a very long stretch.
    """
    for code in range(1, min(field.order, 65)):
        alpha = np.array(field.from_int(code).coeffs, dtype=np.int64)
        if _is_normal(field, alpha):
            return alpha
    rng = np.random.default_rng([field.p, field.n])
    for _ in range(max_attempts):
        alpha = rng.integers(0, field.p, size=field.n, dtype=np.int64)
        if _is_normal(field, alpha):
            return alpha
    raise CharsubError(f"no normal element found in GF({field.p}^{field.n})")


def generate(p: int, sigma0: int, strategy: str = "seeded-random", seed: int | None = None,
             max_attempts: int = 1000) -> CharacteristicSubspace:
    """Build a characteristic subspace for (p, sigma0).

    ``seeded-random`` redraws a uniform generator until its iterates are
    independent and needs an explicit ``seed``; ``normal-basis`` is
    deterministic and uses e = (alpha, alpha^p, ...) for a normal alpha.
    """
    if not 1 <= sigma0 <= 10:
        raise CharsubError(f"sigma0 must be in 1..10, got {sigma0}")
    field = working_field(p, sigma0)
    d = 2 * sigma0
    if strategy == "normal-basis":
        alpha = normal_element(field)
        conj = [alpha]
        for _ in range(d - 1):
            conj.append(frobenius_array(field, conj[-1]))
        return CharacteristicSubspace(p, sigma0, field, np.stack(conj))
    if strategy != "seeded-random":
        raise CharsubError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if seed is None:
        raise CharsubError("the seeded-random strategy requires an explicit seed")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        e = rng.integers(0, p, size=(d, field.n), dtype=np.int64)
        try:
            return CharacteristicSubspace(p, sigma0, field, e)
        except CharsubError:
            continue
    raise CharsubError(f"no admissible generator after {max_attempts} attempts")


def filtration(cs: CharacteristicSubspace, m: int) -> Subspace:
    """U_m, built from K alone (zero for m <= 0, everything for m >= 2 sigma0)."""
    if m <= 0:
        return Subspace.zero(cs.field, cs.ambient_dim)
    return cs.flag[min(m, cs.ambient_dim)]


def _filtration_step(cs: CharacteristicSubspace, m: int) -> Subspace:
    s = cs.sigma0
    if m <= s:
        return linalg.intersect_all(linalg.phi_subspace(cs.K, -j) for j in range(s - m + 1))
    return linalg.sum_all(linalg.phi_subspace(cs.K, j) for j in range(m - s + 1))


def generator_flag(cs: CharacteristicSubspace, m: int) -> Subspace:
    """span(e_1, ..., e_m), clamped to 0 <= m <= 2 sigma0."""
    m = max(0, min(m, cs.ambient_dim))
    return linalg.span(cs.field, cs.iterates[:m], cs.ambient_dim)


def check_recurrences(cs: CharacteristicSubspace) -> bool:
    """U_{m+1} = U_m + phi(U_m) for m > 0 and phi(U_{m-1}) = U_m cap phi(U_m) for m < 2 sigma0."""
    d = cs.ambient_dim
    flag = {m: filtration(cs, m) for m in range(0, d + 2)}
    for m in range(1, d + 1):
        if flag[m + 1] != linalg.sum(flag[m], linalg.phi_subspace(flag[m])):
            return False
    for m in range(1, d):
        if linalg.phi_subspace(flag[m - 1]) != linalg.intersect(flag[m], linalg.phi_subspace(flag[m])):
            return False
    return True


class IntersectionDims(NamedTuple):
    formula: int
    brute: int


def stable_intersection_formula(s0: int, m: int, sigma0: int) -> int:
    return max(0, s0 + m - 2 * sigma0)


def stable_intersection_dim(cs: CharacteristicSubspace, T: Subspace, m: int) -> IntersectionDims:
    """dim(T tensor k cap U_m) by the closed form and by direct intersection."""
    if T.ambient != cs.ambient_dim:
        raise CharsubError(f"T must live in GF(p)^{cs.ambient_dim}")
    if not 0 <= m <= cs.ambient_dim:
        raise CharsubError(f"m must be in 0..{cs.ambient_dim}, got {m}")
    V = linalg.extend_scalars(T, cs.field)
    brute = linalg.intersect(V, filtration(cs, m)).dim
    return IntersectionDims(stable_intersection_formula(T.dim, m, cs.sigma0), brute)
