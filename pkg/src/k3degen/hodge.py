"""Linear-algebra model of the de Rham Chern map on N tensor k.

Everything lives inside N tensor k = k^rank. The kernels of the de Rham
and Hodge Chern maps are phi(K) and K + phi(K), transported into N tensor k
through the rational basis of N_0, so the image of a class span A is
measured as a quotient of A:

    B ~ A / (A cap phi K),   B cap F^2 ~ (A cap (K + phi K)) / (A cap phi K),
    C ~ A / (A cap (K + phi K)).

analyze() computes these dimensions both from the closed-form case split in
(s, s0, sigma0) and from the intersections above, and refuses to return if
the two disagree.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .gf import make_field
from .charsub import CharacteristicSubspace
from .lattice import IntegralLattice, LatticeError, artin_invariant, p_kernel
from .linalg import Subspace


class Verdict(str, enum.Enum):
    DEGENERATE = "DEGENERATE"
    NONDEGENERATE = "NONDEGENERATE"

    def __str__(self):
        return self.value


class OracleDisagreement(RuntimeError):
    """Closed-form and quotient-model dimensions differ (an implementation bug)."""


class DeRhamModel:
    def __init__(self, lattice: IntegralLattice, cs: CharacteristicSubspace):
        sigma0 = artin_invariant(lattice, cs.p)
        if sigma0 != cs.sigma0:
            raise LatticeError(
                f"lattice has Artin invariant {sigma0} at p={cs.p}, characteristic subspace has {cs.sigma0}"
            )
        self.lattice = lattice
        self.cs = cs
        self.p = cs.p
        self.sigma0 = sigma0
        self.field = cs.field
        self.n0 = p_kernel(lattice, cs.p)
        # rows of the rational N_0 basis in pivot order: k^(2 sigma0) -> N tensor k
        self.n0_basis = self.n0.basis_array[..., 0].copy()
        self._check()

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def embed(self, V: Subspace) -> Subspace:
        """Image of V in k^(2 sigma0) under the N_0 embedding."""
        arr = np.einsum("din,ij->djn", V.basis_array, self.n0_basis) % self.p
        return linalg.span(self.field, arr, self.rank)

    @functools.cached_property
    def U(self) -> Subspace:
        return linalg.extend_scalars(self.n0, self.field)

    @functools.cached_property
    def phi_K(self) -> Subspace:
        return self.embed(self.cs.phi_K)

    @functools.cached_property
    def K_plus_phi_K(self) -> Subspace:
        return self.embed(self.cs.K_plus_phi_K)

    def _check(self):
        s = self.sigma0
        if self.phi_K.dim != s or self.K_plus_phi_K.dim != s + 1:
            raise ArithmeticError("embedded kernels have the wrong dimensions")
        if not (self.phi_K <= self.K_plus_phi_K and self.K_plus_phi_K <= self.U):
            raise ArithmeticError("embedded kernels are not nested inside N_0 tensor k")

    def class_span(self, classes) -> Subspace:
        """A: the k-span of the classes reduced mod p."""
        return linalg.extend_scalars(rational_span(self.p, classes, self.rank), self.field)


def rational_span(p: int, classes, rank: int) -> Subspace:
    """GF(p)-span of integer classes reduced mod p."""
    classes = [list(c) for c in classes]
    for c in classes:
        if len(c) != rank:
            raise ValueError(f"rank mismatch: class of length {len(c)}, lattice rank {rank}")
    arr = np.array([[int(x) % p for x in c] for c in classes], dtype=np.int64).reshape(len(classes), rank)
    return linalg.span(make_field(p, 1), arr, rank)


@dataclass(frozen=True)
class DimensionReport:
    s: int
    s0: int
    dim_B: int
    dim_B_cap_F2: int
    dim_C: int
    verdict: Verdict
    oracle_checked: bool = True

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "s0": self.s0,
            "dimB": self.dim_B,
            "dimBcapF2": self.dim_B_cap_F2,
            "dimC": self.dim_C,
            "verdict": self.verdict.value,
            "oracle_checked": self.oracle_checked,
        }

    @classmethod
    def from_json(cls, data) -> DimensionReport:
        return cls(
            data["s"], data["s0"], data["dimB"], data["dimBcapF2"], data["dimC"],
            Verdict(data["verdict"]), data.get("oracle_checked", True),
        )


def dimension_formulas(s: int, s0: int, sigma0: int) -> tuple[int, int, int]:
    """(dim B, dim B cap F^2, dim C) from s = dim A and s0 = dim(A cap U)."""
    if s0 < sigma0:
        return s, 0, s
    return s - s0 + sigma0, 1, s - s0 + sigma0 - 1


def analyze(model: DeRhamModel, classes) -> DimensionReport:
    A = model.class_span(classes)
    s = A.dim
    s0 = linalg.intersect(A, model.U).dim
    dim_B, cap, dim_C = dimension_formulas(s, s0, model.sigma0)

    in_phi_K = linalg.intersect(A, model.phi_K).dim
    in_K_phi_K = linalg.intersect(A, model.K_plus_phi_K).dim
    oracle = (s - in_phi_K, in_K_phi_K - in_phi_K, s - in_K_phi_K)
    if oracle != (dim_B, cap, dim_C):
        raise OracleDisagreement(
            f"closed form (B, B^F2, C) = {(dim_B, cap, dim_C)} but quotient model gives {oracle} "
            f"(s={s}, s0={s0}, sigma0={model.sigma0})"
        )
    verdict = Verdict.NONDEGENERATE if s0 >= model.sigma0 else Verdict.DEGENERATE
    return DimensionReport(s, s0, dim_B, cap, dim_C, verdict)


class ChernAudit(NamedTuple):
    deRham: bool
    hodge: bool


def _meets_rationally(W: Subspace) -> bool:
    return linalg.largest_stable_subspace(W).dim > 0


def chern_injectivity_audit(model: DeRhamModel) -> ChernAudit:
    """Injectivity of the de Rham / Hodge Chern maps on N tensor GF(p).

    A map is injective on rational vectors iff its kernel contains no nonzero
    GF(p)-rational vector, i.e. the largest phi-stable subspace of the kernel
    is zero.
    """
    return ChernAudit(
        deRham=not _meets_rationally(model.phi_K),
        hodge=not _meets_rationally(model.K_plus_phi_K),
    )


def chern_injectivity_exhaustive(model: DeRhamModel) -> ChernAudit:
    """Same audit by testing every nonzero vector of N_0.

    Any rational vector in phi K or K + phi K lies in U cap GF(p)^rank = N_0,
    so N_0 is the complete search space.
    """
    pts = [v for v in linalg.vectors(model.n0) if any(x for x in v)]
    if not pts:
        return ChernAudit(True, True)
    arr = np.array([[x.coeffs[0] for x in v] for v in pts], dtype=np.int64)
    lifted = linalg.to_array(model.field, arr, model.rank)
    hit_dr = not linalg.reduce_modulo(model.phi_K, lifted).reshape(len(pts), -1).any(axis=1).all()
    hit_h = not linalg.reduce_modulo(model.K_plus_phi_K, lifted).reshape(len(pts), -1).any(axis=1).all()
    return ChernAudit(deRham=not hit_dr, hodge=not hit_h)
