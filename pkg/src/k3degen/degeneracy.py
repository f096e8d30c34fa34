"""Degenerate / nondegenerate decision for divisor-class configurations.

The decision itself is purely rational: it compares dim(N_D cap N_0) with
the Artin invariant. The characteristic subspace only enters the
equivalence audit, which re-derives the same verdict from the de Rham
model in three further ways.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import linalg
from .charsub import CharacteristicSubspace
from .hodge import DeRhamModel, Verdict, analyze, rational_span
from .lattice import IntegralLattice, LatticeError, p_kernel, require_supersingular


@dataclass(frozen=True)
class DivisorConfiguration:
    lattice: IntegralLattice
    classes: tuple[tuple[int, ...], ...] = ()
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        classes = tuple(tuple(int(x) for x in c) for c in self.classes)
        for c in classes:
            if len(c) != self.lattice.rank:
                raise ValueError(f"rank mismatch: class of length {len(c)}, lattice rank {self.lattice.rank}")
        labels = tuple(self.labels) or tuple(f"D{i + 1}" for i in range(len(classes)))
        if len(labels) != len(classes):
            raise ValueError(f"{len(labels)} labels for {len(classes)} classes")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.classes)

    def n_d(self, p: int) -> linalg.Subspace:
        """N_D: GF(p)-span of the classes mod p."""
        return rational_span(p, self.classes, self.lattice.rank)

    def without(self, index: int) -> DivisorConfiguration:
        keep = [i for i in range(len(self.classes)) if i != index]
        return DivisorConfiguration(
            self.lattice, tuple(self.classes[i] for i in keep), tuple(self.labels[i] for i in keep)
        )

    def to_json(self) -> dict:
        return {"classes": [list(c) for c in self.classes], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, lattice: IntegralLattice, data) -> DivisorConfiguration:
        return cls(lattice, tuple(map(tuple, data.get("classes", []))), tuple(data.get("labels", [])))


class Decision(NamedTuple):
    verdict: Verdict
    dim_ND: int
    dim_ND_cap_N0: int | None
    sigma0: int | None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "dim_ND": self.dim_ND,
            "dim_ND_cap_N0": self.dim_ND_cap_N0,
            "sigma0": self.sigma0,
        }


def decide(config: DivisorConfiguration, p: int, finite_height: bool = False) -> Decision:
    """NONDEGENERATE iff dim_Fp(N_D cap N_0) >= sigma0.

    With ``finite_height`` the answer is DEGENERATE without any computation
    on the lattice.
    """
    nd = config.n_d(p)
    if finite_height:
        return Decision(Verdict.DEGENERATE, nd.dim, None, None)
    sigma0 = require_supersingular(config.lattice, p)
    cap = linalg.intersect(nd, p_kernel(config.lattice, p)).dim
    verdict = Verdict.NONDEGENERATE if cap >= sigma0 else Verdict.DEGENERATE
    return Decision(verdict, nd.dim, cap, sigma0)


def ample_reference(lattice: IntegralLattice) -> tuple[int, ...]:
    """A small class a with a.a > 0, standing in for an ample class.

    Searches e_i, then e_i + e_j, then e_i - e_j; for the synthesized Gram
    this finds e_1 + e_2 with a.a = 2.
    """
    r = lattice.rank
    g = lattice.gram
    for i in range(r):
        if g[i][i] > 0:
            return tuple(int(k == i) for k in range(r))
    for sign in (1, -1):
        for i, j in itertools.combinations(range(r), 2):
            if g[i][i] + g[j][j] + 2 * sign * g[i][j] > 0:
                return tuple(1 if k == i else sign if k == j else 0 for k in range(r))
    raise LatticeError("no class with positive self-intersection among e_i, e_i +- e_j")


def is_ample_proxy(lattice: IntegralLattice, v, a) -> bool:
    return lattice.pair(v, v) > 0 and lattice.pair(v, a) > 0


def _lift_to_ample(lattice, v, a, p):
    # smallest j >= 1 with v + p*j*a passing the ampleness proxy
    j = 1
    while True:
        w = tuple(int(x) + p * j * y for x, y in zip(v, a))
        if is_ample_proxy(lattice, w, a):
            return w
        j += 1


def choose_T(lattice: IntegralLattice, p: int, sigma0: int, seed: int | None = None) -> linalg.Subspace:
    """A sigma0-dimensional T inside N_0: the first sigma0 RREF rows, or a seeded random one."""
    n0 = p_kernel(lattice, p)
    basis = n0.basis_array[..., 0]
    if seed is None:
        return linalg.span(n0.field, basis[:sigma0], lattice.rank)
    rng = np.random.default_rng(seed)
    while True:
        coeffs = rng.integers(0, p, size=(sigma0, n0.dim))
        T = linalg.span(n0.field, (coeffs @ basis) % p, lattice.rank)
        if T.dim == sigma0:
            return T


def construct_classes(lattice: IntegralLattice, p: int, r: int, seed: int | None = None,
                      reference=None) -> DivisorConfiguration:
    """r classes, the first sigma0 reducing to a basis of T inside N_0.

    Each of the first sigma0 classes is a lift of a basis vector of T plus
    p*j*a for the least j >= 1 making it positive against itself and a; the
    remaining classes are p*j*a for j = 1, 2, ..., which vanish mod p.
    """
    sigma0 = require_supersingular(lattice, p)
    if r < sigma0:
        raise ValueError(f"r must be at least sigma0 = {sigma0}, got {r}")
    a = tuple(reference) if reference is not None else ample_reference(lattice)
    if lattice.pair(a, a) <= 0:
        raise LatticeError("reference class must have positive self-intersection")
    T = choose_T(lattice, p, sigma0, seed)
    classes = [_lift_to_ample(lattice, row, a, p) for row in T.basis_array[..., 0].tolist()]
    classes += [tuple(p * j * x for x in a) for j in range(1, r - sigma0 + 1)]
    return DivisorConfiguration(lattice, tuple(classes))


class ConditionAudit(NamedTuple):
    """The four equivalent conditions, each reached by a different route."""

    rational_criterion: bool  # dim(N_D cap N_0) >= sigma0
    f2_in_chern_span: bool  # dim(B cap F^2) = 1
    hodge_rank_drop: bool  # dim C < dim N_D
    nondegenerate: bool  # verdict of the model's closed-form report

    @property
    def agree(self) -> bool:
        return len(set(self)) == 1

    @property
    def holds(self) -> bool:
        return all(self)


class ConditionDisagreement(RuntimeError):
    pass


def equivalence_audit(lattice: IntegralLattice, cs: CharacteristicSubspace,
                      config: DivisorConfiguration, p: int,
                      model: DeRhamModel | None = None) -> ConditionAudit:
    if cs.p != p:
        raise ValueError(f"characteristic subspace is over p={cs.p}, audit asked for p={p}")
    if config.lattice != lattice:
        raise ValueError("configuration belongs to a different lattice")
    model = model or DeRhamModel(lattice, cs)
    decision = decide(config, p)
    report = analyze(model, config.classes)
    audit = ConditionAudit(
        rational_criterion=decision.verdict is Verdict.NONDEGENERATE,
        f2_in_chern_span=report.dim_B_cap_F2 == 1,
        hodge_rank_drop=report.dim_C < decision.dim_ND,
        nondegenerate=report.verdict is Verdict.NONDEGENERATE,
    )
    if not audit.agree:
        raise ConditionDisagreement(f"equivalent conditions disagree: {audit}")
    return audit
