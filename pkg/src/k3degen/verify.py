"""Property suites for every module, shared by the ``verify`` command and the tests.

Each suite takes a :class:`VerifyConfig` and a derived integer seed and
returns a :class:`SuiteResult`. Seeds are derived per suite from the
master seed by hashing, so suites can run in any order or in parallel and
still see the same random streams (numpy PCG64 via ``default_rng``).
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import charsub, gf, hodge, lattice, linalg
from .degeneracy import (
    DivisorConfiguration,
    ample_reference,
    construct_classes,
    decide,
    equivalence_audit,
    is_ample_proxy,
)
from .hodge import Verdict

MAX_EXHAUSTIVE_SUBSPACES = 200_000


@dataclass
class VerifyConfig:
    p_list: list[int] | None = None
    sigma0_list: list[int] | None = None
    trials: int | None = None
    seed: int = 0

    def ps(self, default):
        return list(self.p_list) if self.p_list is not None else list(default)

    def sigmas(self, default):
        return list(self.sigma0_list) if self.sigma0_list is not None else list(default)

    def n_trials(self, default):
        return default if self.trials is None else self.trials


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, msg):
        """Count one check; ``msg`` may be a callable so hot loops skip formatting."""
        self.checked += 1
        if ok:
            return
        if len(self.failures) < 20:
            self.failures.append(msg() if callable(msg) else msg)
        elif self.failures[-1] != "...":
            self.failures.append("...")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "notes": self.notes,
        }


def suite_seed(master: int, name: str) -> int:
    return int.from_bytes(hashlib.sha256(f"{master}/{name}".encode()).digest()[:8], "little")


# --- shared fixtures -------------------------------------------------------


@functools.lru_cache(maxsize=None)
def normal_model(p: int, sigma0: int) -> hodge.DeRhamModel:
    return hodge.DeRhamModel(lattice.synthesize_gram(p, sigma0), charsub.generate(p, sigma0, "normal-basis"))


def random_classes(model_lattice, p, n0_basis, rng, max_outside=3):
    """A class list mixing lifts of random N_0 vectors (shifted by p*w) with generic classes."""
    rank = model_lattice.rank
    d = n0_basis.shape[0]
    k_in = int(rng.integers(0, d + 1))
    k_out = int(rng.integers(0, max_outside + 1))
    classes = []
    for _ in range(k_in):
        v = (rng.integers(0, p, size=d) @ n0_basis) % p
        w = rng.integers(-2, 3, size=rank)
        classes.append(tuple(int(x) for x in v + p * w))
    for _ in range(k_out):
        classes.append(tuple(int(x) for x in rng.integers(-5, 6, size=rank)))
    order = rng.permutation(len(classes))
    return [classes[i] for i in order]


# --- suites -----------------------------------------------------------------


def suite_field(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("field")
    res.check(gf.make_field(2, 2).modulus == (1, 1, 1), "canonical modulus for (2,2) is not t^2+t+1")
    res.check(gf.make_field(3, 2).modulus == (1, 0, 1), "canonical modulus for (3,2) is not t^2+1")
    default_ps = [q for q in range(2, 82) if gf.is_prime(q)]
    for p in cfg.ps(default_ps):
        n = 1
        while p**n <= 81:
            F = gf.make_field(p, n)
            res.check(F is gf.make_field(p, n), f"make_field({p},{n}) not idempotent")
            res.check(gf.is_irreducible_exhaustive(list(F.modulus), p) and gf.is_irreducible_rabin(list(F.modulus), p),
                      f"modulus of GF({p}^{n}) fails an irreducibility test")
            elems = list(F.elements())
            q = F.order
            frob = {a: a.frobenius() for a in elems}
            for a in elems:
                fa = frob[a]
                res.check(a**q == a, lambda: f"a^(p^n) != a for {a} in GF({p}^{n})")
                res.check(fa == a**p, lambda: f"frobenius({a}) != a^p in GF({p}^{n})")
                res.check(fa.frobenius_inverse() == a, lambda: f"frobenius_inverse o frobenius != id at {a}")
                if a.in_prime_field():
                    res.check(fa == a, lambda: f"frobenius moves prime-field element {a}")
            for a, b in itertools.product(elems, repeat=2):
                res.check(frob[a + b] == frob[a] + frob[b], lambda: f"frobenius not additive at {a},{b}")
                res.check(frob[a * b] == frob[a] * frob[b], lambda: f"frobenius not multiplicative at {a},{b}")
            n += 1
    return res


def suite_lattice(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("lattice")
    for p in cfg.ps([2, 3, 5, 7]):
        for s in cfg.sigmas(range(1, 11)):
            L = lattice.synthesize_gram(p, s)
            res.check(L.det == -(p ** (2 * s)), f"det of synthesize_gram({p},{s}) is {L.det}")
            res.check(lattice.artin_invariant(L, p) == s, f"artin_invariant(synthesize_gram({p},{s})) != {s}")
            res.check(lattice.p_kernel(L, p).dim == 2 * s, f"dim p_kernel(synthesize_gram({p},{s})) != {2 * s}")
        try:
            lattice.artin_invariant(lattice.IntegralLattice(((p * p, 0), (0, 1))), p)
            res.check(False, f"diag({p}^2, 1) was accepted")
        except lattice.LatticeError as exc:
            res.check("not killed by p" in str(exc), f"diag({p}^2,1) rejected with wrong message: {exc}")
    rng = np.random.default_rng(seed)
    for _ in range(cfg.n_trials(100)):
        r, c = (int(x) for x in rng.integers(1, 5, size=2))
        m = rng.integers(-6, 7, size=(r, c)).tolist()
        res.check(lattice.smith_normal_form(m) == lattice.smith_normal_form_by_minors(m),
                  f"Smith normal form routes disagree on {m}")
    return res


def suite_filtration(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("filtration")
    rng = np.random.default_rng(seed)
    for p in cfg.ps([2, 3, 5]):
        for s in cfg.sigmas(range(1, 6)):
            for _ in range(cfg.n_trials(50)):
                cs = charsub.generate(p, s, seed=int(rng.integers(2**63)))
                dims = [charsub.filtration(cs, m).dim for m in range(2 * s + 1)]
                res.check(dims == list(range(2 * s + 1)), f"dim U_m = {dims} for p={p}, sigma0={s}")
                res.check(all(charsub.filtration(cs, m) == charsub.generator_flag(cs, m) for m in range(2 * s + 1)),
                          f"U_m != span(e_1..e_m) for p={p}, sigma0={s}")
                res.check(charsub.check_recurrences(cs), f"recurrences fail for p={p}, sigma0={s}")
                res.check(cs.K.dim == s and cs.K_plus_phi_K.dim == s + 1 and cs.U.dim == 2 * s,
                          f"K dimensions wrong for p={p}, sigma0={s}")
                res.check(not linalg.is_rational(cs.K), f"K is phi-stable for p={p}, sigma0={s}")
    return res


DEFAULT_STABLE_PAIRS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def subspace_count(p: int, d: int) -> int:
    return sum(linalg.gaussian_binomial(d, k, p) for k in range(d + 1))


def suite_stable_intersection(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("stable_intersection")
    if cfg.p_list is not None and cfg.sigma0_list is not None:
        pairs = list(itertools.product(cfg.p_list, cfg.sigma0_list))
    else:
        pairs = [(p, s) for p, s in DEFAULT_STABLE_PAIRS
                 if (cfg.p_list is None or p in cfg.p_list) and (cfg.sigma0_list is None or s in cfg.sigma0_list)]
    rng = np.random.default_rng(seed)
    for p, s in pairs:
        d = 2 * s
        expected = subspace_count(p, d)
        if expected > MAX_EXHAUSTIVE_SUBSPACES:
            res.notes.append(f"skipped p={p}, sigma0={s}: {expected} subspaces exceeds the exhaustive cap")
            continue
        cs = charsub.generate(p, s, seed=int(rng.integers(2**63)))
        prime = gf.make_field(p, 1)
        seen = 0
        for T in linalg.enumerate_subspaces(prime, d):
            seen += 1
            for m in range(d + 1):
                got = charsub.stable_intersection_dim(cs, T, m)
                res.check(got.formula == got.brute,
                          f"p={p}, sigma0={s}, dim T={T.dim}, m={m}: formula {got.formula} != brute {got.brute}")
        res.check(seen == expected, f"enumerated {seen} subspaces of GF({p})^{d}, expected {expected}")
        res.notes.append(f"p={p}, sigma0={s}: {seen} subspaces swept exhaustively")
    return res


def suite_dimension_formulas(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("dimension_formulas")
    rng = np.random.default_rng(seed)
    regimes = {True: 0, False: 0}
    for p in cfg.ps([2, 3, 5]):
        for s in cfg.sigmas(range(1, 5)):
            L = lattice.synthesize_gram(p, s)
            models = [hodge.DeRhamModel(L, charsub.generate(p, s, seed=int(rng.integers(2**63)))) for _ in range(4)]
            for t in range(cfg.n_trials(200)):
                model = models[t % len(models)]
                classes = random_classes(L, p, model.n0_basis, rng)
                try:
                    rep = hodge.analyze(model, classes)
                except hodge.OracleDisagreement as exc:
                    res.check(False, str(exc))
                    continue
                res.check(rep.dim_B == rep.dim_C + rep.dim_B_cap_F2 and rep.dim_B_cap_F2 in (0, 1),
                          f"report identity fails: {rep}")
                res.check((rep.verdict is Verdict.NONDEGENERATE) == (rep.s0 >= s) == (rep.dim_B_cap_F2 == 1),
                          f"verdict inconsistent: {rep}")
                regimes[rep.s0 >= s] += 1
    res.notes.append(f"regimes: s0 >= sigma0 in {regimes[True]} lists, s0 < sigma0 in {regimes[False]}")
    return res


def suite_equivalence(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("equivalence")
    rng = np.random.default_rng(seed)
    combos = list(itertools.product(cfg.ps([2, 3, 5]), cfg.sigmas(range(1, 5))))
    models = {}
    for t in range(cfg.n_trials(500)):
        p, s = combos[t % len(combos)]
        if (p, s) not in models:
            L = lattice.synthesize_gram(p, s)
            models[p, s] = hodge.DeRhamModel(L, charsub.generate(p, s, seed=int(rng.integers(2**63))))
        model = models[p, s]
        config = DivisorConfiguration(model.lattice, tuple(random_classes(model.lattice, p, model.n0_basis, rng)))
        _audit(res, model, config, p, f"random config #{t} (p={p}, sigma0={s})")
    for p in cfg.ps([2, 3, 5, 7]):
        for s in cfg.sigmas(range(1, 11)):
            model = normal_model(p, s)
            for r in (s, s + 3):
                config = construct_classes(model.lattice, p, r)
                audit = _audit(res, model, config, p, f"constructed r={r} (p={p}, sigma0={s})")
                if audit is not None:
                    res.check(audit.holds, f"constructed config r={r} (p={p}, sigma0={s}) fails the conditions")
    empty = DivisorConfiguration(normal_model(2, 1).lattice)
    audit = _audit(res, normal_model(2, 1), empty, 2, "empty config")
    res.check(audit is not None and not any(audit), "empty configuration satisfies a condition")
    return res


def _audit(res, model, config, p, label):
    try:
        audit = equivalence_audit(model.lattice, model.cs, config, p, model=model)
    except Exception as exc:  # noqa: BLE001 - any error is a failed check here
        res.check(False, f"{label}: {type(exc).__name__}: {exc}")
        return None
    res.check(audit.agree, f"{label}: conditions disagree {audit}")
    return audit


def suite_existence(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("existence_minimality")
    for p in cfg.ps([2, 3, 5, 7]):
        for s in cfg.sigmas(range(1, 11)):
            L = lattice.synthesize_gram(p, s)
            n0 = lattice.p_kernel(L, p)
            T = linalg.span(n0.field, n0.basis_array[:s, :, 0], L.rank)
            a = ample_reference(L)
            for r in (s, s + 3):
                config = construct_classes(L, p, r)
                res.check(len(config) == r, f"construct_classes({p},{s},r={r}) returned {len(config)} classes")
                res.check(decide(config, p).verdict is Verdict.NONDEGENERATE,
                          f"construct_classes({p},{s},r={r}) is not NONDEGENERATE")
                res.check(config.n_d(p) == T, f"classes mod p do not span T for p={p}, sigma0={s}")
                res.check(all(is_ample_proxy(L, c, a) for c in config.classes),
                          f"ampleness proxy fails for p={p}, sigma0={s}, r={r}")
                res.check(all(not any(x % p for x in c) for c in config.classes[s:]),
                          f"extra classes do not vanish mod p for p={p}, sigma0={s}")
                for i in range(s):
                    res.check(decide(config.without(i), p).verdict is Verdict.DEGENERATE,
                              f"dropping class {i} keeps NONDEGENERATE for p={p}, sigma0={s}, r={r}")
    return res


def suite_chern(cfg: VerifyConfig, seed: int) -> SuiteResult:
    res = SuiteResult("chern_injectivity")
    rng = np.random.default_rng(seed)
    for p in cfg.ps([2, 3, 5]):
        for s in cfg.sigmas(range(1, 6)):
            L = lattice.synthesize_gram(p, s)
            models = [normal_model(p, s)]
            models += [hodge.DeRhamModel(L, charsub.generate(p, s, seed=int(rng.integers(2**63))))
                       for _ in range(cfg.n_trials(3))]
            for model in models:
                audit = hodge.chern_injectivity_audit(model)
                res.check(audit.deRham, f"de Rham Chern map not injective (p={p}, sigma0={s})")
                res.check(audit.hodge == (s >= 2), f"Hodge audit {audit.hodge} for sigma0={s} (p={p})")
                if p == 2 and s <= 2:
                    res.check(hodge.chern_injectivity_exhaustive(model) == audit,
                              f"exhaustive Chern audit disagrees (p={p}, sigma0={s})")
    return res


SUITES = {
    "field": suite_field,
    "lattice": suite_lattice,
    "filtration": suite_filtration,
    "stable_intersection": suite_stable_intersection,
    "dimension_formulas": suite_dimension_formulas,
    "equivalence": suite_equivalence,
    "existence_minimality": suite_existence,
    "chern_injectivity": suite_chern,
}

MODULE_SUITES = {
    "gf": ["field"],
    "linalg": ["stable_intersection"],
    "lattice": ["lattice"],
    "charsub": ["filtration", "stable_intersection"],
    "hodge": ["dimension_formulas", "chern_injectivity"],
    "degeneracy": ["equivalence", "existence_minimality"],
}


def run_suite(name: str, cfg: VerifyConfig) -> SuiteResult:
    start = time.perf_counter()
    if cfg.trials == 0:
        # trials=0 disables exhaustive sweeps too
        res = SuiteResult(name)
    else:
        res = SUITES[name](cfg, suite_seed(cfg.seed, name))
    res.elapsed = time.perf_counter() - start
    if res.checked == 0:
        res.notes.append("warning: zero checks executed (vacuous pass)")
    return res


def run(cfg: VerifyConfig, modules=None, jobs: int = 1) -> list[SuiteResult]:
    names = sorted(SUITES) if not modules else sorted({s for m in modules for s in MODULE_SUITES[m]})
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_suite, names, [cfg] * len(names)))
    else:
        results = [run_suite(n, cfg) for n in names]
    return sorted(results, key=lambda r: r.name)
