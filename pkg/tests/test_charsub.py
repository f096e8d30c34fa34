import numpy as np
import pytest

from k3degen import charsub, linalg
from k3degen.charsub import CharacteristicSubspace, CharsubError
from k3degen.gf import make_field


def test_normal_basis_f4_example():
    cs = charsub.generate(2, 1, "normal-basis")
    assert cs.field.modulus == (1, 1, 1)
    assert cs.generator.tolist() == [[0, 1], [1, 1]]  # e = (t, t+1)
    assert cs.iterates[1].tolist() == [[1, 1], [0, 1]]  # phi e = (t+1, t)
    assert cs.K_plus_phi_K.dim == 2


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("sigma0", range(1, 11))
def test_normal_basis_strategy_invariants(p, sigma0):
    cs = charsub.generate(p, sigma0, "normal-basis")
    assert cs.field.n == 2 * sigma0
    assert cs.K.dim == sigma0
    assert cs.K_plus_phi_K.dim == sigma0 + 1
    assert cs.U.dim == 2 * sigma0
    # phi acts on e's coordinates as a cyclic shift
    assert np.array_equal(cs.iterates[1], np.roll(cs.generator, -1, axis=0))


def test_seeded_random_is_reproducible():
    a = charsub.generate(3, 2, seed=5)
    b = charsub.generate(3, 2, seed=5)
    assert a == b
    assert a != charsub.generate(3, 2, seed=6)


def test_generate_rejects():
    with pytest.raises(CharsubError, match="explicit seed"):
        charsub.generate(2, 2)
    with pytest.raises(CharsubError, match="1..10"):
        charsub.generate(2, 0, seed=1)
    with pytest.raises(CharsubError, match="unknown strategy"):
        charsub.generate(2, 1, "magic", seed=1)


def test_dependent_generator_rejected():
    F = make_field(2, 2)
    with pytest.raises(CharsubError, match="dependent"):
        CharacteristicSubspace(2, 1, F, np.array([[1, 0], [1, 0]]))


@pytest.mark.parametrize("p,sigma0,seed", [(2, 1, 0), (2, 3, 1), (3, 2, 2), (5, 4, 3), (7, 5, 4)])
def test_filtration(p, sigma0, seed):
    cs = charsub.generate(p, sigma0, seed=seed)
    d = 2 * sigma0
    assert charsub.filtration(cs, 0).dim == 0
    assert charsub.filtration(cs, -3).dim == 0
    assert charsub.filtration(cs, d + 4) == linalg.Subspace.full(cs.field, d)
    assert charsub.filtration(cs, sigma0) == cs.K
    assert charsub.filtration(cs, sigma0 + 1) == cs.K_plus_phi_K
    for m in range(d + 1):
        U_m = charsub.filtration(cs, m)
        assert U_m.dim == m
        assert U_m == charsub.generator_flag(cs, m)
    assert charsub.check_recurrences(cs)
    assert not linalg.is_rational(cs.K)


def test_sigma0_one_recurrence_by_hand():
    cs = charsub.generate(2, 1, "normal-basis")
    e, fe = cs.iterates
    U1 = linalg.span(cs.field, e[None])
    assert charsub.filtration(cs, 1) == U1
    assert charsub.filtration(cs, 2) == linalg.span(cs.field, np.stack([e, fe]))


def test_stable_intersection_examples():
    cs = charsub.generate(2, 1, "normal-basis")
    F2 = make_field(2, 1)
    lines = list(linalg.enumerate_subspaces(F2, 2, 1))
    assert len(lines) == 3
    for T in lines:
        assert charsub.stable_intersection_dim(cs, T, 1) == (0, 0)
    full = linalg.Subspace.full(F2, 2)
    zero = linalg.Subspace.zero(F2, 2)
    for m in range(3):
        assert charsub.stable_intersection_dim(cs, full, m) == (m, m)
        assert charsub.stable_intersection_dim(cs, zero, m) == (0, 0)


def test_stable_intersection_rejects():
    cs = charsub.generate(2, 1, "normal-basis")
    with pytest.raises(CharsubError, match="0..2"):
        charsub.stable_intersection_dim(cs, linalg.Subspace.zero(make_field(2, 1), 2), 3)
    with pytest.raises(CharsubError, match="GF\\(p\\)\\^2"):
        charsub.stable_intersection_dim(cs, linalg.Subspace.zero(make_field(2, 1), 3), 1)


def test_json_round_trip():
    cs = charsub.generate(5, 3, seed=9)
    data = cs.to_json()
    assert set(data) == {"p", "sigma0", "n", "modulus", "generator"}
    assert CharacteristicSubspace.from_json(data) == cs
