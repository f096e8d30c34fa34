import itertools

import numpy as np
import pytest

from k3degen import linalg
from k3degen.gf import make_field
from k3degen.linalg import Subspace


def vec(F, *entries):
    return [F.element(e) for e in entries]


def point_set(V):
    return {tuple(x.coeffs for x in v) for v in linalg.vectors(V)}


def test_span_examples(F4):
    t = [0, 1]
    tp1 = [1, 1]
    V = linalg.span(F4, [vec(F4, 1, t), vec(F4, t, tp1)])
    assert V.dim == 1
    assert V.basis_array.tolist() == [[[1, 0], [0, 1]]]
    assert linalg.span(F4, [], 2) == Subspace.zero(F4, 2)
    assert linalg.span(F4, [vec(F4, 1, 0), vec(F4, 0, 1)]) == Subspace.full(F4, 2)


def test_span_dimension_mismatch(F4):
    with pytest.raises(ValueError, match="differing lengths"):
        linalg.span(F4, [[1, 0], [1, 0, 1]])


def test_rref_is_canonical():
    F = make_field(3, 2)
    rng = np.random.default_rng(1)
    for _ in range(50):
        arr = linalg.random_vectors(F, rng, 4, 5)
        V = linalg.span(F, arr)
        for i, c in enumerate(V.pivots):
            assert V.basis_array[i, c].tolist() == [1, 0]
            assert not np.delete(V.basis_array[:, c], i, axis=0).any()
        assert list(V.pivots) == sorted(V.pivots)
        assert linalg.span(F, V.basis_array, 5) == V


def test_intersect_examples(F4):
    V = linalg.span(F4, [vec(F4, 1, [0, 1])])
    W = linalg.span(F4, [vec(F4, 1, 1)])
    assert linalg.intersect(V, V) == V
    assert linalg.intersect(V, W).dim == 0


def test_sum_intersect_against_point_sets():
    F = make_field(2, 1)
    rng = np.random.default_rng(7)
    for _ in range(100):
        V = linalg.span(F, rng.integers(0, 2, size=(int(rng.integers(0, 4)), 4)), 4)
        W = linalg.span(F, rng.integers(0, 2, size=(int(rng.integers(0, 4)), 4)), 4)
        cap = linalg.intersect(V, W)
        assert point_set(cap) == point_set(V) & point_set(W)
        assert linalg.sum(V, W).dim + cap.dim == V.dim + W.dim


def test_ambient_mismatch(F4):
    with pytest.raises(ValueError):
        linalg.intersect(Subspace.full(F4, 2), Subspace.full(F4, 3))


def test_phi_examples(F4):
    V = linalg.span(F4, [vec(F4, 1, [0, 1])])
    assert linalg.phi_subspace(V) == linalg.span(F4, [vec(F4, 1, [1, 1])])
    assert linalg.phi_inverse_subspace(linalg.phi_subspace(V)) == V
    R = linalg.span(F4, [vec(F4, 1, 1)])
    assert linalg.phi_subspace(R) == R


def test_phi_naturality():
    F = make_field(2, 4)
    rng = np.random.default_rng(3)
    for _ in range(200):
        V = linalg.span(F, linalg.random_vectors(F, rng, 2, 5))
        W = linalg.span(F, linalg.random_vectors(F, rng, 3, 5))
        phi = linalg.phi_subspace
        assert phi(V).dim == V.dim
        assert phi(linalg.sum(V, W)) == linalg.sum(phi(V), phi(W))
        assert phi(linalg.intersect(V, W)) == linalg.intersect(phi(V), phi(W))


def test_rationality_examples(F4):
    Z = Subspace.zero(F4, 2)
    assert linalg.is_rational(Z) and linalg.rational_points(Z).dim == 0
    assert not linalg.is_rational(linalg.span(F4, [vec(F4, 1, [0, 1])]))
    T = linalg.rational_points(linalg.span(F4, [vec(F4, 1, 1)]))
    assert T.field.is_prime_field and T.basis_array[..., 0].tolist() == [[1, 1]]
    with pytest.raises(ValueError, match="phi-stable"):
        linalg.rational_points(linalg.span(F4, [vec(F4, 1, [0, 1])]))


@pytest.mark.parametrize("p,n,r", [(2, 4, 1), (3, 2, 1), (2, 2, 2), (3, 2, 2)])
def test_rationality_criterion_exhaustive(p, n, r):
    # every subspace of GF(p^n)^r spanned by at most two vectors
    F = make_field(p, n)
    els = list(F.elements())
    seen = set()
    for pair in itertools.product(itertools.product(els, repeat=r), repeat=min(2, r)):
        V = linalg.span(F, [list(v) for v in pair], r)
        if V in seen:
            continue
        seen.add(V)
        brute = all(V.contains([[x.frobenius() for x in v]]) for v in linalg.vectors(V))
        assert linalg.is_rational(V) == brute


def test_rational_criterion_over_prime_subspaces():
    # all subspaces of GF(2)^4 and GF(3)^2 are rational after scalar extension
    for p, d in [(2, 4), (3, 2)]:
        F = make_field(p, 2)
        for T in linalg.enumerate_subspaces(make_field(p, 1), d):
            assert linalg.is_rational(linalg.extend_scalars(T, F))


def test_gaussian_binomial_counts():
    assert sum(linalg.gaussian_binomial(6, k, 2) for k in range(7)) == 2825
    F2 = make_field(2, 1)
    subs = list(linalg.enumerate_subspaces(F2, 4))
    assert len(subs) == len(set(subs)) == sum(linalg.gaussian_binomial(4, k, 2) for k in range(5))


def test_kernel():
    F = make_field(5, 1)
    K = linalg.kernel(F, np.array([[1, 2, 3], [2, 4, 6]]))
    assert K.dim == 2
    assert not ((K.basis_array[..., 0] @ np.array([1, 2, 3])) % 5).any()


def test_largest_stable_subspace(F4):
    V = linalg.span(F4, [vec(F4, 1, [0, 1], 0), vec(F4, 0, 0, 1)])
    S = linalg.largest_stable_subspace(V)
    assert S == linalg.span(F4, [vec(F4, 0, 0, 1)])


def test_subspace_json_round_trip():
    F = make_field(3, 3)
    V = linalg.span(F, linalg.random_vectors(F, np.random.default_rng(0), 3, 4))
    assert Subspace.from_json(F, V.to_json()) == V


def test_reduce_modulo_representatives_are_unique(F9):
    W = linalg.span(F9, [vec(F9, 1, [0, 1], 2)])
    v = linalg.to_array(F9, [vec(F9, 0, 1, 1)])
    w = linalg.to_array(F9, [vec(F9, 1, [0, 1], 2)])
    shifted = (v + 2 * w) % 3
    assert np.array_equal(linalg.reduce_modulo(W, v), linalg.reduce_modulo(W, shifted))
