import numpy as np
import pytest

from k3degen import _backend, _pykernels, charsub, linalg
from k3degen.gf import make_field

needs_cython = pytest.mark.skipif("cython" not in _backend.available(), reason="compiled kernel not built")


def test_fallback_always_available():
    assert "python" in _backend.available()
    with pytest.raises(ValueError, match="unknown or unavailable"):
        _backend.use("fortran")


@needs_cython
@pytest.mark.parametrize("p,n", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 6), (2, 20), (7, 20)])
def test_kernels_agree(p, n):
    from k3degen import _ckernels

    F = make_field(p, n)
    rng = np.random.default_rng(p * 100 + n)
    mod = F.modulus_array
    for _ in range(20):
        k, r = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        mat = rng.integers(0, p, size=(k, r, n), dtype=np.int64)
        if rng.random() < 0.3:
            mat[-1] = (mat[0] * 2) % p  # force a dependency
        b1, piv1 = _pykernels.rref(mat, p, mod)
        b2, piv2 = _ckernels.rref(mat, p, mod)
        assert tuple(piv1) == tuple(piv2)
        assert np.array_equal(b1, b2)
        vecs = rng.integers(0, p, size=(5, r, n), dtype=np.int64)
        assert np.array_equal(_pykernels.reduce(vecs, b1, piv1, p, mod), _ckernels.reduce(vecs, b2, piv2, p, mod))


def test_results_independent_of_backend(backend):
    cs = charsub.generate(3, 2, seed=1)
    for m in range(5):
        assert charsub.filtration(cs, m).dim == m
    V = linalg.span(cs.field, cs.iterates[:3])
    assert linalg.intersect(V, linalg.phi_subspace(V)).dim == 2
