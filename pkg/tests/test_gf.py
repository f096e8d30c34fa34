import itertools

import pytest
from hypothesis import given, settings, strategies as st

from k3degen import gf
from k3degen.gf import FieldDescriptor, make_field


def elem(F, *coeffs):
    return F.element(list(coeffs))


def test_prime_field_has_trivial_modulus():
    F = make_field(2, 1)
    assert F.is_prime_field
    assert F.modulus == (0, 1)
    assert F.order == 2


@pytest.mark.parametrize("p,n,expected", [(2, 2, (1, 1, 1)), (3, 2, (1, 0, 1)), (2, 3, (1, 1, 0, 1))])
def test_canonical_modulus(p, n, expected):
    assert make_field(p, n).modulus == expected


def test_canonical_modulus_matches_brute_force():
    # first irreducible in (c_{n-1}, ..., c_0) base-p order, found by root/factor search
    for p, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        for code in range(p**n):
            digits = [(code // p**i) % p for i in range(n)][::-1]  # c_{n-1}..c_0
            f = tuple(digits[::-1]) + (1,)
            if gf.is_irreducible_exhaustive(f, p):
                assert make_field(p, n).modulus == f
                break


def test_irreducibility_tests_agree():
    for p, n in [(2, 5), (2, 6), (3, 4), (5, 3)]:
        for code in range(min(p**n, 400)):
            f = tuple((code // p**i) % p for i in range(n)) + (1,)
            assert gf.is_irreducible_rabin(f, p) == gf.is_irreducible_exhaustive(f, p), f


def test_make_field_is_deterministic():
    assert make_field(7, 20).modulus == make_field(7, 20).modulus
    assert make_field(3, 5) is make_field(3, 5)


@pytest.mark.parametrize("p,n,msg", [(4, 1, "prime"), (2, 0, "1..32"), (2, 33, "1..32")])
def test_make_field_rejects(p, n, msg):
    with pytest.raises(ValueError, match=msg):
        make_field(p, n)


def test_f4_examples(F4):
    t = F4.gen()
    assert gf.mul(t, t + 1) == F4.one()
    assert gf.inv(t) == t + 1
    assert gf.add(F4.one(), F4.one()) == F4.zero()
    assert gf.frobenius(t) == t + 1


def test_f9_frobenius(F9):
    assert gf.frobenius(F9.gen()) == elem(F9, 0, 2)


def test_inverse_of_zero(F4):
    with pytest.raises(ZeroDivisionError):
        gf.inv(F4.zero())


def test_field_mismatch(F4, F9):
    with pytest.raises(ValueError, match="field mismatch"):
        gf.add(F4.gen(), F9.gen())


@pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 4)])
def test_frobenius_is_automorphism_on_enumerated_field(p, n):
    F = make_field(p, n)
    els = list(F.elements())
    q = F.order
    for a in els:
        assert a ** q == a
        assert a.frobenius() == a ** p
        assert a.frobenius().frobenius_inverse() == a
        if a.in_prime_field():
            assert a.frobenius() == a
    for a, b in itertools.islice(itertools.product(els, repeat=2), 2000):
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 8), (3, 5), (7, 3), (2, 20)]), st.data())
def test_field_axioms(pn, data):
    F = make_field(*pn)
    code = st.integers(0, F.order - 1)
    a, b, c = (F.from_int(data.draw(code)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + (-a) == F.zero()
    if not a.is_zero():
        assert a * a.inv() == F.one()
        assert (b / a) * a == b


def test_descriptor_json_round_trip():
    F = make_field(5, 3)
    assert FieldDescriptor.from_json(F.to_json()) is F
    with pytest.raises(ValueError, match="canonical"):
        FieldDescriptor.from_json({"p": 2, "n": 2, "modulus": [1, 0, 1]})


def test_element_json_round_trip(F9):
    a = elem(F9, 2, 1)
    assert a.to_json() == [2, 1]
    assert F9.element(a.to_json()) == a
