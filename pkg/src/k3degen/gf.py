"""Prime fields GF(p) and extensions GF(p^n) = GF(p)[t]/(f).

Elements are dense coefficient tuples of length n, constant term first.
The modulus f for a given (p, n) is chosen deterministically: monic
degree-n polynomials are scanned with their lower coefficient tuple
(c_{n-1}, ..., c_0) read as a base-p integer in ascending order, and the
first irreducible one is taken.

The Frobenius a -> a^p is GF(p)-linear, so each descriptor caches its
n x n matrix; applying Frobenius to whole arrays of elements is then a
single integer matrix product.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import _poly

MAX_DEGREE = 32
MAX_PRIME = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _monic(lower, n):
    return list(lower) + [0] * (n - len(lower)) + [1]


def is_irreducible_exhaustive(f, p) -> bool:
    """Irreducibility by trying every monic divisor of degree <= deg(f)/2."""
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly.mod(f, list(tail) + [1], p):
                return False
    return n >= 1


def is_irreducible_rabin(f, p) -> bool:
    """Irreducibility via gcd(x^(p^i) - x, f) = 1 for 1 <= i <= deg(f)/2."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    xp = _poly.mod(x, f, p)
    for _ in range(n // 2):
        xp = _poly.powmod(xp, p, f, p)
        if len(_poly.gcd(_poly.sub(xp, x, p), f, p)) > 1:
            return False
    return True


def is_irreducible(f, p) -> bool:
    f = _poly.trim(list(f))
    if len(f) - 1 <= 4:
        return is_irreducible_exhaustive(f, p)
    return is_irreducible_rabin(f, p)


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    for code in range(p**n):
        f = _monic(_poly.from_int(code, p), n)
        if is_irreducible(f, p):
            return tuple(f)
    raise ArithmeticError(f"no irreducible polynomial of degree {n} over GF({p})")


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldDescriptor:
    """Return the canonical descriptor of GF(p^n); repeated calls share one object."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    if p >= MAX_PRIME:
        raise ValueError(f"p must be below {MAX_PRIME}, got {p}")
    if not isinstance(n, int) or not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {n!r}")
    return FieldDescriptor(p, n, canonical_modulus(p, n))


@dataclass(frozen=True)
class FieldDescriptor:
    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    @functools.cached_property
    def modulus_array(self) -> np.ndarray:
        arr = np.array(self.modulus, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @functools.cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix M over GF(p) with coeffs(a^p) = M @ coeffs(a)."""
        p, n, f = self.p, self.n, list(self.modulus)
        cols = []
        for j in range(n):
            img = _poly.powmod([0] * j + [1], p, f, p)
            cols.append(img + [0] * (n - len(img)))
        m = np.array(cols, dtype=np.int64).T.copy()
        m.setflags(write=False)
        return m

    @functools.cached_property
    def frobenius_powers(self) -> tuple[np.ndarray, ...]:
        """Matrices of Frobenius^k for k = 0..n-1 (Frobenius has order n)."""
        mats = [np.eye(self.n, dtype=np.int64)]
        for _ in range(self.n - 1):
            mats.append((self.frobenius_matrix @ mats[-1]) % self.p)
        for m in mats:
            m.setflags(write=False)
        return tuple(mats)

    @property
    def frobenius_inverse_matrix(self) -> np.ndarray:
        return self.frobenius_powers[self.n - 1]

    def element(self, coeffs) -> FieldElement:
        if isinstance(coeffs, FieldElement):
            self._check(coeffs)
            return coeffs
        if isinstance(coeffs, (int, np.integer)):
            coeffs = [int(coeffs)]
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.n:
            coeffs = _poly.mod(_poly.trim(coeffs), list(self.modulus), self.p)
        return FieldElement(self, tuple(coeffs + [0] * (self.n - len(coeffs))))

    __call__ = element

    def zero(self) -> FieldElement:
        return self.element([])

    def one(self) -> FieldElement:
        return self.element([1])

    def gen(self) -> FieldElement:
        """The class of t."""
        return self.element([0, 1])

    def from_int(self, code: int) -> FieldElement:
        if not 0 <= code < self.order:
            raise ValueError(f"element code {code} out of range for GF({self.order})")
        return self.element(_poly.from_int(code, self.p))

    def elements(self):
        for code in range(self.order):
            yield self.from_int(code)

    def _check(self, a: FieldElement):
        if a.field != self:
            raise ValueError(f"field mismatch: {a.field} vs {self}")

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data) -> FieldDescriptor:
        field = make_field(int(data["p"]), int(data["n"]))
        if "modulus" in data and tuple(data["modulus"]) != field.modulus:
            raise ValueError(
                f"modulus {data['modulus']} is not the canonical one for "
                f"GF({field.p}^{field.n}): {list(field.modulus)}"
            )
        return field

    def __repr__(self):
        return f"GF({self.p}^{self.n}, modulus={list(self.modulus)})"


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other))
        return NotImplemented

    def _wrap(self, poly) -> FieldElement:
        return self.field.element(poly)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f, p = list(self.field.modulus), self.field.p
        return self._wrap(_poly.mulmod(self._poly(), other._poly(), f, p))

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        f, p = list(self.field.modulus), self.field.p
        return self._wrap(_poly.invmod(self._poly(), f, p))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        f, p = list(self.field.modulus), self.field.p
        return self._wrap(_poly.powmod(self._poly(), e, f, p))

    def frobenius(self) -> FieldElement:
        m = self.field.frobenius_matrix
        v = (m @ np.array(self.coeffs, dtype=np.int64)) % self.field.p
        return FieldElement(self.field, tuple(int(c) for c in v))

    def frobenius_inverse(self) -> FieldElement:
        m = self.field.frobenius_inverse_matrix
        v = (m @ np.array(self.coeffs, dtype=np.int64)) % self.field.p
        return FieldElement(self.field, tuple(int(c) for c in v))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def _poly(self):
        return _poly.trim(list(self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __int__(self):
        return _poly.to_int(self.coeffs, self.field.p)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.field.element(int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coeffs))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def _same(a: FieldElement, b: FieldElement):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same(a, b)
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same(a, b)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()


def frobenius_inverse(a: FieldElement) -> FieldElement:
    return a.frobenius_inverse()


def frobenius_array(field: FieldDescriptor, arr: np.ndarray, power: int = 1) -> np.ndarray:
    """Apply Frobenius ``power`` times (negative for the inverse) to an array
    of shape (..., n) holding element coefficients."""
    m = field.frobenius_powers[power % field.n]
    return (np.asarray(arr, dtype=np.int64) @ m.T) % field.p
