"""Dense polynomial helpers over GF(p).

Polynomials are lists of ints in [0, p), constant term first. The zero
polynomial is the empty list; every other polynomial has a nonzero last
entry. These helpers back both :mod:`k3degen.gf` and the pure-Python kernel.
"""


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a):
    return len(a) - 1


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv_lead % p
        q[shift] = c
        for j, y in enumerate(b):
            r[shift + j] = (r[shift + j] - c * y) % p
        trim(r)
    return trim(q), r


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def mulmod(a, b, f, p):
    return mod(mul(a, b, p), f, p)


def powmod(a, e, f, p):
    result = [1]
    base = mod(a, f, p)
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return mod(result, f, p)


def invmod(a, f, p):
    """Inverse of ``a`` modulo the irreducible ``f`` (extended Euclid)."""
    r0, r1 = trim(list(f)), trim(list(a))
    s0, s1 = [], [1]
    if not r1:
        raise ZeroDivisionError("inverse of zero")
    while len(r1) > 1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        if not r1:
            raise ZeroDivisionError("element is not invertible modulo f")
    inv = pow(r1[0], -1, p)
    return mod([c * inv % p for c in s1], f, p)


def from_int(code, p):
    """Base-p digits of ``code``, least significant first."""
    out = []
    while code:
        code, d = divmod(code, p)
        out.append(d)
    return out


def to_int(a, p):
    code = 0
    for c in reversed(a):
        code = code * p + c
    return code
