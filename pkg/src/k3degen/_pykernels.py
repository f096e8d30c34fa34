"""Pure-Python row reduction over GF(p^n).

Same interface as the compiled ``_ckernels`` module:

    rref(mat, p, modulus) -> (basis, pivots)
    reduce(vecs, basis, pivots, p, modulus) -> remainders

``mat``/``vecs``/``basis`` are int64 arrays of shape (rows, cols, n), one
coefficient vector per entry. ``modulus`` is the monic modulus, constant
term first, length n + 1.
"""

import numpy as np

from . import _poly

NAME = "python"


def _ops(p, modulus):
    f = [int(c) for c in modulus]
    n = len(f) - 1

    def mul(a, b):
        if n == 1:
            return ((a[0] * b[0]) % p,)
        tmp = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    tmp[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = tmp[k] % p
            if c:
                for j in range(n):
                    tmp[k - n + j] -= c * f[j]
        return tuple(c % p for c in tmp[:n])

    def inv(a):
        if n == 1:
            return (pow(a[0], -1, p),)
        r = _poly.invmod(_poly.trim(list(a)), f, p)
        return tuple(r + [0] * (n - len(r)))

    return n, mul, inv


def _to_rows(mat):
    return [[tuple(int(c) for c in entry) for entry in row] for row in mat]


def _to_array(rows, cols, n):
    out = np.zeros((len(rows), cols, n), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            out[i, j] = entry
    return out


def _axpy(row, c, piv_row, mul, p, start):
    # row <- row - c * piv_row, from column ``start`` on
    for j in range(start, len(row)):
        b = piv_row[j]
        if any(b):
            cb = mul(c, b)
            row[j] = tuple((x - y) % p for x, y in zip(row[j], cb))


def rref(mat, p, modulus):
    mat = np.asarray(mat, dtype=np.int64)
    rows_n, cols = mat.shape[0], mat.shape[1]
    n, mul, inv = _ops(p, modulus)
    if rows_n == 0:
        return np.zeros((0, cols, n), dtype=np.int64), ()
    rows = _to_rows(mat)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows_n:
            break
        piv = None
        for i in range(r, rows_n):
            if any(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead_inv = inv(rows[r][c])
        rows[r] = [mul(lead_inv, e) if any(e) else e for e in rows[r]]
        for i in range(rows_n):
            if i != r and any(rows[i][c]):
                _axpy(rows[i], rows[i][c], rows[r], mul, p, c)
        pivots.append(c)
        r += 1
    return _to_array(rows[:r], cols, n), tuple(pivots)


def reduce(vecs, basis, pivots, p, modulus):
    vecs = np.asarray(vecs, dtype=np.int64)
    n, mul, _ = _ops(p, modulus)
    rows = _to_rows(vecs)
    brows = _to_rows(basis)
    for row in rows:
        for b, c in zip(brows, pivots):
            if any(row[c]):
                _axpy(row, row[c], b, mul, p, 0)
    return _to_array(rows, vecs.shape[1], n)
