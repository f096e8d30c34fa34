# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over GF(p^n); mirrors ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

ctypedef cnp.int64_t i64

cnp.import_array()

NAME = "cython"


cdef inline i64 _inv_int(i64 a, i64 p) noexcept nogil:
    cdef i64 t = 0, new_t = 1, r = p, new_r = a % p, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


cdef inline bint _nonzero(const i64* a, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        if a[i] != 0:
            return True
    return False


cdef inline int _deg(const i64* a, int size) noexcept nogil:
    cdef int i = size - 1
    while i >= 0 and a[i] == 0:
        i -= 1
    return i


cdef void _fmul(const i64* a, const i64* b, i64* out, i64* tmp,
                const i64* f, int n, i64 p) noexcept nogil:
    cdef int i, j, k
    cdef i64 c, x
    if n == 1:
        out[0] = (a[0] * b[0]) % p
        return
    memset(tmp, 0, (2 * n - 1) * sizeof(i64))
    for i in range(n):
        x = a[i]
        if x == 0:
            continue
        for j in range(n):
            tmp[i + j] = (tmp[i + j] + x * b[j]) % p
    for k in range(2 * n - 2, n - 1, -1):
        c = tmp[k]
        if c == 0:
            continue
        c = p - c
        for j in range(n):
            tmp[k - n + j] = (tmp[k - n + j] + c * f[j]) % p
        tmp[k] = 0
    memcpy(out, tmp, n * sizeof(i64))


cdef void _finv(const i64* a, i64* out, i64* work,
                const i64* f, int n, i64 p) noexcept nogil:
    # Extended Euclid keeping r_i = s_i * a (mod f); work holds 4 * (2n + 2) words.
    cdef int size = 2 * n + 2
    cdef i64* r0 = work
    cdef i64* r1 = work + size
    cdef i64* s0 = work + 2 * size
    cdef i64* s1 = work + 3 * size
    cdef i64* sw
    cdef int d0, d1, sh, j
    cdef i64 c, li
    if n == 1:
        out[0] = _inv_int(a[0], p)
        return
    memset(work, 0, 4 * size * sizeof(i64))
    for j in range(n + 1):
        r0[j] = f[j]
    for j in range(n):
        r1[j] = a[j]
    s1[0] = 1
    d1 = _deg(r1, size)
    while d1 > 0:
        d0 = _deg(r0, size)
        li = _inv_int(r1[d1], p)
        while d0 >= d1:
            sh = d0 - d1
            c = (r0[d0] * li) % p
            c = p - c
            for j in range(d1 + 1):
                r0[sh + j] = (r0[sh + j] + c * r1[j]) % p
            for j in range(size - sh):
                if s1[j] != 0:
                    s0[sh + j] = (s0[sh + j] + c * s1[j]) % p
            d0 = _deg(r0, size)
        sw = r0; r0 = r1; r1 = sw
        sw = s0; s0 = s1; s1 = sw
        d1 = _deg(r1, size)
    li = _inv_int(r1[0], p)
    for j in range(n):
        out[j] = (s1[j] * li) % p


cdef void _axpy(i64* row, const i64* c, const i64* prow, int start, int cols,
                i64* prod, i64* tmp, const i64* f, int n, i64 p) noexcept nogil:
    # row <- row - c * prow, entries from column ``start`` on
    cdef int j, k
    cdef i64* e
    for j in range(start, cols):
        if not _nonzero(prow + j * n, n):
            continue
        _fmul(c, prow + j * n, prod, tmp, f, n, p)
        e = row + j * n
        for k in range(n):
            e[k] = (e[k] - prod[k] + p) % p


def rref(mat, p, modulus):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] m = np.ascontiguousarray(mat, dtype=np.int64).copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] fm = np.ascontiguousarray(modulus, dtype=np.int64)
    cdef int rows = m.shape[0], cols = m.shape[1], n = fm.shape[0] - 1
    cdef i64 pp = p
    cdef int r = 0, c, i, piv, rowlen = cols * n
    cdef i64* data
    cdef i64* buf
    cdef i64* tmp
    cdef i64* prod
    cdef i64* lead
    cdef i64* factor
    cdef i64* work
    cdef const i64* f = &fm[0]
    pivots = []
    if rows == 0:
        return np.zeros((0, cols, n), dtype=np.int64), ()
    data = &m[0, 0, 0]
    buf = <i64*> malloc((rowlen + 2 * n + 3 * n + 4 * (2 * n + 2)) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    tmp = buf + rowlen
    prod = tmp + 2 * n
    lead = prod + n
    factor = lead + n
    work = factor + n
    try:
        with nogil:
            for c in range(cols):
                if r == rows:
                    break
                piv = -1
                for i in range(r, rows):
                    if _nonzero(data + i * rowlen + c * n, n):
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    memcpy(buf, data + piv * rowlen, rowlen * sizeof(i64))
                    memcpy(data + piv * rowlen, data + r * rowlen, rowlen * sizeof(i64))
                    memcpy(data + r * rowlen, buf, rowlen * sizeof(i64))
                _finv(data + r * rowlen + c * n, lead, work, f, n, pp)
                for i in range(c, cols):
                    if _nonzero(data + r * rowlen + i * n, n):
                        _fmul(lead, data + r * rowlen + i * n, prod, tmp, f, n, pp)
                        memcpy(data + r * rowlen + i * n, prod, n * sizeof(i64))
                for i in range(rows):
                    if i != r and _nonzero(data + i * rowlen + c * n, n):
                        memcpy(factor, data + i * rowlen + c * n, n * sizeof(i64))
                        _axpy(data + i * rowlen, factor, data + r * rowlen, c, cols,
                              prod, tmp, f, n, pp)
                with gil:
                    pivots.append(c)
                r += 1
    finally:
        free(buf)
    return m[:r].copy(), tuple(pivots)


def reduce(vecs, basis, pivots, p, modulus):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] v = np.ascontiguousarray(vecs, dtype=np.int64).copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] fm = np.ascontiguousarray(modulus, dtype=np.int64)
    cdef int k = v.shape[0], cols = v.shape[1], n = fm.shape[0] - 1
    cdef int d = len(pivots)
    if k == 0 or d == 0:
        return v
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] b = np.ascontiguousarray(basis, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] pv = np.asarray(pivots, dtype=np.int64)
    cdef i64 pp = p
    cdef int rowlen = cols * n, i, j
    cdef i64* vd = &v[0, 0, 0]
    cdef i64* bd = &b[0, 0, 0]
    cdef const i64* f = &fm[0]
    cdef i64* buf = <i64*> malloc(4 * n * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef i64* tmp = buf
    cdef i64* prod = buf + 2 * n
    cdef i64* factor = buf + 3 * n
    try:
        with nogil:
            for i in range(k):
                for j in range(d):
                    if _nonzero(vd + i * rowlen + pv[j] * n, n):
                        memcpy(factor, vd + i * rowlen + pv[j] * n, n * sizeof(i64))
                        _axpy(vd + i * rowlen, factor, bd + j * rowlen, 0, cols,
                              prod, tmp, f, n, pp)
    finally:
        free(buf)
    return v
