# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same storage layout and semantics."""

BACKEND = "cython"

cdef object INF = float("inf")


cdef object _val(object x, object p):
    cdef Py_ssize_t v
    if x == 0:
        return INF
    if p == 2:
        return (x & -x).bit_length() - 1
    v = 0
    while x % p == 0:
        x = x // p
        v += 1
    return v


def combine_column(list rows, list positions, list coeffs, object modulus):
    cdef Py_ssize_t top = max(positions) + 1
    cdef Py_ssize_t r, pos, i
    cdef list col = [0] * top
    cdef list row
    cdef object x, c
    for i in range(len(positions)):
        pos = positions[i]
        c = coeffs[i]
        for r in range(pos + 1):
            row = <list>rows[r]
            x = row[pos - r]
            if x:
                col[r] = col[r] + c * x
    for r in range(top):
        col[r] = col[r] % modulus
    return col


def column_valuation(list rows, Py_ssize_t pos, object p):
    cdef object best = _val((<list>rows[pos])[0], p)
    cdef object x, v
    cdef Py_ssize_t r
    for r in range(pos):
        x = (<list>rows[r])[pos - r]
        if x:
            v = _val(x, p)
            if v < best:
                best = v
    return best


def reduce_above(list rows, Py_ssize_t start, object modulus):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t j, i, off, t, width
    cdef list prow, row
    cdef object piv, x, q, y
    for j in range(start, n):
        prow = <list>rows[j]
        piv = prow[0]
        width = len(prow)
        for i in range(j):
            row = <list>rows[i]
            off = j - i
            x = row[off]
            if x >= piv:
                q = x // piv
                row[off] = x - q * piv
                for t in range(1, width):
                    y = prow[t]
                    if y:
                        row[off + t] = (row[off + t] - q * y) % modulus


def delete_column(list rows, list exps, list taint, Py_ssize_t k, object p, object modulus):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, t, m
    cdef list carry, nxt, piv_row, new_carry
    cdef object x, vx, ey, pv, u, inv, q
    cdef bint ctaint, ntaint
    for i in range(k):
        del (<list>rows[i])[k - i]
    carry = <list>rows[k]
    del carry[0]
    ctaint = taint[k]
    for j in range(k, n - 1):
        nxt = <list>rows[j + 1]
        ntaint = taint[j + 1]
        ey = exps[j + 1]
        x = carry[0]
        m = len(nxt)
        if x == 0:
            rows[j] = nxt
            exps[j] = ey
            taint[j] = ntaint
            del carry[0]
            continue
        vx = _val(x, p)
        new_carry = [None] * (m - 1)
        if vx <= ey:
            pv = p ** vx
            u = x // pv
            if u == 1:
                piv_row = carry
            else:
                inv = pow(u, -1, modulus)
                piv_row = [None] * m
                for t in range(1, m):
                    piv_row[t] = carry[t] * inv % modulus
            piv_row[0] = pv
            q = nxt[0] // pv
            for t in range(1, m):
                new_carry[t - 1] = (nxt[t] - q * piv_row[t]) % modulus
            rows[j] = piv_row
            exps[j] = vx
            taint[j] = ctaint
            ctaint = ctaint or ntaint
        else:
            q = x // nxt[0]
            for t in range(1, m):
                new_carry[t - 1] = (carry[t] - q * nxt[t]) % modulus
            rows[j] = nxt
            exps[j] = ey
            taint[j] = ntaint
            ctaint = ctaint or ntaint
        carry = new_carry
    del rows[n - 1]
    del exps[n - 1]
    del taint[n - 1]
    reduce_above(rows, k, modulus)
