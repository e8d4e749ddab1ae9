"""Pure-Python echelon kernels for the capped lattice tracker.

The matrix is upper triangular and stored row-wise, with row ``i`` holding the
entries of columns ``i .. n-1`` (so ``rows[i][0]`` is the pivot).  Entries are
nonnegative integers below ``modulus``; pivots are pure powers of ``p``.

``_ckernels.pyx`` is a line-for-line compiled twin of this module; keep the two
in sync.
"""

from .core import valuation

BACKEND = "python"


def combine_column(rows, positions, coeffs, modulus):
    """Return ``sum(coeffs[i] * column(positions[i])) mod modulus``.

    The result has ``max(positions) + 1`` entries; rows below every input
    column are zero by triangularity and are omitted.
    """
    top = max(positions) + 1
    col = [0] * top
    for pos, c in zip(positions, coeffs):
        for r in range(pos + 1):
            x = rows[r][pos - r]
            if x:
                col[r] += c * x
    return [x % modulus for x in col]


def column_valuation(rows, pos, p):
    """Minimum p-adic valuation over column ``pos``."""
    best = valuation(rows[pos][0], p)
    for r in range(pos):
        x = rows[r][pos - r]
        if x:
            v = valuation(x, p)
            if v < best:
                best = v
    return best


def reduce_above(rows, start, modulus):
    """Reduce every entry above the pivots of columns ``start..`` into ``[0, pivot)``."""
    n = len(rows)
    for j in range(start, n):
        prow = rows[j]
        piv = prow[0]
        width = len(prow)
        for i in range(j):
            row = rows[i]
            off = j - i
            x = row[off]
            if x >= piv:
                q = x // piv
                row[off] = x - q * piv
                for t in range(1, width):
                    y = prow[t]
                    if y:
                        row[off + t] = (row[off + t] - q * y) % modulus


def delete_column(rows, exps, taint, k, p, modulus):
    """Erase column ``k`` and restore the echelon form in place.

    Only the trailing block starting at ``k`` is re-echelonized: the row that
    lost its pivot is carried downwards, and at each column it is combined
    with the next pivot row so that the entry of smaller valuation becomes the
    pivot (ties go to the carried, earlier row).  The carried row ends up
    empty and is dropped.  Taint flags of combined rows are OR-ed.
    """
    n = len(rows)
    for i in range(k):
        del rows[i][k - i]
    carry = rows[k]
    del carry[0]
    ctaint = taint[k]
    for j in range(k, n - 1):
        nxt = rows[j + 1]
        ntaint = taint[j + 1]
        ey = exps[j + 1]
        x = carry[0]
        if x == 0:
            rows[j] = nxt
            exps[j] = ey
            taint[j] = ntaint
            del carry[0]
            continue
        vx = valuation(x, p)
        if vx <= ey:
            pv = p**vx
            u = x // pv
            if u == 1:
                piv_row = carry
                piv_row[0] = pv
            else:
                inv = pow(u, -1, modulus)
                piv_row = [e * inv % modulus for e in carry]
                piv_row[0] = pv
            q = nxt[0] // pv
            carry = [(b - q * a) % modulus for a, b in zip(piv_row[1:], nxt[1:])]
            rows[j] = piv_row
            exps[j] = vx
            taint[j] = ctaint
            ctaint = ctaint or ntaint
        else:
            q = x // nxt[0]
            carry = [(a - q * b) % modulus for a, b in zip(carry[1:], nxt[1:])]
            rows[j] = nxt
            exps[j] = ey
            taint[j] = ntaint
            ctaint = ctaint or ntaint
    del rows[n - 1]
    del exps[n - 1]
    del taint[n - 1]
    reduce_above(rows, k, modulus)
