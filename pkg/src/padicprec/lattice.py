"""Exact echelon forms of lattices over the p-adic integers.

Generators are given as rows of rationals (``int`` or ``Fraction``).  The
result is the canonical Hermite form over ``Z_(p)``: upper triangular, pivots
``p**k``, and every entry above a pivot reduced to the canonical
representative modulo that pivot.  Used by the precision queries; the
running tracker relies on the faster kernels instead.
"""

from __future__ import annotations

from fractions import Fraction

from .core import INF, split_rational, valuation
from .errors import DeficientRank


def rational_valuation(q, p: int):
    if q == 0:
        return INF
    if isinstance(q, int):
        return valuation(q, p)
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def canonical_residue(x, p: int, k: int):
    """The representative of ``x mod p**k Z_p`` in ``p**-t * [0, p**(k+t))``."""
    if x == 0:
        return 0
    if isinstance(x, int):
        return x % p**k if k >= 0 else 0
    num, den = x.numerator, x.denominator
    t = valuation(den, p)
    w = den // p**t
    if k + t <= 0:
        return 0
    mod = p ** (k + t)
    r = num * pow(w, -1, mod) % mod
    return Fraction(r, p**t) if t else r


def hnf(rows, p: int, ncols: int | None = None):
    """Echelonize the lattice generated by ``rows`` over ``Z_(p)``.

    Returns the list of nonzero echelon rows; raises :class:`DeficientRank`
    if the lattice does not have full rank in ``ncols`` columns.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    work = [[Fraction(x) if not isinstance(x, int) else x for x in r] for r in rows]
    out = []
    for j in range(ncols):
        best, best_v = None, INF
        for idx, r in enumerate(work):
            x = r[j]
            if x != 0:
                v = rational_valuation(x, p)
                if v < best_v:
                    best, best_v = idx, v
        if best is None:
            raise DeficientRank(f"projected module has rank < {ncols}")
        prow = work.pop(best)
        # scale so the pivot becomes exactly p**best_v
        _, num, den = split_rational(prow[j], p)
        unit = Fraction(num, den)
        prow = [x / unit if x else 0 for x in prow]
        prow = [_tidy(x) for x in prow]
        pivot = prow[j]
        rest = []
        for r in work:
            x = r[j]
            if x != 0:
                q = _tidy(Fraction(x) / pivot)
                r = [_tidy(a - q * b) for a, b in zip(r, prow)]
            if any(r[j + 1 :]):
                rest.append(r)
        work = rest
        out.append(prow)
    # reduce entries above each pivot, left to right
    for j in range(ncols):
        k = rational_valuation(out[j][j], p)
        for i in range(j):
            x = out[i][j]
            r = canonical_residue(x, p, k)
            if r != x:
                q = _tidy((Fraction(x) - r) / out[j][j])
                out[i] = [_tidy(a - q * b) for a, b in zip(out[i], out[j])]
                out[i][j] = r
    return out


def _tidy(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def column_min_valuations(matrix, p: int):
    n = len(matrix[0]) if matrix else 0
    return [min(rational_valuation(r[j], p) for r in matrix) for j in range(n)]


def diffused_digits(matrix, p: int) -> int:
    """Length of ``H0/H`` for the lattice ``H`` spanned by an echelon ``matrix``."""
    pivots = sum(rational_valuation(matrix[i][i], p) for i in range(len(matrix)))
    return pivots - sum(column_min_valuations(matrix, p))
