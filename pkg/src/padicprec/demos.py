"""Generic algorithms that run unchanged over every ring mode.

Nothing here knows about precision tracking: the same code is executed with
interval (CR) elements and with tracked (LC/LF) elements, which is the point
of the comparison.  Coefficients may be ring elements or plain integers.
"""

from __future__ import annotations

import random
from itertools import permutations

from .elements import PAdicElement, PAdicRing, random_element


def _is_zero(c) -> bool:
    if isinstance(c, PAdicElement):
        return c.is_zero()
    return c == 0


def _fmt(c) -> str:
    if isinstance(c, PAdicElement):
        return str(c) if not c.is_zero() else "0"
    return str(c)


class Poly:
    """Dense univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PAdicRing, coeffs):
        self.ring = ring
        self.coeffs = list(coeffs)

    @classmethod
    def x(cls, ring):
        return cls(ring, [0, 1])

    def degree(self) -> int:
        """Index of the highest coefficient distinguishable from zero (-1 if none)."""
        return _degree(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading_coefficient(self):
        d = self.degree()
        return self.coeffs[d] if d >= 0 else 0

    def truncate(self, n: int) -> "Poly":
        """Terms of degree below ``n``."""
        return Poly(self.ring, self.coeffs[:n])

    def shift(self, k: int) -> "Poly":
        return Poly(self.ring, [0] * k + self.coeffs)

    def __bool__(self):
        return self.degree() >= 0

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.degree() < 0
        if isinstance(other, Poly):
            return (self - other).degree() < 0
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [_add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [_sub(self[i], other[i]) for i in range(n)])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.ring, [_mul(c, other) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.ring, [])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_exact_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = _add(out[i + j], _mul(x, y))
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def quo_rem(self, other: "Poly"):
        """Schoolbook division; the cancelled leading term is dropped, not computed."""
        q, r = self._divide(other, True)
        return q, r

    def _divide(self, other: "Poly", want_quotient: bool):
        db = other.degree()
        if db < 0:
            raise ZeroDivisionError("division by a polynomial indistinguishable from zero")
        lb = other.coeffs[db]
        body = other.coeffs[:db]
        qc = []
        r = list(self.coeffs)
        while True:
            dr = _degree(r)
            if dr < db:
                del r[dr + 1 :]
                return Poly(self.ring, qc), Poly(self.ring, r)
            c = _div(r[dr], lb)
            del r[dr:]
            k = dr - db
            # each product is consumed at once, so temporaries die young
            for j, b in enumerate(body):
                r[j + k] = _sub(r[j + k], _mul(c, b))
            if want_quotient:
                if len(qc) <= k:
                    qc.extend([0] * (k + 1 - len(qc)))
                qc[k] = c

    def __mod__(self, other: "Poly") -> "Poly":
        return self._divide(other, False)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self._divide(other, True)[0]

    def monic(self) -> "Poly":
        d = self.degree()
        if d < 0:
            raise ZeroDivisionError("the zero polynomial has no monic form")
        lc = self.coeffs[d]
        return Poly(self.ring, [_div(c, lc) for c in self.coeffs[:d]] + [1])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = _add(_mul(acc, x), c)
        return acc

    def __str__(self):
        d = self.degree()
        if d < 0:
            return "0"
        terms = []
        for i in range(d, -1, -1):
            c = self.coeffs[i]
            if _is_exact_zero(c):
                continue
            s = _fmt(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(s)
            elif _is_exact_one(c):
                terms.append(mono)
            else:
                terms.append(f"{s}*{mono}")
        return " + ".join(terms)


def _degree(coeffs) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        if not _is_zero(coeffs[i]):
            return i
    return -1


def _is_exact_zero(c) -> bool:
    return not isinstance(c, PAdicElement) and c == 0


def _is_exact_one(c) -> bool:
    return not isinstance(c, PAdicElement) and c == 1


def _add(a, b):
    if _is_exact_zero(a):
        return b
    if _is_exact_zero(b):
        return a
    return a + b


def _sub(a, b):
    if _is_exact_zero(b):
        return a
    return a - b


def _mul(a, b):
    if _is_exact_zero(a) or _is_exact_zero(b):
        return 0
    if not isinstance(a, PAdicElement) and a == 1:
        return b
    if not isinstance(b, PAdicElement) and b == 1:
        return a
    return a * b


def _div(a, b):
    if _is_exact_zero(a):
        return 0
    if not isinstance(b, PAdicElement) and b == 1:
        return a
    return a / b


class Mat:
    """Square matrix of ring elements (or integers), row-major."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: PAdicRing, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, ring, n: int) -> "Mat":
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "Mat") -> "Mat":
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = _add(acc, _mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return Mat(self.ring, out)

    def det(self):
        return det(self)

    def charpoly(self) -> Poly:
        return charpoly(self)

    def __str__(self):
        cells = [[_fmt(c) for c in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def somos4(u0, u1, u2, u3, n: int):
    a, b, c, d = u0, u1, u2, u3
    for _ in range(4, n + 1):
        a, b, c, d = b, c, d, (b * d + c * c) / a
    return d


def euclid_gcd(A: Poly, B: Poly) -> Poly:
    while B != 0:
        A, B = B, A % B
    return A.monic()


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(M: Mat):
    """Determinant by the Leibniz expansion for small sizes, Berkowitz otherwise.

    Both are division free; the expansion is used when cheap so that it is a
    genuinely different computation from the characteristic polynomial.
    """
    n = M.dim
    if n > 5:
        c0 = charpoly(M)[0]
        return c0 if n % 2 == 0 else _sub(0, c0)
    total = 0
    for perm in permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = _mul(term, M.rows[i][j])
        if _perm_sign(perm) > 0:
            total = _add(total, term)
        else:
            total = _sub(total, term)
    return total


def charpoly(M: Mat) -> Poly:
    """``det(x*I - M)`` by Berkowitz's division-free algorithm."""
    n = M.dim
    A = M.rows
    if n == 0:
        return Poly(M.ring, [1])
    vect = [1, _sub(0, A[0][0])]  # high degree first
    for r in range(1, n):
        a = A[r][r]
        R = A[r][:r]
        C = [A[i][r] for i in range(r)]
        # first column of the Toeplitz matrix: 1, -a, -R C, -R M C, ...
        col = [1, _sub(0, a)]
        v = R
        for k in range(r):
            t = 0
            for x, y in zip(v, C):
                t = _add(t, _mul(x, y))
            col.append(_sub(0, t))
            if k < r - 1:
                v = [_dot(v, [A[i][j] for i in range(r)]) for j in range(r)]
        new = []
        for i in range(r + 2):
            acc = 0
            for j in range(min(i, r) + 1):
                acc = _add(acc, _mul(col[i - j], vect[j]))
            new.append(acc)
        vect = new
    return Poly(M.ring, list(reversed(vect)))


def _dot(u, w):
    acc = 0
    for x, y in zip(u, w):
        acc = _add(acc, _mul(x, y))
    return acc


# -- seeded inputs -------------------------------------------------------------


def random_matrix(ring: PAdicRing, dim: int, prec: int, rng: random.Random, unit: bool = False) -> Mat:
    """Seeded random matrix with uniform (or, if ``unit``, invertible) entries."""
    return Mat(ring, [[random_element(ring, prec, rng, unit=unit) for _ in range(dim)] for _ in range(dim)])


def random_poly(ring: PAdicRing, degree: int, prec: int, rng: random.Random) -> Poly:
    return Poly(ring, [random_element(ring, prec, rng) for _ in range(degree + 1)])


def mat_mul_chain(ring: PAdicRing, seed, count: int, dim: int = 2, prec: int = 5) -> Mat:
    """Product of ``count`` seeded random matrices of precision ``prec``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    M = random_matrix(ring, dim, prec, rng)
    for _ in range(count - 1):
        M = M * random_matrix(ring, dim, prec, rng)
    return M


def gcd_inputs(ring: PAdicRing, seed, degree: int = 10, prec: int = 5, ddegree: int = 5, dprec: int = 8):
    """``(D*P, D*Q, D)`` with random ``P, Q`` and monic ``D``, all seeded."""
    rng = random.Random(seed)
    P = random_poly(ring, degree, prec, rng)
    Q = random_poly(ring, degree, prec, rng)
    D = Poly(ring, random_poly(ring, ddegree - 1, dprec, rng).coeffs + [1])
    return D * P, D * Q, D
