"""Scalar p-adic arithmetic.

Two value types live here:

* :class:`PAdicApprox` -- a p-adic number known modulo ``p**prec``, stored as
  ``mantissa * p**val`` with ``p`` not dividing the mantissa.
* :class:`FloatPAdic` -- a floating point p-adic number: a unit mantissa with a
  fixed number of digits and an exponent.  Every operation truncates the
  mantissa back to that number of digits.

Nothing in this module knows about precision tracking; the interval rules and
the lattice machinery are built on top of these types.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByIndistinguishableZero, DivisionByZero

INF = math.inf

__all__ = [
    "INF",
    "valuation",
    "split_rational",
    "PAdicApprox",
    "FloatPAdic",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "float_arith",
    "render_digits",
    "parse_digits",
]


def valuation(x: int, p: int):
    """Return the p-adic valuation of the integer ``x`` (``INF`` for zero)."""
    if x == 0:
        return INF
    if p == 2:
        return (x & -x).bit_length() - 1
    if x % p:
        return 0
    # Strip p**(2**k) blocks first so huge valuations stay cheap.
    v = 0
    powers = [p]
    while x % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    for k in range(len(powers) - 1, -1, -1):
        pk = powers[k]
        while x % pk == 0:
            x //= pk
            v += 1 << k
    return v


def split_rational(q, p: int):
    """Write a nonzero rational as ``p**v * num / den`` with ``p`` prime to ``num*den``.

    Returns ``(v, num, den)``; ``den`` is positive.
    """
    if isinstance(q, int):
        num, den = q, 1
    else:
        num, den = q.numerator, q.denominator
    if num == 0:
        raise ValueError("zero has no unit part")
    vn = valuation(num, p)
    vd = valuation(den, p)
    if vn:
        num //= p**vn
    if vd:
        den //= p**vd
    return vn - vd, num, den


class PAdicApprox:
    """A p-adic number ``mantissa * p**val`` known modulo ``p**prec``.

    ``prec`` may be ``INF`` for exact values; exact values keep a signed
    mantissa so that negative integers stay exact.  A zero (exact or known
    only modulo ``p**prec``) has ``mantissa == 0`` and ``val == INF``.
    """

    __slots__ = ("p", "mantissa", "val", "prec")

    def __init__(self, p: int, mantissa: int, val, prec):
        self.p = p
        self.mantissa = mantissa
        self.val = val
        self.prec = prec

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, p: int, prec=INF) -> "PAdicApprox":
        return cls(p, 0, INF, prec)

    @classmethod
    def from_scaled(cls, p: int, s: int, e: int, prec) -> "PAdicApprox":
        """Normalize the exact value ``s * p**e`` and reduce it modulo ``p**prec``."""
        if s == 0:
            return cls(p, 0, INF, prec)
        vs = valuation(s, p)
        v = e + vs
        if v >= prec:
            return cls(p, 0, INF, prec)
        m = s // p**vs if vs else s
        if prec != INF:
            m %= p ** (prec - v)
        return cls(p, m, v, prec)

    @classmethod
    def from_rational(cls, p: int, q, prec=INF) -> "PAdicApprox":
        """Expand an exact rational ``q`` modulo ``p**prec``.

        Exact results (``prec == INF``) require a p-power denominator.
        """
        if not isinstance(q, Rational):
            raise TypeError(f"cannot convert {type(q).__name__} to a p-adic number")
        if q == 0:
            return cls(p, 0, INF, prec)
        v, num, den = split_rational(q, p)
        if v >= prec:
            return cls(p, 0, INF, prec)
        if prec == INF:
            if den != 1:
                raise ValueError(f"{q} has no finite {p}-adic expansion; give a precision")
            return cls(p, num, v, INF)
        mod = p ** (prec - v)
        m = num * pow(den, -1, mod) % mod if den != 1 else num % mod
        return cls(p, m, v, prec)

    # -- queries ------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec == INF

    def is_zero(self, prec=None) -> bool:
        """True when the value is indistinguishable from zero at ``prec``."""
        if prec is None:
            prec = self.prec
        return self.mantissa == 0 or self.val >= prec

    def effective_val(self):
        """Valuation lower bound usable in interval rules: ``min(val, prec)``."""
        return self.val if self.val < self.prec else self.prec

    def relative_precision(self):
        if self.mantissa == 0:
            return 0
        return self.prec - self.val

    def rational(self):
        """The representative as an exact ``int`` or ``Fraction``."""
        if self.mantissa == 0:
            return 0
        if self.val >= 0:
            return self.mantissa * self.p**self.val
        return Fraction(self.mantissa, self.p ** (-self.val))

    def residue(self) -> int:
        """The integer representative in ``[0, p**prec)`` (needs ``val >= 0``)."""
        if self.mantissa == 0:
            return 0
        if self.val < 0:
            raise ValueError("value has negative valuation")
        x = self.mantissa * self.p**self.val
        return x % self.p**self.prec if self.prec != INF else x

    def reduce(self, prec) -> "PAdicApprox":
        """Drop digits at or above ``p**prec`` (no-op if already coarser)."""
        if prec >= self.prec:
            return self
        if self.mantissa == 0 or self.val >= prec:
            return PAdicApprox(self.p, 0, INF, prec)
        return PAdicApprox(self.p, self.mantissa % self.p ** (prec - self.val), self.val, prec)

    def check(self) -> None:
        """Assert the normalization invariants."""
        if self.mantissa == 0:
            assert self.val == INF, "zero must carry infinite valuation"
            return
        assert self.mantissa % self.p != 0, "mantissa divisible by p"
        assert self.val < self.prec, "valuation at or beyond precision"
        if self.prec != INF:
            assert 0 <= self.mantissa < self.p ** (self.prec - self.val)

    def __eq__(self, other):
        if not isinstance(other, PAdicApprox):
            return NotImplemented
        return (self.p, self.mantissa, self.val, self.prec) == (
            other.p,
            other.mantissa,
            other.val,
            other.prec,
        )

    def __hash__(self):
        return hash((self.p, self.mantissa, self.val, self.prec))

    def __repr__(self):
        return f"PAdicApprox(p={self.p}, mantissa={self.mantissa}, val={self.val}, prec={self.prec})"

    def __str__(self):
        return render_digits(self)


def _aligned(a: PAdicApprox, b: PAdicApprox):
    """Return ``(sa, sb, e)`` with ``a = sa*p**e`` and ``b = sb*p**e`` exactly."""
    if a.p != b.p:
        raise ValueError("operands have different primes")
    if a.mantissa == 0:
        return 0, b.mantissa, (b.val if b.mantissa else 0)
    if b.mantissa == 0:
        return a.mantissa, 0, a.val
    e = min(a.val, b.val)
    return a.mantissa * a.p ** (a.val - e), b.mantissa * b.p ** (b.val - e), e


def add(a: PAdicApprox, b: PAdicApprox, prec) -> PAdicApprox:
    sa, sb, e = _aligned(a, b)
    return PAdicApprox.from_scaled(a.p, sa + sb, e, prec)


def sub(a: PAdicApprox, b: PAdicApprox, prec) -> PAdicApprox:
    sa, sb, e = _aligned(a, b)
    return PAdicApprox.from_scaled(a.p, sa - sb, e, prec)


def mul(a: PAdicApprox, b: PAdicApprox, prec) -> PAdicApprox:
    if a.p != b.p:
        raise ValueError("operands have different primes")
    if a.mantissa == 0 or b.mantissa == 0:
        return PAdicApprox.zero(a.p, prec)
    return PAdicApprox.from_scaled(a.p, a.mantissa * b.mantissa, a.val + b.val, prec)


def div(a: PAdicApprox, b: PAdicApprox, prec) -> PAdicApprox:
    """``a / b`` modulo ``p**prec``.

    Raises :class:`DivisionByIndistinguishableZero` when ``b`` is zero at its
    own precision.
    """
    if a.p != b.p:
        raise ValueError("operands have different primes")
    if b.is_zero():
        raise DivisionByIndistinguishableZero()
    if a.mantissa == 0:
        return PAdicApprox.zero(a.p, prec)
    v = a.val - b.val
    if v >= prec:
        return PAdicApprox.zero(a.p, prec)
    if prec == INF:
        if b.mantissa not in (1, -1):
            raise ValueError("exact division needs a finite target precision")
        return PAdicApprox(a.p, a.mantissa * b.mantissa, v, INF)
    mod = a.p ** (prec - v)
    return PAdicApprox(a.p, a.mantissa * pow(b.mantissa, -1, mod) % mod, v, prec)


def neg(a: PAdicApprox) -> PAdicApprox:
    if a.mantissa == 0:
        return a
    if a.prec == INF:
        return PAdicApprox(a.p, -a.mantissa, a.val, INF)
    mod = a.p ** (a.prec - a.val)
    return PAdicApprox(a.p, (-a.mantissa) % mod, a.val, a.prec)


# ---------------------------------------------------------------------------
# floating point p-adics


class FloatPAdic:
    """``mantissa * p**exponent`` with a unit mantissa of ``digits`` digits.

    The exact zero is ``mantissa == 0, exponent == INF``.
    """

    __slots__ = ("p", "mantissa", "exponent", "digits")

    def __init__(self, p: int, mantissa: int, exponent, digits: int):
        self.p = p
        self.mantissa = mantissa
        self.exponent = exponent
        self.digits = digits

    @classmethod
    def zero(cls, p: int, digits: int) -> "FloatPAdic":
        return cls(p, 0, INF, digits)

    @classmethod
    def from_scaled(cls, p: int, s: int, e: int, digits: int) -> "FloatPAdic":
        """Round the exact value ``s * p**e`` to ``digits`` mantissa digits."""
        if s == 0:
            return cls(p, 0, INF, digits)
        if s % p:
            return cls(p, s % p**digits, e, digits)
        vs = valuation(s, p)
        return cls(p, (s // p**vs) % p**digits, e + vs, digits)

    @classmethod
    def from_rational(cls, p: int, q, digits: int) -> "FloatPAdic":
        if q == 0:
            return cls(p, 0, INF, digits)
        v, num, den = split_rational(q, p)
        mod = p**digits
        if den != 1:
            num *= pow(den, -1, mod)
        return cls(p, num % mod, v, digits)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def val(self):
        return self.exponent

    def rational(self):
        if self.mantissa == 0:
            return 0
        if self.exponent >= 0:
            return self.mantissa * self.p**self.exponent
        return Fraction(self.mantissa, self.p ** (-self.exponent))

    def _check_compatible(self, other: "FloatPAdic"):
        if self.p != other.p or self.digits != other.digits:
            raise ValueError("floating p-adics with different prime or digit count")

    def _combine(self, other: "FloatPAdic", sign: int) -> "FloatPAdic":
        self._check_compatible(other)
        if other.mantissa == 0:
            return self
        if self.mantissa == 0:
            return other if sign > 0 else -other
        e = min(self.exponent, other.exponent)
        s = self.mantissa * self.p ** (self.exponent - e) + sign * other.mantissa * other.p ** (
            other.exponent - e
        )
        return FloatPAdic.from_scaled(self.p, s, e, self.digits)

    def __add__(self, other: "FloatPAdic") -> "FloatPAdic":
        return self._combine(other, 1)

    def __neg__(self) -> "FloatPAdic":
        if self.mantissa == 0:
            return self
        return FloatPAdic(self.p, (-self.mantissa) % self.p**self.digits, self.exponent, self.digits)

    def __sub__(self, other: "FloatPAdic") -> "FloatPAdic":
        # subtract the representatives directly so that x - x is exactly zero
        return self._combine(other, -1)

    def __mul__(self, other: "FloatPAdic") -> "FloatPAdic":
        self._check_compatible(other)
        if self.mantissa == 0 or other.mantissa == 0:
            return FloatPAdic(self.p, 0, INF, self.digits)
        return FloatPAdic(
            self.p,
            self.mantissa * other.mantissa % self.p**self.digits,
            self.exponent + other.exponent,
            self.digits,
        )

    def __truediv__(self, other: "FloatPAdic") -> "FloatPAdic":
        self._check_compatible(other)
        if other.mantissa == 0:
            raise DivisionByZero("division of a floating p-adic by exact zero")
        if self.mantissa == 0:
            return self
        mod = self.p**self.digits
        return FloatPAdic(
            self.p,
            self.mantissa * pow(other.mantissa, -1, mod) % mod,
            self.exponent - other.exponent,
            self.digits,
        )

    def __eq__(self, other):
        if not isinstance(other, FloatPAdic):
            return NotImplemented
        return (self.p, self.mantissa, self.exponent, self.digits) == (
            other.p,
            other.mantissa,
            other.exponent,
            other.digits,
        )

    def __hash__(self):
        return hash((self.p, self.mantissa, self.exponent, self.digits))

    def __repr__(self):
        if self.mantissa == 0:
            return f"FloatPAdic(0, p={self.p})"
        return f"FloatPAdic({self.mantissa}*{self.p}^{self.exponent}, digits={self.digits})"


_FLOAT_OPS = {
    "+": FloatPAdic.__add__,
    "-": FloatPAdic.__sub__,
    "*": FloatPAdic.__mul__,
    "/": FloatPAdic.__truediv__,
}


def float_arith(op: str, a: FloatPAdic, b: FloatPAdic) -> FloatPAdic:
    """Apply one of ``+ - * /`` to two floating p-adics."""
    try:
        fn = _FLOAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)


# ---------------------------------------------------------------------------
# digit strings

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
ELLIPSIS = "…"


def _digit_string(x: int, p: int, width: int) -> str:
    out = []
    for _ in range(width):
        x, d = divmod(x, p)
        out.append(_DIGITS[d] if p <= len(_DIGITS) else f"[{d}]")
    return "".join(reversed(out))


def render_digits(a: PAdicApprox, ascii: bool = False) -> str:
    """Render ``a`` as ``…d_{N-1}…d_0[.d_{-1}…d_v]`` in base ``p``.

    Exactly ``prec`` digits appear left of the radix mark.  A value with no
    digit known at or above ``p**0`` prints as ``0`` when it is
    indistinguishable from zero.
    """
    dots = "..." if ascii else ELLIPSIS
    p = a.p
    if a.prec == INF:
        if a.mantissa == 0:
            return "0"
        if a.mantissa < 0:
            raise ValueError("negative exact values have no finite digit expansion")
        if a.val >= 0:
            x = a.mantissa * p**a.val
            return _digit_string(x, p, _ndigits(x, p))
        frac = -a.val
        width = max(_ndigits(a.mantissa, p), frac + 1)
        s = _digit_string(a.mantissa, p, width)
        return s[:-frac] + "." + s[-frac:]
    N = a.prec
    if a.mantissa == 0 or a.val >= 0:
        if N <= 0:
            return "0"
        return dots + _digit_string(a.residue() if a.mantissa else 0, p, N)
    # negative valuation: digits from position N-1 down to val
    frac = -a.val
    if N <= 0:
        s = _digit_string(a.mantissa, p, N - a.val)
        return dots + "." + s
    s = _digit_string(a.mantissa, p, N + frac)
    return dots + s[:-frac] + "." + s[-frac:]


def _ndigits(x: int, p: int) -> int:
    n = 0
    while x:
        x //= p
        n += 1
    return max(n, 1)


def parse_digits(s: str, p: int) -> PAdicApprox:
    """Inverse of :func:`render_digits` for strings carrying the ``…`` prefix."""
    body = s.strip()
    for prefix in (ELLIPSIS, "..."):
        if body.startswith(prefix):
            body = body[len(prefix) :]
            break
    else:
        raise ValueError(f"not a digit string: {s!r}")
    if "." in body:
        ipart, fpart = body.split(".", 1)
    else:
        ipart, fpart = body, ""
    digits = ipart + fpart
    x = 0
    for ch in digits:
        d = _DIGITS.index(ch.lower())
        if d >= p:
            raise ValueError(f"digit {ch!r} out of range for p={p}")
        x = x * p + d
    return PAdicApprox.from_scaled(p, x, -len(fpart), len(ipart))
