"""User-facing p-adic rings and their elements.

A :class:`PAdicRing` fixes the prime, the default precision, whether it is
the ring of integers or the field, and how precision is tracked:

``"CR"``
    every element carries its own absolute precision, propagated by the usual
    interval rules (the baseline);
``"LC"``, ``"LF"``
    elements are variables of a shared :class:`~padicprec.tracker.PrecisionModule`
    and every operation records its partial derivatives there.

Python ``int`` and ``Fraction`` operands are exact constants; they never
become tracked variables.

>>> Z2 = PAdicRing(2, prec=10, mode="LC")
>>> x = Z2(173, 10)
>>> str(x)
'…0010101101'
"""

from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational

from .core import INF, PAdicApprox, render_digits, split_rational
from .errors import DivisionByIndistinguishableZero, MixedRings, NotInRing
from .lattice import rational_valuation
from .tracker import DiffRecord, PrecisionModule

MODES = ("CR", "LC", "LF")


class PAdicRing:
    """``Z_p`` (``field=False``) or ``Q_p`` (``field=True``) in a tracking mode."""

    def __init__(
        self,
        p: int,
        prec: int = 20,
        mode: str = "CR",
        *,
        field: bool = False,
        relcap: int | None = None,
        abscap: int | None = None,
        float_prec: int | None = None,
        validate: bool = False,
    ):
        mode = mode.upper()
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if prec < 1:
            raise ValueError("default precision must be at least 1")
        self.p = p
        self.prec = prec
        self.mode = mode
        self.field = field
        self.relcap = 2 * prec if relcap is None else relcap
        self.abscap = 4 * prec if abscap is None else abscap
        self.float_prec = prec if float_prec is None else float_prec
        if mode == "CR":
            self.tracker = None
        else:
            self.tracker = PrecisionModule(
                p,
                mode,
                relcap=self.relcap,
                abscap=self.abscap,
                float_prec=self.float_prec,
                validate=validate,
            )

    def __repr__(self):
        kind = "Qp" if self.field else "Zp"
        return f"{kind}{self.mode}({self.p}, prec={self.prec})"

    def __call__(self, value, prec=None) -> "PAdicElement":
        if isinstance(value, PAdicElement):
            if value.ring is not self:
                raise MixedRings("element belongs to another ring")
            return value
        if isinstance(value, PAdicApprox):
            if prec is None:
                prec = value.prec
            value = value.rational()
        if not isinstance(value, Rational):
            raise TypeError(f"cannot build a p-adic number from {type(value).__name__}")
        if prec is None:
            prec = self.prec
        v = rational_valuation(value, self.p)
        if not self.field and v < 0:
            raise NotInRing(f"{value} is not a {self.p}-adic integer")
        if self.mode == "CR":
            return PAdicElement(self, _cr_approx(self, value, prec))
        vid, stored = self.tracker.create_from_value(value, prec)
        return PAdicElement(self, stored, vid)

    # conveniences forwarding to the tracker
    def precision_lattice(self, elements):
        return self._require_tracker().precision_lattice([e._vid for e in elements])

    def number_of_diffused_digits(self, elements) -> int:
        return self._require_tracker().number_of_diffused_digits([e._vid for e in elements])

    def instrumentation(self):
        return self._require_tracker().instrumentation()

    def _require_tracker(self) -> PrecisionModule:
        if self.tracker is None:
            raise ValueError("capped relative rings have no precision module")
        return self.tracker


def _cr_approx(ring: PAdicRing, q, prec) -> PAdicApprox:
    """Reduce the exact rational ``q`` modulo ``p**prec``.

    An exact result that has no finite expansion falls back to the ring's
    default relative precision.
    """
    if prec == INF and q != 0:
        v, _, den = split_rational(q, ring.p)
        if den != 1:
            prec = v + ring.prec
    return PAdicApprox.from_rational(ring.p, q, prec)


class PAdicElement:
    """An element of a :class:`PAdicRing`.

    ``approx`` holds the stored representative; in tracked modes the reported
    precision comes from the precision module and may be finer or coarser than
    the representative's own ``prec``.
    """

    __slots__ = ("ring", "_stored", "_vid", "__weakref__")

    def __init__(self, ring: PAdicRing, stored: PAdicApprox, vid: int | None = None):
        self.ring = ring
        self._stored = stored
        self._vid = vid

    def __del__(self):
        vid = self._vid
        if vid is not None:
            try:
                self.ring.tracker.defer_delete(vid)
            except Exception:  # interpreter shutdown
                pass

    def destroy(self) -> None:
        """Release the tracked variable now (queued until the next operation)."""
        if self._vid is not None:
            self.ring.tracker.defer_delete(self._vid)
            self._vid = None

    # -- precision ------------------------------------------------------------
    @property
    def variable(self):
        return self._vid

    def precision_absolute(self):
        if self.ring.tracker is None:
            return self._stored.prec
        return self.ring.tracker.precision_absolute(self._vid)

    def precision_relative(self):
        n = self.precision_absolute()
        v = self.valuation()
        return 0 if v >= n else n - v

    def is_precision_capped(self) -> bool:
        return self.ring._require_tracker().is_precision_capped(self._vid)

    def approx(self) -> PAdicApprox:
        """The representative reduced to the reported absolute precision."""
        return self._stored.reduce(self.precision_absolute())

    def valuation(self):
        return self.approx().val

    def rational(self):
        """The stored representative as an exact rational."""
        return self._stored.rational()

    def is_zero(self) -> bool:
        """True when indistinguishable from zero at the reported precision."""
        return self._stored.is_zero(self.precision_absolute())

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Rational) and other == 0:
            return self.is_zero()
        if isinstance(other, (PAdicElement, Rational)):
            return (self - other).is_zero()
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __str__(self):
        a = self.approx()
        if a.prec == INF:
            return str(a.rational())
        return render_digits(a)

    def __repr__(self):
        return f"{self}  [{self.ring!r}, prec {self.precision_absolute()}]"

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PAdicElement):
            if other.ring is not self.ring:
                raise MixedRings("cannot combine elements of different rings")
            return other
        if isinstance(other, Rational):
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(self, other, "+")

    def __radd__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(other, self, "+", self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(self, other, "-")

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(other, self, "-", self.ring)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(self, other, "*")

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(other, self, "*", self.ring)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(self, other, "/")

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _binary(other, self, "/", self.ring)

    def __neg__(self):
        return _binary(0, self, "-", self.ring)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self**-n)
        if n == 0:
            return self.ring(1, INF)
        if n == 1:
            return self
        ring = self.ring
        if ring.tracker is None:
            out = self
            for _ in range(n - 1):
                out = out * self
            return out
        a = self._stored.rational()
        value = a**n
        _check_integral(ring, value)
        rec = DiffRecord(value, ((self._vid, n * a ** (n - 1)),))
        vid, stored = ring.tracker.create_from_computation(rec)
        return PAdicElement(ring, stored, vid)


def _check_integral(ring: PAdicRing, value) -> None:
    if not ring.field and value != 0 and rational_valuation(value, ring.p) < 0:
        raise NotInRing("quotient is not a p-adic integer")


def _operand(x, p):
    """``(exact representative, absolute precision, effective valuation)``."""
    if isinstance(x, PAdicElement):
        if x.ring.tracker is None:
            a = x._stored
            return a.rational(), a.prec, a.effective_val()
        return x._stored.rational(), None, None
    return x, INF, rational_valuation(x, p)


def _binary(a, b, op: str, ring: PAdicRing | None = None) -> PAdicElement:
    if ring is None:
        ring = a.ring
    p = ring.p
    ra, Na, va = _operand(a, p)
    rb, Nb, vb = _operand(b, p)
    if op == "/":
        if isinstance(b, PAdicElement):
            if b.is_zero():
                raise DivisionByIndistinguishableZero()
        elif rb == 0:
            raise ZeroDivisionError("division by exact zero")
    if op == "+":
        value = ra + rb
    elif op == "-":
        value = ra - rb
    elif op == "*":
        value = ra * rb
    else:
        value = Fraction(ra) / rb
        if value.denominator == 1:
            value = value.numerator
    _check_integral(ring, value)

    if ring.tracker is None:
        if op in "+-":
            N = min(Na, Nb)
        elif op == "*":
            N = min(Na + vb, Nb + va)
        else:
            N = min(Na - vb, Nb + va - 2 * vb)
        return PAdicElement(ring, _cr_approx(ring, value, N))

    if op == "+":
        da, db = 1, 1
    elif op == "-":
        da, db = 1, -1
    elif op == "*":
        da, db = rb, ra
    else:
        da = Fraction(1) / rb
        db = -Fraction(ra) / (Fraction(rb) * rb)
    inputs = []
    if isinstance(a, PAdicElement):
        inputs.append((a._vid, da))
    if isinstance(b, PAdicElement):
        inputs.append((b._vid, db))
    vid, stored = ring.tracker.create_from_computation(DiffRecord(value, tuple(inputs)))
    return PAdicElement(ring, stored, vid)


def random_element(
    ring: PAdicRing, prec: int | None = None, rng=None, valuation: int = 0, unit: bool = True
):
    """A random element known to absolute precision ``prec``.

    With ``unit=True`` (the default) the result has exactly the given
    valuation; otherwise it is a uniform residue modulo ``p**prec``, so its
    valuation varies (and it may be zero).  The digits depend only on ``rng``
    (a :class:`random.Random` or a seed), so rings in different modes receive
    identical values from identical seeds.
    """
    if prec is None:
        prec = ring.prec
    if rng is None or isinstance(rng, int):
        rng = random.Random(rng)
    p = ring.p
    if not unit:
        return ring(rng.randrange(p**prec), prec)
    ndigits = max(prec - valuation, 1)
    m = rng.randrange(1, p)
    scale = p
    for _ in range(ndigits - 1):
        m += rng.randrange(p) * scale
        scale *= p
    value = m * p**valuation if valuation >= 0 else Fraction(m, p**-valuation)
    return ring(value, valuation + ndigits)
