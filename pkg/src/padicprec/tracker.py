"""Global precision tracking over all live variables.

A :class:`PrecisionModule` keeps a registry of live variables (columns, in
creation order) and a row-echelon matrix whose rows generate the module
modelling the joint precision of those variables.  Two regimes exist:

``"LC"``
    Square upper-triangular integer matrix with caps.  Pivots are pure powers
    of ``p`` and entries above a pivot are reduced modulo it, so the stored
    matrix is the canonical Hermite form of the precision lattice.  Each new
    computed variable gets a cap row ``p**N`` with
    ``N = min(abscap, relcap + v_p(value))``.

``"LF"``
    Rectangular staircase matrix with floating p-adic entries; computed
    variables only append a column and the module may have any codimension.

Entries of an LC matrix are stored as ``actual * p**shift`` (``shift`` grows
only when a computation introduces negative valuations) and are kept modulo
``p**(abscap + shift)``; that is, the lattice is always taken to contain
``p**abscap`` times the standard lattice.

Deletions requested by element finalizers are queued with
:meth:`PrecisionModule.defer_delete` and applied at the start of the next
tracker operation, which keeps deletion timing a function of the operation
stream alone.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .core import INF, FloatPAdic, PAdicApprox, split_rational, valuation
from .errors import UnknownVariable, UnsupportedInMode
from .lattice import diffused_digits, hnf, rational_valuation

MODES = ("LC", "LF")

VariableId = int


@dataclass(frozen=True)
class DiffRecord:
    """One computed value and its partial derivatives.

    ``value`` is the exact result computed on the representatives of the
    inputs (``int``/``Fraction``, or a :class:`PAdicApprox`); ``inputs`` pairs
    each input variable with the partial derivative of the operation with
    respect to it, evaluated at the current point.
    """

    value: object
    inputs: tuple = ()


@dataclass
class Instrumentation:
    total: int = 0
    peak: int = 0
    live: int = 0
    coindex: Counter = field(default_factory=Counter)

    def counts_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["total", "peak", "live"])
        w.writerow([self.total, self.peak, self.live])
        return buf.getvalue()

    def histogram_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["coindex", "count"])
        for k in sorted(self.coindex):
            w.writerow([k, self.coindex[k]])
        return buf.getvalue()


def _as_rational(x):
    if isinstance(x, (PAdicApprox, FloatPAdic)):
        return x.rational()
    return x


class PrecisionModule:
    """Precision tracker shared by all elements of one ring."""

    def __init__(
        self,
        p: int,
        mode: str = "LC",
        *,
        relcap: int = 40,
        abscap: int = 80,
        float_prec: int = 20,
        validate: bool = False,
    ):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if p < 2:
            raise ValueError("p must be at least 2")
        self.p = p
        self.mode = mode
        self.relcap = relcap
        self.abscap = abscap
        self.float_prec = float_prec
        self.validate = validate
        self._ordinals: list[int] = []
        self._next_id = 0
        self._pending: list[int] = []
        self._stats = Instrumentation()
        if mode == "LC":
            self._rows: list[list[int]] = []
            self._exps: list[int] = []
            self._taint: list[bool] = []
            self._shift = 0
            self._modulus = p**abscap
        else:
            self._frows: list[list[FloatPAdic]] = []
            self._fpiv: list[int] = []
            self._fzero = FloatPAdic.zero(p, float_prec)

    def __repr__(self):
        return f"PrecisionModule(p={self.p}, mode={self.mode!r}, live={len(self._ordinals)})"

    # -- bookkeeping ----------------------------------------------------------
    def __len__(self):
        return len(self._ordinals)

    def __contains__(self, vid):
        self._flush()
        i = bisect_left(self._ordinals, vid)
        return i < len(self._ordinals) and self._ordinals[i] == vid

    def variables(self) -> list[int]:
        self._flush()
        return list(self._ordinals)

    def shape(self) -> tuple[int, int]:
        """``(generators, live variables)`` of the stored matrix."""
        self._flush()
        rows = len(self._rows) if self.mode == "LC" else len(self._frows)
        return rows, len(self._ordinals)

    def _position(self, vid) -> int:
        i = bisect_left(self._ordinals, vid)
        if i == len(self._ordinals) or self._ordinals[i] != vid:
            raise UnknownVariable(vid)
        return i

    def _register(self) -> int:
        vid = self._next_id
        self._next_id += 1
        self._ordinals.append(vid)
        st = self._stats
        st.total += 1
        st.live = len(self._ordinals)
        if st.live > st.peak:
            st.peak = st.live
        return vid

    def _cap(self, v) -> int:
        if v == INF:
            return self.abscap
        return min(self.abscap, self.relcap + v)

    def defer_delete(self, vid) -> None:
        """Queue a deletion; it is applied at the start of the next operation."""
        self._pending.append(vid)

    def _flush(self) -> None:
        pending = self._pending
        while pending:
            vid = pending.pop(0)
            i = bisect_left(self._ordinals, vid)
            if i < len(self._ordinals) and self._ordinals[i] == vid:
                self._delete_at(i)

    def _after_mutation(self):
        if self.validate:
            self.check_invariants()

    # -- creation -------------------------------------------------------------
    def create_from_value(self, value, prec=INF) -> tuple[int, PAdicApprox]:
        """Register a user-supplied value known modulo ``p**prec``.

        Returns the new variable and the representative stored for it (in LC
        mode the cap may truncate the requested precision).
        """
        self._flush()
        y = _as_rational(value)
        vy = rational_valuation(y, self.p)
        if self.mode == "LC":
            cap = self._cap(vy)
            k = prec if prec < cap else cap
            tainted = prec > cap
            if k + self._shift < 0:
                self._rescale(-(k + self._shift))
            for row in self._rows:
                row.append(0)
            self._rows.append([self.p ** (k + self._shift)])
            self._exps.append(k + self._shift)
            self._taint.append(tainted)
            stored = PAdicApprox.from_rational(self.p, y, k)
        else:
            z = self._fzero
            for row in self._frows:
                row.append(z)
            if prec != INF:
                n = len(self._ordinals)
                self._frows.append([z] * n + [FloatPAdic(self.p, 1, prec, self.float_prec)])
                self._fpiv.append(self._next_id)
                stored = PAdicApprox.from_rational(self.p, y, prec)
            else:
                stored = self._float_round(y)
        vid = self._register()
        self._after_mutation()
        return vid, stored

    def create_from_computation(self, rec: DiffRecord) -> tuple[int, PAdicApprox]:
        """Register ``w = f(v_1, ..., v_n)`` described by ``rec``.

        The new column is the partial-weighted sum of the input columns.  In
        LC mode a cap row is appended and the stored value is the result
        modulo ``p**cap``; in LF mode the value is rounded to the float
        precision.
        """
        self._flush()
        p = self.p
        y = _as_rational(rec.value)
        merged: dict[int, object] = {}
        for vid, d in rec.inputs:
            pos = self._position(vid)
            d = _as_rational(d)
            merged[pos] = merged.get(pos, 0) + d
        terms = sorted((pos, d) for pos, d in merged.items() if d != 0)
        if self.mode == "LC":
            vy = rational_valuation(y, p)
            cap = self._cap(vy)
            col = self._lc_column(terms, cap)
            pivot = p ** (cap + self._shift)
            rows = self._rows
            for r, row in enumerate(rows):
                row.append(col[r] % pivot if r < len(col) else 0)
            rows.append([pivot])
            self._exps.append(cap + self._shift)
            self._taint.append(True)
            stored = PAdicApprox.from_rational(p, y, cap)
        else:
            col = self._lf_column(terms)
            for row, x in zip(self._frows, col):
                row.append(x)
            stored = self._float_round(y)
        vid = self._register()
        self._after_mutation()
        return vid, stored

    def _float_round(self, y) -> PAdicApprox:
        if y == 0:
            return PAdicApprox.zero(self.p, INF)
        v = rational_valuation(y, self.p)
        return PAdicApprox.from_rational(self.p, y, v + self.float_prec)

    def _lc_column(self, terms, cap) -> list[int]:
        """Stored entries of the new column, before reduction by the cap."""
        p = self.p
        if not terms:
            if cap + self._shift < 0:
                self._rescale(-(cap + self._shift))
            return []
        split = [(pos, split_rational(d, p)) for pos, d in terms]
        vmin = min(0, min(v for _, (v, _, _) in split))
        mod = self._modulus * p ** (-vmin)
        positions, coeffs = [], []
        for pos, (v, num, den) in split:
            c = num if den == 1 else num * pow(den, -1, mod)
            positions.append(pos)
            coeffs.append(c * p ** (v - vmin) % mod)
        col = kernels.combine_column(self._rows, positions, coeffs, mod)
        if vmin < 0:
            k = -vmin
            t = min((valuation(x, p) for x in col if x), default=INF)
            if t < k:
                grow = k - t
                self._rescale(grow)
                scale = p**grow
                col = [x * scale for x in col]
            div = p**k
            col = [x // div for x in col]
        if cap + self._shift < 0:
            grow = -(cap + self._shift)
            self._rescale(grow)
            scale = p**grow
            col = [x * scale for x in col]
        return col

    def _rescale(self, grow: int) -> None:
        """Multiply every stored entry (and the working modulus) by ``p**grow``."""
        scale = self.p**grow
        for row in self._rows:
            row[:] = [x * scale for x in row]
        self._exps = [e + grow for e in self._exps]
        self._shift += grow
        self._modulus *= scale

    def _lf_column(self, terms) -> list[FloatPAdic]:
        p, r = self.p, self.float_prec
        col = [self._fzero] * len(self._frows)
        for pos, d in terms:
            c = FloatPAdic.from_rational(p, d, r)
            for i, row in enumerate(self._frows):
                x = row[pos]
                if x.mantissa:
                    col[i] = col[i] + c * x
        return col

    # -- deletion -------------------------------------------------------------
    def delete(self, vid) -> None:
        """Remove a variable (projection onto the remaining coordinates)."""
        self._flush()
        self._delete_at(self._position(vid))

    def _delete_at(self, k: int) -> None:
        n = len(self._ordinals)
        self._stats.coindex[n - k - 1] += 1
        vid = self._ordinals[k]
        if self.mode == "LC":
            kernels.delete_column(self._rows, self._exps, self._taint, k, self.p, self._modulus)
        else:
            self._lf_delete(k, vid)
        del self._ordinals[k]
        self._stats.live = len(self._ordinals)
        self._after_mutation()

    def _lf_delete(self, k: int, vid: int) -> None:
        rows, piv = self._frows, self._fpiv
        try:
            r = piv.index(vid)
        except ValueError:
            r = None
        for row in rows:
            del row[k]
        if r is None:
            return
        ordinals = self._ordinals
        ncols = len(ordinals) - 1  # after erasing column k
        carry = r
        j = k
        while j < ncols:
            col_vid = ordinals[j + 1]  # ordinals still include the erased variable
            below = carry + 1
            if below < len(rows) and piv[below] == col_vid:
                x, y = rows[carry][j], rows[below][j]
                if x.mantissa and x.exponent <= y.exponent:
                    q = y / x
                    rows[below] = [b - q * a for a, b in zip(rows[carry], rows[below])]
                    rows[below][j] = self._fzero
                else:
                    if x.mantissa:
                        q = x / y
                        rows[carry] = [a - q * b for a, b in zip(rows[carry], rows[below])]
                        rows[carry][j] = self._fzero
                    rows[carry], rows[below] = rows[below], rows[carry]
                piv[carry] = col_vid
                carry = below
            elif rows[carry][j].mantissa:
                piv[carry] = col_vid
                return
            j += 1
        del rows[carry]
        del piv[carry]

    # -- queries --------------------------------------------------------------
    def precision_absolute(self, vid):
        """Smallest valuation in the variable's column (``INF`` for a zero column)."""
        self._flush()
        pos = self._position(vid)
        if self.mode == "LC":
            return kernels.column_valuation(self._rows, pos, self.p) - self._shift
        best = INF
        for row in self._frows:
            x = row[pos]
            if x.mantissa and x.exponent < best:
                best = x.exponent
        return best

    def is_precision_capped(self, vid) -> bool:
        """True when the column minimum is reached only through cap rows."""
        self._flush()
        if self.mode != "LC":
            raise UnsupportedInMode("is_precision_capped is only defined in LC mode")
        pos = self._position(vid)
        p = self.p
        best = INF
        tainted = untainted = False
        for r in range(pos + 1):
            x = self._rows[r][pos - r]
            if not x:
                continue
            v = valuation(x, p)
            if v < best:
                best = v
                tainted = untainted = False
            if v == best:
                if self._taint[r]:
                    tainted = True
                else:
                    untainted = True
        return tainted and not untainted

    def _generator_rows(self, positions):
        """Generators of the projection onto ``positions`` as exact rationals."""
        if self.mode == "LC":
            top = max(positions) + 1
            s = self._shift
            scale = self.p**s
            gens = []
            for r in range(top):
                row = self._rows[r]
                gens.append([row[c - r] if c >= r else 0 for c in positions])
            gens.extend(
                [self._modulus if i == j else 0 for j in range(len(positions))]
                for i in range(len(positions))
            )
            if s:
                gens = [[Fraction(x, scale) for x in g] for g in gens]
            return gens
        return [[row[c].rational() for c in positions] for row in self._frows]

    def precision_lattice(self, vids) -> list[list]:
        """Echelon basis of the joint precision of ``vids`` (in that order)."""
        self._flush()
        positions = [self._position(v) for v in vids]
        if not positions:
            return []
        return hnf(self._generator_rows(positions), self.p, len(positions))

    def number_of_diffused_digits(self, vids) -> int:
        return diffused_digits(self.precision_lattice(vids), self.p)

    def instrumentation(self) -> Instrumentation:
        self._flush()
        st = self._stats
        return Instrumentation(st.total, st.peak, len(self._ordinals), Counter(st.coindex))

    def matrix(self) -> list[list]:
        """Dense copy of the generator matrix in actual (unscaled) values."""
        self._flush()
        n = len(self._ordinals)
        if self.mode == "LF":
            return [[x.rational() for x in row] for row in self._frows]
        scale = self.p**self._shift
        out = []
        for i, row in enumerate(self._rows):
            dense = [0] * i + row
            out.append([Fraction(x, scale) if self._shift else x for x in dense])
        assert all(len(r) == n for r in out)
        return out

    # -- validation -----------------------------------------------------------
    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if the stored matrix is not in echelon form."""
        n = len(self._ordinals)
        assert self._ordinals == sorted(self._ordinals), "columns out of creation order"
        if self.mode == "LC":
            rows, p = self._rows, self.p
            assert len(rows) == n == len(self._exps) == len(self._taint), "LC matrix not square"
            for i, row in enumerate(rows):
                assert len(row) == n - i, f"row {i} has wrong length"
                assert row[0] == p ** self._exps[i], f"pivot {i} is not a pure power of p"
                assert self._exps[i] <= self.abscap + self._shift, f"pivot {i} above the cap"
            for i, row in enumerate(rows):
                for t in range(1, len(row)):
                    x = row[t]
                    assert 0 <= x < rows[i + t][0], f"entry ({i},{i + t}) not reduced"
        else:
            rows, piv = self._frows, self._fpiv
            assert len(rows) == len(piv) and len(rows) <= n, "LF shape"
            last = -1
            for row, vid in zip(rows, piv):
                assert len(row) == n, "LF row has wrong length"
                c = self._position(vid)
                assert c > last, "LF pivots not strictly increasing"
                assert row[c].mantissa != 0, "LF pivot vanishes"
                assert all(x.mantissa == 0 for x in row[:c]), "LF entry left of pivot"
                last = c
