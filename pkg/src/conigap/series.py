"""Truncated Laurent series with exact rational coefficients.

A :class:`TruncatedLaurentSeries` stores finitely many coefficients of a
formal Laurent series in one named variable,

    s = sum_{e = offset}^{order - 1} c_e * var^e  +  (unknown terms of degree >= order),

with every ``c_e`` an exact :class:`fractions.Fraction`.  The truncation
``order`` is part of the value: every operation computes the weakest order
that is still fully determined by its inputs and refuses to report
coefficients at or beyond it.  Offsets are explicit and may be negative;
leading zero coefficients are kept unless :meth:`normalize` is called, so
that a zero leading coefficient produced mid-pipeline is never silently
reinterpreted as a change of valuation.

All values are immutable and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rat = Union[Fraction, int]


class SeriesError(ValueError):
    """Base class for series-domain errors."""


class VariableMismatch(SeriesError):
    """Operands are series in different variables."""


class DivisionByZeroSeries(SeriesError):
    """Divisor is identically zero within its truncation."""


class CompositionDomain(SeriesError):
    """Inner series of a composition has a nonzero constant term."""


class NotReversible(SeriesError):
    """Series has no compositional inverse (needs c1*x + O(x^2), c1 != 0)."""


class ExpLogDomain(SeriesError):
    """Argument outside the domain of exp (offset >= 1) or log (constant term 1)."""


class ThetaIntegrationConstant(SeriesError):
    """Cannot invert theta = x d/dx on a series with a nonzero constant term."""


class InsufficientOrder(SeriesError):
    """A coefficient beyond the truncation order was requested."""


def _frac(c: Rat) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class TruncatedLaurentSeries:
    __slots__ = ("variable", "offset", "coeffs", "order")

    def __init__(self, variable: str, offset: int, coeffs: Iterable[Rat], order: int):
        coeffs = tuple(_frac(c) for c in coeffs)
        if order - offset != len(coeffs):
            raise SeriesError(
                f"length {len(coeffs)} inconsistent with offset {offset}, order {order}"
            )
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", order)

    def __setattr__(self, *_):
        raise AttributeError("TruncatedLaurentSeries is immutable")

    # ---------------- constructors ----------------

    @classmethod
    def from_coeffs(cls, variable: str, coeffs: Sequence[Rat], offset: int = 0,
                    order: int | None = None) -> "TruncatedLaurentSeries":
        if order is None:
            order = offset + len(coeffs)
        coeffs = list(coeffs) + [Fraction(0)] * (order - offset - len(coeffs))
        return cls(variable, offset, coeffs, order)

    @classmethod
    def from_map(cls, variable: str, terms: Mapping[int, Rat], order: int) -> "TruncatedLaurentSeries":
        if not terms:
            return cls.zero(variable, order)
        off = min(terms)
        coeffs = [Fraction(0)] * (order - off)
        for e, c in terms.items():
            if e >= order:
                raise SeriesError(f"term at exponent {e} beyond order {order}")
            coeffs[e - off] = _frac(c)
        return cls(variable, off, coeffs, order)

    @classmethod
    def zero(cls, variable: str, order: int) -> "TruncatedLaurentSeries":
        return cls(variable, order, (), order)

    @classmethod
    def constant(cls, variable: str, value: Rat, order: int) -> "TruncatedLaurentSeries":
        return cls.from_map(variable, {0: value}, order)

    @classmethod
    def identity(cls, variable: str, order: int) -> "TruncatedLaurentSeries":
        """The series ``var`` itself."""
        return cls.from_map(variable, {1: 1}, order)

    # ---------------- basic access ----------------

    def coeff(self, exponent: int) -> Fraction:
        """Coefficient of var**exponent; raises beyond the truncation order."""
        if exponent >= self.order:
            raise InsufficientOrder(
                f"coefficient of {self.variable}^{exponent} unknown (order {self.order})"
            )
        if exponent < self.offset:
            return Fraction(0)
        return self.coeffs[exponent - self.offset]

    def coeff_list(self, lo: int, hi: int) -> list[Fraction]:
        return [self.coeff(e) for e in range(lo, hi)]

    def normalize(self) -> "TruncatedLaurentSeries":
        """Trim leading (and, cosmetically, trailing-zero-padded) zero coefficients."""
        i = 0
        while i < len(self.coeffs) and self.coeffs[i] == 0:
            i += 1
        return TruncatedLaurentSeries(self.variable, self.offset + i, self.coeffs[i:], self.order)

    def valuation(self) -> int | None:
        """Exponent of the lowest nonzero stored coefficient, or None if zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.offset + i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, order: int) -> "TruncatedLaurentSeries":
        if order > self.order:
            raise InsufficientOrder(f"cannot extend order {self.order} to {order}")
        off = min(self.offset, order)
        return TruncatedLaurentSeries(self.variable, off, self.coeffs[: order - off], order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        if self.variable != other.variable:
            return False
        a, b = self.normalize(), other.normalize()
        return (a.offset, a.coeffs, a.order) == (b.offset, b.coeffs, b.order)

    def __hash__(self):
        a = self.normalize()
        return hash((a.variable, a.offset, a.coeffs, a.order))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                e = self.offset + i
                terms.append(f"{c}*{self.variable}^{e}")
            if len(terms) > 5:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O({self.variable}^{self.order})>"

    # ---------------- ring operations ----------------

    def _check_var(self, other: "TruncatedLaurentSeries"):
        if self.variable != other.variable:
            raise VariableMismatch(f"{self.variable!r} vs {other.variable!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedLaurentSeries.constant(self.variable, other, self.order)
        self._check_var(other)
        order = min(self.order, other.order)
        off = min(self.offset, other.offset, order)
        coeffs = [Fraction(0)] * (order - off)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.offset + i
                if e < order:
                    coeffs[e - off] += c
        return TruncatedLaurentSeries(self.variable, off, coeffs, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedLaurentSeries(self.variable, self.offset,
                                      tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedLaurentSeries.constant(self.variable, other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Rat) -> "TruncatedLaurentSeries":
        c = _frac(c)
        return TruncatedLaurentSeries(self.variable, self.offset,
                                      tuple(c * a for a in self.coeffs), self.order)

    def shift(self, k: int) -> "TruncatedLaurentSeries":
        """Multiply by var**k (exact; shifts offset and order)."""
        return TruncatedLaurentSeries(self.variable, self.offset + k, self.coeffs, self.order + k)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_var(other)
        # product coefficient at e is determined iff e < min of the two
        # "knowledge horizons" offset_a + order_b and offset_b + order_a
        order = min(self.order + other.offset, other.order + self.offset)
        off = self.offset + other.offset
        n = order - off
        coeffs = [Fraction(0)] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b:
                    coeffs[i + j] += a * b
        return TruncatedLaurentSeries(self.variable, min(off, order), coeffs, order)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedLaurentSeries":
        """Multiplicative inverse 1/self."""
        nz = self.normalize()
        v = nz.valuation()
        if v is None:
            raise DivisionByZeroSeries("inverse of a series that is zero within truncation")
        lead = nz.coeff(v)
        n = nz.order - v  # number of known coefficients of the unit part
        unit = [nz.coeffs[v - nz.offset + i] / lead for i in range(n)]
        inv = [Fraction(0)] * n
        inv[0] = Fraction(1)
        for k in range(1, n):
            inv[k] = -sum(unit[j] * inv[k - j] for j in range(1, k + 1))
        coeffs = [c / lead for c in inv]
        return TruncatedLaurentSeries(self.variable, -v, coeffs, -v + n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / _frac(other))
        self._check_var(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse().scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        # simple left-to-right; order bookkeeping handled by __mul__
        result = TruncatedLaurentSeries.constant(self.variable, 1, max(self.order, 1))
        for _ in range(k):
            result = result * self
        return result

    # ---------------- calculus ----------------

    def derivative(self) -> "TruncatedLaurentSeries":
        """d/dvar; order drops by one."""
        coeffs = [c * (self.offset + i) for i, c in enumerate(self.coeffs)]
        return TruncatedLaurentSeries(self.variable, self.offset - 1, coeffs, self.order - 1)

    def theta(self) -> "TruncatedLaurentSeries":
        """Logarithmic derivative operator var * d/dvar."""
        coeffs = [c * (self.offset + i) for i, c in enumerate(self.coeffs)]
        return TruncatedLaurentSeries(self.variable, self.offset, coeffs, self.order)

    def integrate_theta(self) -> "TruncatedLaurentSeries":
        """Inverse of theta, with zero integration constant."""
        coeffs = []
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            if e == 0:
                if c != 0:
                    raise ThetaIntegrationConstant(
                        "theta-antiderivative of a series with nonzero constant term"
                    )
                coeffs.append(Fraction(0))
            else:
                coeffs.append(c / e)
        return TruncatedLaurentSeries(self.variable, self.offset, coeffs, self.order)

    # ---------------- composition and friends ----------------

    def compose(self, inner: "TruncatedLaurentSeries") -> "TruncatedLaurentSeries":
        """self(inner); inner must vanish at 0.

        The outer variable is substituted away, so the variables need not
        match; the result is a series in inner.variable.
        """
        inz = inner.normalize()
        v = inz.valuation()
        if v is not None and v < 1:
            raise CompositionDomain("inner series must have positive valuation")
        if self.offset < 0 and v is None:
            raise CompositionDomain("polar outer composed with zero inner")
        var, order = inner.variable, inz.order
        # regular part by Horner, polar part through powers of 1/inner
        reg = TruncatedLaurentSeries.zero(var, order)
        for e in range(self.order - 1, max(self.offset, 0) - 1, -1):
            reg = reg * inz + self.coeff(e)
        if self.offset > 0:
            reg = reg * inz ** self.offset
        out = reg
        if self.offset < 0:
            ii = inz.inverse()
            p = ii
            for e in range(-1, self.offset - 1, -1):
                c = self.coeff(e)
                if c:
                    out = out + p.scale(c)
                if e > self.offset:
                    p = p * ii
        return out

    def revert(self) -> "TruncatedLaurentSeries":
        """Compositional inverse by Newton iteration (Lagrange reversion)."""
        nz = self.normalize()
        if nz.valuation() != 1 or nz.offset > 1:
            raise NotReversible("need c1*x + O(x^2) with c1 != 0")
        c1 = nz.coeff(1)
        order = self.order
        var = self.variable
        g = TruncatedLaurentSeries.from_map(var, {1: Fraction(1, 1) / c1}, 2)
        ds = self.derivative()
        while g.order < order:
            target = min(2 * (g.order - 1) + 1, order)
            gx = TruncatedLaurentSeries.from_coeffs(var, g.coeffs, g.offset, target)
            err = self.compose(gx) - TruncatedLaurentSeries.identity(var, target)
            corr = err * ds.compose(gx).inverse()
            g = (gx - corr).truncate(target)
        return g

    def exp(self) -> "TruncatedLaurentSeries":
        """exp of a series with positive valuation."""
        nz = self.normalize()
        if not nz.is_zero() and nz.valuation() < 1:
            raise ExpLogDomain("exp needs a series vanishing at 0")
        n = self.order
        if n < 1:
            raise ExpLogDomain("order too small to determine exp")
        a = [self.coeff(e) if e >= max(self.offset, 1) else Fraction(0) for e in range(n)]
        out = [Fraction(0)] * n
        out[0] = Fraction(1)
        for k in range(1, n):
            out[k] = sum(Fraction(j) * a[j] * out[k - j] for j in range(1, k + 1)) / k
        return TruncatedLaurentSeries(self.variable, 0, out, n)

    def log(self) -> "TruncatedLaurentSeries":
        """log of a series with constant term 1."""
        nz = self.normalize()
        if nz.valuation() != 0 or nz.coeff(0) != 1 or nz.offset < 0:
            raise ExpLogDomain("log needs constant term exactly 1")
        dl = self.derivative() * self.inverse()  # order: self.order - 1
        coeffs = []
        off = dl.offset
        for i, c in enumerate(dl.coeffs):
            e = off + i + 1
            if e == 0:
                if c != 0:
                    raise ExpLogDomain("logarithmic derivative has a residue term")
                coeffs.append(Fraction(0))
            else:
                coeffs.append(c / e)
        return TruncatedLaurentSeries(self.variable, off + 1, coeffs, dl.order + 1)

    # ---------------- serialization ----------------

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "offset": self.offset,
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedLaurentSeries":
        coeffs = [Fraction(s) for s in data["coeffs"]]
        return cls(data["variable"], int(data["offset"]), coeffs, int(data["order"]))


def arith(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries, kind: str) -> TruncatedLaurentSeries:
    """Dispatch helper: kind in {'add', 'mul', 'div'}."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arith kind {kind!r}")
