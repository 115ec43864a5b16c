"""Exact truncated Laurent series in one variable t.

A :class:`TruncSeries` represents an element of Q((t)) known exactly on the
exponent window ``[pole, order)``: coefficients below ``pole`` are exact
zeros, coefficients at and above ``order`` are unknown.  Every operation
computes the window actually supported by its inputs instead of silently
widening it; mixing two windows yields the intersection of knowledge.

All scalars are :class:`fractions.Fraction`.  There is no floating point
anywhere in this package.
"""

from __future__ import annotations

import contextvars
from fractions import Fraction
from typing import Iterable, Union

from .errors import NotIntegrable, NotInvertible, PoleOverflow

Scalar = Union[int, Fraction]

DEFAULT_POLE_FLOOR = -16
DEFAULT_ORDER = 12

_pole_floor: contextvars.ContextVar[int] = contextvars.ContextVar(
    "pole_floor", default=DEFAULT_POLE_FLOOR
)


def pole_floor() -> int:
    """The deepest pole order any series operation may produce."""
    return _pole_floor.get()


class configure_pole_floor:
    """Context manager overriding the pole floor for one computation."""

    def __init__(self, floor: int):
        self.floor = floor
        self._token = None

    def __enter__(self):
        self._token = _pole_floor.set(self.floor)
        return self

    def __exit__(self, *exc):
        _pole_floor.reset(self._token)
        return False


def rat(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class TruncSeries:
    """Laurent series with exact coefficients on the window [pole, order)."""

    __slots__ = ("pole", "order", "coeffs")

    def __init__(self, pole: int, coeffs: Iterable[Scalar], order: int):
        cs = [rat(c) for c in coeffs]
        if order - pole != len(cs):
            raise ValueError("coefficient count must equal order - pole")
        # canonical form: exact leading zeros are absorbed into the pole
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        self.pole = pole + lead
        self.coeffs = tuple(cs[lead:])
        self.order = order

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "TruncSeries":
        return cls(order, (), order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "TruncSeries":
        return cls.monomial(0, 1, order)

    @classmethod
    def monomial(cls, k: int, coef: Scalar = 1, order: int = DEFAULT_ORDER) -> "TruncSeries":
        if k >= order:
            return cls.zero(order)
        return cls(k, [coef] + [0] * (order - k - 1), order)

    @classmethod
    def from_dict(cls, d: dict[int, Scalar], order: int = DEFAULT_ORDER) -> "TruncSeries":
        if not d:
            return cls.zero(order)
        p = min(d)
        return cls(p, [d.get(k, 0) for k in range(p, order)], order)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.order >= 1 and self.pole == 0 and all(
            c == (1 if k == 0 else 0) for k, c in enumerate(self.coeffs)
        )

    def known(self, k: int) -> bool:
        return k < self.order

    def coeff(self, k: int) -> Fraction:
        """Coefficient of t^k; raises if k is beyond the trusted window."""
        if k >= self.order:
            raise KeyError(f"coefficient t^{k} lies beyond the trusted order {self.order}")
        if k < self.pole:
            return Fraction(0)
        return self.coeffs[k - self.pole]

    def taylor_coeff0(self, s: int) -> Fraction:
        """s-th derivative at t = 0 divided by s!; requires pole >= 0."""
        if self.pole < 0:
            raise NotIntegrable("series has a pole at t = 0")
        return self.coeff(s)

    def items(self):
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.pole + k, c

    def agrees(self, other: "TruncSeries") -> bool:
        """Equality of all coefficients on the shared trusted window."""
        hi = min(self.order, other.order)
        lo = min(self.pole, other.pole)
        return all(
            (self.coeffs[k - self.pole] if k >= self.pole else Fraction(0))
            == (other.coeffs[k - other.pole] if k >= other.pole else Fraction(0))
            for k in range(lo, hi)
        )

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.pole, self.order, self.coeffs) == (other.pole, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.pole, self.order, self.coeffs))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.pole, [-c for c in self.coeffs], self.order)

    def __add__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.monomial(0, other, self.order)
        elif not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        if self.is_zero:
            return other.truncate(order)
        if other.is_zero:
            return self.truncate(order)
        pole = min(self.pole, other.pole)
        cs = [Fraction(0)] * (order - pole)
        for src in (self, other):
            for k, c in src.items():
                if k < order:
                    cs[k - pole] += c
        return TruncSeries(pole, cs, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.monomial(0, other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            c = rat(other)
            if c == 0:
                return TruncSeries.zero(self.order)
            return TruncSeries(self.pole, [c * a for a in self.coeffs], self.order)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.is_zero or other.is_zero:
            # product window still shrinks with the truncated factor
            order = min(self.order + other.pole, other.order + self.pole) \
                if (self.coeffs or other.coeffs) else min(self.order, other.order)
            return TruncSeries.zero(order)
        pole = self.pole + other.pole
        if pole < pole_floor():
            raise PoleOverflow(f"product pole {pole} below floor {pole_floor()}")
        order = min(self.order + other.pole, other.order + self.pole)
        cs = [Fraction(0)] * (order - pole)
        for i, a in self.items():
            if i + other.pole >= order:
                break
            for j, b in other.items():
                k = i + j
                if k >= order:
                    break
                cs[k - pole] += a * b
        return TruncSeries(pole, cs, order)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return self
        n = max(0, order - self.pole)
        return TruncSeries(min(self.pole, order), self.coeffs[:n], order)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k."""
        if self.pole + k < pole_floor():
            raise PoleOverflow(f"shift pole {self.pole + k} below floor {pole_floor()}")
        return TruncSeries(self.pole + k, self.coeffs, self.order + k)

    def derivative(self) -> "TruncSeries":
        cs = [(self.pole + k) * c for k, c in enumerate(self.coeffs)]
        return TruncSeries(self.pole - 1, cs, self.order - 1)

    def antiderivative(self) -> "TruncSeries":
        """Termwise antiderivative with constant 0; fails on a t^-1 term."""
        cs = []
        for k, c in enumerate(self.coeffs):
            e = self.pole + k
            if e == -1:
                if c != 0:
                    raise NotIntegrable("nonzero t^-1 coefficient")
                cs.append(Fraction(0))
            else:
                cs.append(c / (e + 1))
        return TruncSeries(self.pole + 1, cs, self.order + 1)

    def invert(self) -> "TruncSeries":
        if self.is_zero:
            raise NotInvertible("zero series (within its window) has no inverse")
        p = self.pole
        if -p < pole_floor():
            raise PoleOverflow(f"inverse pole {-p} below floor {pole_floor()}")
        n = self.order - p  # window width is preserved by inversion
        a = self.coeffs
        inv0 = Fraction(1) / a[0]
        out = [inv0] + [Fraction(0)] * (n - 1)
        for k in range(1, n):
            s = sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
            out[k] = -inv0 * s
        return TruncSeries(-p, out, -p + n)

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return self.invert() ** (-e)
        acc = TruncSeries.one(self.order)
        for _ in range(e):
            acc = acc * self
        return acc

    # -- rendering -----------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero:
            return f"<0 + O(t^{self.order})>"
        bits = []
        for k, c in self.items():
            if k == 0:
                bits.append(f"{c}")
            elif k == 1:
                bits.append(f"{c}*t")
            else:
                bits.append(f"{c}*t^{k}")
        return f"<{' + '.join(bits)} + O(t^{self.order})>"


def tpoly(d: dict[int, Scalar], order: int = DEFAULT_ORDER) -> TruncSeries:
    """Shorthand for a Laurent polynomial given as {exponent: coefficient}."""
    return TruncSeries.from_dict(d, order)


class DualSeries:
    """First-order jet a + b*eps with eps^2 = 0 and TruncSeries components.

    Implements the same arithmetic surface as TruncSeries, so operator
    algorithms can be re-run verbatim to obtain directional derivatives.
    """

    __slots__ = ("re", "du")

    def __init__(self, re: TruncSeries, du: TruncSeries | None = None):
        self.re = re
        self.du = du if du is not None else TruncSeries.zero(re.order)

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.du.is_zero

    @property
    def is_one(self) -> bool:
        return self.re.is_one and self.du.is_zero

    def agrees(self, other: "DualSeries") -> bool:
        return self.re.agrees(other.re) and self.du.agrees(other.du)

    def __eq__(self, other):
        if not isinstance(other, DualSeries):
            return NotImplemented
        return self.re == other.re and self.du == other.du

    def __hash__(self):
        return hash((self.re, self.du))

    def __neg__(self):
        return DualSeries(-self.re, -self.du)

    def _coerce(self, other):
        if isinstance(other, DualSeries):
            return other
        if isinstance(other, TruncSeries):
            return DualSeries(other)
        if isinstance(other, (int, Fraction)):
            return None  # scalars handled inline
        raise TypeError(f"cannot combine DualSeries with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return DualSeries(self.re + other, self.du)
        o = self._coerce(other)
        return DualSeries(self.re + o.re, self.du + o.du)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if not isinstance(other, (int, Fraction)) else -rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DualSeries(self.re * other, self.du * other)
        o = self._coerce(other)
        return DualSeries(self.re * o.re, self.re * o.du + self.du * o.re)

    __rmul__ = __mul__

    def derivative(self):
        return DualSeries(self.re.derivative(), self.du.derivative())

    def invert(self):
        r = self.re.invert()
        return DualSeries(r, -(r * self.du * r))

    def truncate(self, order: int):
        return DualSeries(self.re.truncate(order), self.du.truncate(order))

    def __repr__(self):
        return f"Dual({self.re!r}, eps={self.du!r})"
