"""Weighted-degree-truncated series in the times t = (t_1, t_2, ...).

Monomials carry two exponent groups: the times t_k and an optional second
family t'_k (used by two-sided Toda correlators).  Both groups are graded
by weight(t_k) = weight(t'_k) = k, and a series with bound D stores no
monomial of weighted degree above D.  ``bound=None`` marks an exact
polynomial (no truncation happened on any code path that produced it).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .series import Scalar, rat

# exponent key: (t-exponents, t'-exponents), trailing zeros trimmed
Expo = tuple[int, ...]
Key = tuple[Expo, Expo]

ZERO_KEY: Key = ((), ())


def _trim(e: Iterable[int]) -> Expo:
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def weight(key: Key) -> int:
    e, ep = key
    return sum((i + 1) * v for i, v in enumerate(e)) + sum(
        (i + 1) * v for i, v in enumerate(ep)
    )


def _min_bound(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TimesSeries:
    """Exact series in the times, truncated at a weighted degree bound."""

    __slots__ = ("bound", "terms")

    def __init__(self, terms: dict[Key, Scalar], bound: int | None):
        out: dict[Key, Fraction] = {}
        for key, c in terms.items():
            c = rat(c)
            if c == 0:
                continue
            key = (_trim(key[0]), _trim(key[1]))
            if bound is not None and weight(key) > bound:
                raise ValueError("term above the weighted bound")
            out[key] = out.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in out.items() if v != 0}
        self.bound = bound

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, bound: int | None = None) -> "TimesSeries":
        return cls({}, bound)

    @classmethod
    def const(cls, c: Scalar, bound: int | None = None) -> "TimesSeries":
        return cls({ZERO_KEY: c}, bound)

    @classmethod
    def one(cls, bound: int | None = None) -> "TimesSeries":
        return cls.const(1, bound)

    @classmethod
    def var(cls, k: int, prime: bool = False, bound: int | None = None) -> "TimesSeries":
        """The single time t_k (or t'_k), k >= 1."""
        e = (0,) * (k - 1) + (1,)
        key = ((), e) if prime else (e, ())
        return cls({key: 1}, bound)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key: Key) -> Fraction:
        key = (_trim(key[0]), _trim(key[1]))
        return self.terms.get(key, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(ZERO_KEY, Fraction(0))

    def min_weight(self) -> int | None:
        """Smallest weighted degree with a nonzero term, None if zero."""
        if not self.terms:
            return None
        return min(weight(k) for k in self.terms)

    def agrees(self, other: "TimesSeries") -> bool:
        """Coefficients coincide through the shared weighted bound."""
        b = _min_bound(self.bound, other.bound)
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            if b is not None and weight(k) > b:
                continue
            if self.terms.get(k, 0) != other.terms.get(k, 0):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, TimesSeries):
            return NotImplemented
        return self.bound == other.bound and self.terms == other.terms

    def __hash__(self):
        return hash((self.bound, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return TimesSeries({k: -c for k, c in self.terms.items()}, self.bound)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TimesSeries.const(other, None)
        elif not isinstance(other, TimesSeries):
            return NotImplemented
        bound = _min_bound(self.bound, other.bound)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        if bound is not None:
            out = {k: c for k, c in out.items() if weight(k) <= bound}
        return TimesSeries(out, bound)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-rat(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = rat(other)
            return TimesSeries({k: c * v for k, v in self.terms.items()}, self.bound)
        if not isinstance(other, TimesSeries):
            return NotImplemented
        bound = _min_bound(self.bound, other.bound)
        out: dict[Key, Fraction] = {}
        for (e1, p1), c1 in self.terms.items():
            w1 = weight((e1, p1))
            for (e2, p2), c2 in other.terms.items():
                if bound is not None and w1 + weight((e2, p2)) > bound:
                    continue
                n = max(len(e1), len(e2))
                e = tuple(
                    (e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0)
                    for i in range(n)
                )
                m = max(len(p1), len(p2))
                p = tuple(
                    (p1[i] if i < len(p1) else 0) + (p2[i] if i < len(p2) else 0)
                    for i in range(m)
                )
                key = (_trim(e), _trim(p))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return TimesSeries(out, bound)

    __rmul__ = __mul__

    def truncate(self, bound: int | None) -> "TimesSeries":
        b = _min_bound(self.bound, bound)
        if b is None:
            return self
        return TimesSeries({k: c for k, c in self.terms.items() if weight(k) <= b}, b)

    def derivative(self, k: int, prime: bool = False) -> "TimesSeries":
        """d/dt_k (or d/dt'_k); the weighted bound drops by k."""
        out: dict[Key, Fraction] = {}
        for (e, p), c in self.terms.items():
            src = p if prime else e
            if len(src) < k or src[k - 1] == 0:
                continue
            n = src[k - 1]
            new = list(src)
            new[k - 1] -= 1
            key = (_trim(e), _trim(new)) if prime else (_trim(new), _trim(p))
            out[key] = out.get(key, Fraction(0)) + n * c
        bound = None if self.bound is None else self.bound - k
        return TimesSeries(out, bound)

    def mul_var(self, k: int, prime: bool = False) -> "TimesSeries":
        """Multiply by t_k (or t'_k); knowledge shifts up by weight k."""
        out: dict[Key, Fraction] = {}
        for (e, p), c in self.terms.items():
            src = list(p if prime else e)
            while len(src) < k:
                src.append(0)
            src[k - 1] += 1
            key = (tuple(e), _trim(src)) if prime else (_trim(src), tuple(p))
            out[key] = c
        bound = None if self.bound is None else self.bound + k
        return TimesSeries(out, bound)

    def exp(self) -> "TimesSeries":
        """exp of a series with no constant term; needs a finite bound."""
        if self.bound is None:
            raise ValueError("exp needs a finite weighted bound")
        if self.constant_term() != 0:
            raise ValueError("exp requires zero constant term")
        v = self.min_weight()
        result = TimesSeries.one(self.bound)
        if v is None:
            return result
        power = TimesSeries.one(self.bound)
        fact = 1
        for j in range(1, self.bound // v + 1):
            power = power * self
            fact *= j
            result = result + power * Fraction(1, fact)
            if power.is_zero:
                break
        return result

    def invert(self) -> "TimesSeries":
        """Inverse of a series with nonzero constant term (finite bound)."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ValueError("invert requires a nonzero constant term")
        if self.bound is None:
            raise ValueError("invert needs a finite weighted bound")
        g = (self * (Fraction(1) / c0) - 1) * Fraction(-1)  # g = 1 - f/c0
        result = TimesSeries.one(self.bound)
        power = TimesSeries.one(self.bound)
        v = g.min_weight()
        if v is not None:
            for _ in range(self.bound // v):
                power = power * g
                if power.is_zero:
                    break
                result = result + power
        return result * (Fraction(1) / c0)

    def restrict_primary(self) -> "TimesSeries":
        """Set every t'_k = 0."""
        return TimesSeries(
            {k: c for k, c in self.terms.items() if not k[1]}, self.bound
        )

    def __repr__(self):
        if not self.terms:
            return f"<0 (bound {self.bound})>"
        bits = []
        for key in sorted(self.terms, key=lambda k: (weight(k), k)):
            e, p = key
            mon = []
            for i, v in enumerate(e):
                if v:
                    mon.append(f"t{i+1}" + (f"^{v}" if v > 1 else ""))
            for i, v in enumerate(p):
                if v:
                    mon.append(f"t'{i+1}" + (f"^{v}" if v > 1 else ""))
            c = self.terms[key]
            bits.append(f"{c}*" + "*".join(mon) if mon else f"{c}")
        return f"<{' + '.join(bits)} (bound {self.bound})>"
