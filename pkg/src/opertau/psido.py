"""Microdifferential operators: the ring Q[[t]]((d^-1)) with tracked tails.

A :class:`PsiDO` stores finitely many coefficients a_i of sum a_i(t) d^i
(coefficients on the left of powers of d).  ``depth=None`` means the
operator is exact: absent orders are exact zeros.  ``depth=d`` means orders
below d were discarded; every operation records the worst depth actually
trusted in its result so comparisons never overreach the computed window.
"""

from __future__ import annotations

import contextvars
from fractions import Fraction
from functools import lru_cache

from .errors import BadArgument, NotMonic, TailOverflow
from .series import DualSeries, TruncSeries

DEFAULT_TAIL_DEPTH = -8

_tail_depth: contextvars.ContextVar[int] = contextvars.ContextVar(
    "tail_depth", default=DEFAULT_TAIL_DEPTH
)


def tail_depth() -> int:
    """Deepest d-order retained when an expansion does not terminate."""
    return _tail_depth.get()


class configure_tail_depth:
    """Context manager overriding the tail depth for one computation."""

    def __init__(self, depth: int):
        self.depth = depth
        self._token = None

    def __enter__(self):
        self._token = _tail_depth.set(self.depth)
        return self

    def __exit__(self, *exc):
        _tail_depth.reset(self._token)
        return False


@lru_cache(maxsize=None)
def _binom(i: int, k: int) -> int:
    """Generalized binomial C(i, k) for any integer i, k >= 0 (integer)."""
    num = 1
    for j in range(k):
        num *= i - j
    den = 1
    for j in range(2, k + 1):
        den *= j
    q, r = divmod(num, den)
    assert r == 0
    return q


def _depth_max(a: int | None, b: int | None) -> int | None:
    """Shallower (less informative) of two trust depths; None = exact."""
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class PsiDO:
    """Finite window of a microdifferential operator."""

    __slots__ = ("terms", "depth")

    def __init__(self, terms: dict[int, TruncSeries | DualSeries], depth: int | None = None):
        cleaned = {}
        for i, c in terms.items():
            if c.is_zero:
                continue
            if depth is not None and i < depth:
                continue
            cleaned[i] = c
        self.terms = cleaned
        self.depth = depth

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "PsiDO":
        return cls({})

    @classmethod
    def d(cls, k: int = 1, order: int | None = None) -> "PsiDO":
        from .series import DEFAULT_ORDER

        return cls({k: TruncSeries.one(order or DEFAULT_ORDER)})

    @classmethod
    def from_series(cls, s: TruncSeries | DualSeries) -> "PsiDO":
        """Multiplication operator by the function s."""
        return cls({0: s})

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def top(self) -> int | None:
        return max(self.terms) if self.terms else None

    def coeff(self, i: int):
        """Coefficient of d^i; raises TailOverflow below the trusted depth."""
        if self.depth is not None and i < self.depth:
            raise TailOverflow(f"order {i} below trusted depth {self.depth}")
        c = self.terms.get(i)
        if c is not None:
            return c
        return None  # exact zero within the trusted window

    def order_window(self) -> tuple[int | None, int | None]:
        return (self.depth, self.top)

    def is_differential(self) -> bool:
        return all(i >= 0 for i in self.terms)

    def agrees(self, other: "PsiDO") -> bool:
        """Coefficientwise agreement on the shared trusted window."""
        d = _depth_max(self.depth, other.depth)
        orders = set(self.terms) | set(other.terms)
        for i in orders:
            if d is not None and i < d:
                continue
            a = self.terms.get(i)
            b = other.terms.get(i)
            if a is None and b is None:
                continue
            if a is None:
                if not _agrees_zero(b):
                    return False
            elif b is None:
                if not _agrees_zero(a):
                    return False
            elif not a.agrees(b):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PsiDO):
            return NotImplemented
        return self.depth == other.depth and self.terms == other.terms

    def __hash__(self):
        return hash((self.depth, frozenset(self.terms.items())))

    # -- ring operations -----------------------------------------------------

    def __neg__(self):
        return PsiDO({i: -c for i, c in self.terms.items()}, self.depth)

    def __add__(self, other):
        if not isinstance(other, PsiDO):
            return NotImplemented
        depth = _depth_max(self.depth, other.depth)
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out[i] + c if i in out else c
        return PsiDO(out, depth)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PsiDO({i: c * other for i, c in self.terms.items()}, self.depth)
        if isinstance(other, PsiDO):
            return compose(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PsiDO":
        if e < 0:
            raise BadArgument("negative operator powers are not defined here")
        acc = None
        for _ in range(e):
            acc = self if acc is None else compose(acc, self)
        if acc is None:
            raise BadArgument("use an explicit identity for power 0")
        return acc

    def truncate_depth(self, depth: int) -> "PsiDO":
        return PsiDO({i: c for i, c in self.terms.items() if i >= depth},
                     _depth_max(self.depth, depth))

    def __repr__(self):
        if not self.terms:
            return "PsiDO<0>"
        bits = [f"[{c!r}] d^{i}" for i, c in sorted(self.terms.items(), reverse=True)]
        tail = "" if self.depth is None else f" (depth {self.depth})"
        return "PsiDO<" + " + ".join(bits) + ">" + tail


def _agrees_zero(c) -> bool:
    if isinstance(c, DualSeries):
        return _agrees_zero(c.re) and _agrees_zero(c.du)
    return all(v == 0 for _, v in c.items())


def compose(A: PsiDO, B: PsiDO) -> PsiDO:
    """Operator product via d^i a = sum_k C(i,k) a^(k) d^(i-k)."""
    if A.is_zero or B.is_zero:
        return PsiDO({}, _depth_max(A.depth, B.depth))
    floor = tail_depth()
    cut: int | None = None
    out: dict[int, TruncSeries | DualSeries] = {}
    for j, b in B.terms.items():
        derivs = [b]
        for i, a in A.terms.items():
            k = 0
            cur = derivs[0]
            while True:
                if i >= 0 and k > i:
                    break  # binomial vanishes: expansion terminates
                ord_ = i + j - k
                if ord_ < floor:
                    if not cur.is_zero:
                        cut = floor if cut is None else max(cut, floor)
                    break
                if cur.is_zero:
                    break  # derivative chain died: exact termination
                coef = _binom(i, k)
                if coef != 0:
                    term = a * cur if coef == 1 else (a * cur) * Fraction(coef)
                    if ord_ in out:
                        out[ord_] = out[ord_] + term
                    else:
                        out[ord_] = term
                k += 1
                if k >= len(derivs):
                    derivs.append(derivs[-1].derivative())
                cur = derivs[k]
    depth = cut
    if A.depth is not None:
        depth = _depth_max(depth, A.depth + max(B.terms))
    if B.depth is not None:
        depth = _depth_max(depth, B.depth + max(A.terms))
    if depth is not None and A.top + B.top < depth:
        raise TailOverflow("no trusted orders remain in the composition")
    return PsiDO(out, depth)


def commutator(A: PsiDO, B: PsiDO) -> PsiDO:
    return compose(A, B) - compose(B, A)


def split(A: PsiDO) -> tuple[PsiDO, PsiDO]:
    """(A_plus, A_minus): orders >= 0 and orders < 0; parts re-add to A."""
    if A.depth is not None and A.depth > 0:
        raise TailOverflow("differential part is not fully trusted")
    plus = PsiDO({i: c for i, c in A.terms.items() if i >= 0}, None)
    minus = PsiDO({i: c for i, c in A.terms.items() if i < 0}, A.depth)
    return plus, minus


def residue(A: PsiDO):
    """Coefficient of d^-1."""
    if A.depth is not None and A.depth > -1:
        raise TailOverflow("d^-1 coefficient is below the trusted depth")
    c = A.terms.get(-1)
    if c is not None:
        return c
    # exact zero; give it the trusted t-window of the operator's coefficients
    orders = [s.order for s in _real_series(A)]
    from .series import DEFAULT_ORDER

    zero = TruncSeries.zero(min(orders) if orders else DEFAULT_ORDER)
    if any(isinstance(v, DualSeries) for v in A.terms.values()):
        return DualSeries(zero, zero)
    return zero


def _real_series(A: PsiDO):
    for c in A.terms.values():
        if isinstance(c, DualSeries):
            yield c.re
        else:
            yield c


def nth_root(L: PsiDO, n: int, depth: int | None = None) -> PsiDO:
    """The monic n-th root of a monic order-n operator.

    Uniqueness: matching the coefficient of d^(n-1+m) in R^n = L determines
    the order-m coefficient of R one order at a time; no integration
    constants arise.
    """
    if n <= 0:
        raise BadArgument("root index must be a positive integer")
    if L.is_zero or L.top is None:
        raise NotMonic("zero operator has no monic root")
    if L.top != n:
        raise NotMonic(f"operator order {L.top} != root index {n}")
    top = L.terms[n]
    if not top.is_one:
        raise NotMonic("top coefficient must be exactly 1")
    if n == 1:
        return L
    target = tail_depth() if depth is None else depth
    one = top  # reuse the (possibly dual) exact-1 coefficient
    R = PsiDO({1: one})
    with configure_tail_depth(target):
        m = 0
        while m >= target:
            E = L - R**n
            want = n - 1 + m
            if E.depth is not None and want < E.depth:
                break
            c = E.terms.get(want)
            if c is not None and not c.is_zero:
                R = R + PsiDO({m: c * Fraction(1, n)})
            m -= 1
    return PsiDO(R.terms, target)


def invert_monic0(A: PsiDO) -> PsiDO:
    """Inverse of A = a_0 + (orders <= -1) with a_0 an invertible function."""
    if A.is_zero or A.top != 0:
        raise NotMonic("inverse implemented for top order 0 only")
    a0 = A.terms[0]
    a0inv = PsiDO({0: a0.invert()})
    C = compose(a0inv, A)  # 1 + strictly negative orders
    one = PsiDO({0: C.terms[0]})  # the exact 1 coefficient, window-tracked
    N = C - one
    floor = tail_depth()
    acc = one
    term = one
    while not (term.is_zero or N.is_zero):
        if term.top + N.top < floor:
            break
        term = compose(term, -N).truncate_depth(floor)
        if term.is_zero:
            break
        acc = acc + term
    return compose(acc, a0inv)
