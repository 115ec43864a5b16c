"""Affine Hecke algebra action on truncated tensor powers of V(z).

Scalars are Laurent polynomials in a formal q (never specialized except by
the explicit q -> 1 evaluation).  Basis labels are pairs (color, z-degree)
with the flattened half-integer index z^j e_i <-> v_{i - n j - 1/2}
available as a relabeling.

The generator T_i acts on adjacent slots.  On pure colors it is the
standard R-matrix rule

    e_k (x) e_k -> q e_k (x) e_k,
    e_k (x) e_l -> e_l (x) e_k             (k < l),
    e_l (x) e_k -> q e_k (x) e_l + (q-1) e_l (x) e_k,

and it extends to arbitrary z-degrees through the exact commutation rules

    T z_1 = z_2 T - (q-1) z_2,      T z_2 = z_1 T + (q-1) z_2,

which are forced by T X_1 T = q X_2 once X_i is multiplication by z on
slot i.  With that extension every defining relation holds as an exact
matrix identity on any z-window (the strings produced by T stay between
the two degrees involved), and the Bernstein recursion
X_{i+1} = q^{-1} T_i X_i T_i reproduces the slot shifts on the nose.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .errors import BadArgument, WindowOverflow
from .series import Scalar, rat


class QPoly:
    """Laurent polynomial in q over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Scalar] | None = None):
        out = {}
        for e, c in (terms or {}).items():
            c = rat(c)
            if c != 0:
                out[int(e)] = c
        self.terms = out

    @classmethod
    def const(cls, c: Scalar) -> "QPoly":
        return cls({0: c})

    @classmethod
    def q(cls, e: int = 1) -> "QPoly":
        return cls({e: 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return QPoly({e: -c for e, c in self.terms.items()})

    def _coerce(self, other) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly.const(other)
        raise TypeError(f"cannot combine QPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return QPoly(out)

    __rmul__ = __mul__

    def divexact(self, other: "QPoly") -> "QPoly":
        """Exact division; raises if the remainder is nonzero."""
        q, r = self.divmod_shifted(other)
        if not r.is_zero:
            raise ArithmeticError("inexact QPoly division")
        return q

    def divmod_shifted(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Division with remainder after clearing Laurent shifts."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero QPoly")
        if self.is_zero:
            return QPoly(), QPoly()
        lo_s, lo_o = min(self.terms), min(other.terms)
        num = {e - lo_s: c for e, c in self.terms.items()}
        den = {e - lo_o: c for e, c in other.terms.items()}
        dd = max(den)
        lead = den[dd]
        quot: dict[int, Fraction] = {}
        work = dict(num)
        for e in range(max(num) - dd, -1, -1):
            c = work.get(e + dd, Fraction(0))
            if c == 0:
                continue
            f = c / lead
            quot[e] = f
            for eo, co in den.items():
                k = e + eo
                work[k] = work.get(k, Fraction(0)) - f * co
                if work[k] == 0:
                    del work[k]
        shift = lo_s - lo_o
        return (
            QPoly({e + shift: c for e, c in quot.items()}),
            QPoly({e + lo_s: c for e, c in work.items()}),
        )

    def eval_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"{c}*q")
            else:
                bits.append(f"{c}*q^{e}")
        return " + ".join(bits)


Q = QPoly.q()
ONE = QPoly.const(1)


def _poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    while not b.is_zero:
        _, r = a.divmod_shifted(b)
        a, b = b, r
    if a.is_zero:
        return a
    # normalize: min exponent 0, leading coefficient 1
    lo = min(a.terms)
    hi = max(a.terms)
    lead = a.terms[hi]
    return QPoly({e - lo: c / lead for e, c in a.terms.items()})


class RatFunc:
    """Rational function in q, gcd-reduced; the field for elimination."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly = ONE):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num, self.den = QPoly(), ONE
            return
        g = _poly_gcd(num, den)
        if not g.is_zero and g != ONE:
            num = num.divexact(g)
            den = den.divexact(g)
        # canonical: denominator has min exponent 0 and leading coeff 1
        lo = min(den.terms)
        hi = max(den.terms)
        lead = den.terms[hi]
        scale = QPoly({-lo: Fraction(1) / lead})
        self.num = num * scale
        self.den = den * scale

    @classmethod
    def from_scalar(cls, c) -> "RatFunc":
        if isinstance(c, RatFunc):
            return c
        if isinstance(c, QPoly):
            return cls(c)
        return cls(QPoly.const(c))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other):
        other = RatFunc.from_scalar(other)
        return (self.num * other.den) == (other.num * self.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        other = RatFunc.from_scalar(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFunc.from_scalar(other))

    def __mul__(self, other):
        other = RatFunc.from_scalar(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def invert(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverting zero rational function")
        return RatFunc(self.den, self.num)

    def eval_one(self) -> Fraction:
        d = self.den.eval_one()
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at q = 1")
        return self.num.eval_one() / d

    def __repr__(self):
        return f"({self.num})/({self.den})" if self.den != ONE else repr(self.num)


# -- the T action on one adjacent pair -----------------------------------------

PairKey = tuple[int, int, int, int]  # (zexp1, zexp2, color1, color2)


@lru_cache(maxsize=None)
def _t_pair(a: int, b: int, k: int, l: int) -> tuple[tuple[PairKey, QPoly], ...]:
    out: dict[PairKey, QPoly] = {}

    def acc(key, c):
        out[key] = out.get(key, QPoly()) + c

    if a == 0 and b == 0:
        if k == l:
            return (((0, 0, k, l), Q),)
        if k < l:
            return (((0, 0, l, k), ONE),)
        return (((0, 0, l, k), Q), ((0, 0, k, l), Q - ONE))
    if a > 0:
        for (x, y, c, d), co in _t_pair(a - 1, b, k, l):
            acc((x, y + 1, c, d), co)
        acc((a - 1, b + 1, k, l), ONE - Q)
    elif b > 0:
        for (x, y, c, d), co in _t_pair(a, b - 1, k, l):
            acc((x + 1, y, c, d), co)
        acc((a, b, k, l), Q - ONE)
    elif a < 0:
        for (x, y, c, d), co in _t_pair(a + 1, b, k, l):
            acc((x, y - 1, c, d), co)
        acc((a, b, k, l), Q - ONE)
    else:
        for (x, y, c, d), co in _t_pair(a, b + 1, k, l):
            acc((x - 1, y, c, d), co)
        acc((a - 1, b + 1, k, l), ONE - Q)
    return tuple((key, c) for key, c in out.items() if not c.is_zero)


# vectors on the tensor window: {tuple of (color, zexp) slots: QPoly}
Slot = tuple[int, int]
QVector = dict[tuple[Slot, ...], QPoly]


def _acc(out: QVector, key, c):
    if key in out:
        out[key] = out[key] + c
    else:
        out[key] = c


def _scale(v: QVector, c) -> QVector:
    return {k: val * c for k, val in v.items()}


def _clean(v: QVector) -> QVector:
    return {k: c for k, c in v.items() if not c.is_zero}


def vec_sub(a: QVector, b: QVector) -> QVector:
    out = dict(a)
    for k, c in b.items():
        out[k] = (out[k] - c) if k in out else (-c)
    return _clean(out)


def basis_vector(key) -> QVector:
    return {tuple(key): ONE}


class TensorWindow:
    """Truncated V(z)^{tensor N} with slots holding (color, z-degree)."""

    def __init__(self, n: int, N: int, zrange: tuple[int, int]):
        if n < 1 or N < 1 or zrange[0] > zrange[1]:
            raise BadArgument("bad tensor window parameters")
        self.n = n
        self.N = N
        self.zrange = zrange

    def label(self, color: int, zexp: int) -> int:
        """Doubled flattened index of z^zexp e_color."""
        return 2 * (color - self.n * zexp) - 1

    def unlabel(self, lab: int) -> Slot:
        half = (lab + 1) // 2
        color = (half - 1) % self.n + 1
        zexp = (color - half) // self.n
        return color, zexp

    @property
    def dim(self) -> int:
        return self.n * (self.zrange[1] - self.zrange[0] + 1)

    def slots(self, restrict: tuple[int, int] | None = None) -> list[Slot]:
        lo, hi = restrict if restrict is not None else self.zrange
        return [
            (i, j) for j in range(lo, hi + 1) for i in range(1, self.n + 1)
        ]

    def basis(self, restrict: tuple[int, int] | None = None):
        return [tuple(key) for key in iproduct(self.slots(restrict), repeat=self.N)]

    def _check_zexp(self, j: int):
        if not self.zrange[0] <= j <= self.zrange[1]:
            raise WindowOverflow(f"z-degree {j} left the window {self.zrange}")

    # -- operators ------------------------------------------------------------

    def hecke_T(self, i: int):
        """T_i on adjacent slots (i, i+1), 1-based."""
        if not 1 <= i <= self.N - 1:
            raise BadArgument("T index out of range")

        def op(v: QVector) -> QVector:
            out: QVector = {}
            for key, c in v.items():
                (k, a), (l, b) = key[i - 1], key[i]
                for (x, y, c1, c2), co in _t_pair(a, b, k, l):
                    self._check_zexp(x)
                    self._check_zexp(y)
                    nk = key[: i - 1] + ((c1, x), (c2, y)) + key[i + 1:]
                    _acc(out, nk, c * co)
            return _clean(out)

        return op

    def hecke_T_inv(self, i: int):
        """T_i^{-1} = q^{-1} T_i + (q^{-1} - 1)."""
        T = self.hecke_T(i)
        qinv = QPoly.q(-1)

        def op(v: QVector) -> QVector:
            out = _scale(T(v), qinv)
            for key, c in v.items():
                _acc(out, key, c * (qinv - ONE))
            return _clean(out)

        return op

    def hecke_X(self, i: int, by: int = 1):
        """X_i^{by}: multiplication by z^{by} on slot i."""
        if not 1 <= i <= self.N:
            raise BadArgument("X index out of range")

        def op(v: QVector) -> QVector:
            out: QVector = {}
            for key, c in v.items():
                color, zexp = key[i - 1]
                self._check_zexp(zexp + by)
                _acc(out, key[: i - 1] + ((color, zexp + by),) + key[i:], c)
            return _clean(out)

        return op

    def hecke_X_bernstein(self, i: int):
        """X_i by the recursion X_{i+1} = q^{-1} T_i X_i T_i from X_1."""
        if i == 1:
            return self.hecke_X(1)
        prev = self.hecke_X_bernstein(i - 1)
        T = self.hecke_T(i - 1)
        qinv = QPoly.q(-1)

        def op(v: QVector) -> QVector:
            return _clean(_scale(T(prev(T(v))), qinv))

        return op


# -- relation verification -------------------------------------------------------


def verify_relations(win: TensorWindow) -> list[tuple[str, bool]]:
    """Check every defining relation as an exact identity on the window.

    Relations involving X are tested on the sub-window that keeps all
    intermediate z-degrees inside the configured zrange.
    """
    N = win.N
    lo, hi = win.zrange
    results: list[tuple[str, bool]] = []

    def check(name, lhs, rhs, restrict=None):
        ok = True
        for key in win.basis(restrict):
            v = basis_vector(key)
            if vec_sub(lhs(v), rhs(v)):
                ok = False
                break
        results.append((name, ok))

    ident = lambda v: dict(v)
    for i in range(1, N):
        T = win.hecke_T(i)
        Ti = win.hecke_T_inv(i)
        check(f"T_{i} T_{i}^-1 = 1", lambda v: Ti(T(v)), ident)

        def quad(v, T=T):
            tv = T(v)
            out = dict(T(tv))
            for k, c in tv.items():
                _acc(out, k, c * (ONE - Q))
            for k, c in v.items():
                _acc(out, k, -(Q * c))
            return _clean(out)

        check(f"(T_{i}+1)(T_{i}-q) = 0", quad, lambda v: {})
    for i in range(1, N + 1):
        X = win.hecke_X(i)
        Xi = win.hecke_X(i, -1)
        check(f"X_{i} X_{i}^-1 = 1", lambda v, X=X, Xi=Xi: Xi(X(v)), ident,
              (lo, hi - 1))
    for i in range(1, N - 1):
        Ti, Tj = win.hecke_T(i), win.hecke_T(i + 1)
        check(
            f"T_{i} T_{i+1} T_{i} = T_{i+1} T_{i} T_{i+1}",
            lambda v, Ti=Ti, Tj=Tj: Ti(Tj(Ti(v))),
            lambda v, Ti=Ti, Tj=Tj: Tj(Ti(Tj(v))),
        )
    for i in range(1, N):
        for j in range(1, N):
            if abs(i - j) > 1:
                T1, T2 = win.hecke_T(i), win.hecke_T(j)
                check(
                    f"T_{i} T_{j} = T_{j} T_{i}",
                    lambda v, T1=T1, T2=T2: T1(T2(v)),
                    lambda v, T1=T1, T2=T2: T2(T1(v)),
                )
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            Xi, Xj = win.hecke_X(i), win.hecke_X(j)
            check(
                f"X_{i} X_{j} = X_{j} X_{i}",
                lambda v, Xi=Xi, Xj=Xj: Xi(Xj(v)),
                lambda v, Xi=Xi, Xj=Xj: Xj(Xi(v)),
                (lo, hi - 2),
            )
    for i in range(1, N):
        for j in range(1, N + 1):
            if j not in (i, i + 1):
                T, X = win.hecke_T(i), win.hecke_X(j)
                check(
                    f"X_{j} T_{i} = T_{i} X_{j}",
                    lambda v, T=T, X=X: X(T(v)),
                    lambda v, T=T, X=X: T(X(v)),
                    (lo, hi - 1),
                )
    for i in range(1, N):
        T, Xi, Xn = win.hecke_T(i), win.hecke_X(i), win.hecke_X(i + 1)
        check(
            f"T_{i} X_{i} T_{i} = q X_{i+1}",
            lambda v, T=T, Xi=Xi: T(Xi(T(v))),
            lambda v, Xn=Xn: _scale(Xn(v), Q),
            (lo, hi - 1),
        )
    for i in range(2, N + 1):
        Xb = win.hecke_X_bernstein(i)
        X = win.hecke_X(i)
        check(
            f"Bernstein X_{i} = z on slot {i}",
            lambda v, Xb=Xb: Xb(v),
            lambda v, X=X: X(v),
            (lo, hi - 1),
        )
    return results


# -- q-wedge quotient ----------------------------------------------------------


def _rref_ratfunc(rows: list[list[RatFunc]]):
    """Reduced row echelon over the rational-function field."""
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not m[i][c].is_zero), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].invert()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


class WedgeReducer:
    """Reduction modulo sum_i Ker(T_i - q) on a (restricted) window.

    The kernels are assembled blockwise (T_i preserves the other slots,
    the colors involved, and the total z-degree of the acted pair) and
    echelonized over Q(q); reduction of a vector against the echelon gives
    the canonical quotient representative.
    """

    def __init__(self, win: TensorWindow, restrict: tuple[int, int] | None = None):
        self.win = win
        self.restrict = restrict
        basis = win.basis(restrict)
        self.basis = basis
        self.index = {k: i for i, k in enumerate(basis)}
        gens: list[QVector] = []
        for i in range(1, win.N):
            gens.extend(self._kernel_gens(i))
        rows = [
            [RatFunc.from_scalar(g.get(k, QPoly())) for k in basis] for g in gens
        ]
        echelon, pivots = _rref_ratfunc(rows)
        self.pivot_rows = {
            pc: echelon[r] for r, pc in enumerate(pivots)
        }
        self.quotient_dim = len(basis) - len(pivots)

    def _kernel_gens(self, i: int) -> list[QVector]:
        """Kernel basis of (T_i - q) via small per-block nullspaces."""
        win = self.win
        T = win.hecke_T(i)
        blocks: dict = {}
        for key in self.basis:
            (k, a), (l, b) = key[i - 1], key[i]
            rest = key[: i - 1] + key[i + 1:]
            sig = (rest, a + b, tuple(sorted((k, l))))
            blocks.setdefault(sig, []).append(key)
        gens = []
        for keys in blocks.values():
            idx = {k: j for j, k in enumerate(keys)}
            rows = []
            for key in keys:
                img = T(basis_vector(key))
                img[key] = img.get(key, QPoly()) - Q
                col = [RatFunc.from_scalar(img.get(k2, QPoly())) for k2 in keys]
                rows.append(col)
            # kernel of the column map: transpose, then nullspace
            mat = [[rows[j][r] for j in range(len(keys))] for r in range(len(keys))]
            red, pivots = _rref_ratfunc(mat)
            free = [c for c in range(len(keys)) if c not in pivots]
            for fc in free:
                vec: QVector = {}
                # clear denominators for readability: work over QPoly
                entries: dict[int, RatFunc] = {fc: RatFunc.from_scalar(ONE)}
                for r, pc in enumerate(pivots):
                    entries[pc] = -red[r][fc]
                den = ONE
                for e in entries.values():
                    den = den * e.den
                for c_idx, e in entries.items():
                    coef = e.num * den.divexact(e.den)
                    if not coef.is_zero:
                        vec[keys[c_idx]] = coef
                gens.append(vec)
        return gens

    def reduce(self, v: QVector) -> dict:
        """Canonical representative as {key: RatFunc}."""
        work: dict[int, RatFunc] = {}
        for k, c in v.items():
            if k not in self.index:
                raise WindowOverflow("vector leaves the reducer's window")
            work[self.index[k]] = RatFunc.from_scalar(c)
        changed = True
        while changed:
            changed = False
            for idx in sorted(work):
                if idx in self.pivot_rows and not work[idx].is_zero:
                    f = work[idx]
                    row = self.pivot_rows[idx]
                    for j, rv in enumerate(row):
                        if not rv.is_zero:
                            cur = work.get(j, RatFunc.from_scalar(0))
                            work[j] = cur - f * rv
                    changed = True
            work = {j: c for j, c in work.items() if not c.is_zero}
        return {self.basis[j]: c for j, c in work.items()}


def q_antisymmetrize(win: TensorWindow, v: QVector,
                     restrict: tuple[int, int] | None = None) -> dict:
    """Image of v in the q-wedge quotient, as a canonical representative."""
    if win.N == 1:
        return {k: RatFunc.from_scalar(c) for k, c in v.items()}
    return WedgeReducer(win, restrict).reduce(v)


def classical_antisymmetrize(v: QVector) -> dict:
    """q = 1 oracle: sign-sorted normal form by flattened slot order."""
    out: dict = {}
    for key, c in v.items():
        if len(set(key)) != len(key):
            continue
        inv = sum(
            1
            for a in range(len(key))
            for b in range(a + 1, len(key))
            if key[a] > key[b]
        )
        skey = tuple(sorted(key))
        cur = out.get(skey, Fraction(0))
        out[skey] = cur + (c.eval_one() if isinstance(c, QPoly) else Fraction(c)) * (
            (-1) ** inv
        )
    return {k: c for k, c in out.items() if c != 0}


def qpoly_rank(rows: list[list[QPoly]]) -> int:
    """Generic rank over Q(q) by fraction-free Bareiss elimination."""
    if not rows:
        return 0
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = ONE
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not m[i][c].is_zero), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                m[i][j] = num.divexact(prev)
            m[i][c] = QPoly()
        prev = m[r][c]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank
