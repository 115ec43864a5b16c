"""Finite-window Sato Grassmannian points and their tau functions.

A point is modeled in the variable z = 1/t as the span of finitely many
frame columns supported on z-degrees [lo, hi), plus the standard tail
z^k for all k >= hi.  The virtual dimension (Fredholm index of the
projection onto span{z^k : k >= 0}) is #columns - hi, and equals the
fermionic charge of the corresponding semi-infinite wedge under
z^k <-> v_{-k-1/2}.

Tau functions are produced along two independent routes: the
Pluecker-Schur sum over partitions and the correlator determinant against
the complete homogeneous functions; agreement of the two is a test oracle.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import BadArgument, ChargeMismatch, DegenerateFrame
from .schur import h_complete, schur_polynomial
from .series import Scalar, rat
from .fock import partitions
from .times import TimesSeries

Column = dict[int, Fraction]
Window = tuple[int, int]


def _clean(col: dict[int, Scalar]) -> Column:
    return {int(k): rat(v) for k, v in col.items() if rat(v) != 0}


class GrassPoint:
    """Window model of a subspace commensurable with the polynomial half."""

    __slots__ = ("window", "columns")

    def __init__(self, window: Window, columns, reduce: bool = True):
        lo, hi = window
        if lo > 0 or hi < 0:
            raise BadArgument("window must contain 0")
        cols = []
        for col in columns:
            col = _clean(col)
            if any(k < lo or k >= hi for k in col):
                raise BadArgument("column support must lie inside the window")
            cols.append(col)
        self.window = (lo, hi)
        self.columns = _echelon(cols) if reduce else [dict(c) for c in cols]

    # -- basic data ---------------------------------------------------------

    @property
    def virtdim(self) -> int:
        return len(self.columns) - self.window[1]

    @property
    def charge(self) -> int:
        return self.virtdim

    def frame_matrix(self, rows: list[int]) -> list[list[Fraction]]:
        return [
            [col.get(r, Fraction(0)) for col in self.columns] for r in rows
        ]

    def __eq__(self, other):
        if not isinstance(other, GrassPoint):
            return NotImplemented
        return self.window == other.window and self.columns == other.columns

    def contains(self, col: dict[int, Scalar], ignore_below: int | None = None) -> bool:
        """Is the column in span(frame) + span{z^k : k >= hi}?

        Rows below ``ignore_below`` are excluded from the test (used when a
        shifted column is only faithful above the window edge).
        """
        lo, hi = self.window
        floor = lo if ignore_below is None else ignore_below
        col = {k: v for k, v in _clean(col).items() if k < hi}
        work = dict(col)
        for piv, pcol in zip(self._pivots(), self.columns):
            if piv in work and work[piv] != 0:
                f = work[piv]  # pivot columns are normalized to 1
                for k, v in pcol.items():
                    work[k] = work.get(k, Fraction(0)) - f * v
        return all(v == 0 or k < floor for k, v in work.items())

    def _pivots(self) -> list[int]:
        return [max(c) for c in self.columns]

    def shift(self, n: int) -> "GrassPoint":
        """The point z^n * W, window-truncated."""
        lo, hi = self.window
        cols = []
        for col in self.columns:
            shifted = {k + n: v for k, v in col.items() if lo <= k + n < hi}
            if shifted:
                cols.append(shifted)
        return GrassPoint(self.window, cols)

    def __repr__(self):
        lo, hi = self.window
        return f"GrassPoint(window=({lo},{hi}), cols={len(self.columns)}, virtdim={self.virtdim})"


def _echelon(cols: list[Column]) -> list[Column]:
    """Reduced column echelon by highest z-degree pivots, sorted by pivot."""
    work = [dict(c) for c in cols if c]
    if len(work) != len(cols):
        raise DegenerateFrame("zero column in frame")
    done: dict[int, Column] = {}
    while work:
        col = work.pop(0)
        while col:
            piv = max(col)
            if piv not in done:
                inv = Fraction(1) / col[piv]
                done[piv] = {k: v * inv for k, v in col.items()}
                break
            f = col[piv]
            ref = done[piv]
            col = {
                k: v
                for k, v in (
                    (k, col.get(k, Fraction(0)) - f * ref.get(k, Fraction(0)))
                    for k in set(col) | set(ref)
                )
                if v != 0
            }
        else:
            raise DegenerateFrame("linearly dependent frame columns")
    # back-substitute in descending pivot order: reference columns only have
    # support at or below their pivot, so no eliminated degree reappears
    pivots = sorted(done)
    for p in reversed(pivots):
        for q in pivots:
            if q == p:
                continue
            c = done[q].get(p)
            if c:
                done[q] = {
                    k: v
                    for k, v in (
                        (k, done[q].get(k, Fraction(0)) - c * done[p].get(k, Fraction(0)))
                        for k in set(done[q]) | set(done[p])
                    )
                    if v != 0
                }
    return [done[p] for p in pivots]


def grass_window(columns, window: Window) -> GrassPoint:
    """Echelonized Grassmannian point from raw Laurent columns."""
    return GrassPoint(window, columns)


def standard_point(window: Window) -> GrassPoint:
    """H_+ = span{z^k : k >= 0} in the given window."""
    lo, hi = window
    return GrassPoint(window, [{k: 1} for k in range(0, hi)])


def _degree_set(lam: tuple[int, ...], count: int) -> list[int]:
    """First `count` z-degrees k-1-lambda_k of the charge-0 diagram."""
    out = []
    for k in range(1, count + 1):
        lk = lam[k - 1] if k <= len(lam) else 0
        out.append(k - 1 - lk)
    return out


def plucker(W: GrassPoint, lam: tuple[int, ...]) -> Fraction:
    """Pluecker coordinate of the charge-0 point at the partition lambda."""
    lo, hi = W.window
    if W.charge != 0:
        raise ChargeMismatch("Pluecker coordinates need a charge-0 point")
    if lam and (len(lam) > hi or lam[0] > -lo):
        return Fraction(0)  # diagram leaves the window: model coordinate is 0
    rows = _degree_set(lam, hi)
    return linalg.det(W.frame_matrix(rows))


def tau_schur(W: GrassPoint, degree: int, normalize: bool = True) -> TimesSeries:
    """Pluecker-Schur tau: sum over |lambda| <= degree of pi_lambda s_lambda."""
    if W.charge != 0:
        raise ChargeMismatch("tau requires charge 0; shift the point first")
    acc = TimesSeries.zero(degree)
    top = plucker(W, ())
    for n in range(degree + 1):
        for lam in partitions(n):
            c = plucker(W, lam)
            if c != 0:
                acc = acc + schur_polynomial(lam).truncate(degree) * c
    if normalize:
        if top == 0:
            return acc
        return acc * (Fraction(1) / top)
    return acc


def tau_determinant(W: GrassPoint, degree: int, normalize: bool = True) -> TimesSeries:
    """Correlator determinant oracle for the same tau function.

    Multiplies the frame by exp(sum t_k z^k) and takes the coefficient of
    the vacuum wedge: the determinant of rows [0, hi) of the evolved frame.
    """
    if W.charge != 0:
        raise ChargeMismatch("tau requires charge 0; shift the point first")
    lo, hi = W.window
    hs = [h_complete(r).truncate(degree) for r in range(hi - lo)]
    m: list[list[TimesSeries]] = []
    for r in range(0, hi):
        row = []
        for col in W.columns:
            e = TimesSeries.zero(degree)
            for s, v in col.items():
                if 0 <= r - s < len(hs):
                    e = e + hs[r - s] * v
            row.append(e)
        m.append(row)
    d = _series_det(m, degree)
    if normalize:
        c0 = d.constant_term()
        if c0 != 0:
            return d * (Fraction(1) / c0)
    return d


def _series_det(m: list[list[TimesSeries]], degree: int) -> TimesSeries:
    """Determinant over the power-series ring; unit pivots preferred."""
    n = len(m)
    if n == 0:
        return TimesSeries.one(degree)
    m = [row[:] for row in m]
    sign = 1
    acc = TimesSeries.one(degree)
    for c in range(n):
        p = next(
            (i for i in range(c, n) if m[i][c].constant_term() != 0), None
        )
        if p is None:
            # fall back to cofactor expansion along this column
            return _cofactor_det(m, degree) * sign
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        acc = acc * piv
        inv = piv.invert()
        for i in range(c + 1, n):
            if m[i][c].is_zero:
                continue
            f = m[i][c] * inv
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return acc * sign


def _cofactor_det(m: list[list[TimesSeries]], degree: int) -> TimesSeries:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = TimesSeries.zero(degree)
    for j in range(n):
        if m[0][j].is_zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor, degree)
        acc = acc + term * ((-1) ** j)
    return acc


KP_HIROTA_WEIGHT = 4  # weighted degree consumed by D1^4 + 3 D2^2 - 4 D1 D3


def _hirota_monomial(f: TimesSeries, g: TimesSeries, powers: dict[int, int]) -> TimesSeries:
    """Hirota monomial prod D_k^{a_k} applied to f.g."""
    terms = [(f, g, Fraction(1))]
    for k, a in powers.items():
        for _ in range(a):
            new = []
            for (u, v, c) in terms:
                new.append((u.derivative(k), v, c))
                new.append((u, v.derivative(k), -c))
            terms = new
    acc = None
    for (u, v, c) in terms:
        t = u * v * c
        acc = t if acc is None else acc + t
    return acc


def hirota_residual(tau: TimesSeries, degree: int) -> TimesSeries:
    """(D1^4 + 3 D2^2 - 4 D1 D3) tau.tau through the given weighted degree."""
    if tau.bound is not None and tau.bound < degree + KP_HIROTA_WEIGHT:
        raise BadArgument(
            f"tau must be known through weighted degree {degree + KP_HIROTA_WEIGHT}"
        )
    t = tau if tau.bound is not None else tau.truncate(degree + KP_HIROTA_WEIGHT)
    r = (
        _hirota_monomial(t, t, {1: 4})
        + _hirota_monomial(t, t, {2: 2}) * 3
        + _hirota_monomial(t, t, {1: 1, 3: 1}) * (-4)
    )
    return r.truncate(degree)


def random_perturbed_frame(rng, window: Window, ncols_perturbed: int = 2) -> GrassPoint:
    """Standard frame with a few columns given random deeper tails."""
    lo, hi = window
    cols = [{k: Fraction(1)} for k in range(hi)]
    for _ in range(ncols_perturbed):
        j = rng.randrange(hi)
        for k in range(lo, min(j, 0)):
            c = rng.randint(-3, 3)
            if c:
                cols[j][k] = cols[j].get(k, Fraction(0)) + Fraction(c)
    return GrassPoint(window, cols)
