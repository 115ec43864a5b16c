"""Annihilating differential operators of a tau function.

Operators are polynomials in d/dt_1 with polynomial coefficients in t_1,
P = sum c_{k,e} t_1^e (d/dt_1)^k, found by exact linear algebra on the
coefficients of P tau through the degree the truncation supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import BadArgument
from .times import TimesSeries, weight


@dataclass(frozen=True)
class AnnihilatorOp:
    """sum over (k, e) of coeff * t_1^e (d/dt_1)^k, with provenance."""

    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]  # ((k, e), c)
    verified_degree: int

    def apply(self, tau: TimesSeries) -> TimesSeries:
        acc = TimesSeries.zero(self.verified_degree)
        for (k, e), c in self.coeffs:
            term = tau
            for _ in range(k):
                term = term.derivative(1)
            for _ in range(e):
                term = term.mul_var(1)
            acc = acc + term.truncate(self.verified_degree) * c
        return acc

    def __repr__(self):
        bits = []
        for (k, e), c in self.coeffs:
            mon = []
            if e:
                mon.append(f"t1^{e}" if e > 1 else "t1")
            if k:
                mon.append(f"D1^{k}" if k > 1 else "D1")
            body = "*".join(mon) if mon else "1"
            bits.append(f"({c})*{body}")
        return " + ".join(bits)


def annihilator_basis(
    tau: TimesSeries, max_order: int, max_degree: int
) -> list[AnnihilatorOp]:
    """Echelonized basis of operators with P tau = 0 through the verified degree.

    The verified degree is bound(tau) - max_order: differentiation consumes
    weighted degree, so deeper claims would overreach the truncation.
    """
    if tau.bound is None:
        raise BadArgument("annihilators of exact polynomials: truncate first")
    if max_order < 0 or max_degree < 0:
        raise BadArgument("bounds must be nonnegative")
    verified = tau.bound - max_order
    if verified < 0:
        raise BadArgument("tau is not known deep enough for this order bound")
    monomials = [(k, e) for k in range(max_order + 1) for e in range(max_degree + 1)]
    images = []
    keys: set = set()
    for (k, e) in monomials:
        term = tau
        for _ in range(k):
            term = term.derivative(1)
        for _ in range(e):
            term = term.mul_var(1)
        term = term.truncate(verified)
        images.append(term)
        keys.update(term.terms)
    keys = sorted(keys, key=lambda x: (weight(x), x))
    rows = [[img.terms.get(key, Fraction(0)) for img in images] for key in keys]
    null = linalg.nullspace(rows, ncols=len(monomials))
    basis = []
    for vec in null:
        coeffs = tuple(
            (monomials[i], c) for i, c in enumerate(vec) if c != 0
        )
        basis.append(AnnihilatorOp(coeffs, verified))
    return basis


def same_annihilators(a: list[AnnihilatorOp], b: list[AnnihilatorOp]) -> bool:
    """Do two echelonized bases span the same operator space?"""
    if len(a) != len(b):
        return False
    monos = sorted({ke for op in a + b for (ke, _) in op.coeffs})
    idx = {ke: i for i, ke in enumerate(monos)}

    def row(op):
        r = [Fraction(0)] * len(monos)
        for ke, c in op.coeffs:
            r[idx[ke]] = c
        return r

    ra = [row(op) for op in a]
    for op in b:
        if not linalg.in_span(ra, row(op)):
            return False
    return True
