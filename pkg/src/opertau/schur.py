"""Schur polynomials in the scaled power-sum variables p_k = k t_k.

Two independent generating routes live here on purpose: the complete
homogeneous functions h_r come from the Newton-style recursion
r h_r = sum_k k t_k h_{r-k}, while s_lambda is expanded over power sums
with Murnaghan-Nakayama characters.  They share no code, so one can serve
as an oracle for computations built on the other.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fock import partitions
from .times import TimesSeries

Partition = tuple[int, ...]


@lru_cache(maxsize=None)
def h_complete(r: int) -> TimesSeries:
    """Complete homogeneous function: sum h_r x^r = exp(sum t_k x^k)."""
    if r < 0:
        return TimesSeries.zero(None)
    if r == 0:
        return TimesSeries.one(None)
    acc = TimesSeries.zero(None)
    for k in range(1, r + 1):
        acc = acc + h_complete(r - k).mul_var(k) * k
    return acc * Fraction(1, r)


def _strip_border(lam: Partition, length: int):
    """All ways to remove a border strip of the given length.

    Yields (height, remaining partition); heights count rows minus one.
    """
    n = len(lam)
    for start in range(n):
        # remove a strip ending in row `start`... walk rows downward
        # using the standard beta-number formulation
        betas = [lam[i] + (n - 1 - i) for i in range(n)]
        target = betas[start] - length
        if target < 0:
            continue
        if target in betas:
            continue
        new = sorted((b for b in betas if b != betas[start])) + [target]
        new.sort(reverse=True)
        ht = sum(1 for b in betas if target < b < betas[start])
        mu = tuple(b - (n - 1 - i) for i, b in enumerate(new))
        if any(m < 0 for m in mu) or any(
            a < b2 for a, b2 in zip(mu, mu[1:])
        ):
            continue
        mu = tuple(m for m in mu if m > 0)
        yield ht, mu


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> Fraction:
    """Symmetric group character chi^lambda_mu by Murnaghan-Nakayama."""
    if not lam and not mu:
        return Fraction(1)
    if sum(lam) != sum(mu):
        return Fraction(0)
    if not mu:
        return Fraction(0)
    first, rest = mu[0], mu[1:]
    total = Fraction(0)
    for ht, nu in _strip_border(lam, first):
        total += Fraction(-1) ** ht * mn_character(nu, rest)
    return total


def _aut_factor(mu: Partition) -> Fraction:
    """z_mu = prod k^{m_k} m_k! for the cycle type mu."""
    z = 1
    last, run = None, 0
    for part in mu:
        if part == last:
            run += 1
        else:
            last, run = part, 1
        z *= part * run
    return Fraction(z)


@lru_cache(maxsize=None)
def schur_polynomial(lam: Partition) -> TimesSeries:
    """s_lambda(t) = sum_mu chi^lambda_mu / z_mu * prod (mu_i t_{mu_i})."""
    n = sum(lam)
    if n == 0:
        return TimesSeries.one(None)
    acc = TimesSeries.zero(None)
    for mu in partitions(n):
        chi = mn_character(lam, mu)
        if chi == 0:
            continue
        mono = TimesSeries.one(None)
        coef = chi / _aut_factor(mu)
        for part in mu:
            mono = mono.mul_var(part)
            coef *= part
        acc = acc + mono * coef
    return acc
