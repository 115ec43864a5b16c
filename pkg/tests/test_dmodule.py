from fractions import Fraction

import pytest

from opertau.dmodule import AnnihilatorOp, annihilator_basis, same_annihilators
from opertau.times import TimesSeries

F = Fraction


def exp_t1(c, bound):
    return (TimesSeries.var(1, bound=bound) * c).exp()


class TestAnnihilators:
    def test_constant_tau(self):
        tau = TimesSeries.one(8)
        basis = annihilator_basis(tau, max_order=1, max_degree=0)
        # d/dt1 kills 1; the identity operator does not
        assert len(basis) == 1
        assert basis[0].coeffs == (((1, 0), F(1)),)

    def test_affine_tau(self):
        tau = TimesSeries.one(8) + TimesSeries.var(1, bound=8) * F(3)
        basis = annihilator_basis(tau, max_order=2, max_degree=0)
        ops = {op.coeffs for op in basis}
        assert (((2, 0), F(1)),) in ops

    def test_exponential_tau(self):
        c = F(5, 3)
        tau = exp_t1(c, 10)
        basis = annihilator_basis(tau, max_order=1, max_degree=0)
        # D1 - c, normalized by the echelonization
        assert len(basis) == 1
        got = dict(basis[0].coeffs)
        ratio = got[(1, 0)] / got[(0, 0)]
        assert got[(0, 0)] != 0 and ratio == -1 / c or got == {(1, 0): 1, (0, 0): -c}

    def test_apply_is_zero_through_verified(self):
        tau = exp_t1(F(2), 9)
        for op in annihilator_basis(tau, max_order=2, max_degree=1):
            assert op.apply(tau).is_zero

    def test_basis_comparison(self):
        tau = exp_t1(F(2), 9)
        a = annihilator_basis(tau, 2, 1)
        b = annihilator_basis(tau, 2, 1)
        assert same_annihilators(a, b)
        c = annihilator_basis(TimesSeries.one(9), 2, 1)
        assert not same_annihilators(a, c)
