from fractions import Fraction

from opertau import jsonio
from opertau.grass import GrassPoint
from opertau.oper import MiuraOper, ScalarOper
from opertau.psido import PsiDO
from opertau.series import TruncSeries, tpoly
from opertau.times import TimesSeries

F = Fraction


def test_series_round_trip():
    s = tpoly({-2: F(1, 3), 0: 4, 5: F(-7, 2)})
    assert jsonio.series_from_json(jsonio.series_to_json(s)) == s


def test_times_round_trip():
    t = (
        TimesSeries.one(8)
        + TimesSeries.var(1, bound=8) * F(2, 5)
        + TimesSeries.var(3, prime=True, bound=8) * F(-1, 7)
    )
    assert jsonio.times_from_json(jsonio.times_to_json(t)) == t


def test_oper_round_trips():
    S = ScalarOper(2, (tpoly({1: 1}), tpoly({0: F(1, 2)})))
    assert jsonio.scalar_oper_from_json(jsonio.scalar_oper_to_json(S)) == S
    M = MiuraOper(2, (tpoly({2: -3}), TruncSeries.zero(12)))
    assert jsonio.miura_from_json(jsonio.miura_to_json(M)) == M


def test_psido_round_trip():
    A = PsiDO({2: TruncSeries.one(12), -1: tpoly({1: F(3, 4)})}, depth=-5)
    assert jsonio.psido_from_json(jsonio.psido_to_json(A)) == A


def test_frame_round_trip():
    W = GrassPoint((-4, 4), [{0: 1, -1: F(2, 3)}, {1: 1}, {2: 1}, {3: 1}])
    W2 = jsonio.frame_from_json(jsonio.frame_to_json(W))
    assert W == W2
