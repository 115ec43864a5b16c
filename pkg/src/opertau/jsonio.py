"""JSON encodings: exact rationals rendered as decimal-string pairs.

TruncSeries: {"pole": p, "order": N, "coeffs": [["num", "den"], ...]}
TimesSeries: {"bound": D, "terms": [{"exps": {"t1": e, "t'2": e}, "coef": [...]}]}
ScalarOper:  {"n": n, "q": [series, ...]}
MiuraOper:   {"n": n, "chi": [series, ...]}
PsiDO:       {"depth": d, "terms": {"2": series, "-1": series}}
Frame:       {"window": [lo, hi], "columns": [{"0": [...], "-1": [...]}]}
"""

from __future__ import annotations

from fractions import Fraction

from .grass import GrassPoint
from .oper import MiuraOper, ScalarOper
from .psido import PsiDO
from .series import TruncSeries
from .times import TimesSeries


def fraction_to_json(c: Fraction) -> list[str]:
    return [str(c.numerator), str(c.denominator)]


def fraction_from_json(v) -> Fraction:
    num, den = v
    return Fraction(int(num), int(den))


def series_to_json(s: TruncSeries) -> dict:
    return {
        "pole": s.pole,
        "order": s.order,
        "coeffs": [fraction_to_json(c) for c in s.coeffs],
    }


def series_from_json(d: dict) -> TruncSeries:
    return TruncSeries(
        int(d["pole"]),
        [fraction_from_json(c) for c in d["coeffs"]],
        int(d["order"]),
    )


def times_to_json(s: TimesSeries) -> dict:
    terms = []
    for (e, p), c in sorted(s.terms.items()):
        exps = {f"t{i+1}": v for i, v in enumerate(e) if v}
        exps.update({f"t'{i+1}": v for i, v in enumerate(p) if v})
        terms.append({"exps": exps, "coef": fraction_to_json(c)})
    return {"bound": s.bound, "terms": terms}


def times_from_json(d: dict) -> TimesSeries:
    terms = {}
    for item in d["terms"]:
        e: dict[int, int] = {}
        p: dict[int, int] = {}
        for name, v in item["exps"].items():
            if name.startswith("t'"):
                p[int(name[2:])] = int(v)
            else:
                e[int(name[1:])] = int(v)
        ne = max(e) if e else 0
        np_ = max(p) if p else 0
        key = (
            tuple(e.get(i + 1, 0) for i in range(ne)),
            tuple(p.get(i + 1, 0) for i in range(np_)),
        )
        terms[key] = fraction_from_json(item["coef"])
    bound = d.get("bound")
    return TimesSeries(terms, None if bound is None else int(bound))


def scalar_oper_to_json(S: ScalarOper) -> dict:
    return {"n": S.n, "q": [series_to_json(s) for s in S.q]}


def scalar_oper_from_json(d: dict) -> ScalarOper:
    return ScalarOper(int(d["n"]), tuple(series_from_json(s) for s in d["q"]))


def miura_to_json(M: MiuraOper) -> dict:
    return {"n": M.n, "chi": [series_to_json(s) for s in M.chi]}


def miura_from_json(d: dict) -> MiuraOper:
    return MiuraOper(int(d["n"]), tuple(series_from_json(s) for s in d["chi"]))


def psido_to_json(A: PsiDO) -> dict:
    return {
        "depth": A.depth,
        "terms": {str(i): series_to_json(c) for i, c in sorted(A.terms.items())},
    }


def psido_from_json(d: dict) -> PsiDO:
    depth = d.get("depth")
    return PsiDO(
        {int(i): series_from_json(s) for i, s in d["terms"].items()},
        None if depth is None else int(depth),
    )


def frame_to_json(W: GrassPoint) -> dict:
    return {
        "window": list(W.window),
        "columns": [
            {str(k): fraction_to_json(v) for k, v in sorted(col.items())}
            for col in W.columns
        ],
    }


def frame_from_json(d: dict) -> GrassPoint:
    lo, hi = d["window"]
    cols = [
        {int(k): fraction_from_json(v) for k, v in col.items()}
        for col in d["columns"]
    ]
    return GrassPoint((int(lo), int(hi)), cols)
