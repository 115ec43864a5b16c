"""Singular vectors in level-k vacuum modules of affine sl_2.

The module is induced from the one-dimensional representation of the
non-negative loop half (e_m, f_m, h_m for m >= 0 all act by zero on the
generating vector; the central element acts by the level).  Elements are
combinations of PBW words in the negative modes.  A singular vector of
depth d is annihilated by e_0 and by every positive mode up to d; the
Shapovalov Gram matrix per (depth, weight) slice is the independent
oracle: its determinant is nonzero away from resonances and its kernel
contains the singular vectors at them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .errors import WindowOverflow
from .series import Scalar, rat

# generator letters, with sl2 weight and PBW rank
_LETTERS = {"e": 2, "h": 0, "f": -2}
_RANK = {"e": 0, "h": 1, "f": 2}

Gen = tuple[int, str]  # (mode, letter)
Word = tuple[Gen, ...]  # PBW-sorted: ascending (mode, rank)
Element = dict[Word, Fraction]

MAX_DEPTH = 6


def _bracket(a: Gen, b: Gen):
    """[a, b] as (coefficient, Gen | None) plus the central coefficient."""
    (m, x), (n, y) = a, b
    central = Fraction(0)
    if m + n == 0:
        pair = (x, y)
        if pair in (("e", "f"), ("f", "e")):
            central = Fraction(m)
        elif pair == ("h", "h"):
            central = Fraction(2 * m)
    coef, letter = {
        ("e", "f"): (1, "h"),
        ("f", "e"): (-1, "h"),
        ("h", "e"): (2, "e"),
        ("e", "h"): (-2, "e"),
        ("h", "f"): (-2, "f"),
        ("f", "h"): (2, "f"),
    }.get((x, y), (0, None))
    gen = (m + n, letter) if letter is not None and coef != 0 else None
    return (Fraction(coef), gen, central)


class VacuumModule:
    """Level-k vacuum module with exact rational arithmetic."""

    def __init__(self, level: Scalar):
        self.level = rat(level)

    # -- action ------------------------------------------------------------

    def _act_gen(self, g: Gen, word: Word) -> Element:
        mode, letter = g
        if not word:
            if mode < 0:
                return {(g,): Fraction(1)}
            return {}  # nonnegative modes annihilate the generating vector
        key = (mode, _RANK[letter])
        first = word[0]
        if key <= (first[0], _RANK[first[1]]):
            return {(g,) + word: Fraction(1)}
        out: Element = {}
        # g w0 rest = w0 (g rest) + [g, w0] rest
        sub = self._act_gen(g, word[1:])
        for w, c in sub.items():
            for w2, c2 in self._act_gen(first, w).items():
                out[w2] = out.get(w2, Fraction(0)) + c * c2
        coef, gen, central = _bracket(g, first)
        if central:
            c = central * self.level
            out[word[1:]] = out.get(word[1:], Fraction(0)) + c
        if gen is not None:
            for w, c in self._act_gen(gen, word[1:]).items():
                out[w] = out.get(w, Fraction(0)) + coef * c
        return {w: c for w, c in out.items() if c != 0}

    def act(self, g: Gen, elem: Element) -> Element:
        out: Element = {}
        for w, c in elem.items():
            for w2, c2 in self._act_gen(g, w).items():
                out[w2] = out.get(w2, Fraction(0)) + c * c2
        return {w: c for w, c in out.items() if c != 0}

    def act_word(self, gens: list[Gen], elem: Element) -> Element:
        for g in reversed(gens):
            elem = self.act(g, elem)
        return elem

    # -- gradings -----------------------------------------------------------

    @staticmethod
    def depth(word: Word) -> int:
        return -sum(m for (m, _) in word)

    @staticmethod
    def weight(word: Word) -> int:
        return sum(_LETTERS[x] for (_, x) in word)

    def slice_basis(self, depth: int, weight: int | None = None) -> list[Word]:
        """PBW words of the given depth (and sl2-weight, if fixed)."""
        gens = [
            (m, letter)
            for m in range(-depth, 0)
            for letter in ("e", "h", "f")
        ]
        gens.sort(key=lambda g: (g[0], _RANK[g[1]]))
        out = []
        for r in range(1, depth + 1):
            for combo in combinations_with_replacement(gens, r):
                if -sum(m for (m, _) in combo) != depth:
                    continue
                if weight is not None and sum(
                    _LETTERS[x] for (_, x) in combo
                ) != weight:
                    continue
                out.append(tuple(combo))
        return out

    # -- Shapovalov form ------------------------------------------------------

    def shapovalov(self, u: Word, w: Word) -> Fraction:
        """<u v, w v> via the transpose antiautomorphism e_m -> f_{-m}."""
        flip = {"e": "f", "f": "e", "h": "h"}
        sigma = [(-m, flip[x]) for (m, x) in reversed(u)]
        res = self.act_word(sigma, {w: Fraction(1)})
        return res.get((), Fraction(0))

    def gram_matrix(self, depth: int, weight: int) -> tuple[list[Word], list[list[Fraction]]]:
        basis = self.slice_basis(depth, weight)
        m = [[self.shapovalov(u, w) for w in basis] for u in basis]
        return basis, m


def raising_generators(max_depth: int) -> list[Gen]:
    """e_0 plus every positive mode up to the search depth."""
    gens: list[Gen] = [(0, "e")]
    for m in range(1, max_depth + 1):
        gens.extend([(m, "e"), (m, "h"), (m, "f")])
    return gens


def singular_vector_search(
    level: Scalar, degree: int, weight: int | None = None
) -> list[tuple[int, int, Element]]:
    """Vectors of each depth <= degree killed by all raising generators.

    Returns (depth, weight, element) triples; the element dict maps PBW
    words to coefficients.  Weight-homogeneous slices are searched
    separately; pass a weight to restrict the search.
    """
    if degree > MAX_DEPTH:
        raise WindowOverflow(f"search depth capped at {MAX_DEPTH}")
    mod = VacuumModule(level)
    found = []
    for d in range(1, degree + 1):
        weights = (
            [weight]
            if weight is not None
            else sorted({mod.weight(w) for w in mod.slice_basis(d)})
        )
        for wt in weights:
            basis = mod.slice_basis(d, wt)
            if not basis:
                continue
            rows = []
            for g in raising_generators(d):
                images = [mod.act(g, {w: Fraction(1)}) for w in basis]
                keys = sorted({k for img in images for k in img})
                for key in keys:
                    rows.append([img.get(key, Fraction(0)) for img in images])
            # no rows means every raising image vanished: whole slice is singular
            for vec in linalg.nullspace(rows, ncols=len(basis)):
                elem = {
                    w: c for w, c in zip(basis, vec) if c != 0
                }
                found.append((d, wt, elem))
    return found
