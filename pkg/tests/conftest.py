import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from opertau.series import TruncSeries


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_poly(rng, deg: int, order: int = 12, lo: int = -9, hi: int = 9,
                laurent_from: int = 0) -> TruncSeries:
    """Random polynomial (or Laurent polynomial) series with small integers."""
    d = {}
    for k in range(laurent_from, deg + 1):
        c = rng.randint(lo, hi)
        if c:
            d[k] = Fraction(c)
    if not d:
        d[deg] = Fraction(1)
    return TruncSeries.from_dict(d, order)
