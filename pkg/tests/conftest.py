from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from opentorus.cocycle import Angle


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240117)


def angle(p: int, q: int = 1) -> Angle:
    return Angle(Fraction(p, q))
