from __future__ import annotations

import numpy as np
import pytest

from kummer_forms.identities import ThetaSample
from kummer_forms.moduli import rosenhain_from_theta
from kummer_forms.scalars import rational_points
from kummer_forms.theta import PeriodMatrix, random_elliptic_point


@pytest.fixture(scope="session")
def taus() -> list[PeriodMatrix]:
    rng = np.random.default_rng(12345)
    return [PeriodMatrix.random(rng) for _ in range(4)]


@pytest.fixture(scope="session")
def samples(taus) -> list[ThetaSample]:
    rng = np.random.default_rng(54321)
    return [ThetaSample.at(random_elliptic_point(rng), tau) for tau in taus]


@pytest.fixture(scope="session")
def numeric_lambdas(samples):
    return [rosenhain_from_theta([v * v for v in s.t[:10]]) for s in samples]


@pytest.fixture(scope="session")
def lambdas():
    return rational_points(99, 4, 3, 1000)


@pytest.fixture(scope="session")
def seeds():
    return rational_points(98, 4, 4, 1000)
