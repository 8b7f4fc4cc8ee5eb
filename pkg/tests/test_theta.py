from __future__ import annotations

import numpy as np
import pytest

from kummer_forms.identities import doubling_identities, frobenius_identities, worst_residual
from kummer_forms.scalars import DomainError
from kummer_forms.theta import CHARACTERISTICS, PeriodMatrix, theta_constants, theta_values


def test_period_matrix_validation():
    with pytest.raises(DomainError):
        PeriodMatrix(1j, 2j, 1j)
    with pytest.raises(DomainError):
        PeriodMatrix.from_reals(0, 1, 0, 0, 0, -1)


def test_characteristic_parities():
    assert [c.is_even for c in CHARACTERISTICS] == [True] * 10 + [False] * 6


def test_odd_constants_vanish(taus):
    for tau in taus:
        t = theta_constants(tau)
        assert np.all(np.abs(t[10:]) < 1e-13)
        assert np.all(np.abs(t[:10]) > 1e-6)


def test_parity_in_z(taus):
    z = np.array([0.13 + 0.02j, -0.21 + 0.07j])
    a, b = theta_values(z, taus[0]), theta_values(-z, taus[0])
    assert np.allclose(a[:10], b[:10], atol=1e-13) and np.allclose(a[10:], -b[10:], atol=1e-13)


def test_identity_counts():
    assert len(frobenius_identities()) == 6
    assert len(doubling_identities()) == 18


def test_identities_hold(samples):
    assert worst_residual(frobenius_identities(), samples) < 1e-12
    assert worst_residual(doubling_identities(), samples) < 1e-12
