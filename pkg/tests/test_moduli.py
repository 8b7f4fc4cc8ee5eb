from __future__ import annotations

from fractions import Fraction

import pytest

from kummer_forms.moduli import (
    KERNEL_PAIRING,
    RosenhainParams,
    SexticModel,
    dual_richelot,
    isogenous_rosenhain_from_theta,
    isogeny_moduli_map,
    l_from_theta,
    match_rosenhain,
    moduli_prime_coords,
    ratio_identities,
    richelot_image,
    rosenhain_from_theta,
    thomae_fourth_powers,
)
from kummer_forms.scalars import DomainError, relative_residual


def test_rosenhain_params_reject_degenerate_roots():
    with pytest.raises(DomainError):
        RosenhainParams(Fraction(2), Fraction(2), Fraction(3))
    with pytest.raises(DomainError):
        RosenhainParams(Fraction(0), Fraction(2), Fraction(3))


def test_thomae_ratios_exact(lambdas):
    for lam in lambdas:
        lam = RosenhainParams(*lam)
        for name, (a, b) in ratio_identities(thomae_fourth_powers(lam, Fraction(5)), lam).items():
            assert a == b, name


def test_thomae_printed_third_row_fails(lambdas):
    lam = RosenhainParams(*lambdas[0])
    pairs = ratio_identities(thomae_fourth_powers(lam, literal=True), lam).values()
    assert any(a != b for a, b in pairs)


def test_thomae_matches_theta_fourth_powers(samples, numeric_lambdas):
    for s, lam in zip(samples, numeric_lambdas):
        fourth = thomae_fourth_powers(lam)
        ratios = [s.t[k] ** 4 / fourth[k] for k in range(10)]
        assert max(abs(r / ratios[0] - 1) for r in ratios) < 1e-9


def test_isogeny_map_is_an_involution(lambdas):
    for p in lambdas:
        assert isogeny_moduli_map(isogeny_moduli_map(p)) == tuple(p)
    with pytest.raises(DomainError):
        isogeny_moduli_map((Fraction(2), Fraction(1), Fraction(3)))


def test_l_squared_and_primed_moduli(samples, numeric_lambdas):
    for s, lam in zip(samples, numeric_lambdas):
        l, L = l_from_theta(s.T), l_from_theta(s.t)
        assert relative_residual([l * l, -lam.l1 * lam.l2 * lam.l3]) < 1e-10
        assert relative_residual([l_from_theta(s.T, "literal") ** 2, -lam.l1 * lam.l2 * lam.l3]) > 1e-6
        Lam = isogenous_rosenhain_from_theta(s.t)
        assert relative_residual([L * L, -Lam.l1 * Lam.l2 * Lam.l3]) < 1e-10
        image = isogeny_moduli_map(moduli_prime_coords(lam, l))
        for a, b in zip(image, moduli_prime_coords(Lam, L)):
            assert relative_residual([a, -b]) < 1e-9


def test_isogenous_roots_agree_with_doubled_modulus(samples):
    for s in samples:
        a = isogenous_rosenhain_from_theta(s.t)
        b = rosenhain_from_theta([v * v for v in s.T[:10]])
        assert all(relative_residual([x, -y]) < 1e-9 for x, y in zip(a, b))


def test_richelot_matches_isogenous_curve(samples, numeric_lambdas):
    for s, lam in zip(samples, numeric_lambdas):
        image = richelot_image(SexticModel.rosenhain(lam), KERNEL_PAIRING)
        ok, err = match_rosenhain(image.roots(), tuple(isogenous_rosenhain_from_theta(s.t)), 1e-8)
        assert ok, err
        ok, err = match_rosenhain(dual_richelot(image).roots(), tuple(lam), 1e-8)
        assert ok, err


def test_richelot_brackets_exact():
    lam = RosenhainParams(Fraction(4), Fraction(7), Fraction(28))
    image = richelot_image(SexticModel.rosenhain(lam))
    assert image.BC[1] == 0 and image.BC[2] / image.BC[0] == -7 * 28
    assert image.AC[1] == 0 and image.AC[2] / image.AC[0] == -4


def test_richelot_rejects_bad_pairing(lambdas):
    with pytest.raises(DomainError):
        richelot_image(SexticModel.rosenhain(RosenhainParams(*lambdas[0])), ((1, 2), (2, 3), (4, 6)))
