"""Frobenius identities among theta constants and the degree-two doubling formulas.

Each identity is a named function returning the list of signed terms whose sum
vanishes; the relative residual is then scale-free across period matrices.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .scalars import relative_residual
from .theta import PeriodMatrix, doubled_theta_constants, doubled_theta_values, theta_constants, theta_values

Terms = list[complex]


@dataclass(frozen=True)
class ThetaSample:
    """Theta data at one (z, tau): constants and values at z for tau and 2 tau, values at 2z for 2 tau."""

    t: np.ndarray
    tz: np.ndarray
    T: np.ndarray
    Tz: np.ndarray
    T2z: np.ndarray

    @classmethod
    def at(cls, z: np.ndarray, tau: PeriodMatrix) -> ThetaSample:
        return cls(
            theta_constants(tau),
            theta_values(z, tau),
            doubled_theta_constants(tau),
            doubled_theta_values(z, tau),
            doubled_theta_values(2 * np.asarray(z), tau),
        )


@dataclass(frozen=True)
class ThetaIdentity:
    id: str
    family: str
    text: str
    terms: Callable[[ThetaSample], Terms]

    def residual(self, sample: ThetaSample) -> float:
        return relative_residual(self.terms(sample))


def _sq(v: np.ndarray, i: int) -> complex:
    return v[i - 1] ** 2


def _frobenius() -> list[ThetaIdentity]:
    rows = [
        ((5, 6), (1, 4), (2, 3), (1, -1, -1, 1)),
        ((7, 9), (1, 3), (2, 4), (1, -1, 1, -1)),
        ((8, 10), (1, 2), (3, 4), (1, 1, -1, -1)),
    ]
    out = []
    for (a, b), (c, d), (e, f), signs in rows:
        out.append(
            ThetaIdentity(
                f"frobenius-product-{a}-{b}", "frobenius",
                f"th{a}^2 th{b}^2 = th{c}^2 th{d}^2 - th{e}^2 th{f}^2",
                lambda s, a=a, b=b, c=c, d=d, e=e, f=f: [
                    _sq(s.t, a) * _sq(s.t, b), -_sq(s.t, c) * _sq(s.t, d), _sq(s.t, e) * _sq(s.t, f)
                ],
            )
        )
        sign_text = " ".join(f"{'+' if g > 0 else '-'} th{k}^4" for k, g in zip((1, 2, 3, 4), signs))
        out.append(
            ThetaIdentity(
                f"frobenius-quartic-{a}-{b}", "frobenius",
                f"th{a}^4 + th{b}^4 = {sign_text}",
                lambda s, a=a, b=b, signs=signs: [s.t[a - 1] ** 4, s.t[b - 1] ** 4]
                + [-g * s.t[k] ** 4 for k, g in enumerate(signs)],
            )
        )
    return out


# sign patterns of Theta_1^2 .. Theta_4^2 in theta_1^2 .. theta_4^2
_HADAMARD = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, -1, 1), (1, -1, 1, -1))

# theta_k^2 = 2 (Theta_a Theta_b + sign Theta_c Theta_d)
_CROSS = {5: (1, 3, 2, 4, 1), 6: (1, 3, 2, 4, -1), 7: (1, 4, 2, 3, 1), 8: (1, 2, 3, 4, 1), 9: (1, 4, 2, 3, -1), 10: (1, 2, 3, 4, -1)}


def _doubling() -> list[ThetaIdentity]:
    out = []
    for k, signs in enumerate(_HADAMARD, 1):
        text = " ".join(f"{'+' if g > 0 else '-'} Th{j}^2" for j, g in enumerate(signs, 1))
        out.append(
            ThetaIdentity(
                f"doubling-constant-{k}", "doubling", f"th{k}^2 = {text}",
                lambda s, k=k, signs=signs: [_sq(s.t, k)] + [-g * _sq(s.T, j) for j, g in enumerate(signs, 1)],
            )
        )
    for k, (a, b, c, d, g) in _CROSS.items():
        out.append(
            ThetaIdentity(
                f"doubling-constant-{k}", "doubling",
                f"th{k}^2 = 2 (Th{a} Th{b} {'+' if g > 0 else '-'} Th{c} Th{d})",
                lambda s, k=k, a=a, b=b, c=c, d=d, g=g: [
                    _sq(s.t, k), -2 * s.T[a - 1] * s.T[b - 1], -2 * g * s.T[c - 1] * s.T[d - 1]
                ],
            )
        )
    for k, signs in enumerate(_HADAMARD, 1):
        text = " ".join(f"{'+' if g > 0 else '-'} Th{j}(z)^2" for j, g in enumerate(signs, 1))
        out.append(
            ThetaIdentity(
                f"doubling-z-{k}", "doubling", f"th{k} th{k}(z) = {text}",
                lambda s, k=k, signs=signs: [s.t[k - 1] * s.tz[k - 1]]
                + [-g * _sq(s.Tz, j) for j, g in enumerate(signs, 1)],
            )
        )
    for k, signs in enumerate(_HADAMARD, 1):
        text = " ".join(f"{'+' if g > 0 else '-'} th{j}(z)^2" for j, g in enumerate(signs, 1))
        out.append(
            ThetaIdentity(
                f"doubling-2z-{k}", "doubling", f"4 Th{k} Th{k}(2z) = {text}",
                lambda s, k=k, signs=signs: [4 * s.T[k - 1] * s.T2z[k - 1]]
                + [-g * _sq(s.tz, j) for j, g in enumerate(signs, 1)],
            )
        )
    return out


def frobenius_identities() -> list[ThetaIdentity]:
    """Six identities: three products and three fourth-power sums."""
    return _frobenius()


def doubling_identities() -> list[ThetaIdentity]:
    """Eighteen identities: ten for constants, four at z, four at 2z."""
    return _doubling()


def worst_residual(identities: Sequence[ThetaIdentity], samples: Sequence[ThetaSample]) -> float:
    return max(i.residual(s) for i in identities for s in samples)
