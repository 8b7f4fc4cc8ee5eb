"""Genus-two Riemann theta functions with half-integer characteristics."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .scalars import DomainError

DEFAULT_ABS_TOL = 1e-14


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric 2x2 complex matrix with positive definite imaginary part."""

    t11: complex
    t12: complex
    t22: complex

    def __post_init__(self) -> None:
        for v in (self.t11, self.t12, self.t22):
            if not cmath.isfinite(complex(v)):
                raise DomainError("period matrix has non-finite entries")
        y11, y12, y22 = self.t11.imag, self.t12.imag, self.t22.imag
        if not (y22 > 0 and y11 * y22 > y12 * y12):
            raise DomainError("imaginary part of the period matrix is not positive definite")

    @classmethod
    def from_reals(cls, r11: float, i11: float, r12: float, i12: float, r22: float, i22: float) -> PeriodMatrix:
        return cls(complex(r11, i11), complex(r12, i12), complex(r22, i22))

    @classmethod
    def random(cls, rng: np.random.Generator) -> PeriodMatrix:
        """Im = L^T L + I/2 with L uniform in [-1,1]; Re uniform in [-1,1]."""
        L = rng.uniform(-1.0, 1.0, size=(2, 2))
        Y = L.T @ L + 0.5 * np.eye(2)
        X = rng.uniform(-1.0, 1.0, size=3)
        return cls(complex(X[0], Y[0, 0]), complex(X[1], Y[0, 1]), complex(X[2], Y[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.t11, self.t12], [self.t12, self.t22]], dtype=complex)

    def scaled(self, factor: float) -> PeriodMatrix:
        return PeriodMatrix(self.t11 * factor, self.t12 * factor, self.t22 * factor)

    def as_reals(self) -> list[float]:
        return [self.t11.real, self.t11.imag, self.t12.real, self.t12.imag, self.t22.real, self.t22.imag]


@dataclass(frozen=True)
class ThetaCharacteristic:
    """Characteristic [a1 a2; b1 b2] with bits in F2."""

    a1: int
    a2: int
    b1: int
    b2: int

    @property
    def parity(self) -> int:
        return (self.a1 * self.b1 + self.a2 * self.b2) % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    def swapped(self) -> ThetaCharacteristic:
        """Rows exchanged: [b1 b2; a1 a2]."""
        return ThetaCharacteristic(self.b1, self.b2, self.a1, self.a2)

    def bits(self) -> tuple[int, int, int, int]:
        return (self.a1, self.a2, self.b1, self.b2)


def _char(s: str) -> ThetaCharacteristic:
    a, b = s.split(";")
    return ThetaCharacteristic(int(a[0]), int(a[1]), int(b[0]), int(b[1]))


# theta_1 ... theta_16; the first ten are even, the last six odd
CHARACTERISTICS: tuple[ThetaCharacteristic, ...] = tuple(
    _char(s)
    for s in (
        "00;00", "00;11", "00;10", "00;01", "10;00",
        "10;01", "01;00", "11;00", "01;10", "11;11",
        "01;01", "01;11", "11;01", "10;10", "10;11", "11;10",
    )
)
EVEN = tuple(range(1, 11))
ODD = tuple(range(11, 17))


def characteristic(index: int) -> ThetaCharacteristic:
    if not 1 <= index <= 16:
        raise DomainError(f"theta index out of range: {index}")
    return CHARACTERISTICS[index - 1]


def _as_point(z) -> np.ndarray:
    if z is None:
        return np.zeros(2, dtype=complex)
    out = np.asarray(z, dtype=complex).reshape(2)
    if not np.all(np.isfinite(out)):
        raise DomainError("elliptic variable has non-finite entries")
    return out


def truncation_radius(tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL, z=None) -> int:
    """Smallest R whose lattice tail (max-norm > R) is bounded by ``abs_tol``.

    Uses |exp(pi i (v^T tau v + 2 v^T z))| <= exp(-pi m |v|^2 + 2 pi c |v|)
    with m the smallest eigenvalue of Im tau, c = |Im z|, and at most 8n lattice
    points of max-norm n, each with |v| >= n - 1/2 after the half shift.
    """
    if abs_tol <= 0:
        raise DomainError("tolerance must be positive")
    m = float(np.linalg.eigvalsh(tau.matrix.imag)[0])
    c = float(np.linalg.norm(_as_point(z).imag))
    n = np.arange(1, 4000, dtype=float)
    r_low = n - 0.5
    r_high = np.sqrt(2.0) * (n + 0.5)
    # the exponent is concave in |v|; bound it on [r_low, r_high]
    r_star = np.clip(c / m, r_low, r_high)
    log_terms = np.log(8 * n) - np.pi * m * r_star**2 + 2 * np.pi * c * r_star
    terms = np.exp(np.minimum(log_terms, 700.0))
    tails = np.cumsum(terms[::-1])[::-1]
    ok = np.nonzero(tails < abs_tol)[0]
    if len(ok) == 0:
        raise DomainError("period matrix too close to the boundary for the lattice sum")
    # tails[k] is the tail of shells n >= k + 1, i.e. radius R = k
    return max(int(ok[0]), 1)


@lru_cache(maxsize=64)
def _lattice(radius: int) -> tuple[np.ndarray, np.ndarray]:
    r = np.arange(-radius, radius + 1)
    u1, u2 = np.meshgrid(r, r, indexing="ij")
    u = np.stack([u1.ravel(), u2.ravel()], axis=1).astype(float)
    shell = np.max(np.abs(u), axis=1).astype(int)
    return u, shell


def _theta_sums(chars, z: np.ndarray, tau: PeriodMatrix, abs_tol: float) -> np.ndarray:
    radius = truncation_radius(tau, abs_tol, z)
    u, shell = _lattice(radius)
    T = tau.matrix
    out = np.empty(len(chars), dtype=complex)
    for k, ch in enumerate(chars):
        v = u + 0.5 * np.array([ch.a1, ch.a2])
        w = z + 0.5 * np.array([ch.b1, ch.b2])
        quad = np.einsum("ni,ij,nj->n", v, T, v)
        phase = np.exp(1j * np.pi * (quad + 2 * v @ w))
        # sum shell by shell, innermost first
        re = np.bincount(shell, weights=phase.real, minlength=radius + 1)
        im = np.bincount(shell, weights=phase.imag, minlength=radius + 1)
        out[k] = complex(re.sum(), im.sum())
    if not np.all(np.isfinite(out)):
        raise DomainError("theta evaluation overflowed")
    return out


def eval_theta(char: ThetaCharacteristic, z, tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL) -> complex:
    return complex(_theta_sums([char], _as_point(z), tau, abs_tol)[0])


def theta_values(z, tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL) -> np.ndarray:
    """theta_1(z) ... theta_16(z) as an array indexed 0..15."""
    return _theta_sums(CHARACTERISTICS, _as_point(z), tau, abs_tol)


def theta_constants(tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL) -> np.ndarray:
    """Theta constants; the six odd entries are set to exactly zero."""
    out = np.zeros(16, dtype=complex)
    out[:10] = _theta_sums(CHARACTERISTICS[:10], np.zeros(2, dtype=complex), tau, abs_tol)
    return out


def doubled_theta(index: int, z, tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL) -> complex:
    """Theta_i(z) = theta[b; a](z, 2 tau), the rows of theta_i's characteristic swapped."""
    return eval_theta(characteristic(index).swapped(), z, tau.scaled(2.0), abs_tol)


def doubled_theta_values(z, tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL) -> np.ndarray:
    chars = [c.swapped() for c in CHARACTERISTICS]
    return _theta_sums(chars, _as_point(z), tau.scaled(2.0), abs_tol)


def doubled_theta_constants(tau: PeriodMatrix, abs_tol: float = DEFAULT_ABS_TOL) -> np.ndarray:
    out = np.zeros(16, dtype=complex)
    chars = [c.swapped() for c in CHARACTERISTICS[:10]]
    out[:10] = _theta_sums(chars, np.zeros(2, dtype=complex), tau.scaled(2.0), abs_tol)
    return out


def random_elliptic_point(rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    return rng.uniform(-scale, scale, size=2) + 1j * rng.uniform(-scale, scale, size=2)


def th_bindings(values: np.ndarray, prefix: str = "th") -> dict[str, complex]:
    """Map theta values to symbol names ``th1`` ... ``th16``."""
    return {f"{prefix}{i + 1}": complex(v) for i, v in enumerate(values)}
