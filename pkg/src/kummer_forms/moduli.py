"""Rosenhain moduli, Thomae's formulas and the Richelot (2,2)-isogeny.

Curves are y^2 = x(x-1)(x-l1)(x-l2)(x-l3) with the remaining branch point at
infinity.  Everything here is written with plain arithmetic so it runs over
Fractions and over complex numbers alike.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .scalars import DomainError, Scalar, format_scalar, is_exact, sqrt_exact, sqrt_scalar


@dataclass(frozen=True)
class RosenhainParams:
    l1: Scalar
    l2: Scalar
    l3: Scalar

    def __post_init__(self) -> None:
        vals = (self.l1, self.l2, self.l3)
        for v in vals:
            if v == 0 or v == 1:
                raise DomainError("Rosenhain roots must avoid 0 and 1")
        if len({complex(v) for v in vals}) < 3:
            raise DomainError("Rosenhain roots must be pairwise distinct")

    def __iter__(self):
        return iter((self.l1, self.l2, self.l3))

    @property
    def roots(self) -> dict[int, Scalar]:
        """lambda_1 ... lambda_5 with lambda_4 = 0 and lambda_5 = 1."""
        return {1: self.l1, 2: self.l2, 3: self.l3, 4: Fraction(0), 5: Fraction(1)}

    def bindings(self) -> dict[str, Scalar]:
        return {"l1": self.l1, "l2": self.l2, "l3": self.l3}

    def to_json(self) -> list[Any]:
        return [format_scalar(v) for v in self]


# ---------------------------------------------------------------- Thomae

def thomae_fourth_powers(lam: RosenhainParams, R: Scalar = Fraction(1), literal: bool = False) -> list[Scalar]:
    """theta_1^4 ... theta_10^4 up to the common factor R.

    ``literal=True`` uses the misprinted third row R l1 l2 (l2-l1)(l3-l1),
    which breaks the ratio identities; it is kept for the deviation ledger.
    """
    l1, l2, l3 = lam
    third = l1 * l2 * (l2 - l1) * (l3 - l1) if literal else l1 * l2 * (l3 - 1) * (l2 - l1)
    rows = [
        l3 * l1 * (l2 - 1) * (l3 - l1),
        l2 * (l2 - 1) * (l3 - l1),
        third,
        l3 * (l3 - 1) * (l2 - l1),
        l1 * (l2 - 1) * (l3 - 1) * (l3 - l2),
        (l3 - l2) * (l3 - l1) * (l2 - l1),
        l2 * (l3 - 1) * (l1 - 1) * (l3 - l1),
        l2 * l3 * (l3 - l2) * (l1 - 1),
        l3 * (l2 - 1) * (l1 - 1) * (l2 - l1),
        l1 * (l1 - 1) * (l3 - l2),
    ]
    return [R * r for r in rows]


def rosenhain_from_theta(squares: Sequence[Scalar]) -> RosenhainParams:
    """Rosenhain roots from the ten squared even theta constants (index 0 = theta_1^2)."""
    q = [None] + list(squares)
    for den in (q[2] * q[4], q[4] * q[10], q[2] * q[10]):
        if den == 0 or (not is_exact(den) and abs(den) < 1e-300):
            raise DomainError("vanishing theta constant: reducible (product of elliptic curves) locus")
    return RosenhainParams(
        q[1] * q[3] / (q[2] * q[4]),
        q[3] * q[8] / (q[4] * q[10]),
        q[1] * q[8] / (q[2] * q[10]),
    )


def difference_formulas(squares: Sequence[Scalar]) -> dict[str, tuple[Scalar, Scalar]]:
    """Root differences as theta quotients: {name: (difference, theta expression)}."""
    q = [None] + list(squares)
    l1, l2, l3 = rosenhain_from_theta(squares)
    d24, d410, d210 = q[2] * q[4], q[4] * q[10], q[2] * q[10]
    den3 = q[2] * q[4] * q[10]
    return {
        "l1-1": (l1 - 1, q[7] * q[9] / d24),
        "l2-1": (l2 - 1, q[5] * q[9] / d410),
        "l3-1": (l3 - 1, q[5] * q[7] / d210),
        "l2-l1": (l2 - l1, q[3] * q[6] * q[9] / den3),
        "l3-l1": (l3 - l1, q[1] * q[6] * q[7] / den3),
        "l3-l2": (l3 - l2, q[5] * q[6] * q[8] / den3),
    }


def ratio_identities(fourth: Sequence[Scalar], lam: RosenhainParams) -> dict[str, tuple[Scalar, Scalar]]:
    """The squared defining quotients evaluated on fourth powers, against lambda_i^2."""
    f = [None] + list(fourth)
    l1, l2, l3 = lam
    return {
        "l1": (f[1] * f[3] / (f[2] * f[4]), l1 * l1),
        "l2": (f[3] * f[8] / (f[4] * f[10]), l2 * l2),
        "l3": (f[1] * f[8] / (f[2] * f[10]), l3 * l3),
    }


# ---------------------------------------------------------------- sextics and Richelot

Root = Scalar | None  # None is the point at infinity
Quadratic = tuple[Scalar, Scalar, Scalar]  # coefficients of X^2, XZ, Z^2


@dataclass(frozen=True)
class SexticModel:
    leading: Scalar
    roots: tuple[Root, ...]

    def __post_init__(self) -> None:
        if len(self.roots) != 6:
            raise DomainError("a sextic has six branch points (counting infinity)")
        if sum(r is None for r in self.roots) > 1:
            raise DomainError("repeated root at infinity")

    @classmethod
    def rosenhain(cls, lam: RosenhainParams) -> SexticModel:
        l1, l2, l3 = lam
        return cls(Fraction(1), (l1, l2, l3, Fraction(0), Fraction(1), None))

    def to_json(self) -> dict[str, Any]:
        return {
            "leading": format_scalar(self.leading),
            "roots": ["inf" if r is None else format_scalar(r) for r in self.roots],
        }


def quadratic_from_roots(r: Root, s: Root) -> Quadratic:
    """(X - rZ)(X - sZ); a root at infinity contributes the factor Z."""
    if r is None:
        r, s = s, r
    one = Fraction(1)
    if s is None:
        return (Fraction(0), one, -r)
    return (one, -(r + s), r * s)


def bracket(A: Quadratic, B: Quadratic) -> Quadratic:
    """[A, B] = A'B - AB' with ' the X-derivative, in the affine chart Z = 1."""
    a2, a1, a0 = A
    b2, b1, b0 = B
    return (a2 * b1 - a1 * b2, 2 * (a2 * b0 - a0 * b2), a1 * b0 - a0 * b1)


def det3(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def quadratic_roots(Q: Quadratic) -> list[Root]:
    """Roots in P^1 (None for infinity); exact when the discriminant is a rational square."""
    a2, a1, a0 = Q
    if a2 == 0:
        if a1 == 0:
            raise DomainError("degenerate quadratic factor")
        return [None, -a0 / a1]
    disc = a1 * a1 - 4 * a2 * a0
    if is_exact(disc):
        root = sqrt_exact(Fraction(disc))
        if root is None:
            d = sqrt_scalar(complex(disc))
            a2, a1 = complex(a2), complex(a1)
        else:
            d = root
    else:
        d = sqrt_scalar(disc)
    return [(-a1 + d) / (2 * a2), (-a1 - d) / (2 * a2)]


Pairing = tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

# pairs (l1, 1), (l2, l3), (0, inf) in the slot numbering l1 l2 l3 0 1 inf
KERNEL_PAIRING: Pairing = ((1, 5), (2, 3), (4, 6))


@dataclass(frozen=True)
class RichelotImage:
    A: Quadratic
    B: Quadratic
    C: Quadratic
    delta: Scalar
    AB: Quadratic
    AC: Quadratic
    BC: Quadratic

    def roots(self) -> list[Root]:
        return quadratic_roots(self.AB) + quadratic_roots(self.AC) + quadratic_roots(self.BC)

    def dual_factors(self) -> tuple[Quadratic, Quadratic, Quadratic]:
        """A^ = [B,C], B^ = [A,C], C^ = [A,B]."""
        return self.BC, self.AC, self.AB

    def to_json(self) -> dict[str, Any]:
        q = lambda Q: [format_scalar(c) for c in Q]  # noqa: E731
        return {
            "factors": {"A": q(self.A), "B": q(self.B), "C": q(self.C)},
            "delta": format_scalar(self.delta),
            "brackets": {"AB": q(self.AB), "AC": q(self.AC), "BC": q(self.BC)},
        }


def _check_pairing(pairing: Pairing) -> None:
    slots = sorted(i for p in pairing for i in p)
    if slots != [1, 2, 3, 4, 5, 6]:
        raise DomainError("pairing must partition the six root slots")


def richelot_from_factors(A: Quadratic, B: Quadratic, C: Quadratic) -> RichelotImage:
    delta = det3([A, B, C])
    if delta == 0:
        raise DomainError("degenerate pairing: the three quadratic factors are dependent")
    return RichelotImage(A, B, C, delta, bracket(A, B), bracket(A, C), bracket(B, C))


def richelot_image(sextic: SexticModel, pairing: Pairing = KERNEL_PAIRING) -> RichelotImage:
    """Delta_ABC y^2 = [A,B][A,C][B,C] for the factorisation given by ``pairing``."""
    _check_pairing(pairing)
    r = sextic.roots
    A, B, C = (quadratic_from_roots(r[i - 1], r[j - 1]) for i, j in pairing)
    return richelot_from_factors(A, B, C)


def dual_richelot(image: RichelotImage) -> RichelotImage:
    return richelot_from_factors(*image.dual_factors())


def _hom(r: Root) -> tuple[Scalar, Scalar]:
    return (Fraction(1), Fraction(0)) if r is None else (r, Fraction(1))


def _det(p, q) -> Scalar:
    return p[0] * q[1] - p[1] * q[0]


def normalized_roots(roots: Sequence[Root], order: Sequence[int]) -> tuple[Scalar, Scalar, Scalar] | None:
    """Send roots[order[3]], roots[order[4]], roots[order[5]] to 0, 1, inf and
    return the images of the first three (None if one of them lands on infinity)."""
    P = [_hom(roots[i]) for i in order]
    r4, r5, r6 = P[3], P[4], P[5]
    scale = _det(r5, r6)
    den_scale = _det(r5, r4)
    out = []
    for p in P[:3]:
        den = _det(p, r6) * den_scale
        if den == 0:
            return None
        out.append(_det(p, r4) * scale / den)
    return tuple(out)  # type: ignore[return-value]


def match_rosenhain(roots: Sequence[Root], target: Sequence[Scalar], tol: float = 1e-8) -> tuple[bool, float]:
    """Curve-isomorphism oracle: does some of the 720 orderings, normalised to
    (0, 1, inf), reproduce ``target``?  Returns (matched, best relative error)."""
    if len(roots) != 6:
        raise DomainError("need six roots")
    exact = all(r is None or is_exact(r) for r in roots) and all(is_exact(t) for t in target)
    best = float("inf")
    for order in itertools.permutations(range(6)):
        vals = normalized_roots(roots, order)
        if vals is None:
            continue
        if exact:
            if tuple(vals) == tuple(target):
                return True, 0.0
            continue
        err = max(abs(v - t) / max(1.0, abs(t)) for v, t in zip(vals, target))
        best = min(best, float(err))
    if exact:
        return False, float("inf")
    return best <= tol, best


# ---------------------------------------------------------------- isogenous moduli from thetas

def isogenous_rosenhain_from_theta(constants: Sequence[Scalar]) -> RosenhainParams:
    """Roots of the (2,2)-isogenous curve from theta_1 ... theta_4 (unsquared)."""
    t1, t2, t3, t4 = constants[:4]
    q1, q2, q3, q4 = t1 * t1, t2 * t2, t3 * t3, t4 * t4
    pppp = q1 + q2 + q3 + q4
    pmmp = q1 - q2 - q3 + q4
    ppmm = q1 + q2 - q3 - q4
    pmpm = q1 - q2 + q3 - q4
    X = q1 * q2 + q3 * q4 + 2 * t1 * t2 * t3 * t4
    Y = q1 * q2 - q3 * q4
    for den in (ppmm, pmpm, Y):
        if den == 0 or (not is_exact(den) and abs(den) < 1e-300):
            raise DomainError("vanishing denominator in the isogenous Rosenhain roots")
    return RosenhainParams(pppp * pmmp / (ppmm * pmpm), pmmp * X / (pmpm * Y), pppp * X / (ppmm * Y))


L_VARIANTS = ("corrected", "literal", "candidate")


def l_from_theta(constants: Sequence[Scalar], variant: str = "corrected") -> Scalar:
    """Square root of l1 l2 l3 from the four theta constants of the Göpel quadruple.

    Applied to Theta_1..Theta_4 (doubled modulus) this gives l with
    l^2 = l1 l2 l3; applied to theta_1..theta_4 it gives L for the isogenous
    curve.  ``literal`` and ``candidate`` are the misprinted readings, kept so
    the deviation ledger can show that they fail.
    """
    a, b, c, d = constants[:4]
    s = a * a + b * b + c * c + d * d
    pmmp = a * a - b * b - c * c + d * d
    pmpm = a * a - b * b + c * c - d * d
    ppmm = a * a + b * b - c * c - d * d
    if variant == "corrected":
        num, den = (a * b + c * d), (a * b - c * d)
    elif variant == "literal":
        num, den = (a * b - c * d), (a * b + b * d)
    elif variant == "candidate":
        num, den = (a * b - c * d), (a * b + c * d)
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return num * s * pmmp / (den * pmpm * ppmm)


def moduli_prime_coords(lam: RosenhainParams, l: Scalar | None = None) -> tuple[Scalar, Scalar, Scalar]:
    """(l1 + l2 l3)/l, (l2 + l1 l3)/l, (l3 + l1 l2)/l with l^2 = l1 l2 l3."""
    l1, l2, l3 = lam
    prod = l1 * l2 * l3
    if l is None:
        l = sqrt_scalar(prod)
    elif l * l != prod and (is_exact(l * l - prod) or abs(l * l - prod) > 1e-9 * max(1.0, abs(prod))):
        raise DomainError("supplied l does not square to l1 l2 l3")
    return ((l1 + l2 * l3) / l, (l2 + l1 * l3) / l, (l3 + l1 * l2) / l)


def isogeny_moduli_map(p: Sequence[Scalar]) -> tuple[Scalar, Scalar, Scalar]:
    """The involution relating primed moduli of (2,2)-isogenous curves."""
    a, b, c = p
    if b == c or a == 2 or a == -2:
        raise DomainError("isogeny moduli map is undefined here")
    L1 = 2 * (2 * a - b - c) / (b - c)
    k = 4 * (a - b) * (a - c) / (b - c)
    return (L1, L1 - k / (a + 2), L1 - k / (a - 2))


def twist_factor(constants: Sequence[Scalar]) -> Scalar:
    """Quadratic-twist factor of the isogenous curve (reported, not used for equality)."""
    t1, t2, t3, t4 = constants[:4]
    q1, q2, q3, q4 = t1 * t1, t2 * t2, t3 * t3, t4 * t4
    num = (t1 * t2 - t3 * t4) ** 2 * (q1 + q2 - q3 - q4) * (q1 - q2 + q3 - q4)
    den = 4 * t1 * t2 * t3 * t4 * (q1 + q2 + q3 + q4) * (q1 - q2 - q3 + q4)
    return num / den
