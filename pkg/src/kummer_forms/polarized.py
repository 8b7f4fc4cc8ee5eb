"""Kummer models attached to non-principal polarizations.

The Birkenhake-Lange octic covers the Rosenhain quartic by squaring coordinates.
The Barth surface is cut out in P^7 by three even and three odd quadrics; the
even triple alone defines a (1,2)-polarized Kummer surface in P^5 which maps
2:1 onto a Göpel-Hudson quartic.  Everything here that involves only squared
parameters works over Fractions; the rank-3 members of the quadric net and the
fifteen theta models are numeric.
"""

from __future__ import annotations

import warnings
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Any

import numpy as np

from .geometry import DIVISOR_TO_THETA, EVEN_DIVISORS
from .kummer import (
    EVEN_EIGHT_LABELS,
    EVEN_EIGHT_TROPES,
    GH_NAMES,
    GHParams,
    ProjectiveSurface,
    Point,
    RosenhainQuarticParams,
    _rosenhain_poly,
    gh_nodes,
    gh_params_from_quartic,
    projectively_equal,
    rosenhain_from_gh,
)
from .linalg import nullspace, rank
from .moduli import match_rosenhain, rosenhain_from_theta
from .polynomials import Poly, monomials
from .scalars import DomainError, Scalar, format_scalar, is_exact, parse_scalar, relative_residual, sqrt_scalar
from .theta import PeriodMatrix, doubled_theta_values, random_elliptic_point, theta_constants

OCTIC_NAMES = ("Z0", "Z1", "Z2", "Z3")
BARTH_EVEN_NAMES = ("w", "x", "y", "z", "X1", "X2")
BARTH_NAMES = BARTH_EVEN_NAMES + ("X3", "X4")

# theta constants giving [p0 : ... : u0], and Theta(2z) indices giving the point in P^7
BARTH_PARAM_THETAS = (1, 2, 3, 4, 8, 10)
BARTH_POINT_THETAS = (1, 2, 3, 4, 8, 10, 13, 16)
OCTIC_THETAS = (1, 2, 7, 12)


# ------------------------------------------------------------------ Birkenhake-Lange octic


def birkenhake_lange_octic(a: Scalar, b: Scalar, c: Scalar, d2: Scalar) -> ProjectiveSurface:
    """The (1,4) octic with parameters (a, b, c) and d^2."""
    Z0, Z1, Z2, Z3 = Poly.variables(OCTIC_NAMES)
    q0, q1, q2, q3 = Z0 * Z0, Z1 * Z1, Z2 * Z2, Z3 * Z3
    poly = (
        a * a * (q0 * q0 * q1 * q1 + q2 * q2 * q3 * q3)
        + b * b * (q0 * q0 * q2 * q2 + q1 * q1 * q3 * q3)
        + c * c * (q0 * q0 * q3 * q3 + q1 * q1 * q2 * q2)
        + 2 * a * b * (q0 * q1 - q2 * q3) * (q0 * q2 + q1 * q3)
        - 2 * a * c * (q0 * q1 + q2 * q3) * (q0 * q3 + q1 * q2)
        + 2 * b * c * (q0 * q2 - q1 * q3) * (q0 * q3 - q1 * q2)
        + d2 * q0 * q1 * q2 * q3
    )
    return ProjectiveSurface("birkenhake-lange-octic", poly, {"a": a, "b": b, "c": c, "d2": d2})


def octic_from_quartic(p: RosenhainQuarticParams) -> Poly:
    """The Rosenhain quartic with Y_i replaced by Z_i^2."""
    Z = Poly.variables(OCTIC_NAMES)
    return _rosenhain_poly(p.a, p.b, p.c, p.d2, [v * v for v in Z])


def octic_matches_squared_quartic(p: RosenhainQuarticParams) -> bool:
    octic = birkenhake_lange_octic(p.a, p.b, p.c, p.d2).poly
    return (octic - octic_from_quartic(p)).is_zero()


def octic_theta_point(values: Sequence[complex]) -> Point:
    return tuple(values[i - 1] for i in OCTIC_THETAS)


# ------------------------------------------------------------------ Barth parameters


@dataclass(frozen=True)
class BarthSquares:
    """The squares P = p0^2, ..., U = u0^2; enough for the projection to P^3."""

    P: Scalar
    Q: Scalar
    R: Scalar
    S: Scalar
    T: Scalar
    U: Scalar

    @classmethod
    def from_seed(cls, seed: Sequence[Scalar]) -> BarthSquares:
        """Squares attached to a Göpel-Hudson seed node [w0 : x0 : y0 : z0]."""
        w0, x0, y0, z0 = seed
        w, x, y, z = w0 * w0, x0 * x0, y0 * y0, z0 * z0
        return cls(
            w + x + y + z,
            w + x - y - z,
            w - x - y + z,
            w - x + y - z,
            2 * (w0 * x0 + y0 * z0),
            2 * (w0 * x0 - y0 * z0),
        )

    def constraints(self) -> tuple[Scalar, Scalar]:
        P, Q, R, S, T, U = self.P, self.Q, self.R, self.S, self.T, self.U
        return (T * U - (P * Q - R * S), T * T + U * U - (P * P + Q * Q - R * R - S * S))

    def genericity(self) -> Scalar:
        P, Q, R, S, T, U = self.P, self.Q, self.R, self.S, self.T, self.U
        return (
            (P * S - Q * R) * (P * R - Q * S) * (P * U - Q * T)
            * (P * T - Q * U) * (R * U - S * T) * (R * T - S * U)
        )

    def gh_params(self) -> GHParams:
        """Göpel-Hudson parameters of the image of the projection to [w:x:y:z]."""
        P, Q, R, S, T, U = self.P, self.Q, self.R, self.S, self.T, self.U
        pr, pq, ps = P * R - Q * S, P * Q - R * S, P * S - Q * R
        return GHParams(
            2 * (P * R + Q * S) / pr,
            2 * (P * Q + R * S) / pq,
            2 * (P * S + Q * R) / ps,
            4 * P * Q * R * S * (T - U) * (T + U) / (pr * pq * ps),
        )

    def projected_quartic(self) -> Poly:
        """Eliminate (X1, X2) from the even triple; only squared parameters enter."""
        P, Q, R, S, T, U = self.P, self.Q, self.R, self.S, self.T, self.U
        w, x, y, z = Poly.variables(GH_NAMES)
        rest = [
            -((P + Q) * (w * w + x * x) - (P - Q) * (y * y + z * z)),
            -((R + S) * (w * w - x * x) + (R - S) * (y * y - z * z)),
            -(2 * (T + U) * w * x - 2 * (T - U) * y * z),
        ]
        return _eliminate([4 * P * Q, 4 * R * S, 16 * T * U], rest)

    def to_json(self) -> dict[str, Any]:
        return {k: format_scalar(getattr(self, k)) for k in "PQRSTU"}


@dataclass(frozen=True)
class BarthParams:
    p0: Scalar
    q0: Scalar
    r0: Scalar
    s0: Scalar
    t0: Scalar
    u0: Scalar

    @classmethod
    def from_theta(cls, constants: Sequence[Scalar]) -> BarthParams:
        return cls(*(constants[i - 1] for i in BARTH_PARAM_THETAS))

    def values(self) -> tuple[Scalar, ...]:
        return (self.p0, self.q0, self.r0, self.s0, self.t0, self.u0)

    def squares(self) -> BarthSquares:
        return BarthSquares(*(v * v for v in self.values()))

    def constraints(self) -> tuple[Scalar, Scalar]:
        return self.squares().constraints()

    def constraint_residuals(self) -> tuple[float, float]:
        P, Q, R, S, T, U = (v * v for v in self.values())
        return (
            relative_residual([T * U, -P * Q, R * S]),
            relative_residual([T * T, U * U, -P * P, -Q * Q, R * R, S * S]),
        )

    def genericity(self) -> Scalar:
        return self.squares().genericity()

    def validate(self, tol: float = 1e-9) -> None:
        """Raise on a constraint violation; warn when the genericity product vanishes."""
        if all(is_exact(v) for v in self.values()):
            bad = any(c != 0 for c in self.constraints())
            degenerate = self.genericity() == 0
        else:
            bad = max(self.constraint_residuals()) > tol
            g = self.squares()
            scale = max(abs(v) for v in (g.P, g.Q, g.R, g.S, g.T, g.U)) ** 12
            degenerate = abs(self.genericity()) <= tol * scale
        if bad:
            raise DomainError("Barth parameters violate the two defining constraints")
        if degenerate:
            warnings.warn("Barth parameters are not generic: the six-factor product vanishes", stacklevel=2)

    def to_json(self) -> dict[str, Any]:
        names = ("p0", "q0", "r0", "s0", "t0", "u0")
        return {k: format_scalar(v) for k, v in zip(names, self.values())}


# ------------------------------------------------------------------ quadrics


@dataclass(frozen=True)
class QuadricForm:
    """A quadratic form as a symmetric matrix over named variables."""

    names: tuple[str, ...]
    matrix: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise DomainError("quadric matrix has the wrong shape")
        if any(self.matrix[i][j] != self.matrix[j][i] for i in range(n) for j in range(n)):
            raise DomainError("quadric matrix must be symmetric")

    @classmethod
    def from_poly(cls, poly: Poly) -> QuadricForm:
        if not poly.is_homogeneous(2):
            raise DomainError("not a quadratic form")
        n = poly.nvars
        m: list[list[Scalar]] = [[0] * n for _ in range(n)]
        for e, c in poly.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                m[i][i] = c
            else:
                m[i][j] = m[j][i] = c / 2
        return cls(poly.names, tuple(tuple(r) for r in m))

    def poly(self) -> Poly:
        n = len(self.names)
        terms: dict[tuple[int, ...], Scalar] = {}
        for i in range(n):
            for j in range(i, n):
                c = self.matrix[i][j] if i == j else 2 * self.matrix[i][j]
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = c
        return Poly(self.names, terms)

    def __call__(self, point: Sequence[Scalar]) -> Scalar:
        return self.poly()(point)

    def residual(self, point: Sequence[Scalar]) -> float:
        return relative_residual(self.poly().term_values(point))

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=complex)

    def rank(self, tol: float = 1e-9) -> int:
        return rank([list(r) for r in self.matrix], tol)

    def to_json(self) -> dict[str, Any]:
        out = {"kind": "quadric", **self.poly().to_json()}
        out["matrix"] = [[format_scalar(v) for v in r] for r in self.matrix]
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> QuadricForm:
        if "matrix" in data:
            m = tuple(tuple(parse_scalar(v) for v in r) for r in data["matrix"])
            return cls(tuple(data["variables"]), m)
        return cls.from_poly(Poly.from_json(data))


def _barth_polys(params: BarthParams, names: Sequence[str]) -> list[Poly]:
    p, q, r, s, t, u = params.values()
    w, x, y, z, X1, X2, X3, X4 = Poly.variables(names)
    P, Q, R, S, T, U = p * p, q * q, r * r, s * s, t * t, u * u
    return [
        2 * p * q * (X1 * X1 + X2 * X2) - ((P + Q) * (w * w + x * x) - (P - Q) * (y * y + z * z)),
        2 * r * s * (X1 * X1 - X2 * X2) - ((R + S) * (w * w - x * x) + (R - S) * (y * y - z * z)),
        4 * u * t * X1 * X2 - (2 * (T + U) * w * x - 2 * (T - U) * y * z),
        2 * p * q * (X3 * X3 + X4 * X4) - ((Q - P) * (w * w + x * x) + (P + Q) * (y * y + z * z)),
        2 * r * s * (X3 * X3 - X4 * X4) - ((S - R) * (w * w - x * x) - (R + S) * (y * y - z * z)),
        4 * u * t * X3 * X4 - (2 * (T - U) * w * x - 2 * (T + U) * y * z),
    ]


def barth_quadrics(params: BarthParams, validate: bool = True) -> list[QuadricForm]:
    """Three even then three odd quadrics on P^7 (w, x, y, z, X1, X2, X3, X4)."""
    if validate:
        params.validate()
    return [QuadricForm.from_poly(f) for f in _barth_polys(params, BARTH_NAMES)]


def kummer_12_model(params: BarthParams, validate: bool = True) -> list[QuadricForm]:
    """The even triple, restricted to P^5 (w, x, y, z, X1, X2)."""
    if validate:
        params.validate()
    names = BARTH_EVEN_NAMES + ("X3", "X4")
    out = []
    for f in _barth_polys(params, names)[:3]:
        out.append(QuadricForm.from_poly(Poly(BARTH_EVEN_NAMES, {e[:6]: c for e, c in f.terms.items()})))
    return out


def projection_to_gh(params: BarthParams | BarthSquares) -> GHParams:
    sq = params.squares() if isinstance(params, BarthParams) else params
    return sq.gh_params()


def barth_theta_point(doubled_values_2z: Sequence[complex], literal: bool = False) -> Point:
    """[Theta_1 : ... : Theta_10 : i Theta_13 : -i Theta_16](2z); the odd pair needs the
    factors i and -i to satisfy the odd quadrics (``literal`` drops them)."""
    vals = [doubled_values_2z[i - 1] for i in BARTH_POINT_THETAS]
    if not literal:
        vals[6] *= 1j
        vals[7] *= -1j
    return tuple(vals)


# ------------------------------------------------------------------ elimination of a coordinate pair


def _eliminate(c_squares: Sequence[Scalar], rest: Sequence[Poly]) -> Poly:
    """From c1 (a^2+b^2) + R1 = c2 (a^2-b^2) + R2 = c3 ab + R3 = 0, using
    (a^2+b^2)^2 - (a^2-b^2)^2 = 4 (ab)^2."""
    k1, k2, k3 = c_squares
    R1, R2, R3 = rest
    return k2 * k3 * R1 * R1 - k1 * k3 * R2 * R2 - 4 * k1 * k2 * R3 * R3


def eliminate_pair(quadrics: Sequence[QuadricForm], pair: tuple[str, str]) -> Poly:
    """Quartic in the remaining four coordinates obtained by eliminating ``pair``.

    The triple must have the Barth shape in that pair: the first quadric involves
    it only through a^2 + b^2, the second through a^2 - b^2, the third through ab."""
    names = quadrics[0].names
    ia, ib = names.index(pair[0]), names.index(pair[1])
    keep = [n for n in names if n not in pair]
    shapes = [((2, 0), (0, 2), 1), ((2, 0), (0, 2), -1), ((1, 1), None, None)]
    cs: list[Scalar] = []
    rest: list[Poly] = []
    for quad, (e1, e2, rel) in zip(quadrics, shapes):
        f = quad.poly()
        c = 0
        other = {}
        for e, v in f.terms.items():
            ea, eb = e[ia], e[ib]
            if (ea, eb) == (0, 0):
                other[tuple(k for i, k in enumerate(e) if i not in (ia, ib))] = v
            elif (ea, eb) == e1:
                c = v
            elif e2 is not None and (ea, eb) == e2:
                continue
            else:
                raise DomainError("quadric does not have the eliminable shape for this pair")
        if e2 is not None:
            eb2 = tuple(2 if i == ib else 0 for i in range(len(names)))
            if f.coefficient(eb2) != rel * c:
                raise DomainError("quadric does not have the eliminable shape for this pair")
        cs.append(c)
        rest.append(Poly(keep, other))
    return _eliminate([c * c for c in cs], rest)


# ------------------------------------------------------------------ rank-3 members of the net


def rank3_alpha_squares(params: BarthParams) -> tuple[Scalar, Scalar, Scalar]:
    g = params.squares()
    P, Q, R, S, T, U = g.P, g.Q, g.R, g.S, g.T, g.U
    den = (P * S * T) ** 2
    return (
        (S * U - R * T) * (S * T - R * U) / den,
        (P * U - Q * T) * (P * T - Q * U) / den,
        (P * R - Q * S) * (Q * R - P * S) / den,
    )


def net_member(quadrics: Sequence[QuadricForm], alphas: Sequence[Scalar]) -> QuadricForm:
    n = len(quadrics[0].names)
    m = tuple(
        tuple(sum(a * q.matrix[i][j] for a, q in zip(alphas, quadrics)) for j in range(n)) for i in range(n)
    )
    return QuadricForm(quadrics[0].names, m)


def barth_seed(params: BarthParams) -> tuple[Scalar, ...]:
    """(w0, x0, y0, z0, X1^(0), X2^(0)) with p0^2 = w0^2 + x0^2 + y0^2 + z0^2 and so on,
    w0 x0 = (t0^2 + u0^2)/4, y0 z0 = (t0^2 - u0^2)/4, X1^(0) X2^(0) = t0 u0 / 2."""
    g = params.squares()
    P, Q, R, S, T, U = g.P, g.Q, g.R, g.S, g.T, g.U
    w0 = sqrt_scalar((P + Q + R + S) / 4)
    y0 = sqrt_scalar((P - Q - R + S) / 4)
    x0 = (T + U) / (4 * w0)
    z0 = (T - U) / (4 * y0)
    prod2 = params.t0 * params.u0 / 2
    quartic_sum = w0**4 + x0**4 - y0**4 - z0**4
    # X1^2 and X2^2 are the roots of s^2 - sigma s + prod2^2 with sigma^2 = quartic_sum + 2 prod2^2
    sigma = sqrt_scalar(quartic_sum + 2 * prod2 * prod2)
    X1sq = (sigma + sqrt_scalar(sigma * sigma - 4 * prod2 * prod2)) / 2
    X1 = sqrt_scalar(X1sq)
    return (w0, x0, y0, z0, X1, prod2 / X1)


def singular_planes(seed: Sequence[Scalar]) -> dict[str, list[tuple[Scalar, ...]]]:
    """Spanning points of the four planes S1..S4 in P^5."""
    w0, x0, y0, z0, X10, X20 = seed
    o = 0

    def plane(a, b, c, d, e, f):
        return [(a, b, o, o, o, o), (o, o, c, d, o, o), (o, o, o, o, e, f)]

    return {
        "S1": plane(w0, x0, y0, z0, X10, X20),
        "S2": plane(w0, -x0, y0, -z0, X10, -X20),
        "S3": plane(x0, w0, z0, y0, X20, X10),
        "S4": plane(x0, -w0, z0, -y0, X20, -X10),
    }


@dataclass(frozen=True)
class Rank3Quadric:
    label: str
    alphas: tuple[Scalar, Scalar, Scalar]
    quadric: QuadricForm
    plane: tuple[tuple[Scalar, ...], ...]
    rank: int
    plane_residual: float

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "alphas": [format_scalar(a) for a in self.alphas],
            "rank": self.rank,
            "singular_plane": [[format_scalar(v) for v in p] for p in self.plane],
            "plane_residual": self.plane_residual,
            "quadric": self.quadric.to_json(),
        }


def _annihilates(q: QuadricForm, pts: Sequence[Sequence[Scalar]]) -> float:
    if all(is_exact(v) for r in q.matrix for v in r) and all(is_exact(v) for p in pts for v in p):
        exact = all(sum(q.matrix[i][j] * p[j] for j in range(len(p))) == 0 for p in pts for i in range(len(p)))
        return 0.0 if exact else float("inf")
    m = q.array()
    scale = np.abs(m).max() * max(np.abs(np.array(p, dtype=complex)).max() for p in pts)
    return float(max(np.abs(m @ np.array(p, dtype=complex)).max() for p in pts) / scale)


def rank3_quadrics(params: BarthParams, tol: float = 1e-9) -> list[Rank3Quadric]:
    """The four rank-3 members of the net spanned by the even triple, each labelled by
    the singular plane it contains.  Exact when every square root is rational."""
    quads = kummer_12_model(params, validate=False)
    roots = [sqrt_scalar(a) for a in rank3_alpha_squares(params)]
    seed = barth_seed(params)
    candidates = []
    # the seed's sign choices only permute the plane labels; keep the first that fits all four
    for sx, sX in product((1, -1), repeat=2):
        w0, x0, y0, z0, X10, X20 = seed
        candidates.append((w0, sx * x0, y0, sx * z0, X10, sX * X20))
    members = []
    for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)):
        alphas = tuple(s * r for s, r in zip(signs, roots))
        members.append((alphas, net_member(quads, alphas)))
    for cand in candidates:
        planes = singular_planes(cand)
        out = []
        for alphas, K in members:
            fits = {lab: _annihilates(K, pts) for lab, pts in planes.items()}
            lab = min(fits, key=fits.get)
            out.append(Rank3Quadric(f"K{lab[1]}", alphas, K, tuple(planes[lab]), K.rank(tol), fits[lab]))
        if len({r.label for r in out}) == 4 and all(r.plane_residual <= tol for r in out):
            return sorted(out, key=lambda r: r.label)
    raise DomainError("rank-3 members do not match the singular planes; parameters may be degenerate")


def net_rank(params: BarthParams, alphas: Sequence[Scalar], tol: float = 1e-9) -> int:
    return net_member(kummer_12_model(params, validate=False), alphas).rank(tol)


# ------------------------------------------------------------------ even eight of the projection


def even_eight_of_projection(seed: Sequence[Scalar]) -> list[Point]:
    """Nodes of the Göpel-Hudson image outside the image of the sixteen Barth nodes."""
    w0, x0, y0, z0 = seed
    return [
        (y0, z0, w0, x0), (-y0, -z0, w0, x0), (-y0, z0, -w0, x0), (-y0, z0, w0, -x0),
        (z0, y0, x0, w0), (-z0, -y0, x0, w0), (-z0, y0, -x0, w0), (-z0, y0, x0, -w0),
    ]


def projection_node_images(seed: Sequence[Scalar]) -> list[Point]:
    """The eight nodes hit by the sixteen singular points of the (1,2) Kummer surface."""
    w0, x0, y0, z0 = seed
    return [
        (w0, x0, y0, z0), (-w0, -x0, y0, z0), (-w0, x0, -y0, z0), (-w0, x0, y0, -z0),
        (x0, w0, z0, y0), (-x0, -w0, z0, y0), (-x0, w0, -z0, y0), (-x0, w0, z0, -y0),
    ]


def _same_point_sets(a: Sequence[Point], b: Sequence[Point]) -> bool:
    return len(a) == len(b) and all(any(projectively_equal(p, q) for q in b) for p in a) and all(
        any(projectively_equal(p, q) for p in a) for q in b
    )


def even_eight_report(seed: Sequence[Scalar]) -> dict[str, bool]:
    eight = even_eight_of_projection(seed)
    images = projection_node_images(seed)
    nodes = gh_nodes(seed)

    def flip(p: Point, i: int, j: int) -> Point:
        return tuple(-v if k in (i, j) else v for k, v in enumerate(p))

    return {
        "eight_distinct_nodes": len(eight) == 8 and _same_point_sets(eight, [n for n in nodes if any(projectively_equal(n, e) for e in eight)]),
        "union_is_all_nodes": _same_point_sets(eight + images, nodes),
        "disjoint": not any(projectively_equal(p, q) for p in eight for q in images),
        "images_closed_under_sign_flips": all(
            any(projectively_equal(flip(p, i, j), q) for q in images) for p in images for i, j in combinations(range(4), 2)
        ),
    }


# ------------------------------------------------------------------ fifteen theta models


@dataclass(frozen=True)
class ProjectionCheck:
    thetas: tuple[int, ...]
    gh: GHParams | None
    moduli: tuple[complex, complex, complex] | None
    matches_principal: bool
    match_error: float

    def to_json(self) -> dict[str, Any]:
        return {
            "thetas": list(self.thetas),
            "gh": self.gh.to_json() if self.gh else None,
            "moduli": [format_scalar(v) for v in self.moduli] if self.moduli else None,
            "matches_principal": self.matches_principal,
            "match_error": self.match_error,
        }


@dataclass(frozen=True)
class BarthThetaModel:
    label: str
    even_thetas: tuple[int, ...]
    odd_thetas: tuple[int, ...]
    even_quadrics: tuple[Poly, ...]
    odd_quadrics: tuple[Poly, ...]
    max_residual: float
    projections: tuple[ProjectionCheck, ...]

    @property
    def covers_principal(self) -> bool:
        return any(p.matches_principal for p in self.projections)

    @property
    def all_projections_principal(self) -> bool:
        return all(p.matches_principal for p in self.projections)

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "even_thetas": list(self.even_thetas),
            "odd_thetas": list(self.odd_thetas),
            "even_quadrics": [q.to_json() for q in self.even_quadrics],
            "odd_quadrics": [q.to_json() for q in self.odd_quadrics],
            "max_residual": self.max_residual,
            "projections": [p.to_json() for p in self.projections],
        }


def theta_indices_for(label: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Even and odd Theta(2z) indices attached to the eight tropes of ``label`` ("D46", ...)."""
    tropes = EVEN_EIGHT_TROPES[label]
    even = tuple(sorted(DIVISOR_TO_THETA[d] for d in tropes if d in EVEN_DIVISORS))
    odd = tuple(sorted(DIVISOR_TO_THETA[d] for d in tropes if d not in EVEN_DIVISORS))
    return even, odd


def _goepel_faces() -> set[frozenset[str]]:
    from .geometry import DIVISOR_TO_PLANE, is_goepel_system

    return {
        frozenset(q) for q in combinations(sorted(DIVISOR_TO_PLANE), 4)
        if is_goepel_system(frozenset(DIVISOR_TO_PLANE[d] for d in q))
    }


def _fit(values: np.ndarray, degree: int, tol: float) -> tuple[list[tuple[int, ...]], np.ndarray, np.ndarray]:
    """Monomials, normalised singular values and kernel rows for relations of ``degree``."""
    mons = monomials(values.shape[1], degree)
    rows = np.array([[np.prod(v ** np.array(m)) for m in mons] for v in values])
    rows /= np.abs(rows).max(axis=1, keepdims=True)
    s = np.linalg.svd(rows, compute_uv=False)
    return mons, s / s[0], nullspace(rows, tol)


def _poly_from_kernel(names: Sequence[str], mons: Sequence[tuple[int, ...]], vec: np.ndarray) -> Poly:
    k = int(np.argmax(np.abs(vec)))
    vec = vec / vec[k]
    return Poly(names, {m: complex(c) for m, c in zip(mons, vec) if abs(c) > 1e-13})


def fifteen_classes(tau: PeriodMatrix, seed: int = 0, samples: int = 60, tol: float = 1e-9) -> list[BarthThetaModel]:
    """One Barth theta model per even eight not containing p0.

    For each set of eight tropes the six even and two odd Theta(2z) are selected,
    the even quadrics are the kernel of the 21 quadratic monomials in the even
    values, the odd quadrics those needing the odd-odd monomials.  Each Göpel
    tetrahedron among the even tropes gives a projection to P^3 whose quartic is
    fitted, read as a Göpel-Hudson quartic and compared with the principal
    Kummer surface of ``tau`` through its Rosenhain moduli."""
    rng = np.random.default_rng(seed)
    pts = [random_elliptic_point(rng) for _ in range(samples)]
    V = np.array([doubled_theta_values(2 * z, tau) for z in pts])
    t = theta_constants(tau)
    lam = rosenhain_from_theta([v * v for v in t[:10]])
    principal = (lam.l1, lam.l2, lam.l3)
    faces = _goepel_faces()

    @lru_cache(maxsize=None)
    def projection(cols: tuple[int, ...]) -> ProjectionCheck:
        mons, s, ker = _fit(V[:, [c - 1 for c in cols]], 4, tol)
        if len(ker) != 1:
            return ProjectionCheck(cols, None, None, False, float("inf"))
        quartic = _poly_from_kernel(GH_NAMES, mons, ker[0])
        gh = gh_params_from_quartic(quartic)
        if gh is None:
            return ProjectionCheck(cols, None, None, False, float("inf"))
        moduli, _ = rosenhain_from_gh(gh)
        ok, err = match_rosenhain([0, 1, None, *moduli], principal, 1e-6)
        return ProjectionCheck(cols, gh, tuple(complex(v) for v in moduli), ok, err)

    out = []
    for i, j in EVEN_EIGHT_LABELS:
        label = f"D{i}{j}"
        even, odd = theta_indices_for(label)
        if len(even) != 6 or len(odd) != 2:
            raise DomainError(f"{label}: expected six even and two odd tropes")
        names = tuple(f"T{k}" for k in even + odd)
        Ve = V[:, [k - 1 for k in even]]
        mons_e, _, ker_e = _fit(Ve, 2, tol)
        if len(ker_e) != 3:
            raise DomainError(f"{label}: even quadric space has dimension {len(ker_e)}, expected 3")
        even_q = [Poly(names, {m + (0, 0): c for m, c in _poly_from_kernel(names[:6], mons_e, v).terms.items()}) for v in ker_e]
        # odd quadrics: kernel on even-even plus odd-odd monomials, modulo the even ones
        Vo = V[:, [k - 1 for k in odd]]
        mons_o = [m + (0, 0) for m in mons_e] + [(0,) * 6 + m for m in monomials(2, 2)]
        rows = np.hstack([
            np.array([[np.prod(v ** np.array(m)) for m in mons_e] for v in Ve]),
            np.array([[np.prod(v ** np.array(m)) for m in monomials(2, 2)] for v in Vo]),
        ])
        rows /= np.abs(rows).max(axis=1, keepdims=True)
        ker_all = nullspace(rows, tol)
        if len(ker_all) != 6:
            raise DomainError(f"{label}: full quadric space has dimension {len(ker_all)}, expected 6")
        odd_part = ker_all[:, len(mons_e):]
        # a basis of the three members whose odd-odd block is nonzero
        u, _, _ = np.linalg.svd(odd_part)
        odd_q = [_poly_from_kernel(names, mons_o, u[:, k].conj() @ ker_all) for k in range(3)]
        residual = 0.0
        for row in V[: min(samples, 10)]:
            pt = [row[k - 1] for k in even + odd]
            for f in even_q + odd_q:
                residual = max(residual, relative_residual(f.term_values(pt)))
        evd = [d for d in EVEN_EIGHT_TROPES[label] if d in EVEN_DIVISORS]
        projs = tuple(
            projection(tuple(sorted(DIVISOR_TO_THETA[d] for d in q)))
            for q in combinations(sorted(evd), 4) if frozenset(q) in faces
        )
        out.append(BarthThetaModel(label, even, odd, tuple(even_q), tuple(odd_q), residual, projs))
    return out


# relation families of this module checked by the verification harness
VERIFIED_FAMILIES = (
    "octic-theta",
    "octic-squares",
    "barth-theta",
    "barth-gh-parameters",
    "barth-projection",
    "barth-rank3",
    "even-eight-projection",
)
