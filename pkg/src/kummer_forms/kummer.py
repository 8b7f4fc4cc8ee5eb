"""Normal forms of the singular Kummer quartic of a genus-two Jacobian.

Covers the Shioda sextic, the Cassels-Flynn quartic with its nodes and tropes,
the intersection of three quadrics in P^5, Göpel and Rosenhain tetrahedra,
the thirty eight-trope quadratic relations, and the Göpel, Göpel-Hudson and
Rosenhain quartics together with the linear and squaring maps between them.

Tropes are keyed by theta-divisor labels ("1" ... "6", "126" ... "456"), nodes
by two-torsion labels ("p0", "p12", ...).  All constructors work over
Fractions and over complex numbers.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Any

from .geometry import DIVISORS, EVEN_DIVISORS, ODD_DIVISORS, TORSION_LABELS, divisor_plane, enumerate_subgroups, f2_to_torsion
from .linalg import rank, solve_2x2
from .moduli import RosenhainParams
from .polynomials import Poly
from .relations import trope_four_term_relations
from .scalars import DomainError, Scalar, format_scalar, is_exact, parse_scalar, relative_residual, sqrt_scalar

Z_NAMES = ("z1", "z2", "z3", "z4")
T_NAMES = ("t1", "t2", "t3", "t4", "t5", "t6")
GOEPEL_NAMES = ("P", "Q", "R", "S")
GH_NAMES = ("w", "x", "y", "z")
ROSENHAIN_NAMES = ("Y0", "Y1", "Y2", "Y3")

Point = tuple[Scalar, ...]


def _lams(lam: RosenhainParams | Sequence[Scalar]) -> tuple[Scalar, Scalar, Scalar]:
    if not isinstance(lam, RosenhainParams):
        lam = RosenhainParams(*lam)
    return lam.l1, lam.l2, lam.l3


def _roots(lam) -> dict[int, Scalar]:
    l1, l2, l3 = _lams(lam)
    return {1: l1, 2: l2, 3: l3, 4: Fraction(0), 5: Fraction(1)}


def _is_zero(v: Scalar, tol: float) -> bool:
    if tol == 0 and is_exact(v):
        return v == 0
    return abs(v) <= tol


def projectively_equal(p: Sequence[Scalar], q: Sequence[Scalar], tol: float = 0.0) -> bool:
    """All 2x2 minors vanish (exactly, or relative to the max-normalised points)."""
    if tol:
        sp, sq = max(abs(v) for v in p), max(abs(v) for v in q)
        if sp == 0 or sq == 0:
            return sp == sq
        p = [v / sp for v in p]
        q = [v / sq for v in q]
    if all(_is_zero(v, tol) for v in p) or all(_is_zero(v, tol) for v in q):
        return False
    return all(_is_zero(p[a] * q[b] - p[b] * q[a], tol) for a in range(len(p)) for b in range(a + 1, len(p)))


# ------------------------------------------------------------------ surfaces


@dataclass(frozen=True)
class ProjectiveSurface:
    """A homogeneous polynomial with a label and the parameters it was built from."""

    kind: str
    poly: Poly
    params: Mapping[str, Scalar] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not self.poly.is_homogeneous():
            raise DomainError("surface equation must be homogeneous")

    @property
    def degree(self) -> int:
        return self.poly.degree()

    @property
    def variables(self) -> tuple[str, ...]:
        return self.poly.names

    def __call__(self, point: Sequence[Scalar]) -> Scalar:
        return self.poly(point)

    def residual(self, point: Sequence[Scalar]) -> float:
        return relative_residual(self.poly.term_values(point))

    def contains(self, point: Sequence[Scalar], tol: float = 0.0) -> bool:
        if tol == 0 and all(is_exact(v) for v in point):
            return self.poly(point) == 0
        return self.residual(point) <= (tol or 1e-9)

    def is_singular_at(self, point: Sequence[Scalar]) -> bool:
        """Exact test: the equation and all partials vanish."""
        return self.poly(point) == 0 and all(self.poly.partial(i)(point) == 0 for i in range(len(point)))

    def to_json(self) -> dict[str, Any]:
        out = {"kind": self.kind, **self.poly.to_json()}
        out["params"] = {k: format_scalar(v) for k, v in self.params.items()}
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ProjectiveSurface:
        params = {k: parse_scalar(v) for k, v in data.get("params", {}).items()}
        return cls(data["kind"], Poly.from_json(data), params)


QuarticSurface = ProjectiveSurface


# ------------------------------------------------------------------ Shioda sextic


def _line(r: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    """r^2 z1 - r z2 + z3, the line tangent to z2^2 = 4 z1 z3 at [1 : 2r : r^2]."""
    return (r * r, -r, Fraction(1))


@dataclass(frozen=True)
class ShiodaSextic:
    lam: tuple[Scalar, Scalar, Scalar]
    lines: dict[str, tuple[Scalar, Scalar, Scalar]]

    def equation(self) -> Poly:
        """z4^2 - product of the six lines (z4 has weight three)."""
        z = Poly.variables(Z_NAMES)
        prod = Poly.constant(Z_NAMES, Fraction(1))
        for coeffs in self.lines.values():
            prod = prod * Poly.linear(Z_NAMES, list(coeffs) + [0])
        return z[3] ** 2 - prod

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "shioda-sextic",
            "lambda": [format_scalar(v) for v in self.lam],
            "conic": "z2^2 - 4*z1*z3",
            "lines": {f"T{k}": [format_scalar(c) for c in v] for k, v in self.lines.items()},
            **self.equation().to_json(),
        }


def shioda_sextic(lam) -> ShiodaSextic:
    roots = _roots(lam)
    lines = {str(i): _line(roots[i]) for i in (1, 2, 3)}
    lines["4"] = _line(roots[4])
    lines["5"] = _line(roots[5])
    lines["6"] = (Fraction(1), Fraction(0), Fraction(0))
    return ShiodaSextic(_lams(lam), lines)


def tangency_discriminant(line: Sequence[Scalar]) -> Scalar:
    """Vanishes iff a z1 + b z2 + c z3 = 0 touches the conic z2^2 = 4 z1 z3.

    It is the discriminant (up to 16) of the conic restricted to the line.
    """
    a, b, c = line
    return b * b - a * c


# ------------------------------------------------------------------ Cassels-Flynn quartic


@dataclass(frozen=True)
class CasselsFlynn:
    lam: tuple[Scalar, Scalar, Scalar]
    K2: Poly
    K1: Poly
    K0: Poly

    @property
    def quartic(self) -> ProjectiveSurface:
        z4 = Poly.variable(Z_NAMES, 3)
        l1, l2, l3 = self.lam
        return ProjectiveSurface(
            "cassels-flynn", self.K2 * z4 * z4 + self.K1 * z4 + self.K0, {"l1": l1, "l2": l2, "l3": l3}
        )

    def discriminant(self) -> Poly:
        return (self.K1 * self.K1 - 4 * self.K0 * self.K2) / 16


def cassels_flynn(lam) -> CasselsFlynn:
    l1, l2, l3 = _lams(lam)
    z1, z2, z3, _ = Poly.variables(Z_NAMES)
    s1 = l1 + l2 + l3
    e2 = l1 * l2 + l1 * l3 + l2 * l3
    e3 = l1 * l2 * l3
    K2 = z2 * z2 - 4 * z1 * z3
    K1 = ((4 * s1 + 4) * z1 - 2 * z2) * z3**2 + ((4 * e3 + 4 * e2) * z1**2 - (2 * e2 + 2 * s1) * z2 * z1) * z3 - 2 * e3 * z1**2 * z2
    c22 = (
        l1**2 * l2**2 - 2 * l1**2 * l2 * l3 + l1**2 * l3**2 - 2 * l1 * l2**2 * l3 - 2 * l1 * l2 * l3**2
        + l2**2 * l3**2 - 2 * l1**2 * l2 - 2 * l1**2 * l3 - 2 * l1 * l2**2 - 8 * l1 * l2 * l3
        - 2 * l1 * l3**2 - 2 * l2**2 * l3 - 2 * l2 * l3**2 + l1**2 - 2 * l1 * l2 - 2 * l1 * l3
        + l2**2 - 2 * l2 * l3 + l3**2
    )
    K0 = (
        z3**4
        - 2 * (e2 + s1) * z1 * z3**3
        + (c22 * z1**2 + (4 * e3 + 4 * e2) * z1 * z2) * z3**2
        + (-4 * e3 * z1 * z2**2 + 4 * e3 * (s1 + 1) * z1**2 * z2 - 2 * e3 * (e2 + s1) * z1**3) * z3
        + e3 * e3 * z1**4
    )
    return CasselsFlynn((l1, l2, l3), K2, K1, K0)


DISCRIMINANT_READINGS = ("corrected", "literal")


def discriminant_product(lam, reading: str = "corrected") -> Poly:
    """z1 z3 prod_i (l_i^2 z1 - l_i z2 + z3) over i in {1,2,3,5} (corrected) or {1,2,3,4} (literal)."""
    roots = _roots(lam)
    if reading == "corrected":
        idx = (1, 2, 3, 5)
    elif reading == "literal":
        idx = (1, 2, 3, 4)
    else:
        raise DomainError(f"unknown reading {reading!r}")
    z1, _, z3, _ = Poly.variables(Z_NAMES)
    out = z1 * z3
    for i in idx:
        out = out * Poly.linear(Z_NAMES, list(_line(roots[i])) + [0])
    return out


def discriminant_factorization_holds(lam, reading: str = "corrected") -> bool:
    cf = cassels_flynn(lam)
    return (cf.discriminant() - discriminant_product(lam, reading)).is_zero()


# ------------------------------------------------------------------ nodes and tropes

def node_coordinates(lam, literal: bool = False) -> dict[str, Point]:
    """The sixteen nodes.  ``literal`` uses the misprinted z4 of p23."""
    l1, l2, l3 = _lams(lam)
    r = _roots(lam)
    one = Fraction(1)
    e3 = l1 * l2 * l3
    pts: dict[str, Point] = {"p0": (0, 0, 0, one)}
    for i in range(1, 6):
        pts[f"p{i}6"] = (0, one, r[i], r[i] ** 2)
    pts.update(
        {
            "p14": (one, l1, 0, l2 * l3),
            "p24": (one, l2, 0, l1 * l3),
            "p34": (one, l3, 0, l1 * l2),
            "p45": (one, one, 0, e3),
            "p15": (one, l1 + 1, l1, l1 * (l2 + l3)),
            "p25": (one, l2 + 1, l2, l2 * (l1 + l3)),
            "p35": (one, l3 + 1, l3, l3 * (l1 + l2)),
            "p12": (one, l1 + l2, l1 * l2, (l3 + 1) * l1 * l2),
            "p13": (one, l1 + l3, l1 * l3, (l2 + 1) * l1 * l3),
            "p23": (one, l2 + l3, l2 * l3, (l1 + 1) * l1 * l2 if literal else (l1 + 1) * l2 * l3),
        }
    )
    return {k: tuple(Fraction(v) if isinstance(v, int) else v for v in pts[k]) for k in TORSION_LABELS}


def trope_coefficients(lam) -> dict[str, Point]:
    """Each trope as coefficients of z1, z2, z3, z4."""
    l1, l2, l3 = _lams(lam)
    e3 = l1 * l2 * l3
    one, zero = Fraction(1), Fraction(0)
    planes: dict[str, Point] = {
        "1": (l1 * l1, -l1, one, zero),
        "2": (l2 * l2, -l2, one, zero),
        "3": (l3 * l3, -l3, one, zero),
        "4": (zero, zero, one, zero),
        "5": (one, -one, one, zero),
        "6": (one, zero, zero, zero),
        "146": (-l2 * l3, zero, -l1, one),
        "246": (-l1 * l3, zero, -l2, one),
        "346": (-l1 * l2, zero, -l3, one),
        "456": (-e3, zero, -one, one),
        "156": (-l1 * (l2 + l3), l1, -(l1 + 1), one),
        "256": (-l2 * (l1 + l3), l2, -(l2 + 1), one),
        "356": (-l3 * (l1 + l2), l3, -(l3 + 1), one),
        "136": (-(l2 + 1) * l1 * l3, l1 * l3, -(l1 + l3), one),
        "236": (-(l1 + 1) * l2 * l3, l2 * l3, -(l2 + l3), one),
        "126": (-(l3 + 1) * l1 * l2, l1 * l2, -(l1 + l2), one),
    }
    return {d: planes[d] for d in DIVISORS}


# printed incidence columns: nodes contained in each trope
LISTED_INCIDENCE: dict[str, frozenset[str]] = {
    d: frozenset("p0" if s == "0" else f"p{s}" for s in text.split())
    for d, text in {
        "1": "0 12 13 14 15 16", "2": "0 12 23 24 25 26", "3": "0 13 23 34 35 36",
        "4": "0 14 24 34 45 46", "5": "0 15 25 35 45 56", "6": "0 16 26 36 46 56",
        "146": "14 16 23 25 35 46", "246": "13 15 24 26 35 46", "346": "12 15 25 34 36 46",
        "456": "12 13 23 46 45 56", "156": "15 16 23 24 34 56", "256": "13 14 25 26 34 56",
        "356": "12 14 24 35 36 56", "136": "13 16 24 25 36 45", "236": "14 15 23 26 36 45",
        "126": "12 16 26 34 35 45",
    }.items()
}


@dataclass(frozen=True)
class NodeTable:
    points: dict[str, Point]

    def to_json(self) -> dict[str, Any]:
        return {k: [format_scalar(v) for v in p] for k, p in self.points.items()}


@dataclass(frozen=True)
class TropeTable:
    planes: dict[str, Point]
    listed: dict[str, frozenset[str]]

    def form(self, divisor: str) -> Poly:
        return Poly.linear(Z_NAMES, self.planes[divisor])

    def forms(self) -> dict[str, Poly]:
        return {d: self.form(d) for d in self.planes}

    def to_json(self) -> dict[str, Any]:
        return {
            f"T{d}": {
                "coefficients": [format_scalar(v) for v in p],
                "nodes": sorted(self.listed[d], key=TORSION_LABELS.index),
            }
            for d, p in self.planes.items()
        }


def nodes_and_tropes(lam, literal: bool = False) -> tuple[NodeTable, TropeTable]:
    return NodeTable(node_coordinates(lam, literal)), TropeTable(trope_coefficients(lam), dict(LISTED_INCIDENCE))


def _dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    return sum((x * y for x, y in zip(a, b)), start=Fraction(0))


def computed_incidence(nodes: NodeTable, tropes: TropeTable) -> dict[str, frozenset[str]]:
    """Nodes lying on each trope, by exact substitution."""
    return {
        d: frozenset(n for n, p in nodes.points.items() if _dot(plane, p) == 0)
        for d, plane in tropes.planes.items()
    }


def incidence_check(lam, literal: bool = False) -> dict[str, Any]:
    nodes, tropes = nodes_and_tropes(lam, literal)
    inc = computed_incidence(nodes, tropes)
    quartic = cassels_flynn(lam).quartic
    on_surface = {n: quartic(p) == 0 for n, p in nodes.points.items()}
    singular = {n: quartic.is_singular_at(p) for n, p in nodes.points.items()}
    row_sums = [sum(n in inc[d] for d in DIVISORS) for n in TORSION_LABELS]
    return {
        "incidence_matches_table": inc == tropes.listed,
        "row_sums": row_sums,
        "column_sums": [len(inc[d]) for d in DIVISORS],
        "nodes_on_quartic": all(on_surface.values()),
        "nodes_singular": all(singular.values()),
        "failing_nodes": sorted(n for n, ok in singular.items() if not ok),
    }


def sextic_lines_are_odd_tropes(lam) -> bool:
    sex = shioda_sextic(lam)
    tropes = trope_coefficients(lam)
    return all(
        projectively_equal(list(sex.lines[d]) + [Fraction(0)], tropes[d]) for d in ODD_DIVISORS
    )


# ------------------------------------------------------------------ quadrics in P^5


def quadric_intersection_model(lam) -> list[Poly]:
    """t_i^2 - (1 - l_i) t4^2 - l_i t5^2 - l_i (l_i - 1) t6^2 for i = 1, 2, 3."""
    t = Poly.variables(T_NAMES)
    out = []
    for i, li in enumerate(_lams(lam)):
        out.append(t[i] ** 2 - (1 - li) * t[3] ** 2 - li * t[4] ** 2 - li * (li - 1) * t[5] ** 2)
    return out


def quadric_model_on_tropes(lam) -> list[Poly]:
    """The three quadrics with t_a^2 replaced by the trope plane T_a; all should vanish."""
    forms = [Poly.linear(Z_NAMES, trope_coefficients(lam)[d]) for d in ODD_DIVISORS]
    out = []
    for q in quadric_intersection_model(lam):
        img = Poly(Z_NAMES)
        for e, c in q.terms.items():
            i = e.index(2)
            img = img + c * forms[i]
        out.append(img)
    return out


def odd_trope_relation_rank(lam) -> int:
    """Rank of the fifteen linear relations among the six odd tropes."""
    env = {f"l{i}": v for i, v in zip((1, 2, 3), _lams(lam))}
    rows = []
    for rel in trope_four_term_relations():
        row = []
        for d in ODD_DIVISORS:
            b = dict(env)
            for e in ODD_DIVISORS:
                b[f"T{e}"] = Fraction(1 if e == d else 0)
            row.append(rel.value(b))
        rows.append(row)
    return rank(rows)


# ------------------------------------------------------------------ tetrahedra


def _det3(m: Sequence[Sequence[Scalar]]) -> Scalar:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def plane_intersection(planes: Sequence[Sequence[Scalar]]) -> Point:
    """Common point of three planes in P^3 via signed 3x3 minors (zero if degenerate)."""
    out = []
    for c in range(4):
        cols = [j for j in range(4) if j != c]
        out.append((-1) ** c * _det3([[r[j] for j in cols] for r in planes]))
    return tuple(out)


@dataclass(frozen=True)
class Tetrahedron:
    kind: str
    faces: tuple[str, ...]
    vertices: tuple[str | None, ...]
    kind_class: str

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "class": self.kind_class,
            "faces": [f"T{d}" for d in self.faces],
            "vertices": list(self.vertices),
        }

    def torsion_points(self) -> frozenset[str]:
        """Faces moved to two-torsion labels through the F2 plane labels."""
        return frozenset(f2_to_torsion(divisor_plane(d)) for d in self.faces)


def _pairs(faces: Sequence[str]) -> tuple[list[str], list[frozenset[int]]]:
    odd = [d for d in faces if d in ODD_DIVISORS]
    even = [frozenset((int(d[0]), int(d[1]))) for d in faces if d in EVEN_DIVISORS]
    return odd, even


def goepel_type(faces: Sequence[str]) -> str:
    odd, even = _pairs(faces)
    if len(odd) == 2 and "6" not in odd:
        return "G1"
    if len(odd) == 2:
        return "G2"
    if not odd:
        return "G3"
    return "?"


def rosenhain_class(faces: Sequence[str]) -> str:
    odd, even = _pairs(faces)
    if len(odd) == 3:
        return "R3" if "6" in odd else "R1"
    if len(odd) == 1 and odd[0] == "6":
        return "R2"
    if len(odd) == 1:
        i = int(odd[0])
        with_i = [e for e in even if i in e]
        if len(with_i) == 2:
            return "R4"
        if not with_i and len(frozenset.intersection(*even)) == 1:
            return "R5"
    return "?"


def enumerate_tetrahedra(lam) -> list[Tetrahedron]:
    """All Göpel (no vertex a node) and Rosenhain (four distinct node vertices) tetrahedra."""
    nodes = node_coordinates(lam)
    planes = trope_coefficients(lam)
    out = []
    for quad in combinations(DIVISORS, 4):
        verts = []
        for face in quad:
            v = plane_intersection([planes[d] for d in quad if d != face])
            if all(c == 0 for c in v):
                verts = None
                break
            verts.append(next((n for n, p in nodes.items() if projectively_equal(v, p)), None))
        if verts is None:
            continue
        if all(n is None for n in verts):
            out.append(Tetrahedron("goepel", quad, tuple(verts), goepel_type(quad)))
        elif None not in verts and len(set(verts)) == 4:
            out.append(Tetrahedron("rosenhain", quad, tuple(verts), rosenhain_class(quad)))
    return out


def tetrahedra_correspondence(tetrahedra: Sequence[Tetrahedron]) -> dict[str, bool]:
    """Faces as two-torsion points: Göpel tetrahedra give Göpel translates, etc."""
    out = {}
    for kind in ("goepel", "rosenhain"):
        translates = {t for g in enumerate_subgroups(kind) for t in g.translates}
        images = [t.torsion_points() for t in tetrahedra if t.kind == kind]
        out[kind] = len(set(images)) == len(images) and set(images) == translates
    return out


# ------------------------------------------------------------------ eight-trope relations


def _even(i: int, j: int) -> str:
    a, b = sorted((i, j))
    return f"{a}{b}6"


@dataclass(frozen=True)
class EightTropeRelation:
    """mu nu rho T_a T_a' + gamma delta mu T_b T_b' + beta delta nu T_c T_c' + beta gamma rho T_d T_d' = 0."""

    case: int
    first: tuple[str, str, str, str]
    second: tuple[str, str, str, str]
    mu: Scalar
    nu: Scalar
    rho: Scalar
    beta: Scalar
    gamma: Scalar
    delta: Scalar

    @property
    def tropes(self) -> frozenset[str]:
        return frozenset(self.first + self.second)

    def coefficients(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        mu, nu, rho, be, ga, de = self.mu, self.nu, self.rho, self.beta, self.gamma, self.delta
        return (mu * nu * rho, ga * de * mu, be * de * nu, be * ga * rho)

    def side_conditions(self) -> tuple[Scalar, Scalar]:
        return (
            self.mu + self.nu + self.rho,
            self.beta * self.mu + self.gamma * self.nu + self.delta * self.rho,
        )

    def products(self, forms: Mapping[str, Poly]) -> list[Poly]:
        return [forms[a] * forms[b] for a, b in zip(self.first, self.second)]

    def polynomial(self, forms: Mapping[str, Poly]) -> Poly:
        out = Poly(next(iter(forms.values())).names)
        for c, p in zip(self.coefficients(), self.products(forms)):
            out = out + c * p
        return out

    def irrational_forms(self, forms: Mapping[str, Poly]) -> list[Poly]:
        """The six rewritings (square minus four times a product) of the relation."""
        a, b, c, d = self.products(forms)
        mu, nu, rho, be, ga, de = self.mu, self.nu, self.rho, self.beta, self.gamma, self.delta
        m2, n2, r2, b2, g2, d2 = mu * mu, nu * nu, rho * rho, be * be, ga * ga, de * de
        return [
            (m2 * b + n2 * c - r2 * d) ** 2 - 4 * m2 * n2 * b * c,
            (m2 * b - n2 * c + r2 * d) ** 2 - 4 * m2 * r2 * b * d,
            (m2 * b - n2 * c - r2 * d) ** 2 - 4 * n2 * r2 * c * d,
            (r2 * a + g2 * b - b2 * c) ** 2 - 4 * g2 * r2 * a * b,
            (n2 * a - d2 * b + b2 * d) ** 2 - 4 * b2 * n2 * a * d,
            (m2 * a + d2 * c - g2 * d) ** 2 - 4 * d2 * m2 * a * c,
        ]

    def to_json(self) -> dict[str, Any]:
        return {
            "case": self.case,
            "first": [f"T{d}" for d in self.first],
            "second": [f"T{d}" for d in self.second],
            **{k: format_scalar(getattr(self, k)) for k in ("mu", "nu", "rho", "beta", "gamma", "delta")},
        }


def _cases(L: Mapping[int, Scalar], i: int, j: int, k: int, l: int, m: int):
    one = Fraction(1)
    yield 1, ("6", str(i), str(j), _even(i, j)), (_even(l, m), _even(j, k), _even(i, k), str(k)), (
        L[j] - L[k], L[k] - L[i], L[i] - L[j], one, one, one)
    yield 2, (str(i), _even(j, m), _even(i, k), _even(i, l)), (str(j), _even(i, m), _even(j, k), _even(j, l)), (
        L[l] - L[k], L[m] - L[l], L[k] - L[m], one, one, one)
    yield 3, (_even(l, m), str(i), str(j), str(k)), (str(l), _even(i, m), _even(j, m), _even(k, m)), (
        L[j] - L[k], L[k] - L[i], L[i] - L[j], L[i] - L[l], L[j] - L[l], L[k] - L[l])
    yield 4, ("6", _even(j, k), _even(i, k), _even(i, j)), (str(m), _even(i, l), _even(j, l), _even(k, l)), (
        (L[j] - L[k]) * (L[i] - L[l]), (L[k] - L[i]) * (L[j] - L[l]), (L[i] - L[j]) * (L[k] - L[l]), one, one, one)


def eight_trope_relations(lam, all_representatives: bool = False) -> list[EightTropeRelation]:
    """The thirty quadratic relations, one per set of eight tropes.

    Each set arises from several labelings {i,j,k,l,m} = {1,...,5}; the first
    one in lexicographic order is kept unless ``all_representatives``.
    """
    L = _roots(lam)
    seen: dict[frozenset[str], int] = {}
    out = []
    for perm in permutations(range(1, 6)):
        for case, first, second, coeffs in _cases(L, *perm):
            rel = EightTropeRelation(case, first, second, *coeffs)
            if all_representatives or rel.tropes not in seen:
                seen.setdefault(rel.tropes, 0)
                seen[rel.tropes] += 1
                out.append(rel)
    return out


def even_eight_nodes(i: int, j: int) -> frozenset[str]:
    """Delta_ij: nodes p_ik and p_jk with k outside {i, j}; it avoids p0."""

    def p(a: int, b: int) -> str:
        a, b = sorted((a, b))
        return f"p{a}{b}"

    rest = [k for k in range(1, 7) if k not in (i, j)]
    return frozenset([p(i, k) for k in rest] + [p(j, k) for k in rest])


EVEN_EIGHT_LABELS: tuple[tuple[int, int], ...] = tuple(combinations(range(1, 7), 2))

# sets of eight tropes attached to Delta_ij (left) and its complement (right)
EVEN_EIGHT_TROPES: dict[str, frozenset[str]] = {}
for _lab, _left, _right in (
    ("12", "1 136 146 156 2 236 246 256", "126 3 346 356 4 456 5 6"),
    ("13", "1 126 146 156 236 3 346 356", "136 2 246 256 4 456 5 6"),
    ("14", "1 126 136 156 246 346 4 456", "146 2 236 256 3 356 5 6"),
    ("15", "1 126 136 146 256 356 456 5", "156 2 236 246 3 346 4 6"),
    ("16", "1 236 246 256 346 356 456 6", "126 136 146 156 2 3 4 5"),
    ("23", "126 136 2 246 256 3 346 356", "1 146 156 236 4 456 5 6"),
    ("24", "126 146 2 236 256 346 4 456", "1 136 156 246 3 356 5 6"),
    ("25", "126 156 2 236 246 356 456 5", "1 136 146 256 3 346 4 6"),
    ("26", "136 146 156 2 346 356 456 6", "1 126 236 246 256 3 4 5"),
    ("34", "136 146 236 246 3 356 4 456", "1 126 156 2 256 346 5 6"),
    ("35", "136 156 236 256 3 346 456 5", "1 126 146 2 246 356 4 6"),
    ("36", "126 146 156 246 256 3 456 6", "1 136 2 236 346 356 4 5"),
    # the complement column of this row carries the label "55" where "45" is meant
    ("45", "146 156 246 256 346 356 4 5", "1 126 136 2 236 3 456 6"),
    ("46", "126 136 156 236 256 356 4 6", "1 146 2 246 3 346 456 5"),
    ("56", "126 136 146 236 246 346 5 6", "1 156 2 256 3 356 4 456"),
):
    EVEN_EIGHT_TROPES[f"D{_lab}"] = frozenset(_left.split())
    EVEN_EIGHT_TROPES[f"D{_lab}c"] = frozenset(_right.split())


def even_eight_dictionary(lam, tetrahedra: Sequence[Tetrahedron] | None = None) -> list[dict[str, Any]]:
    """For every relation set: its Rosenhain splittings and the eight vertex nodes."""
    tets = enumerate_tetrahedra(lam) if tetrahedra is None else tetrahedra
    rosenhain = {frozenset(t.faces): frozenset(t.vertices) for t in tets if t.kind == "rosenhain"}
    all_nodes = frozenset(TORSION_LABELS)
    named = {}
    for i, j in EVEN_EIGHT_LABELS:
        d = even_eight_nodes(i, j)
        named[d] = f"D{i}{j}"
        named[all_nodes - d] = f"D{i}{j}c"
    out = []
    for rel in eight_trope_relations(lam):
        s = rel.tropes
        vertex_sets = set()
        splits = 0
        for q in combinations(sorted(s), 4):
            q = frozenset(q)
            if q in rosenhain and (s - q) in rosenhain:
                splits += 1
                vertex_sets.add(rosenhain[q] | rosenhain[s - q])
        nodes = next(iter(vertex_sets)) if len(vertex_sets) == 1 else None
        printed = next((k for k, v in EVEN_EIGHT_TROPES.items() if v == s), None)
        out.append(
            {
                "tropes": sorted(s, key=DIVISORS.index),
                "case": rel.case,
                "rosenhain_splittings": splits // 2,
                "nodes": sorted(nodes, key=TORSION_LABELS.index) if nodes else None,
                "even_eight": named.get(nodes) if nodes else None,
                "printed_label": printed,
            }
        )
    return out


# ------------------------------------------------------------------ Göpel quartic


@dataclass(frozen=True)
class GoepelParams:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    delta2: Scalar
    delta: Scalar | None = None

    def constraint(self) -> Scalar:
        """delta^2 - (alpha^2 + beta^2 + gamma^2 + alpha beta gamma - 4); zero when valid."""
        a, b, g = self.alpha, self.beta, self.gamma
        return self.delta2 - (a * a + b * b + g * g + a * b * g - 4)

    def to_json(self) -> dict[str, Any]:
        out = {k: format_scalar(getattr(self, k)) for k in ("alpha", "beta", "gamma", "delta2")}
        if self.delta is not None:
            out["delta"] = format_scalar(self.delta)
        return out


def goepel_quartic(p: GoepelParams, names: Sequence[str] = GOEPEL_NAMES) -> ProjectiveSurface:
    """Phi^2 - 4 delta^2 P Q R S with Phi = P^2+Q^2+R^2+S^2 - alpha(PS+QR) - beta(PQ+RS) - gamma(PR+QS)."""
    P, Q, R, S = Poly.variables(names)
    phi = P * P + Q * Q + R * R + S * S - p.alpha * (P * S + Q * R) - p.beta * (P * Q + R * S) - p.gamma * (P * R + Q * S)
    return ProjectiveSurface("goepel", phi * phi - 4 * p.delta2 * P * Q * R * S, {"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "delta2": p.delta2})


def _sign_products(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Scalar:
    """prod over e, f = +-1 of (a + e b + f c + e f d)."""
    out = Fraction(1)
    for e in (1, -1):
        for f in (1, -1):
            out = out * (a + e * b + f * c + e * f * d)
    return out


DELTA_READINGS = ("corrected", "literal")


def goepel_params_from_theta(constants: Sequence[Scalar], reading: str = "corrected") -> GoepelParams:
    """Parameters from theta_1 ... theta_4 (unsquared).

    ``literal`` builds delta with theta_3^2 in the last slot of the sign
    products instead of theta_4^2; it violates the parameter constraint.
    """
    t1, t2, t3, t4 = constants[:4]
    s1, s2, s3, s4 = t1 * t1, t2 * t2, t3 * t3, t4 * t4
    al = (s1 * s1 - s2 * s2 - s3 * s3 + s4 * s4) / (s1 * s4 - s2 * s3)
    be = (s1 * s1 + s2 * s2 - s3 * s3 - s4 * s4) / (s1 * s2 - s3 * s4)
    ga = (s1 * s1 - s2 * s2 + s3 * s3 - s4 * s4) / (s1 * s3 - s2 * s4)
    den = (s1 * s2 - s3 * s4) * (s1 * s3 - s2 * s4) * (s1 * s4 - s2 * s3)
    if reading == "corrected":
        last = s4
    elif reading == "literal":
        last = s3
    else:
        raise DomainError(f"unknown reading {reading!r}")
    delta = t1 * t2 * t3 * t4 * _sign_products(s1, s2, s3, last) / den
    return GoepelParams(al, be, ga, delta * delta, delta)


def goepel_params_from_moduli(L: Sequence[Scalar]) -> GoepelParams:
    """Rational parameters in the Rosenhain roots of the isogenous curve."""
    L1, L2, L3 = L
    al = 2 * (L1 + 1) / (L1 - 1)
    be = 2 * (L1 * L2 + L1 * L3 - 2 * L2 * L3 - 2 * L1 + L2 + L3) / ((L2 - L3) * (L1 - 1))
    ga = 2 * (L3 + L2) / (L3 - L2)
    de = 4 * (L1 - L2 * L3) / ((L1 - 1) * (L3 - L2))
    return GoepelParams(al, be, ga, de * de, de)


def goepel_params_from_seed(seed: Sequence[Scalar]) -> GoepelParams:
    """Parameters matched to a Göpel-Hudson seed node under the linear transform."""
    w, x, y, z = (v * v for v in seed)
    al = 2 * (w * y + x * z) / (w * y - x * z)
    be = 2 * (w * x + y * z) / (w * x - y * z)
    ga = 2 * (w * z + x * y) / (w * z - x * y)
    den = (w * z - x * y) * (w * x - y * z) * (w * y - x * z)
    d2 = 16 * w * w * x * x * y * y * z * z * _sign_products(w, x, y, z) / (den * den)
    return GoepelParams(al, be, ga, d2)


NODE_READINGS = ("corrected", "literal")


def goepel_nodes(seed: Sequence[Scalar], reading: str = "corrected") -> list[Point]:
    """Sixteen nodes of the Göpel quartic attached to a seed node.

    Four nodes are built from squared sums p^2, q^2, r^2, s^2 of the seed; the
    corrected reading exchanges the printed r^2 and s^2 and repairs the third
    node, whose printed form repeats r^2.
    """
    w0, x0, y0, z0 = seed
    w, x, y, z = w0 * w0, x0 * x0, y0 * y0, z0 * z0
    p2, q2 = w + x + y + z, w + x - y - z
    r2, s2 = w - x + y - z, w - x - y + z
    if reading == "corrected":
        r2, s2 = s2, r2
        square = [(p2, q2, r2, s2), (q2, p2, s2, r2), (r2, s2, p2, q2), (s2, r2, q2, p2)]
    elif reading == "literal":
        square = [(p2, q2, r2, s2), (q2, p2, s2, r2), (r2, s2, r2, q2), (s2, r2, q2, p2)]
    else:
        raise DomainError(f"unknown reading {reading!r}")
    u1, u2 = w0 * x0 + y0 * z0, w0 * x0 - y0 * z0
    v1, v2 = w0 * z0 + x0 * y0, w0 * z0 - x0 * y0
    t1, t2 = w0 * y0 + x0 * z0, w0 * y0 - x0 * z0
    o = Fraction(0)
    bilinear = [
        (u1, u2, o, o), (u2, u1, o, o), (o, o, u1, u2), (o, o, u2, u1),
        (v1, o, v2, o), (o, v1, o, v2), (v2, o, v1, o), (o, v2, o, v1),
        (t1, o, o, t2), (o, t1, t2, o), (o, t2, t1, o), (t2, o, o, t1),
    ]
    return square + bilinear


# ------------------------------------------------------------------ Göpel-Hudson quartic


@dataclass(frozen=True)
class GHParams:
    A: Scalar
    B: Scalar
    C: Scalar
    D: Scalar

    def constraint(self) -> Scalar:
        """D^2 - (A^2 + B^2 + C^2 + ABC - 4); zero when valid."""
        A, B, C = self.A, self.B, self.C
        return self.D * self.D - (A * A + B * B + C * C + A * B * C - 4)

    def with_sign(self, s: int) -> GHParams:
        return GHParams(self.A, self.B, self.C, s * self.D)

    def to_json(self) -> dict[str, Any]:
        return {k: format_scalar(getattr(self, k)) for k in "ABCD"}


def gh_quartic(p: GHParams, names: Sequence[str] = GH_NAMES) -> ProjectiveSurface:
    w, x, y, z = Poly.variables(names)
    poly = (
        w**4 + x**4 + y**4 + z**4 + 2 * p.D * w * x * y * z
        - p.A * (w * w * z * z + x * x * y * y)
        - p.B * (w * w * x * x + y * y * z * z)
        - p.C * (w * w * y * y + x * x * z * z)
    )
    return ProjectiveSurface("goepel-hudson", poly, {"A": p.A, "B": p.B, "C": p.C, "D": p.D})


def gh_params_from_seed(seed: Sequence[Scalar]) -> GHParams:
    w0, x0, y0, z0 = seed
    w, x, y, z = w0 * w0, x0 * x0, y0 * y0, z0 * z0
    A = (w * w - x * x - y * y + z * z) / (w * z - x * y)
    B = (w * w + x * x - y * y - z * z) / (w * x - y * z)
    C = (w * w - x * x + y * y - z * z) / (w * y - x * z)
    D = w0 * x0 * y0 * z0 * _sign_products(w, x, y, z) / ((w * z - x * y) * (w * x - y * z) * (w * y - x * z))
    return GHParams(A, B, C, D)


def gh_params_from_theta(doubled_constants: Sequence[Scalar]) -> GHParams:
    """Parameters for the model [Theta_1(2z) : ... : Theta_4(2z)]: the seed formulas at Theta_1..4."""
    return gh_params_from_seed(doubled_constants[:4])


def gh_params_from_moduli(lam) -> GHParams:
    l1, l2, l3 = _lams(lam)
    A = 2 * (l1 + 1) / (l1 - 1)
    B = 2 * (l1 * l2 + l1 * l3 - 2 * l2 * l3 - 2 * l1 + l2 + l3) / ((l2 - l3) * (l1 - 1))
    C = 2 * (l3 + l2) / (l3 - l2)
    D = 4 * (l1 - l2 * l3) / ((l2 - l3) * (l1 - 1))
    return GHParams(A, B, C, D)


def gh_nodes(seed: Sequence[Scalar]) -> list[Point]:
    """The seed, its three coordinate permutations, and even sign flips of each."""
    w0, x0, y0, z0 = seed
    base = [(w0, x0, y0, z0), (x0, w0, z0, y0), (y0, z0, w0, x0), (z0, y0, x0, w0)]
    out = []
    for p in base:
        out.append(tuple(p))
        for k in (1, 2, 3):
            q = list(p)
            q[0], q[k] = -q[0], -q[k]
            out.append(tuple(q))
    return out


def gh_to_goepel_transform(seed: Sequence[Scalar]) -> list[list[Scalar]]:
    """Rows of the linear map [w:x:y:z] -> [P:Q:R:S]."""
    w0, x0, y0, z0 = seed
    return [
        [w0, x0, y0, z0],
        [w0, x0, -y0, -z0],
        [w0, -x0, -y0, z0],
        [w0, -x0, y0, -z0],
    ]


def apply_linear(rows: Sequence[Sequence[Scalar]], point: Sequence[Scalar]) -> Point:
    return tuple(_dot(r, point) for r in rows)


def pull_back(surface: ProjectiveSurface, rows: Sequence[Sequence[Scalar]], names: Sequence[str]) -> Poly:
    """surface(rows * v) as a polynomial in ``names``."""
    return surface.poly.substitute([Poly.linear(names, r) for r in rows])


def squares_projection(point: Sequence[Scalar]) -> Point:
    return tuple(v * v for v in point)


def squares_pullback(p: GHParams) -> Poly:
    """Göpel(A, B, C, D^2) evaluated at (w^2, x^2, y^2, z^2); equals GH(D) * GH(-D)."""
    w, x, y, z = Poly.variables(GH_NAMES)
    g = goepel_quartic(GoepelParams(p.A, p.B, p.C, p.D * p.D, p.D), GH_NAMES)
    return g.poly.substitute([w * w, x * x, y * y, z * z])


def sign_flip(point: Sequence[Scalar]) -> Point:
    return (-point[0],) + tuple(point[1:])


# ------------------------------------------------------------------ Rosenhain quartic


@dataclass(frozen=True)
class RosenhainQuarticParams:
    a: Scalar
    b: Scalar
    c: Scalar
    d2: Scalar

    def to_json(self) -> dict[str, Any]:
        return {k: format_scalar(getattr(self, k)) for k in ("a", "b", "c", "d2")}


def _rosenhain_poly(a, b, c, d2, Y: Sequence[Poly], cross_signs=(1, 1, 1)) -> Poly:
    Y0, Y1, Y2, Y3 = Y
    sab, sac, sbc = cross_signs
    return (
        a * a * (Y0 * Y0 * Y1 * Y1 + Y2 * Y2 * Y3 * Y3)
        + b * b * (Y0 * Y0 * Y2 * Y2 + Y1 * Y1 * Y3 * Y3)
        + c * c * (Y0 * Y0 * Y3 * Y3 + Y1 * Y1 * Y2 * Y2)
        + sab * 2 * a * b * (Y0 * Y1 - Y2 * Y3) * (Y0 * Y2 + Y1 * Y3)
        - sac * 2 * a * c * (Y0 * Y1 + Y2 * Y3) * (Y0 * Y3 + Y1 * Y2)
        + sbc * 2 * b * c * (Y0 * Y2 - Y1 * Y3) * (Y0 * Y3 - Y1 * Y2)
        + d2 * Y0 * Y1 * Y2 * Y3
    )


def rosenhain_quartic(p: RosenhainQuarticParams, names: Sequence[str] = ROSENHAIN_NAMES) -> ProjectiveSurface:
    poly = _rosenhain_poly(p.a, p.b, p.c, p.d2, Poly.variables(names))
    return ProjectiveSurface("rosenhain", poly, {"a": p.a, "b": p.b, "c": p.c, "d2": p.d2})


def rosenhain_quartic_params_from_theta(doubled_constants: Sequence[Scalar]) -> RosenhainQuarticParams:
    """Parameters for the model [theta_1(z)^2 : theta_2(z)^2 : theta_7(z)^2 : theta_12(z)^2]."""
    T1, T2, T3, T4 = doubled_constants[:4]
    S1, S2, S3, S4 = T1 * T1, T2 * T2, T3 * T3, T4 * T4
    pppp = S1 + S2 + S3 + S4
    ppmm = S1 + S2 - S3 - S4
    pmpm = S1 - S2 + S3 - S4
    pmmp = S1 - S2 - S3 + S4
    a = (2 * T1 * T4 - 2 * T2 * T3) * (2 * T1 * T4 + 2 * T2 * T3) * (2 * T1 * T3 + 2 * T2 * T4)
    b = ppmm * pmpm * (2 * T1 * T2 - 2 * T3 * T4)
    c = pmmp * pppp * (2 * T1 * T2 + 2 * T3 * T4)
    d2 = (
        256 * T1 * T2 * T3 * T4 * (S1 * S4 - S2 * S3) * (S1 * S1 - S2 * S2 - S3 * S3 + S4 * S4)
        + 8 * (S1 + S4) * (S2 + S3) * pppp**2 * pmmp**2
        + 8 * (S1 - S4) * (S2 - S3) * ppmm**2 * pmpm**2
        - 32 * (S1 * S2 + S3 * S4) * pppp * pmpm * pmmp * ppmm
    )
    return RosenhainQuarticParams(a, b, c, d2)


def rosenhain_to_gh_transform(seed: Sequence[Scalar]) -> list[list[Scalar]]:
    """Rows of the linear map [w:x:y:z] -> [Y0:Y1:Y2:Y3]."""
    w0, x0, y0, z0 = seed
    return [
        [w0, x0, y0, z0],
        [w0, x0, -y0, -z0],
        [z0, y0, x0, w0],
        [z0, y0, -x0, -w0],
    ]


def rosenhain_params_from_seed(seed: Sequence[Scalar]) -> tuple[RosenhainQuarticParams, Scalar]:
    """(a, b, c) from the seed node; d^2 and the scale k solved so that the pulled-back
    Rosenhain quartic equals k times the Göpel-Hudson quartic of the seed."""
    w0, x0, y0, z0 = seed
    a = 4 * (w0**2 * z0**2 - x0**2 * y0**2) * (w0 * y0 + x0 * z0)
    b = (w0**2 + x0**2 - y0**2 - z0**2) * (w0**2 - x0**2 + y0**2 - z0**2) * (w0 * x0 - y0 * z0)
    c = (w0**2 - x0**2 - y0**2 + z0**2) * (w0**2 + x0**2 + y0**2 + z0**2) * (w0 * x0 + y0 * z0)
    rows = rosenhain_to_gh_transform(seed)
    lin = [Poly.linear(GH_NAMES, r) for r in rows]
    base = _rosenhain_poly(a, b, c, 0, lin)
    mono = lin[0] * lin[1] * lin[2] * lin[3]
    target = gh_quartic(gh_params_from_seed(seed)).poly
    exps = sorted(target.terms)
    # base + d2 * mono = k * target, two coefficients fix (k, d2)
    for e1, e2 in combinations(exps, 2):
        sol = solve_2x2(
            target.coefficient(e1), -mono.coefficient(e1),
            target.coefficient(e2), -mono.coefficient(e2),
            base.coefficient(e1), base.coefficient(e2),
        )
        if sol is not None:
            k, d2 = sol
            return RosenhainQuarticParams(a, b, c, d2), k
    raise DomainError("degenerate seed node")


def cremona_image(p: RosenhainQuarticParams) -> Poly:
    """The quartic after [Y_i] -> [prod_{j != i} Y_j], divided by (Y0 Y1 Y2 Y3)^2."""
    Y = Poly.variables(ROSENHAIN_NAMES)
    imgs = [Y[1] * Y[2] * Y[3], Y[0] * Y[2] * Y[3], Y[0] * Y[1] * Y[3], Y[0] * Y[1] * Y[2]]
    full = rosenhain_quartic(p).poly.substitute(imgs)
    # every monomial of the image is divisible by (Y0 Y1 Y2 Y3)^2
    return Poly(ROSENHAIN_NAMES, {tuple(k - 2 for k in e): c for e, c in full.terms.items()})


def cremona_report(p: RosenhainQuarticParams) -> dict[str, bool]:
    """Which form the Cremona image takes: the quartic itself, or with the ab term negated."""
    img = cremona_image(p)
    Y = Poly.variables(ROSENHAIN_NAMES)
    flipped = _rosenhain_poly(p.a, p.b, p.c, p.d2, Y, cross_signs=(-1, 1, 1))
    return {
        "invariant": img.proportionality(rosenhain_quartic(p).poly) is not None,
        "ab_term_negated": (img - flipped).is_zero(),
    }


# ------------------------------------------------------------------ theta models


def goepel_theta_point(values: Sequence[complex]) -> Point:
    return tuple(values[i] ** 2 for i in range(4))


def gh_theta_point(doubled_values_2z: Sequence[complex]) -> Point:
    return tuple(doubled_values_2z[:4])


ROSENHAIN_THETA_INDICES = (1, 2, 7, 12)


def rosenhain_theta_point(values: Sequence[complex]) -> Point:
    return tuple(values[i - 1] ** 2 for i in ROSENHAIN_THETA_INDICES)


# ------------------------------------------------------------------ reading off normal-form parameters


def gh_params_from_quartic(poly: Poly, tol: float = 1e-7) -> GHParams | None:
    """Rescale the coordinates of a quartic with Göpel-Hudson monomial support so the
    fourth powers become monic; None when the support or the pairing pattern differs."""
    if poly.nvars != 4 or not poly.is_homogeneous(4):
        return None
    allowed = {tuple(sorted(e)) for e in ((4, 0, 0, 0), (2, 2, 0, 0), (1, 1, 1, 1))}
    scale = max(abs(c) for c in poly.terms.values())
    if any(tuple(sorted(e)) not in allowed and abs(c) > tol * scale for e, c in poly.terms.items()):
        return None
    c4 = [poly.coefficient(tuple(4 if k == a else 0 for k in range(4))) for a in range(4)]
    if any(abs(c) <= tol * scale for c in c4):
        return None

    def sq(a: int, b: int, s: Sequence[complex]) -> complex:
        return poly.coefficient(tuple(2 if k in (a, b) else 0 for k in range(4))) * s[a] ** 2 * s[b] ** 2

    roots = [complex(c) ** -0.25 for c in c4]
    for ks in product(range(4), repeat=3):
        s = [roots[0]] + [roots[k + 1] * 1j ** ks[k] for k in range(3)]
        A1, A2 = -sq(0, 3, s), -sq(1, 2, s)
        B1, B2 = -sq(0, 1, s), -sq(2, 3, s)
        C1, C2 = -sq(0, 2, s), -sq(1, 3, s)
        size = max(abs(A1), abs(B1), abs(C1), 1.0)
        if max(abs(A1 - A2), abs(B1 - B2), abs(C1 - C2)) <= tol * size:
            D = poly.coefficient((1, 1, 1, 1)) * s[0] * s[1] * s[2] * s[3] / 2
            return GHParams(A1, B1, C1, D)
    return None


def rosenhain_from_gh(p: GHParams) -> tuple[tuple[Scalar, Scalar, Scalar], float]:
    """Invert the moduli-to-(A, B, C, D) map: returns (lambda, relative error on B)."""
    A, B, C, D = p.A, p.B, p.C, p.D
    l1 = (A + 2) / (A - 2)
    r = (C + 2) / (C - 2)
    # l3 = r l2 and D fixes l2 up to the two roots of a quadratic; B picks one
    qa, qb, qc = 4 * r, D * (1 - r) * (l1 - 1), -4 * l1
    disc = sqrt_scalar(qb * qb - 4 * qa * qc)
    best: tuple[tuple[Scalar, Scalar, Scalar], float] | None = None
    for sgn in (1, -1):
        l2 = (-qb + sgn * disc) / (2 * qa)
        lam = (l1, l2, r * l2)
        try:
            err = abs(gh_params_from_moduli(lam).B - B) / max(abs(B), 1e-300)
        except ZeroDivisionError:
            continue
        if best is None or err < best[1]:
            best = (lam, float(err))
    if best is None:
        raise DomainError("degenerate Göpel-Hudson parameters")
    return best


# ------------------------------------------------------------------ rational points on the Göpel-Hudson quartic


def _plane_through(points: Sequence[Point]) -> Point | None:
    """Coefficients of the plane through three points, or None if they are collinear."""
    from .linalg import exact_nullspace

    basis = exact_nullspace([list(p) for p in points]) if all(is_exact(v) for p in points for v in p) else None
    if basis is None or len(basis) != 1:
        return None
    h = basis[0]
    k = next(c for c in h if c != 0)
    return tuple(c / k for c in h)


def gh_tropes(seed: Sequence[Scalar]) -> list[Point]:
    """The sixteen planes through six nodes each, for an exact seed node."""
    nodes = gh_nodes(seed)
    found: list[Point] = []
    for trio in combinations(nodes, 3):
        h = _plane_through(trio)
        if h is None or any(projectively_equal(h, g) for g in found):
            continue
        if sum(1 for n in nodes if _dot(h, n) == 0) == 6:
            found.append(h)
    return found


def gh_rational_points(seed: Sequence[Scalar], count: int, rng_seed: int = 0, height: int = 50) -> list[Point]:
    """Exact points on the Göpel-Hudson quartic of ``seed``.

    A trope meets the quartic in a double conic through its six nodes; a line in the
    trope through one node meets that conic again where the restricted quartic
    t^2 (a + b t + c t^2) has its double root t = -b / (2c)."""
    import random

    from .scalars import random_rational

    rng = random.Random(f"gh-points:{rng_seed}")
    surface = gh_quartic(gh_params_from_seed(seed))
    nodes = gh_nodes(seed)
    tropes = gh_tropes(seed)
    (t,) = Poly.variables(("t",))
    out: list[Point] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 50 * count:
            raise DomainError("could not find enough rational points; seed may be degenerate")
        h = tropes[rng.randrange(len(tropes))]
        on = [n for n in nodes if _dot(h, n) == 0]
        n = on[rng.randrange(len(on))]
        # a direction inside the plane: a random vector projected along a coordinate axis
        v = [random_rational(rng, height) for _ in range(4)]
        k = next(i for i, c in enumerate(h) if c != 0)
        v[k] = -sum(h[i] * v[i] for i in range(4) if i != k) / h[k]
        restricted = surface.poly.substitute([Poly.constant(("t",), n[i]) + v[i] * t for i in range(4)])
        b, c = restricted.coefficient((3,)), restricted.coefficient((4,))
        if c == 0 or restricted.coefficient((0,)) != 0 or restricted.coefficient((1,)) != 0:
            continue
        s = -b / (2 * c)
        point = tuple(n[i] + s * v[i] for i in range(4))
        if s != 0 and surface(point) == 0:
            out.append(point)
    return out


def squares_pushforward_holds(seed: Sequence[Scalar], points: Sequence[Point]) -> bool:
    """Every point of GH(A, B, C, D) squares to a point of Göpel(A, B, C, D^2)."""
    p = gh_params_from_seed(seed)
    target = goepel_quartic(GoepelParams(p.A, p.B, p.C, p.D * p.D, p.D))
    return all(target(squares_projection(pt)) == 0 for pt in points)


# relation families of this module checked by the verification harness
VERIFIED_FAMILIES = (
    "eight-trope-quadratic",
    "discriminant-factorization",
    "node-membership",
    "parameter-constraints",
    "squares-pushforward",
    "quadric-model-theta",
    "goepel-theta",
    "gh-theta",
    "rosenhain-theta",
)
