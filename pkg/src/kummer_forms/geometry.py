"""Two-torsion labels, the Weil pairing and the 16_6 configuration over F2.

Two-torsion points of a genus-two Jacobian are labelled ``p0`` and ``pij``
(1 <= i < j <= 6); the sixteen symmetric theta divisors are labelled by their
trope names ``"1" ... "6"`` (odd) and ``"ij6"`` (even).  Points of F2^4 are
4-tuples ``(a1, a2, a3, a4)`` read as the matrix [[a1, a2], [a3, a4]].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any

from .scalars import DomainError
from .theta import CHARACTERISTICS

F2Point = tuple[int, int, int, int]

ZERO: F2Point = (0, 0, 0, 0)
ALL_ONES: F2Point = (1, 1, 1, 1)

TORSION_LABELS: tuple[str, ...] = ("p0",) + tuple(f"p{i}{j}" for i, j in combinations(range(1, 7), 2))
ODD_DIVISORS: tuple[str, ...] = ("1", "2", "3", "4", "5", "6")
EVEN_DIVISORS: tuple[str, ...] = tuple(f"{i}{j}6" for i, j in combinations(range(1, 6), 2))
DIVISORS: tuple[str, ...] = ODD_DIVISORS + EVEN_DIVISORS


def _indices(label: str) -> frozenset[int]:
    if label == "p0":
        return frozenset()
    if len(label) == 3 and label[0] == "p":
        i, j = int(label[1]), int(label[2])
        if 1 <= i < j <= 6:
            return frozenset((i, j))
    raise DomainError(f"unknown two-torsion label {label!r}")


def _label(indices: frozenset[int]) -> str:
    if len(indices) == 4:
        indices = frozenset(range(1, 7)) - indices
    if not indices:
        return "p0"
    i, j = sorted(indices)
    return f"p{i}{j}"


def torsion_add(x: str, y: str) -> str:
    """Group law: symmetric difference of index pairs, complement when four remain."""
    return _label(_indices(x) ^ _indices(y))


def weil_pairing(x: str, y: str) -> int:
    """|{i,j} intersect {k,l}| mod 2; zero against p0."""
    return len(_indices(x) & _indices(y)) % 2


def f2_add(a: F2Point, b: F2Point) -> F2Point:
    return tuple((u + v) % 2 for u, v in zip(a, b))  # type: ignore[return-value]


def symplectic_form(a: F2Point, b: F2Point) -> int:
    """Tr(A^t J B) mod 2 with J = [[0, 1], [-1, 0]]."""
    return (a[0] * b[2] - a[2] * b[0] + a[1] * b[3] - a[3] * b[1]) % 2


def all_f2_points() -> list[F2Point]:
    return [((n >> 3) & 1, (n >> 2) & 1, (n >> 1) & 1, n & 1) for n in range(16)]


# torsion point -> matrix, divisor -> plane index, divisor -> contained points
_TABLE = (
    ("p0", (0, 0, 0, 0), "236", "p14 p15 p23 p26 p36 p45"),
    ("p45", (0, 1, 0, 0), "1", "p0 p12 p13 p14 p15 p16"),
    ("p36", (1, 0, 0, 0), "2", "p0 p12 p23 p24 p25 p26"),
    ("p26", (1, 0, 1, 0), "3", "p0 p13 p23 p34 p35 p36"),
    ("p15", (0, 0, 0, 1), "4", "p0 p14 p24 p34 p45 p46"),
    ("p14", (0, 1, 0, 1), "5", "p0 p15 p25 p35 p45 p56"),
    ("p23", (0, 0, 1, 0), "6", "p0 p16 p26 p36 p46 p56"),
    ("p16", (0, 1, 1, 0), "456", "p12 p13 p23 p45 p46 p56"),
    ("p13", (1, 1, 1, 0), "126", "p12 p16 p26 p34 p35 p45"),
    ("p12", (1, 1, 0, 0), "136", "p13 p16 p24 p25 p36 p45"),
    ("p24", (1, 0, 0, 1), "346", "p12 p15 p25 p34 p36 p46"),
    ("p34", (1, 0, 1, 1), "246", "p13 p15 p24 p26 p35 p46"),
    ("p56", (0, 1, 1, 1), "146", "p14 p16 p23 p25 p35 p46"),
    ("p25", (1, 1, 0, 1), "356", "p12 p14 p24 p35 p36 p56"),
    ("p35", (1, 1, 1, 1), "256", "p13 p14 p25 p26 p34 p56"),
    ("p46", (0, 0, 1, 1), "156", "p15 p16 p23 p24 p34 p56"),
)

TORSION_TO_F2: dict[str, F2Point] = {row[0]: row[1] for row in _TABLE}
DIVISOR_TO_PLANE: dict[str, F2Point] = {row[2]: row[1] for row in _TABLE}
TABLE_CONTAINED: dict[str, frozenset[str]] = {row[2]: frozenset(row[3].split()) for row in _TABLE}

# theta divisor -> index of the theta function whose characteristic is plane + (11;11)
DIVISOR_TO_THETA: dict[str, int] = {
    "1": 15, "2": 12, "3": 11, "4": 16, "5": 14, "6": 13,
    "126": 4, "136": 2, "146": 5, "156": 8, "236": 10,
    "246": 7, "256": 1, "346": 9, "356": 3, "456": 6,
}


def torsion_to_f2(label: str) -> F2Point:
    _indices(label)
    return TORSION_TO_F2[label]


def f2_to_torsion(point: F2Point) -> str:
    for k, v in TORSION_TO_F2.items():
        if v == tuple(point):
            return k
    raise DomainError(f"not a point of F2^4: {point!r}")


def divisor_plane(divisor: str) -> F2Point:
    try:
        return DIVISOR_TO_PLANE[divisor]
    except KeyError:
        raise DomainError(f"unknown theta divisor {divisor!r}") from None


def divisor_to_char(divisor: str) -> int:
    """Theta index (1..16) whose characteristic equals the divisor's plane + (11;11)."""
    bits = f2_add(divisor_plane(divisor), ALL_ONES)
    for i, ch in enumerate(CHARACTERISTICS, 1):
        if ch.bits() == bits:
            return i
    raise AssertionError("characteristic table incomplete")


def singular_plane_points(b: F2Point) -> list[F2Point]:
    """Points whose first column matches b xor whose second column matches b."""
    out = []
    for a in all_f2_points():
        first = (a[0], a[2]) == (b[0], b[2])
        second = (a[1], a[3]) == (b[1], b[3])
        if first != second:
            out.append(a)
    return out


def divisor_contains(divisor: str) -> frozenset[str]:
    """Two-torsion points on a symmetric theta divisor, from the translate rule."""
    if divisor in ODD_DIVISORS:
        i = int(divisor)
        if i == 6:
            return frozenset(["p0"] + [f"p{k}6" for k in range(1, 6)])
        return frozenset(["p0"] + [_label(frozenset((i, k))) for k in range(1, 7) if k != i])
    if divisor in EVEN_DIVISORS:
        i, j = int(divisor[0]), int(divisor[1])
        rest = sorted(set(range(1, 6)) - {i, j})
        pts = {f"p{i}{j}", f"p{i}6", f"p{j}6"}
        pts |= {f"p{a}{b}" for a, b in combinations(rest, 2)}
        return frozenset(pts)
    raise DomainError(f"unknown theta divisor {divisor!r}")


def incidence_matrix() -> list[list[int]]:
    """16x16 incidence of F2^4 points (rows) against singular planes (columns)."""
    pts = all_f2_points()
    planes = [set(singular_plane_points(b)) for b in pts]
    return [[int(a in P) for P in planes] for a in pts]


@dataclass(frozen=True)
class SubgroupClass:
    kind: str
    elements: tuple[str, ...]
    translates: tuple[frozenset[str], ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "elements": list(self.elements),
            "translates": [sorted(t, key=TORSION_LABELS.index) for t in self.translates],
        }


def _translates(group: frozenset[str]) -> tuple[frozenset[str], ...]:
    cosets = {frozenset(torsion_add(g, x) for g in group) for x in TORSION_LABELS}
    return tuple(sorted(cosets, key=lambda c: sorted(TORSION_LABELS.index(p) for p in c)))


def _is_subgroup(s: frozenset[str]) -> bool:
    return "p0" in s and all(torsion_add(a, b) in s for a in s for b in s)


@lru_cache(maxsize=None)
def enumerate_subgroups(kind: str) -> tuple[SubgroupClass, ...]:
    """The 15 Göpel groups (maximal isotropic) or the 20 Rosenhain groups."""
    if kind == "goepel":
        groups = []
        for trio in combinations(TORSION_LABELS[1:], 3):
            s = frozenset(("p0",) + trio)
            if _is_subgroup(s) and all(weil_pairing(a, b) == 0 for a in s for b in s):
                groups.append(s)
    elif kind == "rosenhain":
        groups = [
            frozenset({"p0", f"p{i}{j}", f"p{i}{k}", f"p{j}{k}"})
            for i, j, k in combinations(range(1, 7), 3)
        ]
    else:
        raise DomainError(f"unknown subgroup kind {kind!r}")
    out = []
    for g in groups:
        elems = tuple(sorted(g, key=TORSION_LABELS.index))
        out.append(SubgroupClass(kind, elems, _translates(g)))
    return tuple(sorted(out, key=lambda c: [TORSION_LABELS.index(p) for p in c.elements]))


# the explicit lists, for comparison with the enumeration
GOEPEL_LIST = tuple(
    frozenset(("p0",) + tuple(s.split()))
    for s in (
        "p12 p34 p56", "p12 p35 p46", "p12 p36 p45", "p13 p24 p56", "p13 p25 p46",
        "p13 p26 p45", "p14 p23 p56", "p14 p25 p36", "p14 p26 p35", "p15 p23 p46",
        "p15 p24 p36", "p15 p26 p34", "p16 p23 p45", "p16 p24 p35", "p16 p25 p34",
    )
)


def is_goepel_system(points: frozenset[F2Point]) -> bool:
    """A coset of a four-element isotropic subgroup of F2^4."""
    if len(points) != 4:
        return False
    base = next(iter(points))
    group = {f2_add(p, base) for p in points}
    closed = all(f2_add(a, b) in group for a in group for b in group)
    return closed and all(symplectic_form(a, b) == 0 for a in group for b in group)


def check_configuration() -> dict[str, bool]:
    """Self-checks tying the embedded tables to the incidence and pairing rules."""
    pts = all_f2_points()
    inc = incidence_matrix()
    labels = TORSION_LABELS
    images = [torsion_to_f2(x) for x in labels]
    return {
        "bijective": len(set(images)) == 16 and len(set(DIVISOR_TO_PLANE.values())) == 16,
        "homomorphism": all(
            torsion_to_f2(torsion_add(x, y)) == f2_add(torsion_to_f2(x), torsion_to_f2(y))
            for x in labels for y in labels
        ),
        "pairing_transport": all(
            weil_pairing(x, y) == symplectic_form(torsion_to_f2(x), torsion_to_f2(y))
            for x in labels for y in labels
        ),
        "incidence_16_6": all(sum(r) == 6 for r in inc) and all(sum(c) == 6 for c in zip(*inc)),
        "table_columns": all(
            {torsion_to_f2(p) for p in TABLE_CONTAINED[d]} == set(singular_plane_points(divisor_plane(d)))
            for d in DIVISORS
        ),
        "translate_rule": all(TABLE_CONTAINED[d] == divisor_contains(d) for d in DIVISORS),
        "goepel_systems": all(
            is_goepel_system(frozenset(torsion_to_f2(p) for p in t))
            for g in enumerate_subgroups("goepel") for t in g.translates
        ),
        "goepel_list": {frozenset(g.elements) for g in enumerate_subgroups("goepel")} == set(GOEPEL_LIST),
        "odd_divisors_odd": all(not CHARACTERISTICS[divisor_to_char(d) - 1].is_even for d in ODD_DIVISORS),
        "characteristic_table": all(divisor_to_char(d) == DIVISOR_TO_THETA[d] for d in DIVISORS),
        "points": len(pts) == 16,
    }
