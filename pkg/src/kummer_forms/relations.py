"""Catalog of theta and trope relations, and the trope-theta dictionary.

Relation families (ids in brackets):

* ``mumford-square``      12 relations among squared odd and even theta functions
* ``mumford-bimonomial``  60 three-term relations in bimonomials theta_i(z) theta_j(z)
* ``trope-linear``        12 linear relations among the sixteen tropes over lambda
* ``trope-four-term``     15 four-term relations among the six odd tropes
* ``trope-bimonomial``    60 three-term relations in the sections t_{a,b}

Symbols: ``thN`` theta constants, ``xiN = theta_N(z)^2``,
``xiN_M = theta_N(z) theta_M(z)``, ``l1 l2 l3`` Rosenhain roots, ``Ta`` tropes,
``ta_b`` with ``ta_b^2 = Ta * Tb``.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping, Sequence
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Any

import numpy as np

from .expressions import ConicRelation
from .geometry import DIVISOR_TO_THETA, DIVISORS, EVEN_DIVISORS, ODD_DIVISORS
from .scalars import DomainError, Scalar, relative_residual

DATA_FILES = {
    "mumford-square": "mumford_squares.txt",
    "mumford-bimonomial": "mumford_bimonomial.txt",
    "trope-bimonomial": "trope_bimonomial.txt",
}

# sha256 of each data file; a mismatch means the transcription was edited
CHECKSUMS = {
    "mumford-square": "c47f9b98008ef91d91ba5a471c0cee5ee0d376ec7ca6694149b33df85b60d1c3",
    "mumford-bimonomial": "f88d8c3cfddaf2c56c07116fd5147b49b633a9018325b633c27fd952564a56b8",
    "trope-bimonomial": "8dbb93900db203aedc74e604b1904b8e6929516382ea086160b73cc65ee2dbbc",
}


class ChecksumError(RuntimeError):
    pass


def _read(family: str) -> str:
    return resources.files("kummer_forms").joinpath("data", DATA_FILES[family]).read_text()


def data_checksum(family: str) -> str:
    return hashlib.sha256(_read(family).encode()).hexdigest()


@lru_cache(maxsize=None)
def _load(family: str) -> tuple[ConicRelation, ...]:
    expected = CHECKSUMS[family]
    if expected and data_checksum(family) != expected:
        raise ChecksumError(f"{family}: data file does not match the locked checksum")
    generators = "lambda" if family.startswith("trope") else "theta"
    lines = [ln.strip() for ln in _read(family).splitlines() if ln.strip()]
    return tuple(
        ConicRelation(f"{family}-{n:02d}", text, generators, DATA_FILES[family])
        for n, text in enumerate(lines, 1)
    )


# printed sign of the third term in three bimonomial rows; the data file carries the
# sign that makes each row vanish
MUMFORD_MISPRINTS = {
    "mumford-bimonomial-15": "th1*th9*xi3_7 - th3*th7*xi1_9 + th6*th10*xi13_15",
    "mumford-bimonomial-31": "th2*th5*xi3_6 - th3*th6*xi2_5 - th7*th10*xi11_16",
    "mumford-bimonomial-35": "th2*th7*xi4_9 - th4*th9*xi2_7 - th5*th10*xi13_14",
}


def mumford_square_relations() -> list[ConicRelation]:
    return list(_load("mumford-square"))


def mumford_bimonomial_relations() -> list[ConicRelation]:
    return list(_load("mumford-bimonomial"))


def trope_bimonomial_relations() -> list[ConicRelation]:
    return list(_load("trope-bimonomial"))


# ------------------------------------------------------------------ linear trope relations

_LINEAR = {
    "T1": "T1 - (1 - l1)*T4 - l1*T5 - l1*(l1 - 1)*T6",
    "T2": "T2 - (1 - l2)*T4 - l2*T5 - l2*(l2 - 1)*T6",
    "T3": "T3 - (1 - l3)*T4 - l3*T5 - l3*(l3 - 1)*T6",
    "T126": "T126 - (l1 - 1)*(l2 - 1)*T4 + l1*l2*T5 - T456",
    "T136": "T136 - (l1 - 1)*(l3 - 1)*T4 + l1*l3*T5 - T456",
    "T146": "T146 - (1 - l1)*T4 - l2*l3*(l1 - 1)*T6 - T456",
    "T156": "T156 + l1*T5 - l1*(l2 - 1)*(l3 - 1)*T6 - T456",
    "T236": "T236 - (1 - l2)*(1 - l3)*T4 + l2*l3*T5 - T456",
    "T246": "T246 - (1 - l2)*T4 - l1*l3*(l2 - 1)*T6 - T456",
    "T256": "T256 + l2*T5 - l2*(l1 - 1)*(l3 - 1)*T6 - T456",
    "T346": "T346 - (1 - l3)*T4 - l1*l2*(l3 - 1)*T6 - T456",
    "T356": "T356 + l3*T5 - l3*(l1 - 1)*(l2 - 1)*T6 - T456",
}

# misprinted readings of two rows, kept for the deviation ledger
LINEAR_MISPRINTS = {
    "T3": ["T3 - (1 - l3)*T4 - l3*T4 - l3*(l3 - 1)*T6"],
    # the printed factor "(l_ - 1)" has no index; the other two candidates
    "T156": [
        "T156 + l1*T5 - l1*(l2 - 1)*(l1 - 1)*T6 - T456",
        "T156 + l1*T5 - l1*(l2 - 1)*(l2 - 1)*T6 - T456",
    ],
}


def trope_linear_relations() -> list[ConicRelation]:
    return [ConicRelation(f"trope-linear-{k}", v, "lambda", "linear trope relations") for k, v in _LINEAR.items()]


def _root_symbol(i: int) -> str:
    return {1: "l1", 2: "l2", 3: "l3", 4: "0", 5: "1"}[i]


def _d(i: int, j: int) -> str:
    return f"({_root_symbol(i)} - {_root_symbol(j)})"


def trope_four_term_relations() -> list[ConicRelation]:
    """Fifteen relations among T1..T6 (l4 = 0, l5 = 1 substituted)."""
    out = []
    for i, j, k, l in combinations(range(1, 6), 4):
        text = (
            f"-{_d(j, k)}*{_d(j, l)}*{_d(k, l)}*T{i} + {_d(i, k)}*{_d(i, l)}*{_d(k, l)}*T{j}"
            f" - {_d(i, j)}*{_d(i, l)}*{_d(j, l)}*T{k} + {_d(i, j)}*{_d(i, k)}*{_d(j, k)}*T{l}"
        )
        out.append(ConicRelation(f"trope-four-term-{i}{j}{k}{l}", text, "lambda", "odd trope relations"))
    for i, j, k in combinations(range(1, 6), 3):
        text = (
            f"-{_d(j, k)}*T{i} + {_d(i, k)}*T{j} - {_d(i, j)}*T{k}"
            f" + {_d(i, j)}*{_d(i, k)}*{_d(j, k)}*T6"
        )
        out.append(ConicRelation(f"trope-four-term-{i}{j}{k}6", text, "lambda", "odd trope relations"))
    return out


# ------------------------------------------------------------------ trope-theta dictionary

# theta constants (besides theta_2 theta_4 theta_10) in the prefactor of each odd trope
_ODD_PREFACTOR = {
    "1": (1, 3, 6, 7, 9, 10),
    "2": (2, 3, 5, 6, 8, 9),
    "3": (1, 4, 5, 6, 7, 8),
    "4": (1, 2, 3, 4, 8, 10),
    "5": (2, 4, 5, 7, 9, 10),
}


def trope_prefactor(divisor: str) -> tuple[int, tuple[int, ...]]:
    """(sign, exponents of theta_1..theta_10) with T_a = sign * prod * theta_sigma(z)^2.

    Normalised to k = 1, so R^2 = -theta_2^2 theta_4^2 theta_10^2 supplies the
    sign and the extra squares of the odd tropes.
    """
    e = [0] * 11
    if divisor in ODD_DIVISORS:
        if divisor == "6":
            for j in (2, 4, 10):
                e[j] += 6
        else:
            for j in _ODD_PREFACTOR[divisor]:
                e[j] += 2
            for j in (2, 4, 10):
                e[j] += 2
        return -1, tuple(e[1:])
    if divisor in EVEN_DIVISORS:
        for j in range(1, 11):
            if j != DIVISOR_TO_THETA[divisor]:
                e[j] += 2
        return 1, tuple(e[1:])
    raise DomainError(f"unknown trope {divisor!r}")


def trope_theta_dictionary() -> dict[str, dict[str, Any]]:
    out = {}
    for d in DIVISORS:
        sign, exps = trope_prefactor(d)
        out[d] = {"sign": sign, "theta_exponents": list(exps), "theta_index": DIVISOR_TO_THETA[d]}
    return out


def _monomial(constants: Sequence[complex], exps: Sequence[int]) -> complex:
    out = 1 + 0j
    for c, k in zip(constants[:10], exps):
        if k:
            out *= c**k
    return out


def trope_values(constants: Sequence[complex], values: Sequence[complex]) -> dict[str, complex]:
    """T_a for all sixteen tropes from theta constants and theta_i(z) (both 0-indexed)."""
    out = {}
    for d in DIVISORS:
        sign, exps = trope_prefactor(d)
        out[d] = sign * _monomial(constants, exps) * values[DIVISOR_TO_THETA[d] - 1] ** 2
    return out


def single_sections(constants: Sequence[complex], values: Sequence[complex]) -> dict[str, complex]:
    """t_a with t_a^2 = T_a; for odd tropes the square root of R^2 is i theta_2 theta_4 theta_10."""
    out = {}
    for d in DIVISORS:
        sign, exps = trope_prefactor(d)
        half = [k // 2 for k in exps]
        unit = 1j if sign < 0 else 1
        out[d] = unit * _monomial(constants, half) * values[DIVISOR_TO_THETA[d] - 1]
    return out


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return tuple(sorted((a, b), key=lambda x: (len(x), x)))  # type: ignore[return-value]


def section_symbol(a: str, b: str) -> str:
    a, b = _pair_key(a, b)
    return f"t{a}_{b}"


def parse_section_symbol(symbol: str) -> tuple[str, str]:
    a, b = symbol[1:].split("_")
    return _pair_key(a, b)


def section_sign(a: str, b: str) -> int:
    """Resolved sign of t_{a,b}: -1 exactly for T6 paired with an even trope."""
    a, b = _pair_key(a, b)
    if len(a) == 1 and len(b) == 3 and a == "6":
        return -1
    return 1


def pair_section(a: str, b: str, constants, values, sign: int | None = None) -> complex:
    """t_{a,b} = unit * sign * prod theta^((e_a + e_b)/2) * theta_sa(z) theta_sb(z).

    unit is i when exactly one of the tropes is odd (the R^2 factor appears once).
    """
    a, b = _pair_key(a, b)
    sa, ea = trope_prefactor(a)
    sb, eb = trope_prefactor(b)
    unit = 1 if sa * sb == 1 else 1j
    half = [(x + y) // 2 for x, y in zip(ea, eb)]
    s = section_sign(a, b) if sign is None else sign
    return s * unit * _monomial(constants, half) * values[DIVISOR_TO_THETA[a] - 1] * values[DIVISOR_TO_THETA[b] - 1]


def all_section_pairs() -> list[tuple[str, str]]:
    return [_pair_key(a, b) for a, b in combinations(DIVISORS, 2)]


def section_bindings(constants, values, lam=None, signs: Mapping[tuple[str, str], int] | None = None) -> dict[str, Scalar]:
    """Bindings for every symbol used by the trope relation families."""
    out: dict[str, Scalar] = {}
    for d, v in trope_values(constants, values).items():
        out[f"T{d}"] = v
    for a, b in all_section_pairs():
        s = None if signs is None else signs.get((a, b))
        out[section_symbol(a, b)] = pair_section(a, b, constants, values, s)
    if lam is not None:
        out.update({"l1": lam[0], "l2": lam[1], "l3": lam[2]})
    return out


def theta_bindings(constants, values) -> dict[str, complex]:
    """th1..th10 (constants), xiN = theta_N(z)^2 and xiN_M = theta_N(z) theta_M(z)."""
    out = {f"th{i}": complex(constants[i - 1]) for i in range(1, 17)}
    for i in range(1, 17):
        out[f"xi{i}"] = complex(values[i - 1] ** 2)
        for j in range(i + 1, 17):
            out[f"xi{i}_{j}"] = complex(values[i - 1] * values[j - 1])
    return out


# ------------------------------------------------------------------ sign derivation

# printed anchors: t_{1,2} = k.., t_{1,126} = ik.., t_{6,126} = -ik.., t_{126,136} = k..
SIGN_ANCHORS = {("1", "2"): 1, ("1", "126"): 1, ("6", "126"): -1, ("126", "136"): 1}


def derive_section_signs(constants, values, lam, tol: float = 1e-8) -> dict[str, Any]:
    """Fix the signs of the sections from the bimonomial trope relations.

    Every relation is homogeneous in its three sections, so it determines the
    relative signs s_a s_b of the sections it contains: exactly one of the four
    patterns (1, +-1, +-1) makes it vanish.  These relative signs are
    propagated from the printed anchors through the graph of relations.
    Components without an anchor are fixed at +1 on their first pair and
    reported.  Returns the sign table and the residual check.
    """
    rels = trope_bimonomial_relations()
    base = {p: pair_section(*p, constants, values, 1) for p in all_section_pairs()}
    coeff_env = {"l1": lam[0], "l2": lam[1], "l3": lam[2]}
    edges: dict[tuple[str, str], list[tuple[tuple[str, str], int]]] = {}
    ambiguous = []
    for r in rels:
        pairs = [parse_section_symbol(t.monomial[0]) for t in r.terms]
        scores = {}
        for s2 in (1, -1):
            for s3 in (1, -1):
                env = dict(coeff_env)
                for p, s in zip(pairs, (1, s2, s3)):
                    env[section_symbol(*p)] = base[p] * s
                scores[(s2, s3)] = relative_residual(r.term_values(env))
        best = min(scores, key=scores.get)
        if sorted(scores.values())[1] <= tol:
            ambiguous.append(r.id)
        for p, s in zip(pairs[1:], best):
            edges.setdefault(pairs[0], []).append((p, s))
            edges.setdefault(p, []).append((pairs[0], s))
    used = set(edges)
    signs: dict[tuple[str, str], int] = {}
    seeds = [p for p in SIGN_ANCHORS if p in used] + sorted(used)
    unanchored = []
    conflicts = 0
    for seed in seeds:
        if seed in signs:
            continue
        if seed not in SIGN_ANCHORS:
            unanchored.append(seed)
        signs[seed] = SIGN_ANCHORS.get(seed, 1)
        stack = [seed]
        while stack:
            p = stack.pop()
            for q, rel in edges[p]:
                want = signs[p] * rel
                if q not in signs:
                    signs[q] = want
                    stack.append(q)
                elif signs[q] != want:
                    conflicts += 1
    for a in SIGN_ANCHORS:
        if a in signs and signs[a] != SIGN_ANCHORS[a]:
            conflicts += 1
    env = dict(coeff_env)
    for p in used:
        env[section_symbol(*p)] = base[p] * signs[p]
    worst = max(relative_residual(r.term_values(env)) for r in rels)
    return {
        "signs": {section_symbol(*p): s for p, s in sorted(signs.items())},
        "unanchored_components": [section_symbol(*p) for p in unanchored],
        "ambiguous_relations": ambiguous,
        "conflicts": conflicts,
        "max_residual": worst,
        "consistent": worst <= tol and conflicts == 0,
        "matches_rule": all(signs[p] == section_sign(*p) for p in used),
    }


# ------------------------------------------------------------------ export

def all_families() -> dict[str, list[ConicRelation]]:
    return {
        "mumford-square": mumford_square_relations(),
        "mumford-bimonomial": mumford_bimonomial_relations(),
        "trope-linear": trope_linear_relations(),
        "trope-four-term": trope_four_term_relations(),
        "trope-bimonomial": trope_bimonomial_relations(),
    }


def catalog_json() -> dict[str, Any]:
    return {
        "families": {k: [r.to_json() for r in v] for k, v in all_families().items()},
        "checksums": {k: data_checksum(k) for k in DATA_FILES},
        "trope_dictionary": trope_theta_dictionary(),
        "section_signs": {section_symbol(*p): section_sign(*p) for p in all_section_pairs()},
    }


def dump_catalog(path: str) -> None:
    with open(path, "w") as fh:
        json.dump(catalog_json(), fh, indent=1)


def numeric_sample(tau, z) -> tuple[np.ndarray, np.ndarray]:
    from .theta import theta_constants, theta_values

    return theta_constants(tau), theta_values(z, tau)
