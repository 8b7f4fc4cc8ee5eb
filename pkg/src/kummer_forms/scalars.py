"""Scalar domains and the random-point identity-testing contract.

Two domains are supported throughout the package:

* exact: ``fractions.Fraction`` (always normalised, exact equality)
* numeric: Python ``complex`` (double precision, compared with a tolerance)

Most constructions are written once with ordinary arithmetic operators and run
unchanged over either domain.
"""

from __future__ import annotations

import cmath
import math
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Protocol, Union

Scalar = Union[Fraction, complex]

DEFAULT_TOLERANCE = 1e-9


class DomainError(ValueError):
    """Raised when a construction is undefined for the given input."""


class UnboundSymbolError(DomainError):
    pass


def to_exact(value: Any) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    raise DomainError(f"not a rational number: {value!r}")


def to_numeric(value: Any) -> complex:
    out = complex(value)
    check_finite(out)
    return out


def is_exact(value: Any) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def check_finite(value: Scalar) -> Scalar:
    if isinstance(value, complex) and not cmath.isfinite(value):
        raise DomainError("non-finite numeric value")
    if isinstance(value, float) and not math.isfinite(value):
        raise DomainError("non-finite numeric value")
    return value


def is_zero(value: Scalar, tol: float = 0.0) -> bool:
    if is_exact(value):
        return value == 0
    return abs(value) <= tol


def sqrt_exact(value: Fraction) -> Fraction | None:
    """Return the rational square root of ``value`` if it exists."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_scalar(value: Scalar) -> Scalar:
    """Square root in the domain of ``value``; exact mode needs a perfect square."""
    if is_exact(value):
        root = sqrt_exact(Fraction(value))
        if root is None:
            raise DomainError(f"{value} is not a rational square; use numeric mode")
        return root
    return cmath.sqrt(value)


def format_scalar(value: Scalar) -> str | list[float]:
    """JSON form: ``"p/q"`` for exact values, ``[re, im]`` for numeric ones."""
    if is_exact(value):
        return str(Fraction(value))
    value = complex(value)
    return [value.real, value.imag]


def parse_scalar(data: str | Sequence[float] | int) -> Scalar:
    if isinstance(data, (str, int)):
        return to_exact(data)
    re, im = data
    return complex(re, im)


def random_rational(rng: random.Random, height: int) -> Fraction:
    """A random rational of height at most ``height`` (nonzero numerator)."""
    while True:
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        if num:
            return Fraction(num, den)


def random_rational_point(seed: int, arity: int, height_bound: int) -> tuple[Fraction, ...]:
    """Pairwise distinct random rationals avoiding 0 and 1, reproducible by seed."""
    if height_bound < 7:
        raise DomainError("height bound must be at least 7")
    rng = random.Random(f"rational-point:{seed}:{arity}:{height_bound}")
    while True:
        point = tuple(random_rational(rng, height_bound) for _ in range(arity))
        if len(set(point)) == arity and not any(x in (0, 1) for x in point):
            return point


def rational_points(seed: int, count: int, arity: int, height_bound: int = 10**4) -> list[tuple[Fraction, ...]]:
    return [random_rational_point(seed * 100003 + k, arity, height_bound) for k in range(count)]


def relative_residual(terms: Sequence[Scalar]) -> float:
    """|sum| divided by the largest term magnitude (0 if every term is 0)."""
    total = sum(terms, start=0)
    scale = max((abs(t) for t in terms), default=0.0)
    if scale == 0:
        return float(abs(total))
    return float(abs(total)) / float(scale)


class EvaluableRelation(Protocol):
    id: str

    def term_values(self, bindings: Mapping[str, Scalar]) -> list[Scalar]: ...


@dataclass(frozen=True)
class IdentityCheckReport:
    relation_id: str
    domain: str
    trials: int
    max_residual: float
    verdict: str
    witness: dict[str, Any] | None = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict[str, Any]:
        out = {
            "relation": self.relation_id,
            "domain": self.domain,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check_identity(
    relation: EvaluableRelation,
    bindings: Mapping[str, Scalar] | Iterable[Mapping[str, Scalar]],
    tolerance: float = DEFAULT_TOLERANCE,
) -> IdentityCheckReport:
    """Evaluate ``relation`` at one or more bindings.

    Exact trials pass only on a literal zero; numeric trials compare the
    relative residual against ``tolerance``.
    """
    trials = [bindings] if isinstance(bindings, Mapping) else list(bindings)
    domain = "exact"
    worst = 0.0
    witness = None
    failed = False
    for binding in trials:
        values = relation.term_values(binding)
        for v in values:
            check_finite(v)
        if all(is_exact(v) for v in values):
            total = sum(values, start=Fraction(0))
            residual = float(abs(total))
            bad = total != 0
        else:
            domain = "numeric"
            residual = relative_residual(values)
            bad = residual > tolerance
        if residual > worst or (bad and witness is None):
            worst = max(worst, residual)
        if bad and witness is None:
            witness = {k: format_scalar(v) for k, v in sorted(binding.items())}
        failed = failed or bad
    return IdentityCheckReport(
        relation_id=relation.id,
        domain=domain,
        trials=len(trials),
        max_residual=worst,
        verdict="fail" if failed else "pass",
        witness=witness,
    )
