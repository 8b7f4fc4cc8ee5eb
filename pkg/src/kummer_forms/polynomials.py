"""Sparse multivariate polynomials over the exact or numeric scalar domain.

Only what the normal forms need: ring operations, evaluation, substitution of
polynomials for variables, partial derivatives and coefficient comparison.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any

from .scalars import Scalar, format_scalar, is_exact, parse_scalar

Exponent = tuple[int, ...]


def _is_zero(c: Scalar) -> bool:
    return c == 0


class Poly:
    """Polynomial in ``len(names)`` variables stored as {exponent: coefficient}."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.names = tuple(names)
        self.terms: dict[Exponent, Scalar] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.names):
                raise ValueError("exponent length does not match variable count")
            if not _is_zero(c):
                self.terms[tuple(e)] = c

    @property
    def nvars(self) -> int:
        return len(self.names)

    # constructors

    @classmethod
    def constant(cls, names: Sequence[str], value: Scalar) -> Poly:
        return cls(names, {(0,) * len(names): value})

    @classmethod
    def variable(cls, names: Sequence[str], index: int) -> Poly:
        e = [0] * len(names)
        e[index] = 1
        return cls(names, {tuple(e): Fraction(1)})

    @classmethod
    def variables(cls, names: Sequence[str]) -> list[Poly]:
        return [cls.variable(names, i) for i in range(len(names))]

    @classmethod
    def linear(cls, names: Sequence[str], coefficients: Sequence[Scalar]) -> Poly:
        out = {}
        for i, c in enumerate(coefficients):
            e = [0] * len(names)
            e[i] = 1
            out[tuple(e)] = c
        return cls(names, out)

    # arithmetic

    def _coerce(self, other: Any) -> Poly:
        if isinstance(other, Poly):
            if other.names != self.names:
                raise ValueError("polynomials over different variables")
            return other
        return Poly.constant(self.names, other)

    def __add__(self, other: Any) -> Poly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.names, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> Poly:
        if not isinstance(other, Poly):
            return Poly(self.names, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.names, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> Poly:
        return Poly(self.names, {e: c / scalar for e, c in self.terms.items()})

    def __pow__(self, n: int) -> Poly:
        result = Poly.constant(self.names, Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.to_string()})"

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(e) for e in self.terms}
        if degree is not None:
            return degrees <= {degree}
        return len(degrees) <= 1

    def coefficient(self, exponent: Exponent) -> Scalar:
        return self.terms.get(tuple(exponent), Fraction(0))

    def __call__(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total: Scalar = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def term_values(self, point: Sequence[Scalar]) -> list[Scalar]:
        """Individual monomial contributions at ``point`` (for relative residuals)."""
        out = []
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            out.append(term)
        return out

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Replace variable i by ``images[i]`` (all over a common variable set)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].names
        powers: list[dict[int, Poly]] = [{} for _ in images]

        def power(i: int, k: int) -> Poly:
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        out = Poly(target)
        for e, c in self.terms.items():
            term = Poly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def partial(self, index: int) -> Poly:
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                e2 = list(e)
                e2[index] -= 1
                out[tuple(e2)] = c * k
        return Poly(self.names, out)

    def map_coefficients(self, fn) -> Poly:
        return Poly(self.names, {e: fn(c) for e, c in self.terms.items()})

    def exponents(self) -> list[Exponent]:
        return sorted(self.terms, reverse=True)

    # comparison up to scale

    def proportionality(self, other: Poly, tol: float = 0.0) -> Scalar | None:
        """Return c with self == c * other, or None if no such c exists."""
        keys = set(self.terms) | set(other.terms)
        if not keys:
            return Fraction(1)
        pivot = max(other.terms, key=lambda e: abs(other.terms[e]), default=None)
        if pivot is None:
            return None
        c = self.coefficient(pivot) / other.terms[pivot]
        scale = max(max((abs(v) for v in self.terms.values()), default=0), abs(c) * max(abs(v) for v in other.terms.values()))
        for e in keys:
            diff = self.coefficient(e) - c * other.coefficient(e)
            if tol == 0 and is_exact(diff):
                if diff != 0:
                    return None
            elif abs(diff) > tol * max(scale, 1e-300):
                return None
        return c

    def relative_difference(self, other: Poly) -> float:
        """Max coefficient difference after scaling ``other`` to match at its pivot."""
        pivot = max(other.terms, key=lambda e: abs(other.terms[e]))
        c = self.coefficient(pivot) / other.terms[pivot]
        keys = set(self.terms) | set(other.terms)
        scale = max(abs(v) for v in self.terms.values())
        return max(abs(self.coefficient(e) - c * other.coefficient(e)) for e in keys) / scale

    # serialisation

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            coeff = self.terms[e]
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return " + ".join(parts)

    def to_json(self) -> dict[str, Any]:
        return {
            "variables": list(self.names),
            "degree": self.degree(),
            "terms": [
                {"exponent": list(e), "coefficient": format_scalar(self.terms[e])}
                for e in self.exponents()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Poly:
        return cls(
            data["variables"],
            {tuple(t["exponent"]): parse_scalar(t["coefficient"]) for t in data["terms"]},
        )


def monomials(nvars: int, degree: int) -> list[Exponent]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def linear_images(names: Sequence[str], matrix: Iterable[Sequence[Scalar]]) -> list[Poly]:
    """Linear forms sum_j M[i][j] * x_j for each row i."""
    return [Poly.linear(names, row) for row in matrix]
