"""Relations stored as text and evaluated over either scalar domain.

A relation is written as a plain arithmetic expression that equals zero, e.g.
``"th1*th2*xi3_4 - th3*th4*xi1_2 + th8*th10*xi13_16"``.  Each additive term is
split into a coefficient (constants, theta constants ``thN``, Rosenhain roots
``l1 l2 l3``) and a monomial in section symbols (``xiN``, ``xiN_M``, ``TN``,
``tN_M``).
"""

from __future__ import annotations

import ast
import operator
import re
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .scalars import Scalar, UnboundSymbolError

SECTION = re.compile(r"^(xi\d+(_\d+)?|T\d+|t\d+_\d+|t\d+)$")

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def evaluate(node: ast.AST, bindings: Mapping[str, Scalar]) -> Scalar:
    """Evaluate a parsed arithmetic expression."""
    if isinstance(node, ast.Expression):
        return evaluate(node.body, bindings)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        try:
            return bindings[node.id]
        except KeyError:
            raise UnboundSymbolError(f"unbound symbol {node.id!r}") from None
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -evaluate(node.operand, bindings)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exponent = node.right
            if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)):
                raise ValueError("only integer powers are supported")
            return evaluate(node.left, bindings) ** exponent.value
        op = _BINOPS.get(type(node.op))
        if op is not None:
            return op(evaluate(node.left, bindings), evaluate(node.right, bindings))
    if isinstance(node, ast.Constant) and node.value == 1j:
        return 1j
    if isinstance(node, ast.Constant) and isinstance(node.value, complex):
        return node.value
    raise ValueError(f"unsupported expression node: {ast.dump(node)}")


def names(node: ast.AST) -> set[str]:
    return {n.id for n in ast.walk(node) if isinstance(n, ast.Name)}


def _additive_terms(node: ast.AST, sign: int = 1) -> list[tuple[int, ast.AST]]:
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
        right_sign = sign if isinstance(node.op, ast.Add) else -sign
        return _additive_terms(node.left, sign) + _additive_terms(node.right, right_sign)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return _additive_terms(node.operand, -sign)
    return [(sign, node)]


def _factors(node: ast.AST) -> list[ast.AST]:
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        return _factors(node.left) + _factors(node.right)
    return [node]


@dataclass(frozen=True)
class Term:
    coefficient: str
    monomial: tuple[str, ...]

    def to_json(self) -> dict[str, Any]:
        return {"coefficient": self.coefficient, "monomial": list(self.monomial)}


@dataclass(frozen=True)
class ConicRelation:
    """A short linear relation between section monomials."""

    id: str
    text: str
    generators: str
    source: str = ""

    @property
    def terms(self) -> tuple[Term, ...]:
        return _split_terms(self.text)

    @property
    def symbols(self) -> set[str]:
        return names(ast.parse(self.text, mode="eval"))

    @property
    def sections(self) -> set[str]:
        return {s for s in self.symbols if SECTION.match(s)}

    def term_values(self, bindings: Mapping[str, Scalar]) -> list[Scalar]:
        out = []
        for term in self.terms:
            value = evaluate(ast.parse(term.coefficient, mode="eval"), bindings)
            for s in term.monomial:
                try:
                    value = value * bindings[s]
                except KeyError:
                    raise UnboundSymbolError(f"unbound symbol {s!r}") from None
            out.append(value)
        return out

    def value(self, bindings: Mapping[str, Scalar]) -> Scalar:
        return sum(self.term_values(bindings), start=Fraction(0))

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "relation": self.text,
            "generators": self.generators,
            "terms": [t.to_json() for t in self.terms],
            "source": self.source,
        }


_TERM_CACHE: dict[str, tuple[Term, ...]] = {}


def _split_terms(text: str) -> tuple[Term, ...]:
    cached = _TERM_CACHE.get(text)
    if cached is not None:
        return cached
    tree = ast.parse(text, mode="eval").body
    terms = []
    for sign, node in _additive_terms(tree):
        coeff_parts, monomial = [], []
        for f in _factors(node):
            if isinstance(f, ast.Name) and SECTION.match(f.id):
                monomial.append(f.id)
            else:
                coeff_parts.append(ast.unparse(f))
        coeff = "*".join(f"({c})" if "+" in c or "-" in c else c for c in coeff_parts) or "1"
        if sign < 0:
            coeff = f"-{coeff}" if coeff_parts else "-1"
        terms.append(Term(coeff, tuple(monomial)))
    result = tuple(terms)
    _TERM_CACHE[text] = result
    return result
