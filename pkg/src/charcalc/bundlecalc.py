"""Splitting-principle Chern calculus for formal bundle expressions.

Bundle expressions are syntax trees over universal, trivial, dual, sum,
tensor and second-exterior-power constructors.  Each distinct universal leaf
owns a disjoint block of degree-2 root variables; a leaf that appears several
times in one expression (by object identity, or by name in the text grammar)
shares its block across occurrences.  Chern classes come from the graded
components of the product of ``1 + root`` over all roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactring import (
    CharcalcError,
    GradedPoly,
    GradedRing,
    InvalidInputError,
    Rational,
)
from .symfun import sigma_top_coefficient, to_elementary

__all__ = [
    "EvaluationModelError",
    "BundleExpr",
    "Universal",
    "Trivial",
    "Dual",
    "Sum",
    "Tensor",
    "Lambda2",
    "chern_roots",
    "chern_class",
    "total_chern_class",
    "sphere_eval",
    "parse_bundle_expr",
]


class EvaluationModelError(CharcalcError):
    """Sphere pairing is only defined for expressions over one universal leaf."""


class BundleExpr:
    """Base class for bundle expression nodes."""

    @property
    def rank(self) -> int:
        raise NotImplementedError


@dataclass(eq=False)
class Universal(BundleExpr):
    """Universal rank-m bundle; identity of the node identifies the root block."""

    m: int
    name: str | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidInputError("universal bundle rank must be positive")

    @property
    def rank(self) -> int:
        return self.m


@dataclass(frozen=True)
class Trivial(BundleExpr):
    r: int

    def __post_init__(self) -> None:
        if self.r < 0:
            raise InvalidInputError("trivial bundle rank must be nonnegative")

    @property
    def rank(self) -> int:
        return self.r


@dataclass(frozen=True)
class Dual(BundleExpr):
    inner: BundleExpr

    @property
    def rank(self) -> int:
        return self.inner.rank


@dataclass(frozen=True)
class Sum(BundleExpr):
    left: BundleExpr
    right: BundleExpr

    @property
    def rank(self) -> int:
        return self.left.rank + self.right.rank


@dataclass(frozen=True)
class Tensor(BundleExpr):
    left: BundleExpr
    right: BundleExpr

    @property
    def rank(self) -> int:
        return self.left.rank * self.right.rank


@dataclass(frozen=True)
class Lambda2(BundleExpr):
    inner: BundleExpr

    @property
    def rank(self) -> int:
        r = self.inner.rank
        return r * (r - 1) // 2


def universal_leaves(expr: BundleExpr) -> list[Universal]:
    """Distinct universal leaves in first-visit order (identity-based)."""
    seen: list[Universal] = []

    def walk(node: BundleExpr) -> None:
        if isinstance(node, Universal):
            if not any(node is leaf for leaf in seen):
                seen.append(node)
        elif isinstance(node, (Dual, Lambda2)):
            walk(node.inner)
        elif isinstance(node, (Sum, Tensor)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Trivial):
            return
        else:
            raise InvalidInputError(f"unknown bundle node {node!r}")

    walk(expr)
    return seen


def root_ring(expr: BundleExpr) -> tuple[GradedRing, dict[int, int]]:
    """Ambient ring of root variables and the block offset per leaf (by id)."""
    leaves = universal_leaves(expr)
    total = sum(leaf.m for leaf in leaves)
    if total == 0:
        ring = GradedRing(("t1",), (2,))
        return ring, {}
    ring = GradedRing(tuple(f"t{i + 1}" for i in range(total)), (2,) * total)
    offsets: dict[int, int] = {}
    position = 0
    for leaf in leaves:
        offsets[id(leaf)] = position
        position += leaf.m
    return ring, offsets


def chern_roots(expr: BundleExpr) -> list[GradedPoly]:
    """Chern roots as degree-2 linear forms; length equals the rank."""
    ring, offsets = root_ring(expr)

    def roots_of(node: BundleExpr) -> list[GradedPoly]:
        if isinstance(node, Universal):
            start = offsets[id(node)]
            return [ring.gen(start + i) for i in range(node.m)]
        if isinstance(node, Trivial):
            return [ring.zero() for _ in range(node.r)]
        if isinstance(node, Dual):
            return [-r for r in roots_of(node.inner)]
        if isinstance(node, Sum):
            return roots_of(node.left) + roots_of(node.right)
        if isinstance(node, Tensor):
            left = roots_of(node.left)
            right = roots_of(node.right)
            return [a + b for a in left for b in right]
        if isinstance(node, Lambda2):
            inner = roots_of(node.inner)
            return [
                inner[i] + inner[j]
                for i in range(len(inner))
                for j in range(i + 1, len(inner))
            ]
        raise InvalidInputError(f"unknown bundle node {node!r}")

    return roots_of(expr)


def total_chern_class(expr: BundleExpr, max_degree: int) -> GradedPoly:
    """Product of ``1 + root`` truncated above ``max_degree`` (an even bound)."""
    roots = chern_roots(expr)
    if not roots:
        ring, _ = root_ring(expr)
        return ring.one()
    ring = roots[0].ring
    total = ring.one()
    for root in roots:
        total = (total * (ring.one() + root)).truncate(max_degree)
    return total


def chern_class(expr: BundleExpr, k: int) -> GradedPoly:
    """k-th Chern class: the degree-2k part of the total class; zero past the rank."""
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    if k == 0:
        ring, _ = root_ring(expr)
        return ring.one()
    return total_chern_class(expr, 2 * k).graded_component(2 * k)


def sphere_eval(expr: BundleExpr, k: int) -> Rational:
    """Pair ``c_k`` with the spherical generator of the single universal leaf.

    Normalized so that the rank-4 universal bundle pairs to 6 in degree 8;
    concretely ``(k-1)!`` times the coefficient of sigma_k in the elementary
    expression of the class.
    """
    leaves = universal_leaves(expr)
    if len(leaves) != 1:
        raise EvaluationModelError(
            "sphere pairing needs an expression over exactly one universal leaf"
        )
    if k < 1:
        raise InvalidInputError("k must be positive")
    v = leaves[0].m
    cls = chern_class(expr, k)
    if cls.is_zero():
        return Fraction(0)
    elem = to_elementary(cls, v)
    return Fraction(math.factorial(k - 1)) * sigma_top_coefficient(elem, k)


def parse_bundle_expr(text: str) -> BundleExpr:
    """Parse the text grammar: ``E4``, ``dual(X)``, ``sum(X,Y)``, ``tensor(X,Y)``,
    ``lambda2(X)``, ``triv(r)``.  Occurrences of the same ``E<m>`` token share
    one universal leaf."""
    source = text.strip()
    pos = 0
    leaves: dict[str, Universal] = {}

    def error(message: str) -> InvalidInputError:
        return InvalidInputError(f"{message} at position {pos} in {text!r}")

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(source) and source[pos].isspace():
            pos += 1

    def expect(ch: str) -> None:
        nonlocal pos
        skip_ws()
        if pos >= len(source) or source[pos] != ch:
            raise error(f"expected {ch!r}")
        pos += 1

    def parse_int() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(source) and source[pos].isdigit():
            pos += 1
        if start == pos:
            raise error("expected an integer")
        return int(source[start:pos])

    def parse_node() -> BundleExpr:
        nonlocal pos
        skip_ws()
        if pos >= len(source):
            raise error("unexpected end of expression")
        start = pos
        while pos < len(source) and (source[pos].isalnum() or source[pos] == "_"):
            pos += 1
        word = source[start:pos]
        if not word:
            raise error("expected a bundle expression")
        if word[0] == "E" and word[1:].isdigit():
            if word not in leaves:
                leaves[word] = Universal(int(word[1:]), name=word)
            return leaves[word]
        if word == "triv":
            expect("(")
            r = parse_int()
            expect(")")
            return Trivial(r)
        if word == "dual":
            expect("(")
            inner = parse_node()
            expect(")")
            return Dual(inner)
        if word == "lambda2":
            expect("(")
            inner = parse_node()
            expect(")")
            return Lambda2(inner)
        if word in ("sum", "tensor"):
            expect("(")
            args = [parse_node()]
            skip_ws()
            while pos < len(source) and source[pos] == ",":
                pos += 1
                args.append(parse_node())
                skip_ws()
            expect(")")
            if len(args) < 2:
                raise error(f"{word} needs at least two arguments")
            out = args[0]
            for arg in args[1:]:
                out = Sum(out, arg) if word == "sum" else Tensor(out, arg)
            return out
        raise error(f"unknown constructor {word!r}")

    node = parse_node()
    skip_ws()
    if pos != len(source):
        raise error("trailing input")
    return node
