"""Degree-wise linear algebra over presented rings and the homotopy criteria.

Everything here reduces to exact linear algebra in a single degree: bases of
quotient components, ideal membership against a list of homogeneous
generators, the square and cube criteria for detecting evaluation images and
higher products, and the hard Lefschetz predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactring import (
    GradedPoly,
    InvalidInputError,
    Monomial,
    RingPresentation,
)
from .flagcoh import basis_monomials

__all__ = [
    "DegreeBasis",
    "ObstructionInput",
    "degree_basis",
    "ideal_membership",
    "pairing_kernel",
    "whitehead_square_criterion",
    "whitehead_cube_criterion",
    "hard_lefschetz_check",
    "HYPOTHESIS_NOTE",
]

# The cube criterion checks vanishing of the degree-3 component, a homological
# stand-in for the homotopy-theoretic hypothesis it replaces.
HYPOTHESIS_NOTE = "homological_proxy"


@dataclass(frozen=True)
class DegreeBasis:
    """Ordered basis of normal-form monomials for one degree component."""

    degree: int
    monomials: tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.monomials)


def degree_basis(pres: RingPresentation, d: int) -> DegreeBasis:
    """Basis of the degree-d component: the irreducible monomials of degree d."""
    if d < 0:
        return DegreeBasis(d, ())
    return DegreeBasis(d, tuple(basis_monomials(pres, d)))


def _coordinates(
    p: GradedPoly, basis: Sequence[Monomial]
) -> list[Fraction]:
    index = {m: j for j, m in enumerate(basis)}
    vector = [Fraction(0)] * len(basis)
    for monomial, coeff in p.terms.items():
        if monomial not in index:
            raise InvalidInputError("polynomial leaves the expected degree component")
        vector[index[monomial]] = coeff
    return vector


def _in_span(vectors: list[list[Fraction]], target: list[Fraction]) -> bool:
    """Exact membership of target in the row span, by elimination."""
    width = len(target)
    pivots: dict[int, list[Fraction]] = {}
    for row in vectors:
        current = list(row)
        for col in range(width):
            value = current[col]
            if not value:
                continue
            if col in pivots:
                current = [a - value * b for a, b in zip(current, pivots[col])]
            else:
                inv = Fraction(1) / value
                pivots[col] = [a * inv for a in current]
                break
    current = list(target)
    for col in range(width):
        value = current[col]
        if not value:
            continue
        if col not in pivots:
            return False
        current = [a - value * b for a, b in zip(current, pivots[col])]
    return all(not v for v in current)


def ideal_membership(
    z: GradedPoly, gens: Sequence[GradedPoly], pres: RingPresentation
) -> bool:
    """Decide whether ``z`` lies in the ideal the generators span, degree-wise.

    ``z`` and the generators must be homogeneous; membership is a linear
    solve against all products of a generator with a monomial of the
    complementary degree.
    """
    if z.ring != pres.ring:
        raise InvalidInputError("z does not live in the presented ring")
    if not z.is_homogeneous():
        raise InvalidInputError("z must be homogeneous")
    reduced = pres.normal_form(z)
    if reduced.is_zero():
        return True
    d = reduced.homogeneous_degree()
    basis = basis_monomials(pres, d)
    target = _coordinates(reduced, basis)
    rows: list[list[Fraction]] = []
    for g in gens:
        if g.ring != pres.ring:
            raise InvalidInputError("ideal generator in a different ring")
        g_reduced = pres.normal_form(g)
        if g_reduced.is_zero():
            continue
        if not g_reduced.is_homogeneous():
            raise InvalidInputError("ideal generators must be homogeneous")
        e = g_reduced.homogeneous_degree()
        if e > d:
            continue
        for multiplier in basis_monomials(pres, d - e):
            product = pres.normal_form(
                g_reduced * GradedPoly(pres.ring, {multiplier: Fraction(1)})
            )
            rows.append(_coordinates(product, basis))
    return _in_span(rows, target)


@dataclass(frozen=True)
class ObstructionInput:
    """Ring of the space, the degree-2 pairing functional, and the test class.

    ``alpha_pairing`` assigns a rational to each degree-2 basis monomial (by
    generator name); unlisted generators pair to zero.  ``c`` must pair
    nontrivially.
    """

    pres: RingPresentation
    alpha_pairing: Mapping[str, Fraction | int]
    c: GradedPoly

    def __post_init__(self) -> None:
        if self.c.ring != self.pres.ring:
            raise InvalidInputError("c does not live in the presented ring")
        if self.c.is_zero() or not self.c.is_homogeneous() or self.c.homogeneous_degree() != 2:
            raise InvalidInputError("c must be homogeneous of degree 2")
        if not any(Fraction(v) for v in self.alpha_pairing.values()):
            raise InvalidInputError("the pairing functional is identically zero")

    def pairing_value(self, p: GradedPoly) -> Fraction:
        reduced = self.pres.normal_form(p)
        total = Fraction(0)
        ring = self.pres.ring
        for monomial, coeff in reduced.terms.items():
            if monomial.degree(ring) != 2:
                raise InvalidInputError("pairing is only defined in degree 2")
            if monomial.total_exponent() != 1:
                raise InvalidInputError("degree-2 monomial is not a single generator")
            name = ring.generators[monomial.exps[0][0]]
            total += coeff * Fraction(self.alpha_pairing.get(name, 0))
        return total


def pairing_kernel(data: ObstructionInput) -> list[GradedPoly]:
    """Basis of the kernel of the pairing inside the degree-2 component."""
    pres = data.pres
    basis = basis_monomials(pres, 2)
    values = [
        data.pairing_value(GradedPoly(pres.ring, {m: Fraction(1)})) for m in basis
    ]
    reference = next((j for j, v in enumerate(values) if v), None)
    kernel: list[GradedPoly] = []
    for j, monomial in enumerate(basis):
        if j == reference:
            continue
        terms = {monomial: Fraction(1)}
        if values[j]:
            assert reference is not None
            terms[basis[reference]] = -values[j] / values[reference]
        kernel.append(GradedPoly(pres.ring, terms))
    return kernel


def whitehead_square_criterion(data: ObstructionInput) -> bool:
    """True when the square of the pairing-positive class dies in the kernel ideal.

    The answer does not depend on which class with nonzero pairing is chosen:
    rescaling c and shifting it by kernel elements do not change the verdict.
    """
    if data.pairing_value(data.c) == 0:
        raise InvalidInputError("c must pair nontrivially against alpha")
    kernel = pairing_kernel(data)
    return ideal_membership(data.c ** 2, kernel, data.pres)


def whitehead_cube_criterion(data: ObstructionInput) -> bool:
    """True when the cube of the class lies in the kernel ideal.

    Requires the degree-3 component of the ring to vanish; this homological
    proxy stands in for the homotopy hypothesis and is what is actually
    checked (see HYPOTHESIS_NOTE).
    """
    if data.pairing_value(data.c) == 0:
        raise InvalidInputError("c must pair nontrivially against alpha")
    if degree_basis(data.pres, 3).dimension != 0:
        raise InvalidInputError("degree-3 component is nonzero; cube criterion not applicable")
    kernel = pairing_kernel(data)
    return ideal_membership(data.c ** 3, kernel, data.pres)


def hard_lefschetz_check(pres: RingPresentation, a: GradedPoly, n: int) -> bool:
    """Does multiplication by a^k map degree n-k isomorphically onto degree n+k?

    ``n`` is half the top degree of the presentation; all k from 1 to n are
    checked, with odd or empty components passing vacuously only when both
    sides are zero-dimensional.
    """
    if a.ring != pres.ring:
        raise InvalidInputError("a does not live in the presented ring")
    if a.is_zero() or not a.is_homogeneous() or a.homogeneous_degree() != 2:
        raise InvalidInputError("a must be homogeneous of degree 2")
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    for k in range(1, n + 1):
        source = basis_monomials(pres, n - k)
        targetb = basis_monomials(pres, n + k)
        if len(source) != len(targetb):
            return False
        if not source:
            continue
        power = pres.normal_form(a ** k)
        rows = []
        for monomial in source:
            image = pres.normal_form(
                power * GradedPoly(pres.ring, {monomial: Fraction(1)})
            )
            rows.append(_coordinates(image, targetb))
        if not _full_rank(rows):
            return False
    return True


def _full_rank(rows: list[list[Fraction]]) -> bool:
    width = len(rows[0]) if rows else 0
    pivots: dict[int, list[Fraction]] = {}
    for row in rows:
        current = list(row)
        for col in range(width):
            value = current[col]
            if not value:
                continue
            if col in pivots:
                current = [a - value * b for a, b in zip(current, pivots[col])]
            else:
                inv = Fraction(1) / value
                pivots[col] = [a * inv for a in current]
                break
    return len(pivots) == len(rows)
