"""Cohomology-ring presentations and fiber integration.

Builds the rings this calculator actually computes in: flag manifolds and
Grassmannians presented by formal inversion of the total-class identity,
projectivized bundles over small bases, and products of even spheres with
square-zero generators.  Fiber integration reads off the coefficient of the
top fiber class in a Leray-Hirsch presentation.

Relations are turned into rewrite rules degree by degree with exact linear
elimination: within each degree the span of all monomial multiples of the
relations is row-reduced against the graded-lex monomial order, and each
pivot not already covered by a lower-degree rule becomes a rule.  The result
is a terminating, confluent system on the finitely many degrees that matter
(everything above the top degree reduces to zero), without any general-purpose
Groebner machinery.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactring import (
    GradedPoly,
    GradedRing,
    InvalidInputError,
    Monomial,
    PresentationError,
    RingPresentation,
    monomials_of_degree,
)

__all__ = [
    "FlagSpec",
    "SphereProductSpec",
    "point_presentation",
    "sphere_product_ring",
    "inverse_series",
    "grassmannian_presentation",
    "flag_presentation",
    "projective_bundle",
    "fiber_integrate",
    "phi_pullback",
    "basis_monomials",
    "dimension_vector",
]

# Families a projectivized bundle accepts as its base.
_BUNDLE_BASE_FAMILIES = ("point", "sphere_product", "grassmannian", "flag")


@dataclass(frozen=True)
class FlagSpec:
    """Block sizes (m_1, ..., m_k), weakly decreasing and positive."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.dims:
            raise InvalidInputError("flag spec needs at least one block")
        for i, m in enumerate(self.dims):
            if m < 1:
                raise InvalidInputError("flag block sizes must be positive")
            if i and self.dims[i - 1] < m:
                raise InvalidInputError("flag block sizes must be weakly decreasing")

    @property
    def total(self) -> int:
        return sum(self.dims)

    def multinomial(self) -> int:
        out = math.factorial(self.total)
        for m in self.dims:
            out //= math.factorial(m)
        return out


@dataclass(frozen=True)
class SphereProductSpec:
    """Even dimensions (2d_1, ..., 2d_r) of a product of spheres."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.dims:
            raise InvalidInputError("sphere product needs at least one factor")
        for d in self.dims:
            if d <= 0 or d % 2 != 0:
                raise InvalidInputError(f"sphere dimension {d} is not a positive even number")


def point_presentation() -> RingPresentation:
    """The one-point base: no generators, one basis element."""
    ring = GradedRing((), ())
    return RingPresentation(
        ring,
        {},
        fiber_basis=(Monomial.one(),),
        family="point",
        top_degree=0,
    )


def sphere_product_ring(
    spec: SphereProductSpec | Sequence[int], names: Sequence[str] | None = None
) -> RingPresentation:
    """Free ring on one generator per sphere modulo squares.

    The fiber basis consists of all square-free monomials; the top class is
    the product of all generators.
    """
    if not isinstance(spec, SphereProductSpec):
        spec = SphereProductSpec(tuple(spec))
    r = len(spec.dims)
    gen_names = tuple(names) if names is not None else tuple(f"y{j}" for j in range(r))
    if len(gen_names) != r:
        raise InvalidInputError("need one name per sphere factor")
    ring = GradedRing(gen_names, spec.dims)
    rules = {Monomial.of(j, 2): ring.zero() for j in range(r)}
    basis = [
        Monomial.make({j: 1 for j in subset})
        for size in range(r + 1)
        for subset in itertools.combinations(range(r), size)
    ]
    basis.sort(key=lambda m: (m.degree(ring), tuple(-e for e in m.dense(ring))))
    top = Monomial.make({j: 1 for j in range(r)})
    basis.remove(top)
    basis.append(top)
    relations = tuple(ring.gen(j) ** 2 for j in range(r))
    return RingPresentation(
        ring,
        rules,
        fiber_basis=tuple(basis),
        relations=relations,
        family="sphere_product",
        top_degree=sum(spec.dims),
    )


def inverse_series(v: int, d: int, ring: GradedRing | None = None) -> list[GradedPoly]:
    """Homogeneous pieces f_1, ..., f_d of ``(1 + y_1 + ... + y_v)^(-1)``.

    f_i has degree 2i; the defining recurrence is
    ``f_i = -(y_1 f_{i-1} + ... + y_v f_{i-v})`` with f_0 = 1.
    """
    if v < 1 or d < 1:
        raise InvalidInputError("need v >= 1 and d >= 1")
    ambient = ring if ring is not None else GradedRing(
        tuple(f"y{i + 1}" for i in range(v)), tuple(2 * (i + 1) for i in range(v))
    )
    if ambient.ngens < v:
        raise InvalidInputError("ambient ring has too few generators")
    pieces: list[GradedPoly] = [ambient.one()]
    for i in range(1, d + 1):
        acc = ambient.zero()
        for j in range(1, min(i, v) + 1):
            acc = acc + ambient.gen(j - 1) * pieces[i - j]
        pieces.append(-acc)
    return pieces[1:]


def _rref_rules(
    ring: GradedRing,
    relations: Sequence[GradedPoly],
    top_degree: int,
) -> dict[Monomial, GradedPoly]:
    """Complete homogeneous relations into a confluent rule set.

    Processes every even degree up to ``top_degree + max generator degree``;
    above the top degree the quotient must vanish, which the elimination
    verifies as it goes.
    """
    if not relations:
        return {}
    for r in relations:
        if r.is_zero() or not r.is_homogeneous():
            raise PresentationError("relations must be nonzero and homogeneous")
    max_gen = max(ring.degrees) if ring.degrees else 0
    limit = top_degree + max_gen
    rules: dict[Monomial, GradedPoly] = {}
    min_degree = min(r.homogeneous_degree() for r in relations)

    for degree in range(min_degree, limit + 1, 2):
        columns = monomials_of_degree(ring, degree)
        if not columns:
            continue
        index = {m: j for j, m in enumerate(columns)}
        rows: list[dict[int, Fraction]] = []
        for relation in relations:
            rel_degree = relation.homogeneous_degree()
            if rel_degree > degree:
                continue
            for multiplier in monomials_of_degree(ring, degree - rel_degree):
                row: dict[int, Fraction] = {}
                for monomial, coeff in relation.terms.items():
                    j = index[multiplier * monomial]
                    value = row.get(j, Fraction(0)) + coeff
                    if value:
                        row[j] = value
                    else:
                        row.pop(j, None)
                if row:
                    rows.append(row)
        pivots = _row_reduce(rows)
        for pivot_col, row in sorted(pivots.items()):
            lhs = columns[pivot_col]
            if any(known.divides(lhs) for known in rules):
                continue
            rhs_terms = {columns[j]: -c for j, c in row.items() if j != pivot_col}
            rules[lhs] = GradedPoly(ring, rhs_terms)
        if degree > top_degree and len(pivots) != len(columns):
            raise PresentationError(
                f"quotient does not vanish above its top degree (degree {degree})"
            )
    return rules


def _row_reduce(rows: list[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Exact reduced row echelon form on sparse rows; pivot column -> row."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        current = dict(row)
        while current:
            col = min(current)
            value = current[col]
            if col in pivots:
                del current[col]
                for j, b in pivots[col].items():
                    if j == col:
                        continue
                    updated = current.get(j, Fraction(0)) - value * b
                    if updated:
                        current[j] = updated
                    else:
                        current.pop(j, None)
            else:
                inv = Fraction(1) / value
                pivots[col] = {j: c * inv for j, c in current.items()}
                break
    # back-substitute so every pivot row is reduced against the others
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        for other_col in sorted(pivots):
            if other_col >= col:
                break
            other = pivots[other_col]
            value = other.get(col)
            if not value:
                continue
            del other[col]
            for j, b in row.items():
                if j == col:
                    continue
                updated = other.get(j, Fraction(0)) - value * b
                if updated:
                    other[j] = updated
                else:
                    other.pop(j, None)
    return pivots


def basis_monomials(pres: RingPresentation, degree: int) -> list[Monomial]:
    """Irreducible monomials of the given degree, largest first."""
    return [
        m for m in monomials_of_degree(pres.ring, degree) if not pres.is_reducible(m)
    ]


def dimension_vector(pres: RingPresentation) -> list[int]:
    """Quotient dimensions in degrees 0, 2, ..., top_degree."""
    if pres.top_degree is None:
        raise InvalidInputError("presentation has no recorded top degree")
    return [
        len(basis_monomials(pres, degree))
        for degree in range(0, pres.top_degree + 1, 2)
    ]


def _flag_machinery(
    dims: tuple[int, ...], gen_names: Sequence[str], block_sizes: Sequence[int]
) -> tuple[GradedRing, list[GradedPoly], int]:
    """Shared construction: relations for U(l)/U(m_1)x...xU(m_k).

    The generators are the Chern classes of the factors 2..k; the first
    block's classes are eliminated through the inverse of the total class.
    Relations are the components of the total-class identity in degrees
    m_1 + 1 through l.
    """
    m1 = dims[0]
    ell = sum(dims)
    degrees: list[int] = []
    for size in block_sizes:
        degrees.extend(2 * (i + 1) for i in range(size))
    ring = GradedRing(tuple(gen_names), tuple(degrees))

    # Total class of the concatenated later factors.
    total = ring.one()
    offset = 0
    for size in block_sizes:
        factor = ring.one()
        for i in range(size):
            factor = factor + ring.gen(offset + i)
        total = total * factor
        offset += size

    # Inverse series of the total class, up to degree m1.
    pieces: list[GradedPoly] = [ring.one()]
    for i in range(1, ell + 1):
        acc = ring.zero()
        for j in range(1, i + 1):
            y_j = total.graded_component(2 * j)
            if y_j.is_zero():
                continue
            acc = acc + y_j * pieces[i - j]
        pieces.append(-acc)

    truncated_inverse = ring.zero()
    for i in range(0, m1 + 1):
        truncated_inverse = truncated_inverse + pieces[i]
    product = truncated_inverse * total

    relations = []
    for degree in range(m1 + 1, ell + 1):
        component = product.graded_component(2 * degree)
        if component.is_zero():
            raise PresentationError("expected a nonzero relation component")
        relations.append(component)

    top_degree = 2 * sum(a * b for a, b in itertools.combinations(dims, 2))
    return ring, relations, top_degree


def _finish_flag_presentation(
    ring: GradedRing,
    relations: list[GradedPoly],
    top_degree: int,
    family: str,
) -> RingPresentation:
    rules = _rref_rules(ring, relations, top_degree)
    probe = RingPresentation(ring, rules, relations=tuple(relations), family=family)
    basis: list[Monomial] = []
    for degree in range(0, top_degree + 1, 2):
        basis.extend(basis_monomials(probe, degree))
    if sum(1 for b in basis if b.degree(ring) == top_degree) != 1:
        raise PresentationError("top degree component is not one-dimensional")
    basis.sort(key=lambda m: (m.degree(ring), tuple(-e for e in m.dense(ring))))
    return RingPresentation(
        ring,
        rules,
        fiber_basis=tuple(basis),
        relations=tuple(relations),
        family=family,
        top_degree=top_degree,
    )


@functools.lru_cache(maxsize=None)
def grassmannian_presentation(m: int, k: int) -> RingPresentation:
    """Cohomology of the Grassmannian U(m+k)/U(m)xU(k) on generators y_1..y_k.

    y_i has degree 2i; the relations are the inverse-series components in
    degrees m+1 through m+k.  Both orders of (m, k) are accepted; they present
    dual Grassmannians with equal dimension vectors.
    """
    if m < 1 or k < 1:
        raise InvalidInputError("need m >= 1 and k >= 1")
    names = tuple(f"y{i + 1}" for i in range(k))
    ring, relations, top_degree = _flag_machinery((m, k), names, (k,))
    return _finish_flag_presentation(ring, relations, top_degree, "grassmannian")


def flag_presentation(spec: FlagSpec | Sequence[int]) -> RingPresentation:
    """Cohomology of the flag manifold U(l)/U(m_1)x...xU(m_k)."""
    if not isinstance(spec, FlagSpec):
        spec = FlagSpec(tuple(spec))
    return _flag_presentation_cached(spec.dims)


@functools.lru_cache(maxsize=None)
def _flag_presentation_cached(dims: tuple[int, ...]) -> RingPresentation:
    if len(dims) == 1:
        # A single block is a point.
        return point_presentation()
    tail = dims[1:]
    if len(dims) == 2:
        names: list[str] = [f"y{i + 1}" for i in range(dims[1])]
    else:
        names = [
            f"y{alpha + 2}_{i + 1}"
            for alpha, size in enumerate(tail)
            for i in range(size)
        ]
    ring, relations, top_degree = _flag_machinery(dims, names, tail)
    return _finish_flag_presentation(ring, relations, top_degree, "flag")


def projective_bundle(
    base: RingPresentation, chern: Sequence[GradedPoly], n: int
) -> RingPresentation:
    """Projectivization of a rank n+1 bundle presented over a small base.

    ``chern`` lists the classes c_1, ..., c_{n+1} of the bundle (zero entries
    allowed).  The hyperplane-type generator ``c`` satisfies the convention
    ``sum_{i=0}^{n+1} c_i c^{n+1-i} = 0`` with c_0 = 1, oriented as the rule
    ``c^{n+1} -> -sum_{i>=1} c_i c^{n+1-i}``.  The fiber basis is 1, c, ...,
    c^n.
    """
    if n < 0:
        raise InvalidInputError("fiber dimension must be nonnegative")
    if base.family not in _BUNDLE_BASE_FAMILIES:
        raise InvalidInputError(
            f"base family {base.family!r} is not supported for bundle constructions"
        )
    if len(chern) != n + 1:
        raise InvalidInputError(f"need exactly {n + 1} Chern classes, got {len(chern)}")
    for i, c_i in enumerate(chern, start=1):
        if c_i.ring != base.ring:
            raise InvalidInputError(f"c_{i} does not live in the base ring")
        if not c_i.is_zero() and (
            not c_i.is_homogeneous() or c_i.homogeneous_degree() != 2 * i
        ):
            raise InvalidInputError(f"c_{i} must be homogeneous of degree {2 * i}")

    base_ring = base.ring
    ring = GradedRing(("c",) + base_ring.generators, (2,) + base_ring.degrees)
    shift = {i: i + 1 for i in range(base_ring.ngens)}

    rules: dict[Monomial, GradedPoly] = {}
    for lhs, rhs in base.rules.items():
        rules[Monomial.make({shift[i]: e for i, e in lhs.exps})] = rhs.remap(ring, shift)
    replacement = ring.zero()
    for i, c_i in enumerate(chern, start=1):
        if c_i.is_zero():
            continue
        replacement = replacement - c_i.remap(ring, shift) * (ring.gen(0) ** (n + 1 - i))
    rules[Monomial.of(0, n + 1)] = replacement

    basis = tuple(Monomial.of(0, j) for j in range(n + 1))
    relations = tuple(r.remap(ring, shift) for r in base.relations)
    relations = relations + ((ring.gen(0) ** (n + 1)) - replacement,)
    base_top = base.top_degree if base.top_degree is not None else 0
    return RingPresentation(
        ring,
        rules,
        fiber_basis=basis,
        relations=relations,
        family="projective_bundle",
        top_degree=base_top + 2 * n,
    )


def fiber_integrate(p: GradedPoly, pres: RingPresentation) -> GradedPoly:
    """Gysin pushforward: base coefficient of the top fiber class of ``p``."""
    return pres.fiber_coefficient(p, pres.top_fiber_class())


def phi_pullback(k: int) -> GradedPoly:
    """Product of the weight forms of the standard commuting circles.

    In the square-zero ring of k+1 two-spheres this is
    ``(y_0 + ... + y_k)(-y_0 - y_1 + y_2 + ... + y_k) *
    prod_{j=2..k} (-j y_j + sum_{i>j} y_i)``, reduced to normal form.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    pres = sphere_product_ring([2] * (k + 1))
    ring = pres.ring
    y = ring.gens()
    first = sum(y[1:], y[0])
    second = -y[0] - y[1]
    for i in range(2, k + 1):
        second = second + y[i]
    product = first * second
    for j in range(2, k + 1):
        factor = y[j].scale(-j)
        for i in range(j + 1, k + 1):
            factor = factor + y[i]
        product = product * factor
    return pres.normal_form(product)
