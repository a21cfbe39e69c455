"""Exact circle-action integrals on complex projective space.

A weighted circle action on CP^n is encoded by its integer weights on the
homogeneous coordinates.  In moment coordinates the normalized Hamiltonian is
an affine function on the standard simplex, and every integral this module
computes reduces to the closed form for monomial integrals over the simplex.

Normalization: the symplectic volume is one, i.e. the integral of a function
f against the volume form equals n! times its plain integral over the
simplex.  Outputs carry this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactring import (
    CharcalcError,
    GradedPoly,
    GradedRing,
    InvalidInputError,
    Rational,
)

__all__ = [
    "TrivialActionError",
    "WeightedCircleAction",
    "simplex_ring",
    "simplex_integral",
    "normalized_moment",
    "moment_integral",
    "mu_of_circle",
    "su_weight_vector",
    "su_product_integral",
    "nu1_at_fixed_point",
]


class TrivialActionError(CharcalcError):
    """All weights agree, so the induced action on CP^n is trivial."""


@dataclass(frozen=True)
class WeightedCircleAction:
    """Circle acting on CP^n with integer weights (w_0, ..., w_n)."""

    n: int
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError("need n >= 1")
        if len(self.weights) != self.n + 1:
            raise InvalidInputError(f"need {self.n + 1} weights, got {len(self.weights)}")
        if len(set(self.weights)) == 1:
            raise TrivialActionError("all weights are equal; the action is trivial")

    def mean_weight(self) -> Fraction:
        return Fraction(sum(self.weights), self.n + 1)


def simplex_ring(n: int) -> GradedRing:
    """Coordinate ring of the moment simplex: x_1, ..., x_n."""
    if n < 1:
        raise InvalidInputError("need n >= 1")
    return GradedRing(tuple(f"x{i + 1}" for i in range(n)), (2,) * n)


def simplex_integral(alpha: Sequence[int], n: int) -> Rational:
    """Exact monomial integral over the standard simplex.

    ``integral of x^alpha over {x_i >= 0, sum x_i <= 1}`` equals
    ``prod(alpha_i!) / (n + |alpha|)!``.
    """
    if n < 1:
        raise InvalidInputError("need n >= 1")
    exponents = tuple(alpha)
    if len(exponents) > n:
        raise InvalidInputError("exponent vector longer than the dimension")
    if any(a < 0 for a in exponents):
        raise InvalidInputError("exponents must be nonnegative")
    numerator = 1
    for a in exponents:
        numerator *= math.factorial(a)
    return Fraction(numerator, math.factorial(n + sum(exponents)))


def normalized_moment(action: WeightedCircleAction) -> GradedPoly:
    """Mean-zero moment polynomial on the simplex.

    The unnormalized moment is ``w_0 + sum_j (w_j - w_0) x_j`` (value w_j at
    the j-th vertex); subtracting the mean weight makes its integral vanish.
    """
    ring = simplex_ring(action.n)
    w = action.weights
    h = ring.constant(Fraction(w[0]) - action.mean_weight())
    for j in range(1, action.n + 1):
        h = h + ring.gen(j - 1).scale(w[j] - w[0])
    return h


def moment_integral(p: GradedPoly, n: int) -> Rational:
    """Integral against the unit-volume form: n! times the simplex integral."""
    total = Fraction(0)
    for monomial, coeff in p.terms.items():
        exponents = [0] * n
        for index, e in monomial.exps:
            if index >= n:
                raise InvalidInputError("polynomial uses more variables than the dimension")
            exponents[index] = e
        total += coeff * simplex_integral(exponents, n)
    return Fraction(math.factorial(n)) * total


def mu_of_circle(action: WeightedCircleAction, k: int) -> Rational:
    """Scalar coefficient of the k-th power class pulled back to the circle.

    Equals ``(-1)^k C(n+k, n)`` times the moment integral of ``H^k``; it
    vanishes for ``k = 1`` by the mean-zero normalization and is nonzero for
    every even ``k`` on a nontrivial action.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    h = normalized_moment(action)
    value = moment_integral(h ** k, action.n)
    sign = -1 if k % 2 else 1
    return Fraction(sign * math.comb(action.n + k, action.n)) * value


def su_weight_vector(ell: int, j: int) -> tuple[int, ...]:
    """The j-th standard traceless weight vector in SU(ell).

    ``j = 1`` gives (1, -1, 0, ...); in general j ones followed by -j and
    zero padding.
    """
    if ell < 2 or not 1 <= j <= ell - 1:
        raise InvalidInputError("need 1 <= j <= ell - 1")
    return (1,) * j + (-j,) + (0,) * (ell - j - 1)


def su_product_integral(ell: int, k: int) -> Rational:
    """Moment integral of H_1^2 H_2 ... H_{k-1} on CP^{ell-1}.

    The H_j are the normalized moments of the standard commuting circles.
    """
    if not 2 <= k <= ell:
        raise InvalidInputError("need 2 <= k <= ell")
    n = ell - 1
    integrand = normalized_moment(WeightedCircleAction(n, su_weight_vector(ell, 1))) ** 2
    for j in range(2, k):
        h_j = normalized_moment(WeightedCircleAction(n, su_weight_vector(ell, j)))
        integrand = integrand * h_j
    return moment_integral(integrand, n)


def nu1_at_fixed_point(action: WeightedCircleAction, vertex: int) -> Rational:
    """Integral of ``H - H(p)`` at the fixed point sitting over a vertex.

    Under the mean-zero normalization this is ``-H(p) = mean - w_vertex``; it
    is nonzero exactly when the vertex weight differs from the mean, in
    particular at every strict maximum or minimum of the moment map.
    """
    if not 0 <= vertex <= action.n:
        raise InvalidInputError(f"vertex must be in 0..{action.n}")
    return action.mean_weight() - Fraction(action.weights[vertex])
