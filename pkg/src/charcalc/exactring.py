"""Exact graded polynomial rings and rewrite-rule quotient presentations.

Every other module trades in one currency: :class:`GradedPoly`, a sparse
multivariate polynomial with `fractions.Fraction` coefficients over a ring of
named generators carrying even degrees.  Quotient rings are presented by
rewrite rules oriented along a graded lexicographic order; presentations may
designate a Leray-Hirsch fiber basis, which is what turns coefficient
extraction into fiber integration downstream.

No floating point enters anywhere: coefficients are arbitrary-precision
rationals, reduced and with positive denominator by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

__all__ = [
    "Rational",
    "CharcalcError",
    "InvalidInputError",
    "RingMismatchError",
    "PresentationError",
    "BasisError",
    "GradedRing",
    "Monomial",
    "GradedPoly",
    "RingPresentation",
    "poly_arith",
    "poly_pow",
    "graded_component",
    "normal_form",
    "fiber_coefficient",
    "monomials_of_degree",
    "parse_poly",
    "parse_rational",
    "format_rational",
    "REWRITE_LIMIT",
]

# Reduced form, positive denominator, arbitrary precision: exactly what
# fractions.Fraction guarantees, so that is the Rational type.
Rational = Fraction

# Rule applications allowed per normal_form call before declaring the rule
# set non-terminating.  Desk-scale inputs stay far below this.
REWRITE_LIMIT = 10**6


class CharcalcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(CharcalcError):
    """Arguments violate a documented precondition."""


class RingMismatchError(CharcalcError):
    """Operands live in different ambient rings."""


class PresentationError(CharcalcError):
    """A rewrite presentation is malformed, non-terminating or inconsistent."""


class BasisError(CharcalcError):
    """A requested fiber-basis element is not part of the presentation."""


def _frac(value: int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InvalidInputError(f"expected an integer or Fraction, got {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical ``p/q`` (or ``p``) encoding of a rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"malformed rational {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Canonical encoding: ``p/q``, or ``p`` when the denominator is one."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GradedRing:
    """An ordered list of named generators with positive even degrees.

    Generator position fixes the monomial order: lower index means more
    significant in the lexicographic tie-break.
    """

    generators: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.degrees):
            raise InvalidInputError("generator and degree lists differ in length")
        if len(set(self.generators)) != len(self.generators):
            raise InvalidInputError("generator names must be distinct")
        for name, degree in zip(self.generators, self.degrees):
            if not name or not name.replace("_", "").isalnum() or name[0].isdigit():
                raise InvalidInputError(f"bad generator name {name!r}")
            if degree <= 0 or degree % 2 != 0:
                raise InvalidInputError(
                    f"generator {name} has degree {degree}; only positive even degrees are supported"
                )

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise InvalidInputError(f"unknown generator {name!r}") from None

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return GradedPoly(self, {Monomial.one(): Fraction(1)})

    def constant(self, value: int | Fraction) -> "GradedPoly":
        return GradedPoly(self, {Monomial.one(): _frac(value)})

    def gen(self, which: int | str) -> "GradedPoly":
        index = which if isinstance(which, int) else self.index(which)
        if not 0 <= index < self.ngens:
            raise InvalidInputError(f"generator index {index} out of range")
        return GradedPoly(self, {Monomial.of(index): Fraction(1)})

    def gens(self) -> list["GradedPoly"]:
        return [self.gen(i) for i in range(self.ngens)]


@dataclass(frozen=True)
class Monomial:
    """Sparse monomial: index-sorted ``(generator, exponent)`` pairs, exponents > 0."""

    exps: tuple[tuple[int, int], ...]

    @staticmethod
    def one() -> "Monomial":
        return Monomial(())

    @staticmethod
    def of(index: int, exponent: int = 1) -> "Monomial":
        if exponent < 0:
            raise InvalidInputError("negative exponent")
        if exponent == 0:
            return Monomial(())
        return Monomial(((index, exponent),))

    @staticmethod
    def make(exponents: Mapping[int, int]) -> "Monomial":
        pairs = []
        for index in sorted(exponents):
            e = exponents[index]
            if e < 0:
                raise InvalidInputError("negative exponent")
            if e:
                pairs.append((index, e))
        return Monomial(tuple(pairs))

    def is_one(self) -> bool:
        return not self.exps

    def exponent(self, index: int) -> int:
        for i, e in self.exps:
            if i == index:
                return e
        return 0

    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.exps)

    def degree(self, ring: GradedRing) -> int:
        return sum(e * ring.degrees[i] for i, e in self.exps)

    def total_exponent(self) -> int:
        return sum(e for _, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for i, e in other.exps:
            merged[i] = merged.get(i, 0) + e
        return Monomial.make(merged)

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(i) >= e for i, e in self.exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        quotient = dict(self.exps)
        for i, e in other.exps:
            left = quotient.get(i, 0) - e
            if left < 0:
                raise InvalidInputError(f"{other} does not divide {self}")
            quotient[i] = left
        return Monomial.make(quotient)

    def dense(self, ring: GradedRing) -> tuple[int, ...]:
        vector = [0] * ring.ngens
        for i, e in self.exps:
            vector[i] = e
        return tuple(vector)

    def order_key(self, ring: GradedRing) -> tuple[int, tuple[int, ...]]:
        """Graded lexicographic key: larger key means larger monomial."""
        return (self.degree(ring), self.dense(ring))

    def text(self, ring: GradedRing) -> str:
        if self.is_one():
            return "1"
        parts = []
        for i, e in self.exps:
            name = ring.generators[i]
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


class GradedPoly:
    """Sparse exact polynomial attached to an ambient :class:`GradedRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, int | Fraction]):
        cleaned: dict[Monomial, Fraction] = {}
        for monomial, coeff in terms.items():
            value = _frac(coeff)
            if value:
                cleaned[monomial] = value
        self.ring = ring
        self.terms = cleaned

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(Monomial.one(), Fraction(0))

    def degree(self) -> int:
        """Top degree of the support; zero for the zero polynomial."""
        if not self.terms:
            return 0
        return max(m.degree(self.ring) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {m.degree(self.ring) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_degree(self) -> int:
        degrees = {m.degree(self.ring) for m in self.terms}
        if len(degrees) != 1:
            raise InvalidInputError("polynomial is not homogeneous")
        return degrees.pop()

    def graded_component(self, degree: int) -> "GradedPoly":
        return GradedPoly(
            self.ring,
            {m: c for m, c in self.terms.items() if m.degree(self.ring) == degree},
        )

    def truncate(self, max_degree: int) -> "GradedPoly":
        return GradedPoly(
            self.ring,
            {m: c for m, c in self.terms.items() if m.degree(self.ring) <= max_degree},
        )

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms sorted by (degree ascending, monomial order descending)."""
        def key(item: tuple[Monomial, Fraction]):
            degree, dense = item[0].order_key(self.ring)
            return (degree, tuple(-e for e in dense))

        return sorted(self.terms.items(), key=key)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise InvalidInputError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda m: m.order_key(self.ring))

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other: "GradedPoly") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("operands live in different ambient rings")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return GradedPoly(self.ring, out)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def __mul__(self, other: "GradedPoly | int | Fraction") -> "GradedPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return GradedPoly(self.ring, out)

    def __rmul__(self, other: "int | Fraction") -> "GradedPoly":
        return self.scale(other)

    def scale(self, value: int | Fraction) -> "GradedPoly":
        factor = _frac(value)
        return GradedPoly(self.ring, {m: factor * c for m, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "GradedPoly":
        if exponent < 0:
            raise InvalidInputError("negative exponent")
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def substitute(
        self, assignments: Mapping[str, "GradedPoly"], ring: GradedRing | None = None
    ) -> "GradedPoly":
        """Evaluate with some generators replaced by polynomials.

        Unassigned generators must exist (by name) in the target ring.
        """
        target = ring if ring is not None else self.ring
        images: dict[int, GradedPoly] = {}
        for i, name in enumerate(self.ring.generators):
            if name in assignments:
                image = assignments[name]
                if image.ring != target:
                    raise RingMismatchError(f"image of {name} is not in the target ring")
                images[i] = image
            else:
                images[i] = target.gen(target.index(name))
        out = target.zero()
        for monomial, coeff in self.terms.items():
            value = target.constant(coeff)
            for i, e in monomial.exps:
                value = value * (images[i] ** e)
            out = out + value
        return out

    def remap(self, ring: GradedRing, index_map: Mapping[int, int]) -> "GradedPoly":
        """Transport into another ring along a generator index map."""
        out: dict[Monomial, Fraction] = {}
        for monomial, coeff in self.terms.items():
            moved = Monomial.make({index_map[i]: e for i, e in monomial.exps})
            out[moved] = out.get(moved, Fraction(0)) + coeff
        return GradedPoly(ring, out)

    # -- canonical encoding -------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for monomial, coeff in self.sorted_terms():
            coeff_text = format_rational(coeff)
            if monomial.is_one():
                chunks.append(coeff_text)
            else:
                chunks.append(f"{coeff_text}*{monomial.text(self.ring)}")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"GradedPoly({self})"


def poly_arith(a: GradedPoly, b: GradedPoly, op: str) -> GradedPoly:
    """Ring arithmetic with explicit operation name (`add` or `mul`)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise InvalidInputError(f"unknown operation {op!r}")


def poly_pow(a: GradedPoly, exponent: int) -> GradedPoly:
    return a**exponent


def graded_component(p: GradedPoly, degree: int) -> GradedPoly:
    """Sum of the terms of ``p`` of total degree exactly ``degree``."""
    if degree < 0:
        raise InvalidInputError("degree must be nonnegative")
    return p.graded_component(degree)


def monomials_of_degree(ring: GradedRing, degree: int) -> list[Monomial]:
    """All monomials of the given total degree, largest first in graded lex."""
    if degree < 0:
        return []
    results: list[Monomial] = []

    def walk(index: int, remaining: int, chosen: dict[int, int]) -> None:
        if remaining == 0:
            results.append(Monomial.make(chosen))
            return
        if index >= ring.ngens:
            return
        step = ring.degrees[index]
        for e in range(remaining // step, -1, -1):
            if e:
                chosen[index] = e
            walk(index + 1, remaining - e * step, chosen)
            chosen.pop(index, None)

    walk(0, degree, {})
    results.sort(key=lambda m: m.order_key(ring), reverse=True)
    return results


class RingPresentation:
    """A graded ring together with an oriented, terminating rewrite system.

    ``rules`` maps a leading monomial to its replacement; every replacement is
    degree-homogeneous of the same degree and strictly smaller in graded lex,
    which makes rewriting terminate.  ``fiber_basis``, when present, is the
    ordered Leray-Hirsch basis ``b_0 = 1, ..., b_N`` with ``b_N`` the top
    fiber class; the generators appearing in it are the fiber directions and
    everything else is treated as pulled back from the base.

    Instances are immutable after construction apart from an internal
    normal-form cache.
    """

    def __init__(
        self,
        ring: GradedRing,
        rules: Mapping[Monomial, GradedPoly],
        fiber_basis: Sequence[Monomial] | None = None,
        relations: Sequence[GradedPoly] = (),
        family: str = "custom",
        top_degree: int | None = None,
    ):
        self.ring = ring
        self.rules = dict(rules)
        self.relations = tuple(relations)
        self.family = family
        self.top_degree = top_degree
        self._nf_cache: dict[Monomial, GradedPoly] = {}

        for lhs, rhs in self.rules.items():
            if lhs.is_one():
                raise PresentationError("the unit monomial cannot head a rewrite rule")
            if rhs.ring != ring:
                raise RingMismatchError("rule replacement lives in a different ring")
            lhs_degree = lhs.degree(ring)
            lhs_key = lhs.order_key(ring)
            for monomial in rhs.terms:
                if monomial.degree(ring) != lhs_degree:
                    raise PresentationError(
                        f"rule for {lhs.text(ring)} is not degree-homogeneous"
                    )
                if monomial.order_key(ring) >= lhs_key:
                    raise PresentationError(
                        f"rule for {lhs.text(ring)} does not decrease the monomial order"
                    )

        if fiber_basis is not None:
            basis = tuple(fiber_basis)
            if not basis or not basis[0].is_one():
                raise PresentationError("fiber basis must start with b_0 = 1")
            if len(set(basis)) != len(basis):
                raise PresentationError("fiber basis has repeated elements")
            for b in basis:
                if self._find_rule(b) is not None:
                    raise PresentationError("fiber basis element is reducible")
            self.fiber_basis: tuple[Monomial, ...] | None = basis
            support: set[int] = set()
            for b in basis:
                support |= b.support()
            self.fiber_generators: frozenset[int] = frozenset(support)
        else:
            self.fiber_basis = None
            self.fiber_generators = frozenset()

    # -- rewriting -----------------------------------------------------------

    def _find_rule(self, monomial: Monomial) -> Monomial | None:
        for lhs in self.rules:
            if lhs.divides(monomial):
                return lhs
        return None

    def is_reducible(self, monomial: Monomial) -> bool:
        return self._find_rule(monomial) is not None

    def normal_form(self, p: GradedPoly) -> GradedPoly:
        if p.ring != self.ring:
            raise RingMismatchError("polynomial is not in the presented ring")
        budget = [REWRITE_LIMIT]
        out = self.ring.zero()
        for monomial, coeff in p.terms.items():
            out = out + self._monomial_nf(monomial, budget).scale(coeff)
        return out

    def _monomial_nf(self, monomial: Monomial, budget: list[int]) -> GradedPoly:
        cache = self._nf_cache
        stack = [monomial]
        while stack:
            m = stack[-1]
            if m in cache:
                stack.pop()
                continue
            lhs = self._find_rule(m)
            if lhs is None:
                cache[m] = GradedPoly(self.ring, {m: Fraction(1)})
                stack.pop()
                continue
            quotient = m / lhs
            rhs = self.rules[lhs]
            children = [quotient * m2 for m2 in rhs.terms]
            missing = [c for c in children if c not in cache]
            if missing:
                stack.extend(missing)
                continue
            budget[0] -= 1 + len(children)
            if budget[0] < 0:
                raise PresentationError(
                    f"rewriting exceeded {REWRITE_LIMIT} applications; rule set treated as non-terminating"
                )
            acc = self.ring.zero()
            for m2, c2 in rhs.terms.items():
                acc = acc + cache[quotient * m2].scale(c2)
            cache[m] = acc
            stack.pop()
        return cache[monomial]

    # -- Leray-Hirsch decomposition -------------------------------------------

    def split_monomial(self, monomial: Monomial) -> tuple[Monomial, Monomial]:
        """Split into (fiber part, base part) along the fiber generators."""
        fiber = {i: e for i, e in monomial.exps if i in self.fiber_generators}
        base = {i: e for i, e in monomial.exps if i not in self.fiber_generators}
        return Monomial.make(fiber), Monomial.make(base)

    def fiber_coefficient(self, p: GradedPoly, b: Monomial) -> GradedPoly:
        if self.fiber_basis is None:
            raise PresentationError("presentation has no fiber basis")
        if b not in self.fiber_basis:
            raise BasisError(f"{b.text(self.ring)} is not a fiber basis element")
        reduced = self.normal_form(p)
        out: dict[Monomial, Fraction] = {}
        for monomial, coeff in reduced.terms.items():
            fiber, base = self.split_monomial(monomial)
            if fiber not in self.fiber_basis:
                raise PresentationError(
                    f"normal form contains fiber part {fiber.text(self.ring)} outside the declared basis"
                )
            if fiber == b:
                out[base] = out.get(base, Fraction(0)) + coeff
        return GradedPoly(self.ring, out)

    def top_fiber_class(self) -> Monomial:
        if self.fiber_basis is None:
            raise PresentationError("presentation has no fiber basis")
        return self.fiber_basis[-1]

    def __repr__(self) -> str:
        gens = ", ".join(self.ring.generators)
        return f"RingPresentation([{gens}], {len(self.rules)} rules, family={self.family!r})"


def normal_form(p: GradedPoly, pres: RingPresentation) -> GradedPoly:
    """Reduce ``p`` to its unique irreducible representative in the quotient."""
    return pres.normal_form(p)


def fiber_coefficient(p: GradedPoly, pres: RingPresentation, b: Monomial) -> GradedPoly:
    """Base-ring coefficient of the fiber basis element ``b`` in ``p``."""
    return pres.fiber_coefficient(p, b)


# -- text input ---------------------------------------------------------------


def _tokenize(text: str) -> Iterator[str]:
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^":
            yield ch
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise InvalidInputError(f"malformed rational near {text[i:]!r}")
                yield text[i:k]
                i = k
            else:
                yield text[i:j]
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield text[i:j]
            i = j
            continue
        raise InvalidInputError(f"unexpected character {ch!r} in polynomial")


def parse_poly(ring: GradedRing, text: str) -> GradedPoly:
    """Parse sums of terms like ``2*y1^2*y2 - 1/3*y3 + 4`` in the given ring."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise InvalidInputError("empty polynomial text")
    result = ring.zero()
    pos = 0

    def parse_factor() -> GradedPoly:
        nonlocal pos
        if pos >= len(tokens):
            raise InvalidInputError("polynomial ends unexpectedly")
        token = tokens[pos]
        pos += 1
        if token[0].isdigit():
            return ring.constant(parse_rational(token))
        base = ring.gen(token)
        if pos < len(tokens) and tokens[pos] == "^":
            pos += 1
            if pos >= len(tokens) or not tokens[pos].isdigit():
                raise InvalidInputError("exponent expected after '^'")
            base = base ** int(tokens[pos])
            pos += 1
        return base

    def parse_term() -> GradedPoly:
        nonlocal pos
        value = parse_factor()
        while pos < len(tokens) and tokens[pos] == "*":
            pos += 1
            value = value * parse_factor()
        return value

    def parse_signs() -> Fraction:
        # the canonical encoding writes negative coefficients after '+',
        # so runs of signs like '+ -' must collapse
        nonlocal pos
        sign = Fraction(1)
        while pos < len(tokens) and tokens[pos] in "+-":
            if tokens[pos] == "-":
                sign = -sign
            pos += 1
        if pos >= len(tokens):
            raise InvalidInputError("polynomial ends after a sign")
        return sign

    while True:
        sign = parse_signs()
        result = result + parse_term().scale(sign)
        if pos >= len(tokens):
            return result
        if tokens[pos] not in "+-":
            raise InvalidInputError(f"expected '+' or '-', found {tokens[pos]!r}")
