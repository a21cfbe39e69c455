"""Acceptance suite: one test per criterion, exact checks, stated budgets.

Each test prints a single pass/fail line; run with ``pytest -s`` to see them.
"""

import contextlib
import io
import itertools
import math
import random
import re
import time
from fractions import Fraction

from charcalc import bundlecalc, cli, coupling, equivariant, flagcoh, obstruction, symfun
from charcalc.exactring import GradedPoly, Monomial

from test_equivariant import simplex_integral_oracle


def _report(number, description, budget_seconds, check):
    start = time.perf_counter()
    try:
        check()
    except BaseException:
        print(f"FAIL criterion {number}: {description}")
        raise
    elapsed = time.perf_counter() - start
    print(f"PASS criterion {number}: {description} ({elapsed:.2f}s)")
    assert elapsed < budget_seconds, f"criterion {number} exceeded {budget_seconds}s"


def projective_space(n):
    point = flagcoh.point_presentation()
    return flagcoh.projective_bundle(point, [point.ring.zero()] * (n + 1), n)


def sphere_base_bundle(n, k):
    base = flagcoh.sphere_product_ring([2 * k], names=("b",))
    chern = [base.ring.zero()] * (n + 1)
    chern[k - 1] = base.ring.gen(0)
    return flagcoh.projective_bundle(base, chern, n)


def test_criterion_01_degree_eight_pairing_regression():
    def check():
        E = bundlecalc.Universal(4)
        cls = bundlecalc.chern_class(bundlecalc.Lambda2(E), 4)
        sym = symfun.to_monomial_basis(cls)
        assert dict(sym.coeffs) == {
            symfun.Partition.of(3, 1): Fraction(2),
            symfun.Partition.of(2, 2): Fraction(5),
            symfun.Partition.of(2, 1, 1): Fraction(13),
            symfun.Partition.of(1, 1, 1, 1): Fraction(30),
        }
        assert bundlecalc.sphere_eval(E, 4) == 6
        assert bundlecalc.sphere_eval(bundlecalc.Lambda2(E), 4) == -24
        combo = bundlecalc.Lambda2(E)
        for _ in range(4):
            combo = bundlecalc.Sum(combo, E)
        assert bundlecalc.sphere_eval(combo, 4) == 0

    _report(1, "degree-8 class expansion and sphere pairings", 1.0, check)


def test_criterion_02_conjugate_sum_odd_classes():
    def check():
        for m in range(1, 5):
            E = bundlecalc.Universal(m)
            doubled = bundlecalc.Sum(E, bundlecalc.Dual(E))
            for k in range(1, 2 * m + 1, 2):
                assert bundlecalc.chern_class(doubled, k).is_zero()

    _report(2, "odd classes of E plus its dual vanish (m <= 4)", 1.0, check)


def test_criterion_03_square_zero_products():
    def check():
        for k in range(1, 7):
            value = flagcoh.phi_pullback(k)
            top = Monomial.make({j: 1 for j in range(k + 1)})
            expected = GradedPoly(
                value.ring, {top: Fraction(2 * (-1) ** k * math.factorial(k))}
            )
            assert value == expected

    _report(3, "square-zero circle products equal 2*(-1)^k*k!", 1.0, check)


def test_criterion_04_circle_class_suite():
    def check():
        rng = random.Random(1402)
        samples = []
        while len(samples) < 50:
            n = rng.randint(1, 4)
            weights = tuple(rng.randint(-6, 6) for _ in range(n + 1))
            if len(set(weights)) == 1:
                continue
            samples.append((n, weights))
        for n, weights in samples:
            action = equivariant.WeightedCircleAction(n, weights)
            assert equivariant.mu_of_circle(action, 1) == 0
            for k in (2, 4, 6):
                assert equivariant.mu_of_circle(action, k) != 0
            factor = rng.choice((2, 3, -2))
            scaled = equivariant.WeightedCircleAction(
                n, tuple(factor * w for w in weights)
            )
            for k in (1, 2, 3, 4):
                assert equivariant.mu_of_circle(scaled, k) == (
                    Fraction(factor) ** k * equivariant.mu_of_circle(action, k)
                )

    _report(4, "circle classes: mu_1 = 0, even nonvanishing, homogeneity", 10.0, check)


def test_criterion_05_simplex_oracle_equivalence():
    def check():
        for n in range(1, 5):
            for total in range(0, 7):
                for alpha in itertools.product(range(total + 1), repeat=n):
                    if sum(alpha) != total:
                        continue
                    assert equivariant.simplex_integral(alpha, n) == (
                        simplex_integral_oracle(alpha, n)
                    )

    _report(5, "simplex closed form equals iterated integration (|a| <= 6, n <= 4)", 10.0, check)


def test_criterion_06_projectivization_pushforwards():
    def check():
        for n in range(1, 5):
            for k in range(2, n + 2):
                pres = sphere_base_bundle(n, k)
                data = coupling.CouplingInput(pres, pres.ring.gen("c"), n)
                a_tilde = coupling.coupling_class(data)
                assert flagcoh.fiber_integrate(a_tilde ** (n + 1), pres).is_zero()
                value = coupling.mu_class(data, k)
                beta_monomial = next(iter(pres.ring.gen("b").terms))
                assert not value.is_zero()
                assert set(value.terms) == {beta_monomial}

    _report(6, "bundle pushforwards nonzero and coupling normalized (k <= n+1 <= 5)", 5.0, check)


def test_criterion_07_series_and_flag_machinery():
    def check():
        for v in range(1, 5):
            series = flagcoh.inverse_series(v, 12)
            ring = series[0].ring
            total = ring.one()
            for i in range(v):
                total = total + ring.gen(i)
            inverse = ring.one()
            for f in series:
                inverse = inverse + f
            product = total * inverse
            for degree in range(2, 25, 2):
                assert product.graded_component(degree).is_zero()
        for v in (1, 2, 3):
            for i, f in enumerate(flagcoh.inverse_series(v, 6), start=1):
                assert f.coefficient(Monomial.of(0, i)) == (-1) ** i
        for m in range(1, 5):
            for k in range(1, 5):
                pres = flagcoh.grassmannian_presentation(m, k)
                assert sum(flagcoh.dimension_vector(pres)) == math.comb(m + k, k)
        assert sum(flagcoh.dimension_vector(flagcoh.flag_presentation((1, 1, 1)))) == 6

    _report(7, "series inversion, sign law, and flag dimension counts", 10.0, check)


def test_criterion_08_moment_integral_suite():
    def check():
        for ell in range(2, 5):
            for k in range(2, ell + 1):
                assert equivariant.su_product_integral(ell, k) != 0
        rng = random.Random(1402)
        count = 0
        while count < 20:
            n = rng.randint(1, 4)
            weights = tuple(rng.randint(-6, 6) for _ in range(n + 1))
            if len(set(weights)) == 1:
                continue
            count += 1
            action = equivariant.WeightedCircleAction(n, weights)
            top = max(range(n + 1), key=lambda j: weights[j])
            bottom = min(range(n + 1), key=lambda j: weights[j])
            assert equivariant.nu1_at_fixed_point(action, top) != 0
            assert equivariant.nu1_at_fixed_point(action, bottom) != 0

    _report(8, "commuting-circle products and extremal fixed points nonzero", 10.0, check)


def test_criterion_09_square_and_cube_criteria():
    def check():
        cp1, cp2, cp3 = projective_space(1), projective_space(2), projective_space(3)
        s2s2 = flagcoh.sphere_product_ring([2, 2], names=("s1", "s2"))
        assert obstruction.whitehead_square_criterion(
            obstruction.ObstructionInput(cp1, {"c": 1}, cp1.ring.gen("c"))
        )
        assert obstruction.whitehead_square_criterion(
            obstruction.ObstructionInput(s2s2, {"s1": 1}, s2s2.ring.gen("s1"))
        )
        assert not obstruction.whitehead_square_criterion(
            obstruction.ObstructionInput(cp2, {"c": 1}, cp2.ring.gen("c"))
        )
        assert obstruction.whitehead_cube_criterion(
            obstruction.ObstructionInput(cp2, {"c": 1}, cp2.ring.gen("c"))
        )
        assert not obstruction.whitehead_cube_criterion(
            obstruction.ObstructionInput(cp3, {"c": 1}, cp3.ring.gen("c"))
        )
        # invariance under c -> lambda*c + z with z in the pairing kernel
        s1, s2 = s2s2.ring.gens()
        for lam in (1, -2, Fraction(1, 3)):
            for shift in (0, 1, -3):
                c = s1.scale(lam) + s2.scale(shift)
                assert obstruction.whitehead_square_criterion(
                    obstruction.ObstructionInput(s2s2, {"s1": 1}, c)
                )
        for lam in (2, Fraction(-1, 2)):
            assert not obstruction.whitehead_square_criterion(
                obstruction.ObstructionInput(cp2, {"c": 1}, cp2.ring.gen("c").scale(lam))
            )
            assert not obstruction.whitehead_cube_criterion(
                obstruction.ObstructionInput(cp3, {"c": 1}, cp3.ring.gen("c").scale(lam))
            )

    _report(9, "square and cube criteria with invariance under allowed moves", 5.0, check)


def test_criterion_10_hard_lefschetz():
    def check():
        for n in range(1, 7):
            pres = projective_space(n)
            assert obstruction.hard_lefschetz_check(pres, pres.ring.gen("c"), n)
        gr = flagcoh.grassmannian_presentation(2, 2)
        assert obstruction.hard_lefschetz_check(gr, gr.ring.gen("y1"), 4)
        s2s2 = flagcoh.sphere_product_ring([2, 2], names=("s1", "s2"))
        assert not obstruction.hard_lefschetz_check(s2s2, s2s2.ring.gen("s1"), 2)

    _report(10, "hard Lefschetz predicate on the reference spaces", 5.0, check)


def test_criterion_11_cli_determinism_and_exactness():
    def check():
        outputs = []
        for _ in range(2):
            buffer = io.StringIO()
            with contextlib.redirect_stdout(buffer):
                code = cli.run(["paper"])
            assert code == 0
            outputs.append(buffer.getvalue())
        assert outputs[0] == outputs[1]
        assert not re.search(r"\d\.\d", outputs[0]), "floating-point token in output"
        assert not re.search(r"\d[eE][+-]?\d", outputs[0]), "exponent token in output"

    _report(11, "reference suite output bit-identical and float-free", 30.0, check)
