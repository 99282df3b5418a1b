import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formpreserve.moyal import (
    ConventionError,
    DegreeGuardError,
    PairSymbol,
    PolySymbol,
    kinetic_moyal_reduction,
    moyal_bracket,
    nonlinear_ct_example,
    pair_poisson,
    pair_poisson_nonlinear,
    pair_sine_bracket_identified,
    poisson_bracket,
    star_product,
    star_product_nonlinear_bch,
    star_product_nonlinear_direct,
)

X = PolySymbol.x()
P = PolySymbol.p()
ONE = PolySymbol.one()


def coeffs():
    return st.fractions(
        min_value=Fraction(-4), max_value=Fraction(4), max_denominator=6
    ).filter(lambda f: f != 0)


def symbols(max_degree=5, max_terms=4):
    def build(pairs):
        return PolySymbol({(a, b, 0): c for (a, b), c in pairs.items()})

    exponents = st.tuples(
        st.integers(min_value=0, max_value=max_degree),
        st.integers(min_value=0, max_value=max_degree),
    ).filter(lambda ab: ab[0] + ab[1] <= max_degree)
    return st.dictionaries(exponents, coeffs(), min_size=0, max_size=max_terms).map(build)


def quadratics():
    return symbols(max_degree=2, max_terms=4)


class TestPoissonBracket:
    def test_canonical_pair(self):
        assert poisson_bracket(X, P) == ONE

    def test_kinetic_with_position(self):
        half_p2 = PolySymbol({(0, 2, 0): Fraction(1, 2)})
        assert poisson_bracket(half_p2, X) == PolySymbol({(0, 1, 0): -1})

    def test_self_bracket_vanishes(self):
        f = PolySymbol({(3, 1, 0): 1, (0, 2, 0): 2})
        assert poisson_bracket(f, f).is_zero()

    @settings(max_examples=60, deadline=None)
    @given(symbols(), symbols())
    def test_antisymmetry(self, f, g):
        assert poisson_bracket(f, g) == -poisson_bracket(g, f)

    @settings(max_examples=40, deadline=None)
    @given(symbols(4, 3), symbols(4, 3), symbols(4, 3))
    def test_jacobi_identity(self, f, g, h):
        total = (
            poisson_bracket(f, poisson_bracket(g, h))
            + poisson_bracket(g, poisson_bracket(h, f))
            + poisson_bracket(h, poisson_bracket(f, g))
        )
        assert total.is_zero()


class TestStarProduct:
    def test_x_star_p(self):
        assert star_product(X, P) == PolySymbol({(1, 1, 0): 1, (0, 0, 1): Fraction(1, 2)})
        assert star_product(P, X) == PolySymbol({(1, 1, 0): 1, (0, 0, 1): Fraction(-1, 2)})

    def test_star_with_unit(self):
        f = PolySymbol({(2, 1, 0): 3, (0, 0, 0): Fraction(1, 7)})
        assert star_product(f, ONE) == f
        assert star_product(ONE, f) == f

    def test_canonical_commutator(self):
        comm = star_product(X, P) - star_product(P, X)
        assert comm == PolySymbol({(0, 0, 1): 1})  # i hbar in the graded encoding
        assert moyal_bracket(X, P) == ONE

    def test_associativity_on_monomials(self):
        monos = [
            PolySymbol.monomial(a, b)
            for a in range(4)
            for b in range(4)
            if a + b <= 3
        ]
        for f in monos:
            for g in monos:
                for h in monos:
                    lhs = star_product(star_product(f, g), h)
                    rhs = star_product(f, star_product(g, h))
                    assert lhs == rhs

    @settings(max_examples=40, deadline=None)
    @given(symbols(3, 3), symbols(3, 3))
    def test_hbar_zero_term_is_pointwise_product(self, f, g):
        assert star_product(f, g).hbar_coefficient(0) == (f * g).hbar_coefficient(0)


class TestMoyalBracket:
    def test_self_bracket_vanishes(self):
        f = PolySymbol({(3, 0, 0): 1, (1, 2, 0): -2})
        assert moyal_bracket(f, f).is_zero()

    def test_quadratic_kinetic_collapse(self):
        half_p2 = PolySymbol({(0, 2, 0): Fraction(1, 2)})
        cube = PolySymbol.x(3)
        assert moyal_bracket(half_p2, cube) == poisson_bracket(half_p2, cube)

    def test_quartic_correction_term(self):
        x4 = PolySymbol.x(4)
        p4 = PolySymbol.p(4)
        diff = moyal_bracket(x4, p4) - poisson_bracket(x4, p4)
        # third-derivative cross term: -(1/24) * 576 x p at hbar^2
        assert diff == PolySymbol({(1, 1, 2): -24})

    @settings(max_examples=50, deadline=None)
    @given(symbols(4, 3), symbols(4, 3))
    def test_antisymmetry(self, f, g):
        assert moyal_bracket(f, g) == -moyal_bracket(g, f)

    @settings(max_examples=50, deadline=None)
    @given(symbols(4, 3), symbols(4, 3))
    def test_classical_limit(self, f, g):
        assert moyal_bracket(f, g).hbar_coefficient(0) == poisson_bracket(f, g)

    @settings(max_examples=60, deadline=None)
    @given(quadratics(), symbols(5, 4))
    def test_quadratic_collapse(self, f, g):
        assert moyal_bracket(f, g) == poisson_bracket(f, g)

    def test_quadratic_collapse_random_suite(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            f = PolySymbol(
                {
                    (int(a), int(b), 0): Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
                    for a, b in rng.integers(0, 3, size=(3, 2))
                    if a + b <= 2
                }
            )
            g = PolySymbol(
                {
                    (int(a), int(b), 0): Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
                    for a, b in rng.integers(0, 6, size=(4, 2))
                    if a + b <= 5
                }
            )
            assert moyal_bracket(f, g) == poisson_bracket(f, g)

    @settings(max_examples=30, deadline=None)
    @given(symbols(3, 2), symbols(3, 2), symbols(3, 2))
    def test_bilinearity(self, f, g, h):
        lhs = moyal_bracket(f + g, h)
        assert lhs == moyal_bracket(f, h) + moyal_bracket(g, h)


class TestKineticReduction:
    def test_streaming_of_x_squared(self):
        got = kinetic_moyal_reduction(PolySymbol.x(2))
        assert got == PolySymbol({(1, 1, 0): -2})

    def test_momentum_only_symbol(self):
        assert kinetic_moyal_reduction(PolySymbol.p(5)).is_zero()

    def test_cross_term(self):
        got = kinetic_moyal_reduction(PolySymbol({(1, 1, 0): 1}))
        assert got == PolySymbol({(0, 2, 0): -1})

    def test_nonunit_mass(self):
        got = kinetic_moyal_reduction(PolySymbol.x(2), mass=2)
        assert got == PolySymbol({(1, 1, 0): -1})


class TestNonlinearCounterexample:
    def test_report_booleans(self):
        report = nonlinear_ct_example()
        assert report.p12_equal is False
        assert report.identified_p_equal is True
        assert report.identified_m_equal is False

    def test_x2_x2_witness(self):
        pair = PairSymbol.from_product(PolySymbol.x(2), PolySymbol.x(2))
        diff = pair_poisson_nonlinear(pair) - pair_poisson(pair)
        # 8 (p1 - p2) x1 x2, nonzero before identification, zero after
        assert diff == PairSymbol({(1, 1, 1, 0, 0): 8, (1, 0, 1, 1, 0): -8})
        assert diff.identify().is_zero()

    def test_degree_one_pair_agrees(self):
        a = pair_sine_bracket_identified(X, P, pair_poisson)
        b = pair_sine_bracket_identified(X, P, pair_poisson_nonlinear)
        assert a == b == ONE

    def test_cubic_moyal_discrepancy(self):
        f = PolySymbol.x(3)
        g = PolySymbol({(2, 1, 0): 1})  # x^2 p
        plain = pair_sine_bracket_identified(f, g, pair_poisson)
        primed = pair_sine_bracket_identified(f, g, pair_poisson_nonlinear)
        assert primed - plain == PolySymbol({(1, 0, 2): 6})

    def test_bch_split_matches_direct(self):
        samples = [
            (PolySymbol.x(3), PolySymbol({(2, 1, 0): 1})),
            (PolySymbol.x(2), PolySymbol.x(2)),
            (PolySymbol({(1, 1, 0): 1}), PolySymbol.p(2)),
            (PolySymbol.x(1), PolySymbol.p(1)),
            (PolySymbol.x(4), PolySymbol.p(3)),
        ]
        for f, g in samples:
            assert star_product_nonlinear_direct(f, g) == star_product_nonlinear_bch(f, g)


class TestSymbolHousekeeping:
    def test_json_round_trip(self):
        f = PolySymbol({(2, 1, 0): Fraction(3, 7), (0, 0, 1): Fraction(-1, 2)})
        assert PolySymbol.from_json_map(f.to_json_map()) == f

    def test_degree_guard(self):
        with pytest.raises(DegreeGuardError):
            PolySymbol({(40, 30, 0): 1})

    def test_real_assertion(self):
        with pytest.raises(ConventionError):
            PolySymbol({(0, 0, 1): 1}).assert_real()

    def test_numeric_evaluation(self):
        f = PolySymbol({(1, 1, 0): 1, (0, 0, 1): Fraction(1, 2)})
        val = f.subs(2.0, 3.0, hbar_val=1.0)
        assert val == pytest.approx(6.0 + 0.5j)


class TestStationaryFlow:
    def test_grid_poisson_bracket_vanishes(self):
        from formpreserve.numerics import Grid1D, fd_derivative
        from formpreserve.wigner import ho_wigner

        grid = Grid1D(-6.0, 6.0, 512)
        x = grid.points
        for n in range(4):
            w = ho_wigner(n, x[:, None], x[None, :], 1.0)
            dw_dx = np.stack([fd_derivative(w[:, j], grid, 1) for j in range(grid.n)], axis=1)
            dw_dp = np.stack([fd_derivative(w[i, :], grid, 1) for i in range(grid.n)], axis=0)
            bracket = x[:, None] * dw_dp - x[None, :] * dw_dx
            assert np.max(np.abs(bracket)) < 1e-5
