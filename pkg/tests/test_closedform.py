import math
from fractions import Fraction

import pytest

from dexgraph import closedform as cf

# exact values verified by exhaustive enumeration of all binary graphs
EXACT = {
    # n: (mean_rho, mean_cycle, mean_tail, var_rho)
    2: (Fraction(3, 2), Fraction(1), Fraction(1, 2), Fraction(1, 4)),
    4: (Fraction(25, 12), Fraction(4, 3), Fraction(3, 4), Fraction(83, 144)),
    6: (Fraction(77, 30), Fraction(8, 5), Fraction(29, 30), Fraction(881, 900)),
    8: (Fraction(837, 280), Fraction(64, 35), Fraction(65, 56), Fraction(112271, 78400)),
}


class TestExactValues:
    @pytest.mark.parametrize("n", sorted(EXACT))
    def test_oracle_values(self, n):
        mr, mc, mt, vr = EXACT[n]
        assert cf.expected_rho(n).exact == mr
        assert cf.expected_cycle(n).exact == mc
        assert cf.expected_tail(n).exact == mt
        assert cf.rho_variance(n).exact == vr

    def test_second_moment(self):
        assert cf.rho_second_moment(4).exact == Fraction(59, 12)
        assert cf.rho_second_moment(2).exact == Fraction(5, 2)

    def test_total_coefficients(self):
        assert cf.rho_total_coefficient(0) == 0
        assert cf.rho_total_coefficient(1) == 3
        assert cf.rho_total_coefficient(2) == Fraction(25, 2)
        assert cf.rho_square_total_coefficient(1) == 5
        assert cf.rho_square_total_coefficient(2) == Fraction(59, 2)
        assert cf.rho_square_total_coefficient(3) == Fraction(227, 2)

    def test_mean_rho_is_normalized_total(self):
        for n in (2, 4, 6, 8, 10, 50):
            k = n // 2
            g = cf.scaled_graph_count(n).exact
            assert cf.expected_rho(n).exact == cf.rho_total_coefficient(k) / (n * g)


class TestGraphCounts:
    def test_scaled_counts(self):
        assert cf.scaled_graph_count(2).exact == 1
        assert cf.scaled_graph_count(4).exact == Fraction(3, 2)
        assert cf.scaled_graph_count(6).exact == Fraction(5, 2)
        assert cf.scaled_graph_count(8).exact == Fraction(35, 8)

    def test_counts(self):
        assert cf.binary_graph_count(2) == 2
        assert cf.binary_graph_count(4) == 36
        assert cf.binary_graph_count(6) == 1800
        assert cf.binary_graph_count(8) == 176400

    def test_count_integrality(self):
        for n in range(2, 201, 2):
            g = cf.scaled_graph_count(n).exact
            total = math.factorial(n) * g
            assert total.denominator == 1
            assert total > 0

    def test_asymptotic_at_2(self):
        got = cf.scaled_graph_count_asymptotic(2).approx
        assert got == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-15)
        assert got == pytest.approx(1.128379, abs=1e-6)

    def test_ratio_brackets(self):
        assert 0.9 < cf.graph_count_ratio(100) < 1.0

    def test_ratio_monotone_to_one(self):
        r10, r100, r1000 = (cf.graph_count_ratio(n) for n in (10, 100, 1000))
        assert r10 < r100 < r1000 < 1.0
        assert 1.0 - r1000 < 0.001

    def test_ratio_matches_direct_division(self):
        for n in (10, 64, 200, 1000):
            direct = float(cf.scaled_graph_count(n).exact) / cf.scaled_graph_count_asymptotic(n).approx
            assert cf.graph_count_ratio(n) == pytest.approx(direct, rel=1e-12)


class TestLinearity:
    def test_exact_identity_to_200(self):
        for n in range(2, 201, 2):
            assert (
                cf.expected_rho(n).exact
                == cf.expected_cycle(n).exact + cf.expected_tail(n).exact
            )

    def test_float_identity_large_n(self):
        ns = list(range(2, 2001, 2)) + [10**4, 10**5, 5 * 10**5, 10**6 - 2, 10**6]
        for n in ns:
            rho = cf.expected_rho(n).approx
            other = cf.expected_cycle(n).approx + cf.expected_tail(n).approx
            assert abs(rho - other) <= 1e-10 * abs(rho), n


class TestFloatPath:
    def test_exact_float_agreement(self):
        # 4096/4098 straddle the exact-ratio / asymptotic-series cutoff
        ns = list(range(2, 301, 2)) + [1024, 4096, 4098, 10**4, 2 * 10**4]
        for n in ns:
            for fn in (cf.expected_rho, cf.expected_cycle, cf.expected_tail, cf.rho_variance):
                tv = fn(n, exact=True)
                ref = float(tv.exact)
                assert abs(tv.approx - ref) <= 1e-12 * max(1.0, abs(ref)), (fn, n)

    def test_variance_positive(self):
        for n in range(2, 201, 2):
            assert cf.rho_variance(n).exact > 0
        for n in (10**4, 10**6):
            assert cf.rho_variance(n).approx > 0

    def test_means_increasing(self):
        for fn in (cf.expected_rho, cf.expected_cycle, cf.expected_tail):
            vals = [fn(n).exact for n in range(2, 201, 2)]
            assert all(a < b for a, b in zip(vals, vals[1:])), fn


class TestDisplayedVarianceForm:
    def test_matches_recurrence_route(self):
        # the two-fraction Gamma display evaluates to the same rational as
        # the second-moment-minus-mean-squared construction
        for n in range(2, 65, 2):
            assert cf.rho_variance_displayed_form(n) == cf.rho_variance(n).exact


class TestAsymptoticLevelMeans:
    def test_rho_is_exactly_r(self):
        for r in (1, 3, 17):
            tv = cf.asymptotic_level_mean("rho", 1000, r)
            assert tv.exact == r
            assert tv.approx == float(r)

    def test_cycle_formula(self):
        tv = cf.asymptotic_level_mean("cycle", 200, 1)
        assert tv.approx == pytest.approx(math.sqrt(100 * math.pi) - 1, rel=1e-15)

    def test_tail_minus_cycle_is_one(self):
        for n in (10, 100, 1000):
            for r in (1, 2, 5):
                diff = (
                    cf.asymptotic_level_mean("tail", n, r).approx
                    - cf.asymptotic_level_mean("cycle", n, r).approx
                )
                assert diff == pytest.approx(1.0, rel=1e-12)

    def test_errors(self):
        with pytest.raises(ValueError):
            cf.asymptotic_level_mean("rho", 10, 0)
        with pytest.raises(ValueError):
            cf.asymptotic_level_mean("sausage", 10, 1)


class TestDomain:
    @pytest.mark.parametrize("n", [-2, 0, 1, 3, 7, 101])
    def test_odd_and_nonpositive_rejected(self, n):
        for fn in (
            cf.expected_rho,
            cf.expected_cycle,
            cf.expected_tail,
            cf.rho_variance,
            cf.scaled_graph_count,
            cf.scaled_graph_count_asymptotic,
        ):
            with pytest.raises(ValueError):
                fn(n)

    def test_exact_policy(self):
        assert cf.expected_rho(2).exact is not None
        assert cf.expected_rho(20002).exact is None  # above the auto limit
        assert cf.expected_rho(20002, exact=True).exact is not None
        assert cf.expected_rho(4, exact=False).exact is None

    def test_theory_table_kinds(self):
        rows = cf.theory_table(12)
        kinds = {tv.kind for tv in rows}
        assert kinds == {
            "mean_rho", "mean_cycle", "mean_tail", "var_rho", "g", "g_star",
            "asym_cycle", "asym_tail", "asym_rho",
        }
