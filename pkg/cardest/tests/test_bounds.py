# cardest. GNU GPL-3.0 (see LICENSE file)
import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st
from mpmath import mp

from cardest import bounds as b
from cardest.bounds import Precision
from cardest.errors import ParameterDomainError

mp.dps = 50


def _random_grid(size:int, seed:int):
    """Deterministic grid of (delta_err, p_err, over_delta, under_delta) points"""
    rng = np.random.default_rng(seed)
    grid = []
    for _ in range(size):
        delta_err = float(rng.uniform(0.2, 0.95))
        p_err = float(rng.uniform(0.05, 0.95))
        over = float(rng.uniform(delta_err, 2 * delta_err))
        under = float(rng.uniform(delta_err, 1.0))
        if over == delta_err or under == delta_err:
            continue
        grid.append((delta_err, p_err, over, under))
    return grid


class TestPrecision(unittest.TestCase):
    def test_InvalidPrecision(self):
        """Test boundaries and non numbers are rejected"""
        for delta_err, p_err in [(0, 0.5), (1, 0.5), (0.5, 0), (0.5, 1), (1.5, 0.5), (-0.1, 0.5),
                                 (math.nan, 0.5), (0.5, math.inf), (True, 0.5), ("0.5", 0.5)]:
            with self.assertRaises(ParameterDomainError, msg=f"Precision({delta_err!r}, {p_err!r}) was accepted"):
                Precision(delta_err, p_err)

    def test_PrecisionIsValueError(self):
        """Test callers catching ValueError still catch domain errors"""
        with self.assertRaises(ValueError):
            Precision(2, 2)

    def test_PrecisionEquality(self):
        """Test a Fraction-like value and its float compare equal"""
        from fractions import Fraction
        self.assertEqual(Precision(Fraction(1, 2), 0.5), Precision(0.5, 0.5))
        self.assertEqual(Precision(0.5, 0.25).as_json(), {"delta_err": 0.5, "p_err": 0.25})


class TestBudget(unittest.TestCase):
    def test_KErrExamples(self):
        """Test k_err against its closed forms"""
        self.assertAlmostEqual(b.compute_k_err(Precision(0.5, 0.5)).value, 16 * math.log(6), places=12)
        self.assertAlmostEqual(b.compute_k_err(Precision(0.1, 0.05)).value, 400 * math.log(60), places=9)
        self.assertAlmostEqual(b.compute_k_err((0.5, 0.5)).value, 16 * math.log(6), places=12, msg="tuple precision not accepted")
        self.assertEqual(b.compute_k_err(Precision(0.5, 0.5)).ceil, 29)
        self.assertEqual(b.compute_k_err(Precision(0.1, 0.05)).ceil, 1638)

    def test_KErrMonotone(self):
        """Test k_err is strictly decreasing in both delta_err and p_err on a 12x12 grid"""
        values = np.linspace(0.05, 0.95, 12)
        k = [[b.compute_k_err(Precision(float(d), float(p))).value for p in values] for d in values]
        for i in range(len(values)):
            for j in range(len(values)):
                if i + 1 < len(values):
                    self.assertGreater(k[i][j], k[i + 1][j], f"k_err not decreasing in delta_err at {i},{j}")
                if j + 1 < len(values):
                    self.assertGreater(k[i][j], k[i][j + 1], f"k_err not decreasing in p_err at {i},{j}")

    def test_KErrAboveFloor(self):
        """Test k_err > 4 ln 3 for valid precisions"""
        self.assertGreater(b.compute_k_err(Precision(0.999999, 0.999999)).value, 4 * math.log(3))

    def test_SampleBudgetExamples(self):
        """Test the sample budget on hand computed values"""
        self.assertEqual(b.sample_budget(100, b.compute_k_err(Precision(0.5, 0.5))), 129)
        self.assertEqual(b.sample_budget(100, 28.6681), 129, "plain float k not accepted")
        self.assertEqual(b.sample_budget(10**6, b.compute_k_err(Precision(0.1, 0.05))), 82576)
        self.assertEqual(b.sample_budget(10_000, b.compute_k_err(Precision(0.2, 0.1))), 4031)

    def test_HardCap(self):
        """Test the deterministic cap n + ceil(k)"""
        self.assertEqual(b.hard_cap(10_000, b.compute_k_err(Precision(0.2, 0.1))), 10341)
        self.assertEqual(b.hard_cap(100, b.compute_k_err(Precision(0.5, 0.5))), 129)
        with self.assertRaises(ParameterDomainError):
            b.hard_cap(0, 10.0)

    def test_SampleBudgetErrors(self):
        """Test invalid cardinalities and thresholds"""
        for n in (0, -3, 2.5, True):
            with self.assertRaises(ParameterDomainError, msg=f"n={n!r} accepted"):
                b.sample_budget(n, 10.0)
        for k in (0.0, -1.0, math.inf, "3"):
            with self.assertRaises(ParameterDomainError, msg=f"k={k!r} accepted"):
                b.sample_budget(10, k)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 10**12), st.floats(0.01, 1e7))
    def test_BudgetBelowHardCap(self, n, k):
        """Test sample_budget <= n + ceil(k) everywhere"""
        self.assertLessEqual(b.sample_budget(n, k), b.hard_cap(n, k))

    def test_CeilSqrtExactSquares(self):
        """Test ceil_sqrt never bumps perfect squares"""
        for m in list(range(0, 3000)) + [10**9 + 7, 10**20 + 1, 2**53 + 1]:
            self.assertEqual(b.ceil_sqrt(m * m), m, f"ceil_sqrt({m}²) is wrong")
            self.assertEqual(b.ceil_sqrt(m * m + 1), m + 1, f"ceil_sqrt({m}²+1) is wrong")
        self.assertEqual(b.ceil_sqrt(0.25), 1)
        self.assertEqual(b.ceil_sqrt(6.25), 3)
        with self.assertRaises(ParameterDomainError):
            b.ceil_sqrt(-1)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 10**9), st.floats(0.5, 1e6))
    def test_BudgetMatchesOracle(self, n, k):
        """Test sample_budget against mpmath"""
        kk = mp.mpf(k)
        expected = min(n, 2 * int(mp.ceil(mp.sqrt(kk * n)))) + int(mp.ceil(kk))
        self.assertEqual(b.sample_budget(n, k), expected)

    def test_DistinctRepeatExpectation(self):
        """Test m(m+1)/(2n) exceeds 2k at m = 2 ceil(sqrt(kn))"""
        self.assertEqual(b.distinct_repeat_expectation(3, 6), 1.0)
        for delta_err, p_err in [(0.5, 0.5), (0.2, 0.1), (0.1, 0.05)]:
            k = b.compute_k_err(Precision(delta_err, p_err))
            for n in (10, 1000, 10**6):
                m = 2 * b.ceil_sqrt(k.value * n)
                self.assertGreater(b.distinct_repeat_expectation(m, n), 2 * k.value)

    def test_AsymptoticBudget(self):
        """Test the growth form scales as sqrt(n)"""
        p = Precision(0.2, 0.1)
        self.assertAlmostEqual(b.asymptotic_budget(400, p) / b.asymptotic_budget(100, p), 2.0, places=12)


class TestTails(unittest.TestCase):
    def test_ChernoffExamples(self):
        """Test both Chernoff tails on direct evaluations"""
        self.assertAlmostEqual(b.chernoff_lower_tail(1, 2), math.exp(-1), places=14)
        self.assertAlmostEqual(b.chernoff_upper_tail(1, 3), math.exp(-1), places=14)
        self.assertAlmostEqual(b.chernoff_upper_tail(2, 2), math.exp(-2), places=14)
        self.assertEqual(b.chernoff_lower_tail(0, 5), 1.0)
        self.assertEqual(b.chernoff_upper_tail(0, 5), 1.0)
        with self.assertRaises(ParameterDomainError):
            b.chernoff_lower_tail(-0.1, 1)
        with self.assertRaises(ParameterDomainError):
            b.chernoff_upper_tail(0.1, -1)

    def test_NonFiniteTailArguments(self):
        """Test infinite or NaN arguments are refused instead of giving NaN"""
        for tail in (b.chernoff_lower_tail, b.chernoff_upper_tail):
            for args in [(0, math.inf), (math.inf, 0), (math.inf, 1), (1, math.inf), (math.nan, 1)]:
                with self.assertRaises(ParameterDomainError, msg=f"{tail.__name__}{args} accepted"):
                    tail(*args)
        with self.assertRaises(ParameterDomainError):
            b.overestimate_tail(math.inf, (0.5, 0.5))

    @settings(max_examples=300, deadline=None)
    @given(st.floats(0.01, 10), st.floats(0.01, 10), st.floats(0.1, 100), st.floats(0.1, 100))
    def test_ChernoffMonotone(self, d1, d2, e1, e2):
        """Test Chernoff tails are <= 1 and decrease in both arguments"""
        for tail in (b.chernoff_lower_tail, b.chernoff_upper_tail):
            self.assertLessEqual(tail(d1, e1), 1.0)
            lo_d, hi_d = sorted((d1, d2))
            lo_e, hi_e = sorted((e1, e2))
            # one ulp of slack, the rounded exponent is not monotone between neighbouring floats
            self.assertGreaterEqual(tail(lo_d, e1) * (1 + 1e-12), tail(hi_d, e1), f"{tail.__name__} grows with delta")
            self.assertGreaterEqual(tail(d1, lo_e) * (1 + 1e-12), tail(d1, hi_e), f"{tail.__name__} grows with expectation")

    def test_OverestimateExample(self):
        """Test overestimate tail just above delta_err"""
        self.assertAlmostEqual(b.overestimate_tail(0.5001, (0.5, 0.5)), 0.0917, delta=1e-3)
        with self.assertRaises(ParameterDomainError, msg="delta == delta_err accepted"):
            b.overestimate_tail(0.5, (0.5, 0.5))

    def test_UnderestimateExample(self):
        """Test underestimate tail at delta=0.6 against its closed form"""
        value = b.underestimate_tail(0.6, (0.5, 0.5))
        expected = mp.power(mp.mpf(1) / 6, mp.mpf(4) * mp.mpf(0.6)**2 / (mp.mpf(0.25) * (2 - mp.mpf(0.6))))
        self.assertAlmostEqual(value / float(expected), 1.0, places=12)
        self.assertAlmostEqual(value, 6.29e-4, delta=1e-5)
        for delta in (0.5, 1.0, 1.2):
            with self.assertRaises(ParameterDomainError, msg=f"delta={delta} accepted"):
                b.underestimate_tail(delta, (0.5, 0.5))

    def test_RepeatShortfallExamples(self):
        """Test exp(-k/4) on hand computed values"""
        self.assertAlmostEqual(b.repeat_shortfall_tail(Precision(0.5, 0.5)) * 1296, 1.0, places=12)
        self.assertAlmostEqual(b.repeat_shortfall_tail(Precision(0.999999, 0.9)), 0.3, delta=1e-5)
        tiny = b.repeat_shortfall_tail(Precision(0.1, 0.05))
        self.assertGreater(tiny, 0.0, "(1/60)^100 is representable")
        self.assertAlmostEqual(tiny / float(mp.power(mp.mpf(0.05) / 3, 100)), 1.0, places=10)

    def test_RepeatShortfallClosedForms(self):
        """Test exp(-k/4) and (p/3)^(1/delta²) agree"""
        for delta_err, p_err, _, _ in _random_grid(200, seed=11):
            p = Precision(delta_err, p_err)
            other = (p_err / 3) ** (1 / delta_err**2)
            self.assertAlmostEqual(b.repeat_shortfall_tail(p) / other, 1.0, delta=1e-12)

    def test_FormulaFidelity(self):
        """Test every bound against mpmath at 50 digits on a 200 point grid,
        and that each failure tail stays below p_err/3"""
        grid = _random_grid(200, seed=2024)
        self.assertGreaterEqual(len(grid), 195)

        def close(value, expected, what):
            expected = float(expected)
            self.assertLessEqual(abs(value - expected), 1e-12 * abs(expected), f"{what}: {value} != {expected}")

        for i, (delta_err, p_err, over, under) in enumerate(grid):
            p = Precision(delta_err, p_err)
            d, q = mp.mpf(delta_err), mp.mpf(p_err)
            k = 4 / d**2 * mp.log(3 / q)

            close(b.compute_k_err(p).value, k, f"k_err at {i}")
            n = 10 + 997 * i
            kf = b.compute_k_err(p)
            budget = min(n, 2 * int(mp.ceil(mp.sqrt(mp.mpf(kf.value) * n)))) + int(mp.ceil(mp.mpf(kf.value)))
            self.assertEqual(b.sample_budget(n, kf), budget, f"sample_budget at {i}")

            ef = over * 10
            e = mp.mpf(ef)
            close(b.chernoff_lower_tail(under, ef), mp.exp(-mp.mpf(under)**2 * e / 2), f"lower tail at {i}")
            close(b.chernoff_upper_tail(over, ef), mp.exp(-mp.mpf(over)**2 * e / (2 + mp.mpf(over))), f"upper tail at {i}")

            o = mp.mpf(over)
            over_ref = mp.power(q / 3, 2 * o**2 / (d**2 * (1 + o)))
            close(b.overestimate_tail(over, p), over_ref, f"overestimate tail at {i}")

            u = mp.mpf(under)
            under_ref = mp.power(q / 3, 4 * u**2 / (d**2 * (2 - u)))
            close(b.underestimate_tail(under, p), under_ref, f"underestimate tail at {i}")

            close(b.repeat_shortfall_tail(p), mp.exp(-k / 4), f"repeat shortfall tail at {i}")

            for tail in (b.overestimate_tail(over, p), b.underestimate_tail(under, p), b.repeat_shortfall_tail(p)):
                self.assertLess(tail, p_err / 3, f"tail not dominated by p_err/3 at {i}")

    @settings(max_examples=300, deadline=None)
    @given(st.floats(0.05, 0.95), st.floats(0.01, 0.99), st.floats(0.0, 1.0))
    def test_TailsDominated(self, delta_err, p_err, t):
        """Test the three failure tails are below p_err/3 for any valid setting"""
        p = Precision(delta_err, p_err)
        over = delta_err * (1.001 + 3 * t)
        under = delta_err + (1 - delta_err) * (0.001 + 0.998 * t)
        self.assertLess(b.overestimate_tail(over, p), p_err / 3)
        self.assertLess(b.underestimate_tail(under, p), p_err / 3)
        self.assertLess(b.repeat_shortfall_tail(p), p_err / 3)


if __name__ == "__main__":
    unittest.main()
