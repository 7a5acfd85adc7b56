"""
特殊函数内核的测试，以 scipy.special 为独立参照
"""
import math
import unittest

import numpy as np
from scipy import special

from src.numerics.specfun import (
    EULER_GAMMA,
    binom_real,
    digamma,
    erfc,
    erfc_continued_fraction,
    erfc_series,
    gamma,
    gamma_ratio,
    harmonic,
    inv_factorial,
    lgamma_sign,
    rgamma,
    sin_pi,
)
from src.utils.errors import PoleError, ValidationError


class TestGamma(unittest.TestCase):
    """Γ、1/Γ 与 lnΓ 的测试"""

    def test_positive_arguments(self):
        """正参数与scipy一致"""
        for x in (0.1, 0.5, 1.0, 1.5, 2.75, 10.3, 50.5, 120.25):
            self.assertAlmostEqual(gamma(x) / special.gamma(x), 1.0, delta=1e-13)

    def test_negative_noninteger(self):
        """负非整数参数走反射公式"""
        for x in (-0.5, -1.25, -2.5, -7.3, -20.5):
            self.assertAlmostEqual(gamma(x) / special.gamma(x), 1.0, delta=1e-12)

    def test_poles(self):
        """非正整数处Γ报错，1/Γ 精确为0"""
        for x in (0.0, -1.0, -5.0):
            with self.assertRaises(PoleError):
                gamma(x)
            self.assertEqual(rgamma(x), 0.0)

    def test_lgamma_sign(self):
        """带符号lnΓ与scipy一致"""
        for x in (-3.5, -2.5, -0.5, 0.3, 7.5, 200.5):
            log_abs, sign = lgamma_sign(x)
            self.assertAlmostEqual(log_abs, special.gammaln(x), delta=1e-11 * max(1.0, abs(log_abs)))
            self.assertEqual(sign, np.sign(special.gamma(x)) if x < 171 else 1.0)

    def test_gamma_ratio_large_negative(self):
        """大参数Γ比值通过lnΓ计算，不溢出"""
        a, b = -80.5, -78.5
        # Γ(a)/Γ(b) = 1/((a)(a+1))
        self.assertAlmostEqual(gamma_ratio(a, b), 1.0 / (a * (a + 1.0)), delta=1e-12)
        self.assertAlmostEqual(gamma_ratio(150.5, 149.5), 149.5, delta=1e-9)

    def test_gamma_ratio_pole_in_denominator(self):
        """分母为极点时比值为0，分子为极点时报错"""
        self.assertEqual(gamma_ratio(0.5, -3.0), 0.0)
        with self.assertRaises(PoleError):
            gamma_ratio(-2.0, 0.5)

    def test_inv_factorial(self):
        """1/k! 表内与表外"""
        self.assertEqual(inv_factorial(0), 1.0)
        self.assertAlmostEqual(inv_factorial(10) * math.factorial(10), 1.0, delta=1e-15)
        self.assertAlmostEqual(inv_factorial(180) / math.exp(-special.gammaln(181)), 1.0, delta=1e-12)
        with self.assertRaises(ValidationError):
            inv_factorial(-1)


class TestDigammaHarmonic(unittest.TestCase):
    """ψ与调和数的测试"""

    def test_digamma_against_scipy(self):
        """ψ在正负参数上与scipy一致"""
        for x in (0.01, 0.5, 1.0, 2.5, 9.9, 15.0, 123.4, -0.5, -3.7):
            self.assertAlmostEqual(digamma(x), special.digamma(x), delta=1e-12 * max(1.0, abs(special.digamma(x))))

    def test_digamma_known_values(self):
        """ψ(1) = -γ，ψ(½) = -γ - 2ln2"""
        self.assertAlmostEqual(digamma(1.0), -EULER_GAMMA, places=14)
        self.assertAlmostEqual(digamma(0.5), -EULER_GAMMA - 2.0 * math.log(2.0), places=14)

    def test_harmonic(self):
        """整数调和数精确求和，半整数 H_{-½} = -2ln2"""
        self.assertEqual(harmonic(0), 0.0)
        self.assertAlmostEqual(harmonic(4), 25.0 / 12.0, places=15)
        self.assertAlmostEqual(harmonic(-0.5), -2.0 * math.log(2.0), places=14)
        self.assertAlmostEqual(harmonic(0.5), 2.0 - 2.0 * math.log(2.0), places=14)
        with self.assertRaises(PoleError):
            harmonic(-1.0)


class TestElementary(unittest.TestCase):
    """sin(πx)、二项式系数与erfc"""

    def test_sin_pi_exact_zero(self):
        """整数处精确为0"""
        for x in (0.0, 1.0, -3.0, 40.0):
            self.assertEqual(sin_pi(x), 0.0)
        self.assertAlmostEqual(sin_pi(0.5), 1.0, places=15)

    def test_binom_real(self):
        """实上标二项式系数与scipy.special.binom一致"""
        for mu in (-0.5, -2.5, 1.5):
            for j in range(8):
                self.assertAlmostEqual(binom_real(mu, j), special.binom(mu, j), delta=1e-13)

    def test_erfc(self):
        """erfc在级数区与连分式区都与scipy一致"""
        for x in (-1.5, 0.0, 0.3, 1.0, 1.99, 2.5, 4.0, 8.0):
            reference = special.erfc(x)
            self.assertAlmostEqual(erfc(x) / reference, 1.0, delta=1e-12)

    def test_erfc_two_routes(self):
        """级数与连分式在重叠区一致，远端尾部极小"""
        self.assertAlmostEqual(erfc_series(1.5) / erfc_continued_fraction(1.5), 1.0, delta=1e-12)
        self.assertLess(erfc(10.0), 1e-44)
        self.assertEqual(erfc(0.0), 1.0)


class TestInvariants(unittest.TestCase):
    """递推、反射与Pascal恒等式"""

    def setUp(self):
        self.rng = np.random.default_rng(20240601)

    def test_gamma_recurrence(self):
        """Γ(x+1) = xΓ(x)"""
        for x in self.rng.uniform(0.1, 30.0, 1000):
            upper = gamma(x + 1.0)
            self.assertLess(abs(upper - x * gamma(x)) / abs(upper), 1e-12)

    def test_gamma_reflection(self):
        """Γ(x)Γ(1-x)sin(πx)/π = 1"""
        for x in self.rng.uniform(0.001, 0.999, 200):
            if abs(x - 0.5) < 1e-3:
                continue
            self.assertAlmostEqual(gamma(x) * gamma(1.0 - x) * sin_pi(x) / math.pi, 1.0, delta=1e-11)

    def test_gamma_seeded_recurrence(self):
        """Γ(7.3) 由 Γ(1.3) 逐次递推得到"""
        value = gamma(1.3)
        for k in range(6):
            value *= 1.3 + k
        self.assertAlmostEqual(gamma(7.3) / value, 1.0, delta=1e-13)

    def test_digamma_recurrence(self):
        """ψ(x+1) - ψ(x) = 1/x"""
        for x in self.rng.uniform(0.1, 40.0, 200):
            self.assertAlmostEqual(digamma(x + 1.0) - digamma(x), 1.0 / x, delta=1e-12)
        self.assertAlmostEqual(digamma(5.0), -EULER_GAMMA + 1.0 + 0.5 + 1.0 / 3.0 + 0.25, places=14)

    def test_binom_pascal(self):
        """C(μ, j) = C(μ-1, j) + C(μ-1, j-1)"""
        self.assertEqual(binom_real(-1.5, 0), 1.0)
        self.assertEqual(binom_real(-1.5, 1), -1.5)
        self.assertAlmostEqual(binom_real(-2.5, 3), -6.5625, places=14)
        for mu in self.rng.uniform(-5.0, 5.0, 50):
            for j in range(1, 10):
                value = binom_real(mu, j)
                pascal = binom_real(mu - 1.0, j) + binom_real(mu - 1.0, j - 1)
                self.assertAlmostEqual(value, pascal, delta=1e-12 * max(1.0, abs(value)))
        self.assertAlmostEqual(harmonic(3), 11.0 / 6.0, places=15)


if __name__ == "__main__":
    unittest.main()
