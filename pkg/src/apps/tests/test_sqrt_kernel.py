"""
√(ω²+x²) 核高斯应用与 K₀ 级数的测试
"""
import math
import unittest

import numpy as np
from scipy import special

from src.apps.sqrt_kernel import (
    bessel_k0,
    bessel_k0_classical,
    bessel_k0_leading,
    gaussian_a,
    gaussian_b,
    gaussian_bessel_closed_form,
    gaussian_sqrt,
    gaussian_sqrt_leading,
    gaussian_sqrt_pure,
    gaussian_sqrt_quadrature,
)
from src.engine.entire import gauss_exp
from src.engine.stieltjes import eval_sqrt_transform
from src.utils.errors import NonConvergenceError, ValidationError


def rel(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


class TestGaussianCoefficients(unittest.TestCase):
    """A_j、B_j 与 e^{-αx²+βx} 的Taylor系数"""

    def test_match_taylor_coefficients(self):
        """c_{2j+1} = β^{2j+1}A_j，c_{2j} = β^{2j}B_j"""
        alpha, beta = 1.0, 2.0
        f = gauss_exp(alpha, beta)
        for j in range(7):
            odd = f.coeff(2 * j + 1)
            even = f.coeff(2 * j)
            self.assertAlmostEqual(beta ** (2 * j + 1) * gaussian_a(j, alpha, beta), odd,
                                   delta=1e-13 * max(1.0, abs(odd)))
            self.assertAlmostEqual(beta ** (2 * j) * gaussian_b(j, alpha, beta), even,
                                   delta=1e-13 * max(1.0, abs(even)))

    def test_requires_nonzero_beta(self):
        """β = 0 时 A_j、B_j 没有定义"""
        with self.assertRaises(ValidationError):
            gaussian_a(1, 1.0, 0.0)
        with self.assertRaises(ValidationError):
            gaussian_b(1, 1.0, 0.0)


class TestGaussianSqrt(unittest.TestCase):
    """∫₀^∞ e^{-αx²+βx}/√(ω²+x²) dx"""

    def test_against_quadrature(self):
        """α = 1, β = 2 与数值积分一致"""
        for omega in (0.02, 0.05, 0.1):
            value = gaussian_sqrt(1.0, 2.0, omega).value
            self.assertLess(rel(value, gaussian_sqrt_quadrature(1.0, 2.0, omega)), 1e-8)

    def test_negative_beta(self):
        """β < 0 同样成立"""
        value = gaussian_sqrt(0.5, -1.0, 0.1).value
        self.assertLess(rel(value, gaussian_sqrt_quadrature(0.5, -1.0, 0.1)), 1e-8)

    def test_matches_generic_transform(self):
        """专用组装与通用√核求值一致"""
        for omega in (0.05, 0.2):
            generic = eval_sqrt_transform(gauss_exp(1.0, 2.0), omega, math.inf).total
            self.assertLess(rel(gaussian_sqrt(1.0, 2.0, omega).value, generic), 1e-10)

    def test_pure_gaussian(self):
        """β = 0：通用展开、专用展开与Bessel闭式一致"""
        for alpha in (0.5, 2.0):
            for omega in (0.1, 0.5):
                closed = gaussian_bessel_closed_form(alpha, omega)
                self.assertLess(rel(gaussian_sqrt(alpha, 0.0, omega).value, closed), 1e-10)
                self.assertLess(rel(gaussian_sqrt_pure(alpha, omega).value, closed), 1e-10)

    def test_bessel_closed_form_against_scipy(self):
        """½e^{h}K₀(h) 与scipy.special.k0e一致"""
        for alpha, omega in ((1.0, 0.1), (2.0, 0.7)):
            half = 0.5 * alpha * omega * omega
            self.assertLess(rel(gaussian_bessel_closed_form(alpha, omega), 0.5 * special.k0e(half)), 1e-12)

    def test_leading_behaviour_pure(self):
        """β = 0 时主导行为 -½(ln(αω²/4) + γ)"""
        omega = 1e-3
        residual = abs(gaussian_bessel_closed_form(1.0, omega) - gaussian_sqrt_leading(1.0, 0.0, omega))
        self.assertLess(residual, 1e-5)

    def test_leading_residual_slope(self):
        """扣除主导行为与 ω² ln ω 项后残差 ∝ ω²"""
        alpha, beta = 1.0, 2.0
        c2 = 0.5 * beta * beta - alpha
        omegas = np.geomspace(0.01, 0.1, 5)
        residuals = []
        for omega in omegas:
            value = gaussian_sqrt(alpha, beta, float(omega)).value
            leading = gaussian_sqrt_leading(alpha, beta, float(omega))
            residuals.append(abs(value - leading - 0.5 * c2 * omega * omega * math.log(omega)))
        slope = np.polyfit(np.log(omegas), np.log(residuals), 1)[0]
        self.assertGreater(slope, 1.8)
        self.assertLess(slope, 2.2)

    def test_large_omega(self):
        """ω = 2 仍与数值积分一致；ω ≥ 5 抵消失控时报错"""
        self.assertLess(rel(gaussian_sqrt(1.0, 2.0, 2.0).value, gaussian_sqrt_quadrature(1.0, 2.0, 2.0)), 1e-8)
        for omega in (5.0, 8.0):
            with self.assertRaises(NonConvergenceError):
                gaussian_sqrt(1.0, 2.0, omega)
        with self.assertRaises(NonConvergenceError):
            gaussian_sqrt_pure(1.0, 6.0)

    def test_fixed_terms(self):
        """固定项数"""
        self.assertEqual(gaussian_sqrt(1.0, 2.0, 0.1, terms=4).terms_used, 4)

    def test_invalid(self):
        """α ≤ 0 或 ω ≤ 0 被拒绝"""
        with self.assertRaises(ValidationError):
            gaussian_sqrt(0.0, 1.0, 0.1)
        with self.assertRaises(ValidationError):
            gaussian_sqrt(1.0, 1.0, -0.1)


class TestBesselK0(unittest.TestCase):
    """K₀ 的级数"""

    def test_against_scipy(self):
        """与scipy.special.k0一致"""
        for x in (0.01, 0.1, 0.5, 1.0, 2.0, 4.0):
            self.assertLess(rel(bessel_k0(x).value, special.k0(x)), 1e-9)

    def test_classical_series(self):
        """经典 I₀/调和数级数"""
        for x in (0.1, 1.0, 3.0):
            self.assertLess(rel(bessel_k0_classical(x), special.k0(x)), 1e-12)

    def test_small_argument(self):
        """小x时 K₀ ≈ -ln(x/2) - γ"""
        x = 1e-3
        self.assertLess(abs(bessel_k0(x).value - bessel_k0_leading(x)), 1e-5)

    def test_large_argument_rejected(self):
        """超过可用范围时报告不收敛"""
        with self.assertRaises(NonConvergenceError) as ctx:
            bessel_k0(6.0)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_invalid_argument(self):
        """x ≤ 0 被拒绝"""
        with self.assertRaises(ValidationError):
            bessel_k0(0.0)
        with self.assertRaises(ValidationError):
            bessel_k0_leading(-1.0)


if __name__ == "__main__":
    unittest.main()
