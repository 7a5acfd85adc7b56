"""
₂F₁ 与 Kummer U 展开的测试
"""
import math
import unittest

import numpy as np
from scipy import special

from src.apps.hypergeometric import (
    Gauss2F1Params,
    KummerParams,
    b_coefficient,
    b_coefficient_sum,
    gauss2f1_endpoint_fp,
    gauss2f1_expansion,
    gauss2f1_large_zeta,
    gauss2f1_via_two_2f1,
    gauss2f1_origin_fp,
    gauss2f1_quadrature,
    gauss2f1_via_stieltjes,
    hyp1f1_series,
    hyp2f1_series,
    kummer_endpoint_fp,
    kummer_inner_closed,
    kummer_inner_sum,
    kummer_u,
    kummer_u_2_half,
    kummer_u_leading,
    kummer_u_via_two_1f1,
    kummer_u_quadrature,
    kummer_u_small_omega_limit,
    kummer_u_via_stieltjes,
    m_coefficient,
    m_coefficient_sum,
    hyp2f1_seven_halves_closed_form,
)
from src.engine.entire import beta_poly, power_exp
from src.engine.fpi import fp_endpoint, fp_origin_noninteger
from src.utils.errors import NonConvergenceError, ValidationError

GAUSS_CASES = (
    Gauss2F1Params(1, 0.3, 1, 3, 2.0),
    Gauss2F1Params(2, 0.5, 2, 5, 3.0),
    Gauss2F1Params(1, 0.7, 3, 6, 4.0),
    Gauss2F1Params(3, 0.25, 1, 2, 1.5),
)

KUMMER_CASES = tuple(
    KummerParams(n, alpha, omega)
    for n in (1, 2, 3)
    for alpha in (0.3, 0.5)
    for omega in (0.1, 0.5, 1.0, 2.0)
)


def rel(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


class TestPlainSeries(unittest.TestCase):
    """组装方式所用的超几何幂级数"""

    def test_hyp2f1(self):
        """收敛区内与scipy一致"""
        self.assertLess(rel(hyp2f1_series(0.5, 1.5, 2.5, 0.3), special.hyp2f1(0.5, 1.5, 2.5, 0.3)), 1e-13)
        self.assertLess(rel(hyp2f1_series(2.3, 1.0, 1.4, -0.6), special.hyp2f1(2.3, 1.0, 1.4, -0.6)), 1e-12)

    def test_hyp2f1_terminating(self):
        """a 为非正整数时截断为多项式，|z| 不受限"""
        self.assertLess(rel(hyp2f1_series(-3, 2.0, 1.5, 5.0), special.hyp2f1(-3, 2.0, 1.5, 5.0)), 1e-12)

    def test_hyp2f1_rejects(self):
        """|z| ≥ 1 且不截断，或 c 为非正整数"""
        with self.assertRaises(ValidationError):
            hyp2f1_series(0.5, 1.5, 2.5, -1.5)
        with self.assertRaises(ValidationError):
            hyp2f1_series(0.5, 1.5, -2.0, 0.1)

    def test_hyp1f1(self):
        """₁F₁ 与scipy一致"""
        self.assertLess(rel(hyp1f1_series(1.2, 2.5, 3.0), special.hyp1f1(1.2, 2.5, 3.0)), 1e-12)
        self.assertLess(rel(hyp1f1_series(-0.7, 0.4, -1.5), special.hyp1f1(-0.7, 0.4, -1.5)), 1e-12)


class TestGauss2F1(unittest.TestCase):
    """₂F₁(n+α, r; s; -ζ)"""

    def test_seven_halves_closed_form(self):
        """₂F₁(7/2, 2; 3; -ζ) 的初等闭式"""
        for zeta in (1.5, 2.0, 5.0, 10.0):
            value = gauss2f1_expansion(Gauss2F1Params(3, 0.5, 2, 3, zeta)).value
            self.assertLess(rel(value, hyp2f1_seven_halves_closed_form(zeta)), 1e-10)
            self.assertLess(rel(hyp2f1_seven_halves_closed_form(zeta), special.hyp2f1(3.5, 2.0, 3.0, -zeta)), 1e-10)

    def test_against_scipy(self):
        """与scipy.special.hyp2f1一致"""
        for p in GAUSS_CASES:
            with self.subTest(params=p):
                reference = special.hyp2f1(p.rho, p.r, p.s, -p.zeta)
                self.assertLess(rel(gauss2f1_expansion(p).value, reference), 1e-9)

    def test_two_assemblies_agree(self):
        """展开式与两个 ₂F₁(·;·;-1/ζ) 的组合一致"""
        for p in GAUSS_CASES:
            with self.subTest(params=p):
                self.assertLess(rel(gauss2f1_expansion(p).value, gauss2f1_via_two_2f1(p)), 1e-10)

    def test_generic_route_and_quadrature(self):
        """通用Stieltjes求值与数值积分"""
        for p in GAUSS_CASES:
            with self.subTest(params=p):
                value = gauss2f1_expansion(p).value
                self.assertLess(rel(gauss2f1_via_stieltjes(p).value, value), 1e-9)
                self.assertLess(rel(gauss2f1_quadrature(p), value), 1e-8)

    def test_fixed_terms(self):
        """固定项数时使用的项数"""
        result = gauss2f1_expansion(GAUSS_CASES[1], terms=5)
        self.assertEqual(result.terms_used, 5)
        self.assertEqual(float(result), result.value)

    def test_large_zeta(self):
        """ζ → ∞ 时两项渐近式"""
        p = Gauss2F1Params(1, 0.5, 1, 3, 1e4)
        self.assertLess(rel(gauss2f1_large_zeta(p), gauss2f1_expansion(p).value), 1e-3)

    def test_coefficient_identities(self):
        """b_j、m_j 的定义和等于Γ比"""
        p = Gauss2F1Params(3, 0.5, 2, 5, 2.0)
        for j in range(15):
            self.assertLess(rel(b_coefficient_sum(j, p), b_coefficient(j, p)), 1e-11)
            self.assertLess(rel(m_coefficient_sum(j, 2, 0.3), m_coefficient(j, 2, 0.3)), 1e-11)

    def test_finite_parts_match_engine(self):
        """原点与端点有限部分与通用闭式一致"""
        p = Gauss2F1Params(2, 0.4, 2, 5, 3.0)
        f = beta_poly(p.r, p.s)
        for j in range(4):
            generic = fp_origin_noninteger(f, 1.0, p.rho + j).value
            self.assertAlmostEqual(gauss2f1_origin_fp(j, p), generic, delta=1e-12 * max(1.0, abs(generic)))
        for q in (p, Gauss2F1Params(1, 0.6, 1, 4, 2.5)):
            reflected = beta_poly(q.r, q.s).reflect()
            generic = fp_endpoint(reflected, 1.0 / q.zeta, q.rho).value
            self.assertAlmostEqual(gauss2f1_endpoint_fp(q), generic, delta=1e-10 * max(1.0, abs(generic)))

    def test_invalid_params(self):
        """ζ ≤ 1 或 s ≤ r 被拒绝"""
        with self.assertRaises(ValidationError):
            Gauss2F1Params(1, 0.5, 1, 3, 1.0)
        with self.assertRaises(ValidationError):
            Gauss2F1Params(1, 0.5, 2, 2, 3.0)
        with self.assertRaises(ValidationError):
            Gauss2F1Params(1, 0.0, 1, 2, 3.0)


class TestKummerU(unittest.TestCase):
    """U(n, 1-α, ω)"""

    def test_against_quadrature(self):
        """与积分表示的数值积分一致"""
        for p in KUMMER_CASES:
            with self.subTest(params=p):
                self.assertLess(rel(kummer_u(p).value, kummer_u_quadrature(p)), 1e-8)

    def test_against_scipy(self):
        """与scipy.special.hyperu一致"""
        for p in KUMMER_CASES:
            with self.subTest(params=p):
                reference = special.hyperu(p.n, 1.0 - p.alpha, p.omega)
                self.assertLess(rel(kummer_u(p).value, reference), 1e-6)

    def test_two_assemblies_agree(self):
        """展开式与两个 ₁F₁ 的组合一致"""
        for p in KUMMER_CASES:
            with self.subTest(params=p):
                self.assertLess(rel(kummer_u(p).value, kummer_u_via_two_1f1(p)), 1e-10)

    def test_generic_route(self):
        """通用Stieltjes求值 (a = ∞) 与专用展开一致"""
        for p in (KummerParams(1, 0.5, 0.3), KummerParams(2, 0.25, 1.0), KummerParams(3, 0.6, 0.05)):
            self.assertLess(rel(kummer_u_via_stieltjes(p).value, kummer_u(p).value), 1e-9)

    def test_inner_sum_identity(self):
        """内层和等于 Γ(1-α-n+r)/Γ(1-α+r)"""
        for r in range(12):
            self.assertLess(rel(kummer_inner_sum(r, 3, 0.4), kummer_inner_closed(r, 3, 0.4)), 1e-11)

    def test_endpoint_double_sum(self):
        """端点有限部分的双重和与通用闭式一致"""
        for p in (KummerParams(1, 0.5, 0.3), KummerParams(2, 0.3, 0.8), KummerParams(3, 0.7, 1.5)):
            generic = fp_endpoint(power_exp(p.n).reflect(), p.omega, p.rho).value
            self.assertAlmostEqual(kummer_endpoint_fp(p), generic, delta=1e-10 * max(1.0, abs(generic)))

    def test_two_half_closed_form(self):
        """U(2, ½, ω) 闭式中 erfc 的参数为 √ω"""
        for omega in (0.25, 2.0):
            value = kummer_u(KummerParams(2, 0.5, omega)).value
            self.assertLess(rel(kummer_u_2_half(omega, "sqrt"), value), 1e-10)
            self.assertGreater(rel(kummer_u_2_half(omega, "literal"), value), 1e-3)
        with self.assertRaises(ValidationError):
            kummer_u_2_half(1.0, "erf")

    def test_small_omega_limit(self):
        """ω → 0 时趋于 Γ(α)/Γ(α+n)"""
        p = KummerParams(2, 0.5, 1e-10)
        self.assertLess(rel(kummer_u(p).value, kummer_u_small_omega_limit(p)), 1e-4)

    def test_leading_residual_slope(self):
        """减去两项主导行为后残差 ∝ ω"""
        omegas = np.geomspace(1e-5, 1e-3, 5)
        residuals = []
        for omega in omegas:
            p = KummerParams(2, 0.5, float(omega))
            residuals.append(abs(kummer_u(p).value - kummer_u_leading(p)))
        slope = np.polyfit(np.log(omegas), np.log(residuals), 1)[0]
        self.assertGreater(slope, 0.9)
        self.assertLess(slope, 1.1)

    def test_large_omega(self):
        """ω 增大时仍与hyperu一致；e^ω 项抵消失控时报错"""
        for omega in (3.0, 5.0):
            p = KummerParams(2, 0.5, omega)
            self.assertLess(rel(kummer_u(p).value, special.hyperu(2, 0.5, omega)), 1e-6)
        for omega in (20.0, 30.0):
            with self.assertRaises(NonConvergenceError) as ctx:
                kummer_u(KummerParams(2, 0.5, omega))
            self.assertEqual(ctx.exception.exit_code, 3)
        # 固定项数是显式截断，不做抵消检查
        self.assertEqual(kummer_u(KummerParams(2, 0.5, 20.0), terms=3).terms_used, 3)

    def test_fixed_terms(self):
        """固定项数"""
        self.assertEqual(kummer_u(KummerParams(1, 0.5, 0.5), terms=3).terms_used, 3)

    def test_invalid_params(self):
        """非法参数被拒绝"""
        for args in ((0, 0.5, 1.0), (1, 1.0, 1.0), (1, 0.5, -1.0), (1.5, 0.5, 1.0)):
            with self.assertRaises(ValidationError):
                KummerParams(*args)


if __name__ == "__main__":
    unittest.main()
