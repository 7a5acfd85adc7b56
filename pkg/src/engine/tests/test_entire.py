"""
整函数表示的测试
"""
import json
import math
import os
import tempfile
import unittest

import numpy as np

from src.engine.entire import (
    beta_poly,
    builtin_library,
    exp_neg,
    from_coefficient_list,
    gauss_exp,
    load_coefficient_file,
    monomial,
    parse_function_spec,
    power_exp,
    shift,
    shifted_coefficient,
    zero,
)
from src.utils.errors import ValidationError


class TestCoefficients(unittest.TestCase):
    """Taylor系数流的测试"""

    def test_exp_neg(self):
        """e^{-x} 的系数为 (-1)^k/k!"""
        f = exp_neg()
        for k in range(10):
            self.assertAlmostEqual(f.coeff(k), (-1) ** k / math.factorial(k), places=16)

    def test_power_exp_zero_order(self):
        """x^{n-1}e^{-x} 的前 n-1 个系数为零"""
        f = power_exp(3)
        self.assertEqual(f.coeff(0), 0.0)
        self.assertEqual(f.coeff(1), 0.0)
        self.assertEqual(f.coeff(2), 1.0)
        self.assertEqual(f.coeff(3), -1.0)
        self.assertEqual(f.order_of_zero(), 2)

    def test_gauss_exp_cauchy_product(self):
        """e^{-x²+2x}：c₂ = 1，c₃ = -2/3"""
        f = gauss_exp(1.0, 2.0)
        self.assertAlmostEqual(f.coeff(0), 1.0, places=15)
        self.assertAlmostEqual(f.coeff(1), 2.0, places=15)
        self.assertAlmostEqual(f.coeff(2), 1.0, places=15)
        self.assertAlmostEqual(f.coeff(3), -2.0 / 3.0, places=15)

    def test_beta_poly_degree(self):
        """x(1-x) 与 x(1-x)² 的次数与系数"""
        f = beta_poly(2, 4)
        self.assertEqual(f.degree, 2)
        np.testing.assert_allclose(f.coefficients(4), [0.0, 1.0, -1.0, 0.0])
        np.testing.assert_allclose(beta_poly(2, 5).coefficients(5), [0.0, 1.0, -2.0, 1.0, 0.0])
        self.assertEqual(f.order_of_zero(), 1)

    def test_evaluate_matches_coefficients(self):
        """闭式求值与系数求和一致"""
        x = np.linspace(-1.0, 2.0, 7)
        for f in (exp_neg(), power_exp(2), gauss_exp(0.5, 1.0)):
            np.testing.assert_allclose(f(x), f.taylor_partial(x, 60), rtol=1e-13, atol=1e-15)

    def test_zero_function(self):
        """零函数没有零点阶数"""
        f = zero()
        self.assertTrue(f.is_zero)
        self.assertEqual(f.coeff(5), 0.0)
        with self.assertRaises(ValidationError):
            f.order_of_zero()

    def test_invalid_constructors(self):
        """非法参数被拒绝"""
        with self.assertRaises(ValidationError):
            power_exp(0)
        with self.assertRaises(ValidationError):
            beta_poly(3, 3)
        with self.assertRaises(ValidationError):
            gauss_exp(-1.0)
        with self.assertRaises(ValidationError):
            monomial(-2)


class TestShiftAndReflect(unittest.TestCase):
    """平移展开与反射视图"""

    def test_shift_exp_neg(self):
        """e^{-x} 在x0处的平移系数为 e^{-x0}(-1)^k/k!"""
        x0 = -0.7
        expansion = shift(exp_neg(), x0, 8)
        expected = [math.exp(-x0) * (-1) ** k / math.factorial(k) for k in range(9)]
        np.testing.assert_allclose(expansion.coefficients, expected, rtol=1e-14)

    def test_shift_polynomial_exact(self):
        """x(1-x)² 在1处展开为 y² + y³"""
        expansion = shift(beta_poly(2, 5), 1.0, 3)
        np.testing.assert_allclose(expansion.coefficients, [0.0, 0.0, 1.0, 1.0], atol=1e-15)
        g = expansion.as_function()
        self.assertAlmostEqual(g(0.5), 0.25 + 0.125, places=15)

    def test_shift_composition(self):
        """shift(shift(f, u), v) 与 shift(f, u+v) 的系数一致"""
        rng = np.random.default_rng(20240601)
        for f in (exp_neg(), beta_poly(2, 5), monomial(4)):
            for u, v in rng.uniform(-1.0, 1.0, (4, 2)):
                with self.subTest(function=f.name, u=u, v=v):
                    composed = shift(shift(f, u, 40).as_function(), v, 10).coefficients
                    direct = shift(f, u + v, 10).coefficients
                    np.testing.assert_allclose(composed, direct, rtol=1e-10, atol=1e-13)

    def test_shifted_coefficient_origin(self):
        """x0 = 0 时就是原系数"""
        f = gauss_exp(1.0, 2.0)
        self.assertEqual(shifted_coefficient(f, 0.0, 3), f.coeff(3))

    def test_reflect(self):
        """f(-x) 的系数和值"""
        f = exp_neg()
        g = f.reflect()
        self.assertAlmostEqual(g.coeff(3), 1.0 / 6.0, places=16)
        self.assertAlmostEqual(float(g(1.0)), math.e, places=14)

    def test_reflect_about(self):
        """g(c-x) 的系数与直接求值一致"""
        c = 0.8
        f = gauss_exp(1.0, 2.0)
        h = f.reflect_about(c)
        x = np.array([0.0, 0.3, 0.8])
        np.testing.assert_allclose(h(x), f(c - x), rtol=1e-14)
        np.testing.assert_allclose(h.taylor_partial(x, 40), f(c - x), rtol=1e-12)


class TestRegistry(unittest.TestCase):
    """函数注册表与系数文件"""

    def test_parse_builtin(self):
        """注册名解析"""
        self.assertEqual(parse_function_spec("exp_neg").name, "exp_neg")
        self.assertEqual(parse_function_spec("power_exp[2]").params, {"n": 2})
        f = parse_function_spec("gauss_exp[1, 2]")
        self.assertEqual(f.params, {"alpha": 1.0, "beta": 2.0})
        self.assertIn("beta_poly", builtin_library())

    def test_parse_errors(self):
        """未知函数族与参数个数错误"""
        with self.assertRaises(ValidationError):
            parse_function_spec("cosine")
        with self.assertRaises(ValidationError):
            parse_function_spec("power_exp[1,2]")
        with self.assertRaises(ValidationError):
            parse_function_spec("power_exp[x]")

    def test_coefficient_list(self):
        """(k, c_k) 对构造多项式"""
        f = from_coefficient_list([(0, 1.0), (3, -2.0)], name="cubic")
        self.assertEqual(f.degree, 3)
        self.assertAlmostEqual(float(f(2.0)), 1.0 - 16.0, places=14)
        with self.assertRaises(ValidationError):
            from_coefficient_list([(-1, 1.0)])

    def test_load_text_and_json(self):
        """纯文本与JSON两种系数文件"""
        with tempfile.TemporaryDirectory() as tmp:
            text_path = os.path.join(tmp, "poly.txt")
            with open(text_path, "w", encoding="utf-8") as fh:
                fh.write("# 1 + x²\n0 1.0\n2 1.0\n")
            json_path = os.path.join(tmp, "poly.json")
            with open(json_path, "w", encoding="utf-8") as fh:
                json.dump([[0, 1.0], [2, 1.0]], fh)

            for path in (text_path, json_path):
                f = parse_function_spec("@" + path)
                self.assertEqual(f.degree, 2)
                self.assertAlmostEqual(float(f(3.0)), 10.0, places=14)

            bad = os.path.join(tmp, "bad.txt")
            with open(bad, "w", encoding="utf-8") as fh:
                fh.write("0 1 2\n")
            with self.assertRaises(ValidationError):
                load_coefficient_file(bad)


if __name__ == "__main__":
    unittest.main()
