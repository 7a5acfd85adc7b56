"""
广义Stieltjes变换求值模块

非整数阶 S^a_{n+α}[f] = naive级数 + 奇异修正项 Δ_sc，
√(ω²+x²) 核的变换，以及小ω下的主导项分析。
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.engine.entire import EntireFunction
from src.engine.fpi import (
    FinitePartValue,
    OracleReport,
    fp_origin_integer_finite,
    fp_origin_integer_infinite,
    fp_origin_noninteger,
    fp_endpoint,
    fp_singular_term,
    has_infinite_closed_form,
)
from src.numerics.quadrature import integrate, integrate_semi_infinite
from src.numerics.series import SeriesControl, check_cancellation, resolve_control, sum_finite, sum_series
from src.numerics.specfun import SQRT_PI, binom_real, gamma, harmonic, inv_factorial
from src.utils.config import config
from src.utils.errors import ConvergenceDomainError, MissingClosedFormError, ValidationError
from src.utils.logger import setup_logger

logger = setup_logger("stieltjes")


@dataclass(frozen=True)
class StieltjesQuery:
    """参数组 (ω, a, n, α)"""
    omega: float
    a: float
    n: int
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValidationError("ω必须为有限正数", {"omega": self.omega})
        if not (self.a > 0) or math.isnan(self.a):
            raise ValidationError("上限a必须为正（可为∞）", {"a": self.a})
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError("n必须是正整数", {"n": self.n})
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError("α必须在 (0, 1) 内", {"alpha": self.alpha})

    @property
    def order(self) -> float:
        """变换阶数 λ = n + α"""
        return self.n + self.alpha

    @property
    def in_convergence_domain(self) -> bool:
        return self.omega < self.a

    def as_dict(self) -> Dict[str, float]:
        return {"omega": self.omega, "a": self.a, "n": self.n, "alpha": self.alpha}


@dataclass
class ExpansionResult:
    """展开式求值结果与诊断"""
    naive_partial_sums: List[float]
    singular_term: float
    total: float
    tail_estimate: float
    terms_used: int
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def naive_sum(self) -> float:
        return self.naive_partial_sums[-1] if self.naive_partial_sums else 0.0


def _naive_budget(ratio: float, control: SeriesControl, power: int = 1) -> Optional[int]:
    """按 (ω/a)^{power·j} 的收敛速度预估naive级数项数"""
    if not 0.0 < ratio < 1.0:
        return None
    tol = max(control.rel_tol, 1e-16)
    factor = config.get("series.budget_factor", 10)
    estimate = factor * math.log(tol) / (power * math.log(ratio))
    return max(int(math.ceil(estimate)), 4 * control.consecutive)


def _check_domain(omega: float, a: float, enforce_domain: bool):
    if enforce_domain and not omega < a:
        raise ConvergenceDomainError(
            f"naive级数只在 ω < a 时收敛 (ω={omega}, a={a})",
            {"omega": omega, "a": a},
        )


def eval_stieltjes(
    f: EntireFunction,
    q: StieltjesQuery,
    control: Optional[SeriesControl] = None,
    enforce_domain: bool = True,
) -> ExpansionResult:
    """
    ∫₀^a f(x)/(ω+x)^{n+α} dx = Σ_j C(-n-α, j) ω^j ⨍₀^a f/x^{n+α+j} dx + Δ_sc

    Args:
        f: 整函数
        q: 参数组
        control: 级数截断控制
        enforce_domain: 为True时 ω ≥ a 直接报错；否则交给截断规则检测发散

    Returns:
        ExpansionResult: naive部分和、奇异项、总值及诊断

    Raises:
        ConvergenceDomainError: ω ≥ a
        MissingClosedFormError: a = ∞ 而函数族没有闭式
        NonConvergenceError: 级数未收敛，或naive部分与奇异项抵消过大
    """
    _check_domain(q.omega, q.a, enforce_domain)
    control = resolve_control(control)
    if f.is_zero:
        return ExpansionResult([0.0], 0.0, 0.0, 0.0, 0)
    if math.isinf(q.a) and not has_infinite_closed_form(f):
        raise MissingClosedFormError(f"{f.name} 没有注册 a=∞ 的闭式", {"function": f.name})

    rho = q.order

    def term(j: int) -> float:
        fp = fp_origin_noninteger(f, q.a, rho + j, control)
        return binom_real(-rho, j) * q.omega ** j * fp.value

    budget = _naive_budget(q.omega / q.a, control)
    naive = sum_series(term, control, label=f"naive[{f.name}]", budget=budget, keep_partials=True)
    singular = fp_singular_term(f, q.omega, q.n, q.alpha, control)
    total = naive.value + singular.value
    magnitude = max(naive.magnitude, abs(singular.value), singular.magnitude)
    loss = check_cancellation(f"S[{f.name}] ω={q.omega}", total, magnitude)
    logger.debug(
        f"S[{f.name}] {q.as_dict()}: naive={naive.value!r} ({naive.terms_used}项), "
        f"Δ_sc={singular.value!r}, total={total!r}"
    )
    return ExpansionResult(
        naive.partial_sums,
        singular.value,
        total,
        naive.tail_estimate + singular.tail_estimate + loss,
        naive.terms_used,
        {"singular_terms": singular.terms_used},
    )


def singular_term_via_reflection(
    f: EntireFunction, q: StieltjesQuery, control: Optional[SeriesControl] = None
) -> FinitePartValue:
    """Δ_sc = -⨍₀^ω f(-x)/(ω-x)^{n+α} dx，经端点有限部分计算"""
    endpoint = fp_endpoint(f.reflect(), q.omega, q.order, control)
    return FinitePartValue(-endpoint.value, endpoint.terms_used, endpoint.tail_estimate)


def _log_points(omega: float, upper: float) -> List[float]:
    """在 ω 的几何倍数处放置断点，帮助自适应积分定位峰值"""
    points = []
    x = omega
    while x < upper:
        points.append(x)
        x *= 10.0
    return points


def stieltjes_quadrature(
    f: EntireFunction, q: StieltjesQuery, tol: Optional[float] = None
) -> OracleReport:
    """直接数值积分 ∫₀^a f(x)/(ω+x)^{n+α} dx"""
    rho = q.order

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return f.evaluate(x) * (q.omega + x) ** (-rho)

    if math.isinf(q.a):
        split = max(1.0, 10.0 * q.omega)
        result = integrate_semi_infinite(integrand, 0.0, tol=tol, split=split, points=_log_points(q.omega, split))
    else:
        result = integrate(integrand, 0.0, q.a, tol=tol, points=_log_points(q.omega, q.a))
    return OracleReport(result.value, result.abs_error_estimate, "quadrature", result.evaluations)


def dominant_term(f: EntireFunction, q: StieltjesQuery) -> Tuple[float, float, str]:
    """
    小ω主导项：零点阶数 m = n-s 时奇异项主导，m = n+r 时naive首项主导

    Returns:
        Tuple[float, float, str]: (系数, ω的幂次, 来源 "singular"/"naive")

    Raises:
        ValidationError: 零函数
    """
    m = f.order_of_zero()
    n, alpha = q.n, q.alpha
    if m < n:
        s = n - m
        d0 = f.coeff(m)
        bracket = math.fsum(
            (-1) ** (m - j) * inv_factorial(j) * inv_factorial(m - j) / (n + alpha - j - 1.0)
            for j in range(m + 1)
        )
        coefficient = d0 * math.factorial(m) * bracket
        return coefficient, -(s + alpha - 1.0), "singular"
    leading = fp_origin_noninteger(f, q.a, q.order)
    return leading.value, 0.0, "naive"


def dominant_prediction(f: EntireFunction, q: StieltjesQuery) -> float:
    """主导项的预测值 coefficient·ω^power"""
    coefficient, power, _ = dominant_term(f, q)
    return coefficient * q.omega ** power


# ---------------------------------------------------------------------------
# √(ω²+x²) 核
# ---------------------------------------------------------------------------

def sqrt_singular_term(
    f: EntireFunction, omega: float, control: Optional[SeriesControl] = None
) -> FinitePartValue:
    """
    √核的奇异修正项：
    -1/(2√π) Σ_j (-1)^j c_{2j} Γ(j+½) ω^{2j}/j! (H_{j-½} - H_j + 2 ln ω)
    - √π/2 Σ_j (-1)^j j! c_{2j+1} ω^{2j+1}/Γ(j+3/2)
    """
    control = resolve_control(control)
    if f.is_zero:
        return FinitePartValue(0.0, 0, 0.0)
    log_omega = math.log(omega)

    def term(j: int) -> float:
        sign = -1.0 if j % 2 else 1.0
        even = f.coeff(2 * j)
        odd = f.coeff(2 * j + 1)
        value = 0.0
        if even != 0.0:
            ratio = gamma(j + 0.5) * inv_factorial(j)
            bracket = harmonic(j - 0.5) - harmonic(j) + 2.0 * log_omega
            value -= sign * even * ratio * omega ** (2 * j) * bracket / (2.0 * SQRT_PI)
        if odd != 0.0:
            ratio = math.factorial(j) / gamma(j + 1.5)
            value -= 0.5 * SQRT_PI * sign * odd * ratio * omega ** (2 * j + 1)
        return value

    if f.is_polynomial:
        return FinitePartValue.from_sum(sum_finite(term(j) for j in range(f.degree // 2 + 1)))
    return FinitePartValue.from_sum(sum_series(term, control, label=f"sqrt_singular[{f.name}]"))


def eval_sqrt_transform(
    f: EntireFunction,
    omega: float,
    a: float,
    control: Optional[SeriesControl] = None,
    enforce_domain: bool = True,
) -> ExpansionResult:
    """
    ∫₀^a f(x)/√(ω²+x²) dx = Σ_k C(-½, k) ω^{2k} ⨍₀^a f/x^{2k+1} dx + Δ_sc

    naive项为整数阶有限部分：a = ∞ 时用高斯族闭式，有限a时用带 ln a 的有限上限公式。

    Args:
        f: 整函数
        omega: ω > 0
        a: 上限（正数或math.inf）
        control: 级数截断控制
        enforce_domain: 为True时 ω ≥ a 直接报错
    """
    if not (math.isfinite(omega) and omega > 0):
        raise ValidationError("ω必须为有限正数", {"omega": omega})
    if not a > 0:
        raise ValidationError("上限a必须为正", {"a": a})
    _check_domain(omega, a, enforce_domain)
    control = resolve_control(control)
    if f.is_zero:
        return ExpansionResult([0.0], 0.0, 0.0, 0.0, 0)

    if math.isinf(a):
        def finite_part(k: int) -> float:
            return fp_origin_integer_infinite(f, 2 * k + 1, control).value
    else:
        def finite_part(k: int) -> float:
            return fp_origin_integer_finite(f, a, 2 * k + 1, control).value

    def term(k: int) -> float:
        return binom_real(-0.5, k) * omega ** (2 * k) * finite_part(k)

    budget = _naive_budget(omega / a, control, power=2)
    naive = sum_series(term, control, label=f"sqrt_naive[{f.name}]", budget=budget, keep_partials=True)
    singular = sqrt_singular_term(f, omega, control)
    total = naive.value + singular.value
    magnitude = max(naive.magnitude, abs(singular.value), singular.magnitude)
    loss = check_cancellation(f"√-transform[{f.name}] ω={omega}", total, magnitude)
    logger.debug(
        f"√-transform[{f.name}] ω={omega} a={a}: naive={naive.value!r}, "
        f"Δ_sc={singular.value!r}, total={total!r}"
    )
    return ExpansionResult(
        naive.partial_sums,
        singular.value,
        total,
        naive.tail_estimate + singular.tail_estimate + loss,
        naive.terms_used,
        {"singular_terms": singular.terms_used},
    )


def sqrt_transform_quadrature(
    f: EntireFunction, omega: float, a: float, tol: Optional[float] = None
) -> OracleReport:
    """直接数值积分 ∫₀^a f(x)/√(ω²+x²) dx"""

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return f.evaluate(x) / np.sqrt(omega * omega + x * x)

    if math.isinf(a):
        split = max(1.0, 10.0 * omega)
        if f.family == "gauss_exp":
            alpha, beta = f.params["alpha"], f.params["beta"]
            split = max(split, beta / (2.0 * alpha) + 10.0 / math.sqrt(alpha))
        result = integrate_semi_infinite(integrand, 0.0, tol=tol, split=split, points=_log_points(omega, split))
    else:
        result = integrate(integrand, 0.0, a, tol=tol, points=_log_points(omega, a))
    return OracleReport(result.value, result.abs_error_estimate, "quadrature", result.evaluations)
