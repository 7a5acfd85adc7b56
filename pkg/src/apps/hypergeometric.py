"""
超几何函数应用

Gauss ₂F₁(n+α, r; s; -ζ) 与 Kummer U(n, 1-α, ω) 的有限部分积分展开，
每个展开都带有独立的对照路径（另一种组装方式、通用Stieltjes求值、数值积分）。
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.engine.entire import beta_poly, power_exp
from src.engine.stieltjes import StieltjesQuery, eval_stieltjes, stieltjes_quadrature
from src.numerics.quadrature import integrate_semi_infinite
from src.numerics.series import (
    SeriesControl,
    check_cancellation,
    resolve_control,
    sum_finite,
    sum_series,
    sum_terms,
)
from src.numerics.specfun import erfc, gamma, gamma_ratio, inv_factorial, rgamma
from src.utils.errors import ValidationError
from src.utils.logger import setup_logger

logger = setup_logger("hypergeometric")


@dataclass(frozen=True)
class AppResult:
    """应用层求值结果"""
    value: float
    terms_used: int

    def __float__(self) -> float:
        return self.value


def _check_positive_int(name: str, value, minimum: int = 1):
    if int(value) != value or value < minimum:
        raise ValidationError(f"{name} 必须是 ≥ {minimum} 的整数", {name: value})


def _check_alpha(alpha: float):
    if not 0.0 < alpha < 1.0:
        raise ValidationError("α必须在 (0, 1) 内", {"alpha": alpha})


# ---------------------------------------------------------------------------
# 纯超几何级数（仅用于另一种组装方式）
# ---------------------------------------------------------------------------

def _nonpositive_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def hyp2f1_series(a: float, b: float, c: float, z: float, control: Optional[SeriesControl] = None) -> float:
    """
    ₂F₁(a, b; c; z) 的幂级数，要求 |z| < 1 或级数截断为多项式
    """
    if _nonpositive_int(c):
        raise ValidationError("₂F₁ 的 c 不能是非正整数", {"c": c})
    terminating = [int(-x) for x in (a, b) if _nonpositive_int(x)]
    if not terminating and not abs(z) < 1.0:
        raise ValidationError("₂F₁ 幂级数要求 |z| < 1", {"z": z})

    state = {"term": 1.0}

    def term(k: int) -> float:
        if k > 0:
            state["term"] *= (a + k - 1) * (b + k - 1) / ((c + k - 1) * k) * z
        return state["term"]

    if terminating:
        return sum_finite(term(k) for k in range(min(terminating) + 1)).value
    return sum_series(term, resolve_control(control), label="2F1").value


def hyp1f1_series(a: float, b: float, z: float, control: Optional[SeriesControl] = None) -> float:
    """₁F₁(a; b; z) 的幂级数"""
    if _nonpositive_int(b):
        raise ValidationError("₁F₁ 的 b 不能是非正整数", {"b": b})
    state = {"term": 1.0}

    def term(k: int) -> float:
        if k > 0:
            state["term"] *= (a + k - 1) / ((b + k - 1) * k) * z
        return state["term"]

    if _nonpositive_int(a):
        return sum_finite(term(k) for k in range(int(-a) + 1)).value
    return sum_series(term, resolve_control(control), label="1F1").value


# ---------------------------------------------------------------------------
# Gauss ₂F₁(n+α, r; s; -ζ)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gauss2F1Params:
    """₂F₁(n+α, r; s; -ζ) 的参数"""
    n: int
    alpha: float
    r: int
    s: int
    zeta: float

    def __post_init__(self):
        _check_positive_int("n", self.n)
        _check_positive_int("r", self.r)
        _check_positive_int("s", self.s, self.r + 1)
        _check_alpha(self.alpha)
        if not (math.isfinite(self.zeta) and self.zeta > 1.0):
            raise ValidationError("ζ必须大于1", {"zeta": self.zeta})

    @property
    def rho(self) -> float:
        return self.n + self.alpha

    @property
    def prefactor(self) -> float:
        """积分表示前的因子 (s-1)!/((r-1)!(s-r-1)! ζ^{n+α})"""
        return (
            math.factorial(self.s - 1)
            * inv_factorial(self.r - 1)
            * inv_factorial(self.s - self.r - 1)
            / self.zeta ** self.rho
        )


def b_coefficient(j: int, p: Gauss2F1Params) -> float:
    """b_j = Γ(r-n-α-j)/Γ(s-n-α-j)"""
    return gamma_ratio(p.r - p.rho - j, p.s - p.rho - j)


def b_coefficient_sum(j: int, p: Gauss2F1Params) -> float:
    """b_j 的定义和 Σ_k (-1)^k/(k!(s-r-1-k)!(k-n-α-j+r))"""
    top = p.s - p.r - 1
    return math.fsum(
        (-1) ** k * inv_factorial(k) * inv_factorial(top - k) / (k - p.rho - j + p.r)
        for k in range(top + 1)
    )


def m_coefficient(j: int, n: int, alpha: float) -> float:
    """m_j = Γ(1-n-α)/Γ(2+j-n-α)"""
    rho = n + alpha
    return gamma_ratio(1.0 - rho, 2.0 + j - rho)


def m_coefficient_sum(j: int, n: int, alpha: float) -> float:
    """m_j 的定义和 Σ_{k≤j} (-1)^k/(k!(k+1-n-α)(j-k)!)"""
    rho = n + alpha
    return math.fsum(
        (-1) ** k * inv_factorial(k) * inv_factorial(j - k) / (k + 1.0 - rho) for k in range(j + 1)
    )


def gauss2f1_origin_fp(j: int, p: Gauss2F1Params) -> float:
    """⨍₀¹ x^{r-1}(1-x)^{s-r-1}/x^{n+α+j} dx = (s-r-1)!·b_j"""
    return math.factorial(p.s - p.r - 1) * b_coefficient_sum(j, p)


def gauss2f1_endpoint_fp(p: Gauss2F1Params) -> float:
    """
    ⨍₀^{1/ζ} (-x)^{r-1}(1+x)^{s-r-1}/(1/ζ-x)^{n+α} dx
    = (s-r-1)! ζ^{n+α-1} Σ_{j=r-1}^{s-2} (-1)^{r-1} m_j j!/((j-r+1)!(s-j-2)! ζ^j)
    """
    sign = -1.0 if (p.r - 1) % 2 else 1.0
    total = math.fsum(
        sign * m_coefficient(j, p.n, p.alpha) * math.factorial(j)
        * inv_factorial(j - p.r + 1) * inv_factorial(p.s - j - 2) / p.zeta ** j
        for j in range(p.r - 1, p.s - 1)
    )
    return math.factorial(p.s - p.r - 1) * p.zeta ** (p.rho - 1.0) * total


def gauss2f1_expansion(
    p: Gauss2F1Params,
    terms: Optional[int] = None,
    control: Optional[SeriesControl] = None,
) -> AppResult:
    """
    ₂F₁(n+α, r; s; -ζ) 的有限部分积分展开：
    无穷j级数（naive部分）加 j = 0..s-r-1 的有限和（奇异部分）

    Args:
        p: 参数
        terms: 固定的无穷级数项数，缺省时按截断规则
        control: 级数截断控制
    """
    rho = p.rho
    lead = math.factorial(p.s - 1) * inv_factorial(p.r - 1)
    inv_zeta = 1.0 / p.zeta

    def term(j: int) -> float:
        # Γ(1-ρ)/(Γ(1-ρ-j) j!) = C(-ρ, j)
        weight = gamma_ratio(1.0 - rho, 1.0 - rho - j) * inv_factorial(j)
        return weight * b_coefficient(j, p) * inv_zeta ** j

    naive = sum_terms(term, control, terms, "2F1 naive")
    first = lead * naive.value / p.zeta ** rho

    sign = -1.0 if p.r % 2 else 1.0
    finite = math.fsum(
        math.factorial(j + p.r - 1) * inv_factorial(j) * inv_factorial(p.s - j - p.r - 1)
        * rgamma(j + p.r - rho + 1.0) * inv_zeta ** j
        for j in range(p.s - p.r)
    )
    second = sign * lead * gamma(1.0 - rho) * finite / p.zeta ** p.r
    logger.debug(f"2F1 {p}: naive={first!r} ({naive.terms_used}项), singular={second!r}")
    return AppResult(first + second, naive.terms_used)


def gauss2f1_via_two_2f1(p: Gauss2F1Params, control: Optional[SeriesControl] = None) -> float:
    """两个 ₂F₁(·;·;-1/ζ) 的组合形式"""
    rho = p.rho
    z = -1.0 / p.zeta
    fact = math.factorial(p.s - 1)
    first = (
        fact * inv_factorial(p.r - 1) * gamma_ratio(p.r - rho, p.s - rho) / p.zeta ** rho
        * hyp2f1_series(rho, rho - p.s + 1, rho - p.r + 1, z, control)
    )
    sign = -1.0 if p.r % 2 else 1.0
    second = (
        sign * fact * inv_factorial(p.s - p.r - 1) * gamma_ratio(1.0 - rho, p.r + 1.0 - rho)
        / p.zeta ** p.r
        * hyp2f1_series(p.r, p.r - p.s + 1, p.r - rho + 1, z, control)
    )
    return first + second


def gauss2f1_via_stieltjes(p: Gauss2F1Params, control: Optional[SeriesControl] = None) -> AppResult:
    """通用路径：对 x^{r-1}(1-x)^{s-r-1} 在 [0, 1] 上做Stieltjes展开"""
    query = StieltjesQuery(1.0 / p.zeta, 1.0, p.n, p.alpha)
    result = eval_stieltjes(beta_poly(p.r, p.s), query, control)
    return AppResult(p.prefactor * result.total, result.terms_used)


def gauss2f1_large_zeta(p: Gauss2F1Params) -> float:
    """ζ → ∞ 的两项渐近式"""
    rho = p.rho
    fact = math.factorial(p.s - 1)
    first = fact * inv_factorial(p.r - 1) * gamma_ratio(p.r - rho, p.s - rho) / p.zeta ** rho
    sign = -1.0 if p.r % 2 else 1.0
    second = (
        sign * fact * inv_factorial(p.s - p.r - 1) * gamma_ratio(1.0 - rho, p.r - rho + 1.0)
        / p.zeta ** p.r
    )
    return first + second


def gauss2f1_quadrature(p: Gauss2F1Params, tol: Optional[float] = None) -> float:
    """积分表示的数值积分对照"""
    query = StieltjesQuery(1.0 / p.zeta, 1.0, p.n, p.alpha)
    return p.prefactor * stieltjes_quadrature(beta_poly(p.r, p.s), query, tol).value


def hyp2f1_seven_halves_closed_form(zeta: float) -> float:
    """₂F₁(7/2, 2; 3; -ζ) = 4/(15ζ²)[2 - (2+5ζ)(1+ζ)^{-5/2}]"""
    return 4.0 / (15.0 * zeta ** 2) * (2.0 - (2.0 + 5.0 * zeta) * (1.0 + zeta) ** -2.5)


# ---------------------------------------------------------------------------
# Kummer U(n, 1-α, ω)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KummerParams:
    """U(n, 1-α, ω) 的参数"""
    n: int
    alpha: float
    omega: float

    def __post_init__(self):
        _check_positive_int("n", self.n)
        _check_alpha(self.alpha)
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValidationError("ω必须为有限正数", {"omega": self.omega})

    @property
    def rho(self) -> float:
        return self.n + self.alpha

    @property
    def prefactor(self) -> float:
        """积分表示前的因子 ω^α/(n-1)!"""
        return self.omega ** self.alpha * inv_factorial(self.n - 1)


def kummer_inner_sum(r: int, n: int, alpha: float) -> float:
    """Σ_l (-1)^l/((r+l-α-n+1) l! (n-l-1)!)"""
    return math.fsum(
        (-1) ** l * inv_factorial(l) * inv_factorial(n - l - 1) / (r + l - alpha - n + 1.0)
        for l in range(n)
    )


def kummer_inner_closed(r: int, n: int, alpha: float) -> float:
    """Γ(1-α-n+r)/Γ(1-α+r)"""
    return gamma_ratio(1.0 - alpha - n + r, 1.0 - alpha + r)


def kummer_endpoint_fp(p: KummerParams, control: Optional[SeriesControl] = None) -> float:
    """
    ⨍₀^ω e^x(-x)^{n-1}/(ω-x)^{n+α} dx 的双重和形式，
    内层和在此逐项求和而不用Γ比闭式
    """
    omega = p.omega

    def term(r: int) -> float:
        sign = -1.0 if r % 2 else 1.0
        return sign * omega ** r * inv_factorial(r) * kummer_inner_sum(r, p.n, p.alpha)

    outer = sum_series(term, resolve_control(control), label="kummer endpoint")
    sign = -1.0 if (p.n - 1) % 2 else 1.0
    return sign * math.exp(omega) * math.factorial(p.n - 1) * omega ** (-p.alpha) * outer.value


def kummer_u(
    p: KummerParams,
    terms: Optional[int] = None,
    control: Optional[SeriesControl] = None,
) -> AppResult:
    """
    U(n, 1-α, ω) 的精确展开：
    -π ω^α Γ(1-n-α)/(sin(πα)(n-1)!) Σ_j (-1)^j ω^j/(Γ(1-n-α-j)Γ(j+α+1) j!)
    + (-1)^n e^ω Σ_r (-1)^r Γ(1-α-n+r)/Γ(1-α+r) ω^r/r!
    """
    rho, alpha, omega = p.rho, p.alpha, p.omega

    def naive_term(j: int) -> float:
        sign = -1.0 if j % 2 else 1.0
        return (
            sign * gamma_ratio(1.0 - rho, 1.0 - rho - j) * rgamma(j + alpha + 1.0)
            * omega ** j * inv_factorial(j)
        )

    def singular_term(r: int) -> float:
        sign = -1.0 if r % 2 else 1.0
        return sign * kummer_inner_closed(r, p.n, alpha) * omega ** r * inv_factorial(r)

    naive = sum_terms(naive_term, control, terms, "kummer naive")
    singular = sum_terms(singular_term, control, terms, "kummer singular")
    naive_scale = math.pi * omega ** alpha / math.sin(math.pi * alpha) * inv_factorial(p.n - 1)
    singular_scale = math.exp(omega)
    first = -naive_scale * naive.value
    second = (-1.0 if p.n % 2 else 1.0) * singular_scale * singular.value
    if terms is None:
        magnitude = max(naive_scale * naive.magnitude, singular_scale * singular.magnitude)
        check_cancellation(f"U{p}", first + second, magnitude)
    logger.debug(f"U{p}: naive={first!r}, singular={second!r}")
    return AppResult(first + second, max(naive.terms_used, singular.terms_used))


def kummer_u_via_two_1f1(p: KummerParams, control: Optional[SeriesControl] = None) -> float:
    """两个 ₁F₁ 的组合形式"""
    rho, alpha, omega = p.rho, p.alpha, p.omega
    first = (
        -math.pi * omega ** alpha / math.sin(math.pi * alpha)
        * inv_factorial(p.n - 1) * rgamma(1.0 + alpha)
        * hyp1f1_series(rho, 1.0 + alpha, omega, control)
    )
    second = (
        (-1.0 if p.n % 2 else 1.0) * math.exp(omega) * gamma_ratio(1.0 - rho, 1.0 - alpha)
        * hyp1f1_series(1.0 - rho, 1.0 - alpha, -omega, control)
    )
    return first + second


def kummer_u_via_stieltjes(p: KummerParams, control: Optional[SeriesControl] = None) -> AppResult:
    """通用路径：对 e^{-x}x^{n-1} 做 a = ∞ 的Stieltjes展开"""
    query = StieltjesQuery(p.omega, math.inf, p.n, p.alpha)
    result = eval_stieltjes(power_exp(p.n), query, control)
    return AppResult(p.prefactor * result.total, result.terms_used)


def kummer_u_quadrature(p: KummerParams, tol: Optional[float] = None) -> float:
    """U = ω^α/(n-1)! ∫₀^∞ e^{-x}x^{n-1}/(ω+x)^{n+α} dx 的数值积分"""
    rho, omega, n = p.rho, p.omega, p.n

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-x) * x ** (n - 1) * (omega + x) ** (-rho)

    points = [omega] if omega < 1.0 else None
    split = max(1.0, 2.0 * omega)
    return p.prefactor * integrate_semi_infinite(integrand, 0.0, tol=tol, split=split, points=points).value


def kummer_u_leading(p: KummerParams) -> float:
    """
    小ω两项行为 Γ(-α)ω^α/(n-1)! + e^ω Γ(α)/Γ(α+n)

    第一项系数取展开式 j = 0 项的精确值 -π/(sin(πα)(n-1)!Γ(1+α))。
    """
    alpha, omega = p.alpha, p.omega
    singular = gamma(-alpha) * omega ** alpha * inv_factorial(p.n - 1)
    regular = math.exp(omega) * gamma_ratio(alpha, alpha + p.n)
    return singular + regular


def kummer_u_small_omega_limit(p: KummerParams) -> float:
    """ω → 0 的极限 Γ(1-b)/Γ(1+a-b) = Γ(α)/Γ(α+n)"""
    return gamma_ratio(p.alpha, p.alpha + p.n)


def kummer_u_2_half(omega: float, variant: str = "sqrt") -> float:
    """
    U(2, ½, ω) = -(2/3)[√(πω) e^ω (2ω+3) erfc(·) - 2(ω+1)]

    Args:
        omega: ω > 0
        variant: "sqrt" 使用 erfc(√ω)，"literal" 使用 erfc(ω)
    """
    if variant == "sqrt":
        argument = math.sqrt(omega)
    elif variant == "literal":
        argument = omega
    else:
        raise ValidationError(f"未知的erfc变体: {variant}", {"known": ["sqrt", "literal"]})
    return -(2.0 / 3.0) * (
        math.sqrt(math.pi * omega) * math.exp(omega) * (2.0 * omega + 3.0) * erfc(argument)
        - 2.0 * (omega + 1.0)
    )
