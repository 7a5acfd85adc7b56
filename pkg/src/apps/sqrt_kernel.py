"""
√(ω²+x²) 核的高斯应用

∫₀^∞ e^{-αx²+βx}/√(ω²+x²) dx 的展开、小ω主导行为，
以及 β = 0 时与 K₀ 的联系。
"""
import math
from typing import Optional

from src.apps.hypergeometric import AppResult
from src.engine.entire import gauss_exp
from src.engine.fpi import fp_gaussian_odd_three_sum
from src.engine.stieltjes import sqrt_transform_quadrature
from src.numerics.series import SeriesControl, check_cancellation, resolve_control, sum_series, sum_terms
from src.numerics.specfun import (
    EULER_GAMMA,
    SQRT_PI,
    binom_real,
    digamma,
    gamma,
    harmonic,
    inv_factorial,
)
from src.utils.config import config
from src.utils.errors import NonConvergenceError, ValidationError
from src.utils.logger import setup_logger

logger = setup_logger("sqrt_kernel")


def _check_gaussian(alpha: float, beta: float, omega: Optional[float] = None):
    if not (math.isfinite(alpha) and alpha > 0):
        raise ValidationError("高斯参数α必须为有限正数", {"alpha": alpha})
    if not math.isfinite(beta):
        raise ValidationError("β必须有限", {"beta": beta})
    if omega is not None and not (math.isfinite(omega) and omega > 0):
        raise ValidationError("ω必须为有限正数", {"omega": omega})


def gaussian_a(j: int, alpha: float, beta: float) -> float:
    """A_j = Σ_{n≤j} (-α/β²)^n/((2j-2n+1)! n!)，要求 β ≠ 0"""
    if beta == 0.0:
        raise ValidationError("A_j 要求 β ≠ 0", {"beta": beta})
    ratio = -alpha / (beta * beta)
    return math.fsum(
        ratio ** n * inv_factorial(2 * j - 2 * n + 1) * inv_factorial(n) for n in range(j + 1)
    )


def gaussian_b(j: int, alpha: float, beta: float) -> float:
    """B_j = Σ_{n≤j} (-α/β²)^n/((2j-2n)! n!)，要求 β ≠ 0"""
    if beta == 0.0:
        raise ValidationError("B_j 要求 β ≠ 0", {"beta": beta})
    ratio = -alpha / (beta * beta)
    return math.fsum(
        ratio ** n * inv_factorial(2 * j - 2 * n) * inv_factorial(n) for n in range(j + 1)
    )


def _odd_coefficient(j: int, alpha: float, beta: float) -> float:
    """β^{2j+1} A_j，按不含 1/β² 的形式计算"""
    return math.fsum(
        (-alpha) ** n * beta ** (2 * j + 1 - 2 * n) * inv_factorial(2 * j + 1 - 2 * n) * inv_factorial(n)
        for n in range(j + 1)
    )


def _even_coefficient(j: int, alpha: float, beta: float) -> float:
    """β^{2j} B_j，按不含 1/β² 的形式计算"""
    return math.fsum(
        (-alpha) ** n * beta ** (2 * j - 2 * n) * inv_factorial(2 * j - 2 * n) * inv_factorial(n)
        for n in range(j + 1)
    )


def gaussian_sqrt(
    alpha: float,
    beta: float,
    omega: float,
    terms: Optional[int] = None,
    control: Optional[SeriesControl] = None,
) -> AppResult:
    """
    ∫₀^∞ e^{-αx²+βx}/√(ω²+x²) dx

    naive部分逐项使用奇数阶高斯有限部分的三段和，
    奇异部分按 A_j（奇次）与 B_j（偶次）系数组装。
    大ω时三部分互相抵消，舍入损失超过容差即报错。
    """
    _check_gaussian(alpha, beta, omega)
    control = resolve_control(control)
    log_omega = math.log(omega)

    def naive_term(k: int) -> float:
        finite_part = fp_gaussian_odd_three_sum(alpha, beta, k, control).value
        return binom_real(-0.5, k) * omega ** (2 * k) * finite_part

    def odd_term(j: int) -> float:
        sign = -1.0 if j % 2 else 1.0
        return (
            -0.5 * SQRT_PI * sign * math.factorial(j) * _odd_coefficient(j, alpha, beta)
            * omega ** (2 * j + 1) / gamma(j + 1.5)
        )

    def even_term(j: int) -> float:
        sign = -1.0 if j % 2 else 1.0
        bracket = harmonic(j - 0.5) - harmonic(j) + 2.0 * log_omega
        return (
            -sign * gamma(j + 0.5) * _even_coefficient(j, alpha, beta) * omega ** (2 * j)
            * inv_factorial(j) * bracket / (2.0 * SQRT_PI)
        )

    naive = sum_terms(naive_term, control, terms, "gaussian_sqrt naive")
    even = sum_terms(even_term, control, terms, "gaussian_sqrt even")
    if beta == 0.0:
        odd_value, odd_used, odd_magnitude = 0.0, 0, 0.0
    else:
        odd = sum_terms(odd_term, control, terms, "gaussian_sqrt odd")
        odd_value, odd_used, odd_magnitude = odd.value, odd.terms_used, odd.magnitude
    total = naive.value + odd_value + even.value
    if terms is None:
        magnitude = max(naive.magnitude, even.magnitude, odd_magnitude)
        check_cancellation(f"gaussian_sqrt α={alpha} β={beta} ω={omega}", total, magnitude)
    logger.debug(
        f"gaussian_sqrt α={alpha} β={beta} ω={omega}: naive={naive.value!r}, "
        f"odd={odd_value!r}, even={even.value!r}"
    )
    return AppResult(total, max(naive.terms_used, even.terms_used, odd_used))


def gaussian_sqrt_pure(
    alpha: float,
    omega: float,
    terms: Optional[int] = None,
    control: Optional[SeriesControl] = None,
) -> AppResult:
    """
    β = 0 的专用展开：
    -(√π/2) Σ_k (-α)^k ω^{2k}/(k!² Γ(½-k)) (ln α - ψ(k+1))
    - 1/(2√π) Σ_j Γ(j+½)(√α ω)^{2j}/j!² (H_{j-½} - H_j + 2 ln ω)
    """
    _check_gaussian(alpha, 0.0, omega)
    log_alpha = math.log(alpha)
    log_omega = math.log(omega)
    scaled = alpha * omega * omega

    def first(k: int) -> float:
        sign = -1.0 if k % 2 else 1.0
        return (
            -0.5 * SQRT_PI * sign * scaled ** k * inv_factorial(k) ** 2
            / gamma(0.5 - k) * (log_alpha - digamma(k + 1.0))
        )

    def second(j: int) -> float:
        bracket = harmonic(j - 0.5) - harmonic(j) + 2.0 * log_omega
        return -gamma(j + 0.5) * scaled ** j * inv_factorial(j) ** 2 * bracket / (2.0 * SQRT_PI)

    a = sum_terms(first, control, terms, "gaussian_sqrt_pure log")
    b = sum_terms(second, control, terms, "gaussian_sqrt_pure harmonic")
    if terms is None:
        label = f"gaussian_sqrt_pure α={alpha} ω={omega}"
        check_cancellation(label, a.value + b.value, max(a.magnitude, b.magnitude))
    return AppResult(a.value + b.value, max(a.terms_used, b.terms_used))


def gaussian_sqrt_leading(
    alpha: float, beta: float, omega: float, control: Optional[SeriesControl] = None
) -> float:
    """
    小ω主导行为：
    -½(ln(αω²/4) + γ) + ½ Σ_{n≥1} Γ(n/2)/n! (β/√α)^n - βω
    """
    _check_gaussian(alpha, beta, omega)
    leading = -0.5 * (math.log(alpha * omega * omega / 4.0) + EULER_GAMMA) - beta * omega
    if beta == 0.0:
        return leading
    ratio = beta / math.sqrt(alpha)

    def term(k: int) -> float:
        n = k + 1
        return gamma(0.5 * n) * inv_factorial(n) * ratio ** n

    series = sum_series(term, resolve_control(control), label="gaussian_sqrt leading")
    return leading + 0.5 * series.value


def gaussian_sqrt_quadrature(alpha: float, beta: float, omega: float, tol: Optional[float] = None) -> float:
    """数值积分对照"""
    _check_gaussian(alpha, beta, omega)
    return sqrt_transform_quadrature(gauss_exp(alpha, beta), omega, math.inf, tol).value


def gaussian_bessel_closed_form(alpha: float, omega: float) -> float:
    """∫₀^∞ e^{-αx²}/√(ω²+x²) dx = ½ e^{αω²/2} K₀(αω²/2)"""
    _check_gaussian(alpha, 0.0, omega)
    half = 0.5 * alpha * omega * omega
    return 0.5 * math.exp(half) * bessel_k0_classical(half)


def _check_bessel_argument(x: float):
    if not (math.isfinite(x) and x > 0):
        raise ValidationError("K₀ 的参数必须为有限正数", {"x": x})


def bessel_k0(x: float, terms: Optional[int] = None, control: Optional[SeriesControl] = None) -> AppResult:
    """
    K₀(x) = e^{-x}/√π Σ_k Γ(k+½)(2x)^k/k!² (2ψ(k+1) - ψ(k+½) - ln(2x))

    大x时级数抵消严重，超过 bessel.k0_max_argument 直接报错。
    """
    _check_bessel_argument(x)
    limit = config.get("bessel.k0_max_argument", 5.0)
    if x > limit:
        raise NonConvergenceError(
            f"K₀ 级数在 x={x} 处抵消过大（上限 {limit}）",
            {"x": x, "k0_max_argument": limit},
        )
    log_2x = math.log(2.0 * x)

    def term(k: int) -> float:
        bracket = 2.0 * digamma(k + 1.0) - digamma(k + 0.5) - log_2x
        return gamma(k + 0.5) * (2.0 * x) ** k * inv_factorial(k) ** 2 * bracket

    series = sum_terms(term, control, terms, "bessel_k0")
    return AppResult(math.exp(-x) / SQRT_PI * series.value, series.terms_used)


def bessel_k0_classical(x: float, control: Optional[SeriesControl] = None) -> float:
    """K₀ = -(ln(x/2) + γ) I₀(x) + Σ_{k≥1} (x²/4)^k/(k!)² H_k"""
    _check_bessel_argument(x)
    control = resolve_control(control)
    quarter = 0.25 * x * x

    def i0_term(k: int) -> float:
        return quarter ** k * inv_factorial(k) ** 2

    def harmonic_term(k: int) -> float:
        index = k + 1
        return quarter ** index * inv_factorial(index) ** 2 * harmonic(index)

    i0 = sum_series(i0_term, control, label="I0")
    tail = sum_series(harmonic_term, control, label="K0 harmonic")
    return -(math.log(0.5 * x) + EULER_GAMMA) * i0.value + tail.value


def bessel_k0_leading(x: float) -> float:
    """小x主导行为 -ln(x/2) - γ"""
    _check_bessel_argument(x)
    return -math.log(0.5 * x) - EULER_GAMMA
