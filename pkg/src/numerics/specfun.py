"""
特殊函数内核模块

提供Γ、lnΓ、ψ、调和数、实上标二项式系数、erfc等基础函数，
所有函数均为纯函数，可在多线程中并发调用。
"""
import math
from functools import lru_cache
from typing import Tuple

from src.utils.errors import PoleError, ValidationError

EULER_GAMMA = 0.57721566490153286061
SQRT_PI = math.sqrt(math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos近似系数 (g=7, n=9)
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# ψ渐近展开的Bernoulli系数 B_{2k}/(2k)
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

_FACTORIAL_TABLE_SIZE = 171


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _check_finite(x: float, name: str = "x"):
    if not math.isfinite(x):
        raise ValidationError(f"{name} 必须为有限实数", {name: x})


def sin_pi(x: float) -> float:
    """精确的 sin(πx)，先对x做周期约化"""
    r = math.fmod(x, 2.0)
    if r == math.floor(r):
        return 0.0
    return math.sin(math.pi * r)


def cos_pi(x: float) -> float:
    """精确的 cos(πx)"""
    r = math.fmod(abs(x), 2.0)
    if r == 0.5 or r == 1.5:
        return 0.0
    return math.cos(math.pi * r)


def _lanczos_sum(z: float) -> float:
    """z = x - 1 处的Lanczos部分和"""
    s = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        s += _LANCZOS_COEFFS[i] / (z + i)
    return s


def _log_gamma_positive(x: float) -> float:
    """x ≥ 0.5 时的 lnΓ(x)"""
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def gamma(x: float) -> float:
    """
    Γ函数，x < 0.5 时使用反射公式

    Args:
        x: 实数，不能为非正整数

    Returns:
        float: Γ(x)

    Raises:
        PoleError: x ∈ {0, -1, -2, ...}
    """
    _check_finite(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"Γ在 x={x} 处有极点", {"x": x})
    if x < 0.5:
        return math.pi / (sin_pi(x) * gamma(1.0 - x))
    if x > 171.7:
        return math.inf
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    if x > 100.0:
        return math.exp(_log_gamma_positive(x))
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


def lgamma_sign(x: float) -> Tuple[float, float]:
    """
    带符号的 ln|Γ(x)|

    Args:
        x: 实数，不能为非正整数

    Returns:
        Tuple[float, float]: (ln|Γ(x)|, sign(Γ(x)))
    """
    _check_finite(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"lnΓ在 x={x} 处有极点", {"x": x})
    if x < 0.5:
        s = sin_pi(x)
        log_abs = math.log(math.pi) - math.log(abs(s)) - _log_gamma_positive(1.0 - x)
        return log_abs, math.copysign(1.0, s)
    return _log_gamma_positive(x), 1.0


def rgamma(x: float) -> float:
    """1/Γ(x)，在极点处精确返回0"""
    _check_finite(x)
    if _is_nonpositive_integer(x):
        return 0.0
    if x < 0.5:
        return sin_pi(x) * gamma(1.0 - x) / math.pi
    if x > 171.0:
        log_abs, _ = lgamma_sign(x)
        return math.exp(-log_abs)
    return 1.0 / gamma(x)


def gamma_ratio(a: float, b: float) -> float:
    """
    Γ(a)/Γ(b)，负参数时按lnΓ加符号追踪计算

    Args:
        a: 分子参数，不能为极点
        b: 分母参数，为极点时结果为0

    Returns:
        float: Γ(a)/Γ(b)
    """
    if _is_nonpositive_integer(a):
        raise PoleError(f"Γ(a)在 a={a} 处有极点", {"a": a, "b": b})
    if _is_nonpositive_integer(b):
        return 0.0
    if max(abs(a), abs(b)) <= 60.0:
        return gamma(a) * rgamma(b)
    la, sa = lgamma_sign(a)
    lb, sb = lgamma_sign(b)
    return sa * sb * math.exp(la - lb)


@lru_cache(maxsize=None)
def _inv_factorial_table() -> Tuple[float, ...]:
    values = [1.0]
    for k in range(1, _FACTORIAL_TABLE_SIZE):
        values.append(values[-1] / k)
    return tuple(values)


def inv_factorial(k: int) -> float:
    """1/k!"""
    if k < 0:
        raise ValidationError("阶乘参数必须非负", {"k": k})
    if k < _FACTORIAL_TABLE_SIZE:
        return _inv_factorial_table()[k]
    return math.exp(-_log_gamma_positive(k + 1.0))


def digamma(x: float) -> float:
    """
    ψ函数：递推到大参数后用渐近级数，负参数用反射公式

    Args:
        x: 实数，不能为非正整数

    Returns:
        float: ψ(x)
    """
    _check_finite(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"ψ在 x={x} 处有极点", {"x": x})
    if x < 0.0:
        # ψ(1-x) - ψ(x) = π cot(πx)
        return digamma(1.0 - x) - math.pi * cos_pi(x) / sin_pi(x)

    shift = 0.0
    while x < 10.0:
        shift -= 1.0 / x
        x += 1.0

    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv2
    for coeff in _DIGAMMA_ASYMPTOTIC:
        series += coeff * power
        power *= inv2
    return shift + math.log(x) - 0.5 * inv - series


def harmonic(s: float) -> float:
    """
    实参调和数 H_s = ψ(s+1) + γ

    Args:
        s: 实数，s+1 不能为非正整数

    Returns:
        float: H_s
    """
    _check_finite(s, "s")
    if _is_nonpositive_integer(s + 1.0):
        raise PoleError(f"H_s在 s={s} 处有极点", {"s": s})
    if s >= 0 and s == math.floor(s) and s <= 1000:
        return math.fsum(1.0 / k for k in range(1, int(s) + 1))
    return digamma(s + 1.0) + EULER_GAMMA


def binom_real(mu: float, j: int) -> float:
    """
    实上标二项式系数 μ(μ-1)...(μ-j+1)/j!，按连乘计算

    Args:
        mu: 实数上标
        j: 非负整数下标

    Returns:
        float: 二项式系数
    """
    if j < 0:
        raise ValidationError("二项式系数下标必须非负", {"j": j})
    _check_finite(mu, "mu")
    value = 1.0
    for i in range(j):
        value *= (mu - i) / (i + 1)
    return value


def erf_series(x: float) -> float:
    """
    erf的正项级数 erf(x) = 2/√π e^{-x²} Σ 2^n x^{2n+1}/(2n+1)!!
    """
    if x == 0.0:
        return 0.0
    x2 = x * x
    term = x
    total = x
    n = 0
    while abs(term) > 1e-17 * abs(total):
        n += 1
        term *= 2.0 * x2 / (2 * n + 1)
        total += term
        if n > 5000:
            break
    return 2.0 / SQRT_PI * math.exp(-x2) * total


def erfc_series(x: float) -> float:
    """1 - erf(x)，适用于较小的x"""
    return 1.0 - erf_series(x)


def erfc_continued_fraction(x: float, max_iter: int = 50000) -> float:
    """
    erfc的连分式（修正Lentz算法），要求 x > 0

    erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    """
    if x <= 0.0:
        raise ValidationError("连分式要求 x > 0", {"x": x})
    tiny = 1e-300
    f = x
    c = f
    d = 0.0
    for k in range(1, max_iter + 1):
        a = 0.5 * k
        d = x + a * d
        d = tiny if d == 0.0 else d
        c = x + a / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (SQRT_PI * f)


def erfc(x: float) -> float:
    """
    余误差函数

    Args:
        x: 实数

    Returns:
        float: erfc(x)
    """
    _check_finite(x)
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x < 2.0:
        return erfc_series(x)
    return erfc_continued_fraction(x)
