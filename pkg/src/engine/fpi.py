"""
有限部分积分引擎

闭式：原点奇性（非整数阶有限/无穷上限、整数阶有限上限、高斯族整数阶无穷上限）、
端点奇性的收敛项级数表示，以及奇异修正项。
对照：按ε截断定义实现的ε阶梯外推oracle，与闭式完全独立。
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.engine.entire import (
    EntireFunction,
    beta_poly,
    exp_neg,
    gauss_exp,
    monomial,
    power_exp,
    shifted_coefficient,
)
from src.numerics.quadrature import integrate, integrate_semi_infinite
from src.numerics.series import SeriesControl, SeriesSum, resolve_control, sum_finite, sum_series
from src.numerics.specfun import digamma, gamma, inv_factorial
from src.utils.config import config
from src.utils.errors import (
    ExtrapolationError,
    MissingClosedFormError,
    UnsupportedFamilyError,
    ValidationError,
)
from src.utils.logger import setup_logger

logger = setup_logger("fpi")


@dataclass(frozen=True)
class FinitePartValue:
    """有限部分积分的值与截断诊断"""
    value: float
    terms_used: int
    tail_estimate: float
    magnitude: float = 0.0

    @classmethod
    def from_sum(cls, result: SeriesSum) -> "FinitePartValue":
        return cls(result.value, result.terms_used, result.tail_estimate, result.magnitude)


@dataclass(frozen=True)
class EpsilonLadder:
    """ε阶梯：严格递减的正数序列与外推阶数"""
    eps_values: Tuple[float, ...]
    extrapolation_order: int = 3

    def __post_init__(self):
        eps = self.eps_values
        if len(eps) < 4:
            raise ValidationError("ε阶梯至少需要4级", {"rungs": len(eps)})
        if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValidationError("ε阶梯必须严格递减且全为正", {"eps": list(eps)})
        if not 1 <= self.extrapolation_order < len(eps):
            raise ValidationError(
                "外推阶数必须在 [1, 级数-1] 内",
                {"order": self.extrapolation_order, "rungs": len(eps)},
            )

    @classmethod
    def geometric(
        cls,
        c: float,
        first_fraction: Optional[float] = None,
        ratio: Optional[float] = None,
        rungs: Optional[int] = None,
        order: Optional[int] = None,
    ) -> "EpsilonLadder":
        """
        默认几何阶梯 ε_i = min(c,1)·first_fraction·ratio^i

        Args:
            c: 积分区间长度
        """
        first_fraction = config.get("oracle.first_rung_fraction", 1.0 / 16.0) if first_fraction is None else first_fraction
        ratio = config.get("oracle.ratio", 0.5) if ratio is None else ratio
        rungs = config.get("oracle.rungs", 8) if rungs is None else rungs
        order = config.get("oracle.extrapolation_order", 3) if order is None else order
        if not 0 < ratio < 1:
            raise ValidationError("阶梯比例必须在 (0, 1) 内", {"ratio": ratio})
        start = min(c, 1.0) * first_fraction
        return cls(tuple(start * ratio ** i for i in range(rungs)), order)


@dataclass
class OracleReport:
    """独立对照值：数值积分或ε外推"""
    value: float
    error_estimate: float
    method: str
    evaluations: int = 0
    rung_values: List[float] = field(default_factory=list)


# ---------------------------------------------------------------------------
# 参数校验
# ---------------------------------------------------------------------------

def _is_integer(x: float) -> bool:
    return float(x).is_integer()


def _check_noninteger(rho: float):
    if not math.isfinite(rho) or _is_integer(rho):
        raise ValidationError("阶数ρ必须是非整数", {"rho": rho})


def split_order(rho: float) -> Tuple[int, float]:
    """ρ = n + α，n = ⌊ρ⌋"""
    n = math.floor(rho)
    return n, rho - n


# ---------------------------------------------------------------------------
# 无穷上限闭式目录（非整数阶，解析延拓）
# ---------------------------------------------------------------------------

def _infinite_exp_neg(params: Dict, rho: float, control: SeriesControl) -> FinitePartValue:
    return FinitePartValue(gamma(1.0 - rho), 1, 0.0)


def _infinite_power_exp(params: Dict, rho: float, control: SeriesControl) -> FinitePartValue:
    return FinitePartValue(gamma(params["n"] - rho), 1, 0.0)


def _infinite_gauss_exp(params: Dict, rho: float, control: SeriesControl) -> FinitePartValue:
    alpha, beta = params["alpha"], params["beta"]
    if beta == 0.0:
        p = 0.5 * (1.0 - rho)
        return FinitePartValue(gamma(p) / (2.0 * alpha ** p), 1, 0.0)

    def term(k: int) -> float:
        p = 0.5 * (k + 1 - rho)
        return beta ** k * inv_factorial(k) * gamma(p) / (2.0 * alpha ** p)

    return FinitePartValue.from_sum(sum_series(term, control, label="gauss_exp∞"))


def _infinite_zero(params: Dict, rho: float, control: SeriesControl) -> FinitePartValue:
    return FinitePartValue(0.0, 0, 0.0)


_INFINITE_CATALOG: Dict[str, Callable[[Dict, float, SeriesControl], FinitePartValue]] = {
    "exp_neg": _infinite_exp_neg,
    "power_exp": _infinite_power_exp,
    "gauss_exp": _infinite_gauss_exp,
    "zero": _infinite_zero,
}


def infinite_catalog_families() -> List[str]:
    """注册了无穷上限闭式的函数族"""
    return sorted(_INFINITE_CATALOG)


def has_infinite_closed_form(f: EntireFunction) -> bool:
    return f.is_zero or f.family in _INFINITE_CATALOG


# ---------------------------------------------------------------------------
# 原点奇性
# ---------------------------------------------------------------------------

def fp_origin_noninteger(
    f: EntireFunction,
    a: float,
    rho: float,
    control: Optional[SeriesControl] = None,
) -> FinitePartValue:
    """
    ⨍₀^a f(x)/x^ρ dx，ρ非整数

    有限a时为 Σ_k c_k a^{k-ρ+1}/(k-ρ+1)；a = ∞ 时查闭式目录。

    Args:
        f: 整函数
        a: 上限（正数或math.inf）
        rho: 非整数阶
        control: 级数截断控制

    Returns:
        FinitePartValue: 有限部分值

    Raises:
        MissingClosedFormError: a = ∞ 而函数族没有注册闭式
        NonConvergenceError: 级数未收敛
    """
    _check_noninteger(rho)
    if not a > 0:
        raise ValidationError("上限a必须为正", {"a": a})
    control = resolve_control(control)
    if f.is_zero:
        return FinitePartValue(0.0, 0, 0.0)

    if math.isinf(a):
        handler = _INFINITE_CATALOG.get(f.family)
        if handler is None:
            raise MissingClosedFormError(
                f"{f.name} 没有注册 a=∞ 的闭式",
                {"function": f.name, "known": infinite_catalog_families()},
            )
        return handler(f.params, rho, control)

    def term(k: int) -> float:
        c = f.coeff(k)
        if c == 0.0:
            return 0.0
        e = k - rho + 1.0
        return c * a ** e / e

    if f.is_polynomial:
        return FinitePartValue.from_sum(sum_finite(term(k) for k in range(f.degree + 1)))
    return FinitePartValue.from_sum(sum_series(term, control, label=f"fp_origin[{f.name}]"))


def fp_origin_integer_finite(
    f: EntireFunction,
    a: float,
    m: int,
    control: Optional[SeriesControl] = None,
) -> FinitePartValue:
    """
    ⨍₀^a f(x)/x^m dx，m为整数，a有限

    c_{m-1} ln a + Σ_{k≠m-1} c_k a^{k-m+1}/(k-m+1)
    """
    if not _is_integer(m):
        raise ValidationError("整数阶有限部分要求m为整数", {"m": m})
    if not (a > 0 and math.isfinite(a)):
        raise ValidationError("上限a必须为有限正数", {"a": a})
    m = int(m)
    control = resolve_control(control)
    if f.is_zero:
        return FinitePartValue(0.0, 0, 0.0)
    log_a = math.log(a)

    def term(k: int) -> float:
        c = f.coeff(k)
        if c == 0.0:
            return 0.0
        e = k - m + 1
        if e == 0:
            return c * log_a
        return c * a ** e / e

    if f.is_polynomial:
        return FinitePartValue.from_sum(sum_finite(term(k) for k in range(f.degree + 1)))
    return FinitePartValue.from_sum(sum_series(term, control, label=f"fp_origin_int[{f.name}, m={m}]"))


def fp_gaussian_pure(b: float, m: int) -> float:
    """
    ⨍₀^∞ e^{-bx²}/x^m dx

    m = 2j-1 与 m = 2j 为对数型/Γ型闭式；m ≤ 0 时为收敛积分 Γ((1-m)/2)/(2b^{(1-m)/2})。
    """
    if not b > 0:
        raise ValidationError("高斯参数b必须为正", {"b": b})
    if m <= 0:
        p = 0.5 * (1 - m)
        return gamma(p) / (2.0 * b ** p)
    if m % 2 == 1:
        j = (m + 1) // 2
        return (-1) ** j * b ** (j - 1) * (math.log(b) - digamma(j)) * inv_factorial(j - 1) / 2.0
    j = m // 2
    return (-1) ** j * b ** (j - 0.5) * math.pi / (2.0 * gamma(j + 0.5))


def fp_gaussian_odd_three_sum(
    alpha: float, beta: float, j: int, control: Optional[SeriesControl] = None
) -> FinitePartValue:
    """
    ⨍₀^∞ e^{-αx²+βx}/x^{2j+1} dx 的三段和形式：
    对数项有限和 + Γ半整数项有限和 + 收敛尾级数
    """
    control = resolve_control(control)
    log_alpha = math.log(alpha)
    first = math.fsum(
        (-1) ** (j - i + 1) * alpha ** (j - i) * beta ** (2 * i)
        * inv_factorial(2 * i) * inv_factorial(j - i) / 2.0
        * (log_alpha - digamma(j - i + 1))
        for i in range(j + 1)
    )
    second = 0.5 * math.pi * math.fsum(
        (-1) ** (j - i) * alpha ** (j - i - 0.5) * beta ** (2 * i + 1)
        * inv_factorial(2 * i + 1) / gamma(j - i + 0.5)
        for i in range(j)
    )
    if beta == 0.0:
        return FinitePartValue(first + second, j + 1, 0.0)

    def term(k: int) -> float:
        n = 2 * j + 1 + k
        return beta ** n * inv_factorial(n) * gamma(0.5 * n - j) / alpha ** (0.5 * n)

    tail = sum_series(term, control, label="gauss_exp odd tail")
    return FinitePartValue(
        first + second + 0.5 * alpha ** j * tail.value,
        j + 1 + tail.terms_used,
        0.5 * alpha ** j * tail.tail_estimate,
    )


def fp_origin_integer_infinite(
    f: EntireFunction,
    m: int,
    control: Optional[SeriesControl] = None,
) -> FinitePartValue:
    """
    ⨍₀^∞ f(x)/x^m dx，m为整数，仅支持高斯族 e^{-αx²+βx}

    e^{βx} 展开后拆成 n < m 的发散部分（逐项用纯高斯闭式）与
    n ≥ m 的收敛部分 Σ β^n/n! Γ((n-m+1)/2)/(2α^{(n-m+1)/2})。

    Raises:
        UnsupportedFamilyError: 非高斯族
    """
    if not _is_integer(m):
        raise ValidationError("整数阶有限部分要求m为整数", {"m": m})
    m = int(m)
    if f.is_zero:
        return FinitePartValue(0.0, 0, 0.0)
    if f.family != "gauss_exp":
        raise UnsupportedFamilyError(
            f"整数阶无穷上限有限部分只支持高斯族，收到 {f.name}",
            {"function": f.name},
        )
    control = resolve_control(control)
    alpha, beta = f.params["alpha"], f.params["beta"]
    if beta == 0.0:
        return FinitePartValue(fp_gaussian_pure(alpha, m), 1, 0.0)

    head_count = max(m, 0)
    head = math.fsum(
        beta ** n * inv_factorial(n) * fp_gaussian_pure(alpha, m - n) for n in range(head_count)
    )

    def term(k: int) -> float:
        n = head_count + k
        p = 0.5 * (n - m + 1)
        return beta ** n * inv_factorial(n) * gamma(p) / (2.0 * alpha ** p)

    tail = sum_series(term, control, label=f"gauss_exp∞[m={m}]")
    return FinitePartValue(head + tail.value, head_count + tail.terms_used, tail.tail_estimate)


def fp_origin(
    f: EntireFunction,
    a: float,
    rho: float,
    control: Optional[SeriesControl] = None,
) -> FinitePartValue:
    """按阶数是否为整数、上限是否有限分派到对应的有限部分闭式"""
    if _is_integer(rho):
        if math.isinf(a):
            return fp_origin_integer_infinite(f, int(rho), control)
        return fp_origin_integer_finite(f, a, int(rho), control)
    return fp_origin_noninteger(f, a, rho, control)


# ---------------------------------------------------------------------------
# 端点奇性与奇异修正项
# ---------------------------------------------------------------------------

def fp_endpoint(
    g: EntireFunction,
    c: float,
    rho: float,
    control: Optional[SeriesControl] = None,
) -> FinitePartValue:
    """
    ⨍₀^c g(x)/(c-x)^ρ dx = Σ_j g^{(j)}(c)(-1)^j c^{j+1-ρ}/(j!(j+1-ρ))

    Args:
        g: 整函数
        c: 奇点位置（正数）
        rho: 非整数阶
        control: 级数截断控制
    """
    _check_noninteger(rho)
    if not (c > 0 and math.isfinite(c)):
        raise ValidationError("端点c必须为有限正数", {"c": c})
    control = resolve_control(control)
    if g.is_zero:
        return FinitePartValue(0.0, 0, 0.0)

    def term(j: int) -> float:
        d = shifted_coefficient(g, c, j)
        e = j + 1.0 - rho
        return (-1) ** j * d * c ** e / e

    if g.is_polynomial:
        return FinitePartValue.from_sum(sum_finite(term(j) for j in range(g.degree + 1)))
    return FinitePartValue.from_sum(sum_series(term, control, label=f"fp_endpoint[{g.name}]"))


def fp_singular_term(
    f: EntireFunction,
    omega: float,
    n: int,
    alpha: float,
    control: Optional[SeriesControl] = None,
) -> FinitePartValue:
    """
    奇异修正项 Δ_sc = -Σ_j d_j ω^{j+1-n-α}/(j+1-n-α)，d_j = f^{(j)}(-ω)/j!

    Args:
        f: 整函数
        omega: ω > 0
        n: 正整数
        alpha: (0, 1) 内的实数
    """
    if not omega > 0:
        raise ValidationError("ω必须为正", {"omega": omega})
    rho = n + alpha
    _check_noninteger(rho)
    control = resolve_control(control)
    if f.is_zero:
        return FinitePartValue(0.0, 0, 0.0)

    def term(j: int) -> float:
        d = shifted_coefficient(f, -omega, j)
        e = j + 1.0 - rho
        return -d * omega ** e / e

    if f.is_polynomial:
        result = sum_finite(term(j) for j in range(f.degree + 1))
    else:
        result = sum_series(term, control, label=f"singular_term[{f.name}]")
    logger.debug(f"Δ_sc[{f.name}] ω={omega} ρ={rho}: {result.value!r} ({result.terms_used}项)")
    return FinitePartValue.from_sum(result)


# ---------------------------------------------------------------------------
# ε阶梯oracle
# ---------------------------------------------------------------------------

def richardson(values: Sequence[float], ratio: float, exponents: Sequence[float]) -> List[List[float]]:
    """
    几何阶梯上的广义Richardson外推表

    第k列消去 ε^{exponents[k-1]} 项：T' = (T_i - q^p T_{i-1})/(1 - q^p)。

    Returns:
        List[List[float]]: 外推表，第0列为原始值
    """
    table = [list(values)]
    for p in exponents:
        prev = table[-1]
        if len(prev) < 2:
            break
        factor = ratio ** p
        table.append([(prev[i] - factor * prev[i - 1]) / (1.0 - factor) for i in range(1, len(prev))])
    return table


def _bracket_oracle(
    h: Callable[[np.ndarray], np.ndarray],
    divergent: Sequence[float],
    c: float,
    rho: float,
    ladder: EpsilonLadder,
    label: str,
) -> OracleReport:
    """
    ε截断定义的数值实现

    B(ε) = ∫_ε^c h(t) t^{-ρ} dt + Σ_{j<n} e_j ε^{j+1-ρ}/(j+1-ρ)，
    在 [ε, min(c,1)] 上先减去发散多项式 P(t) = Σ e_j t^j 再积分，
    ε项因而在解析上相消，剩余误差按 ε^{k-α} (k=1,2,...) 外推到0。
    """
    n, alpha = split_order(rho)
    t_split = min(c, 1.0)
    eps = ladder.eps_values
    if eps[0] >= t_split:
        raise ValidationError("ε阶梯首级必须小于 min(c, 1)", {"eps0": eps[0], "c": c})
    poly = np.asarray(divergent[:n], dtype=float)
    quad_tol = 1e-13

    def subtracted(u):
        t = np.exp(np.asarray(u, dtype=float))
        remainder = np.asarray(h(t), dtype=float)
        if len(poly):
            remainder = remainder - np.polynomial.polynomial.polyval(t, poly)
        return remainder * t ** (1.0 - rho)

    evaluations = 0
    constant = math.fsum(poly[j] * t_split ** (j + 1 - rho) / (j + 1 - rho) for j in range(len(poly)))
    if c > t_split:
        far = integrate(lambda t: np.asarray(h(t), dtype=float) * np.asarray(t, dtype=float) ** (-rho),
                        t_split, c, tol=quad_tol, abs_tol=1e-16)
        constant += far.value
        evaluations += far.evaluations

    values = []
    running = constant
    upper = math.log(t_split)
    for e in eps:
        lower = math.log(e)
        piece = integrate(subtracted, lower, upper, tol=quad_tol, abs_tol=1e-16)
        evaluations += piece.evaluations
        running += piece.value
        values.append(running)
        upper = lower

    ratios = [b / a for a, b in zip(eps, eps[1:])]
    ratio = ratios[0]
    if any(abs(r - ratio) > 1e-12 for r in ratios):
        raise ValidationError("ε外推要求几何阶梯", {"eps": list(eps)})
    exponents = [k - alpha for k in range(1, ladder.extrapolation_order + 1)]
    table = richardson(values, ratio, exponents)

    diffs = [abs(b - a) for a, b in zip(values, values[1:])]
    if diffs[0] > 0 and not diffs[-1] < diffs[0]:
        logger.error(f"ε阶梯不收缩: {label}, diffs={diffs}")
        raise ExtrapolationError(f"{label}: ε阶梯不收缩", {"rung_values": values})

    best = table[-1][-1]
    error = abs(table[-1][-1] - table[-2][-1]) if len(table) > 1 else diffs[-1]
    if error > 1e-6 * max(1.0, abs(best)):
        logger.warning(f"ε外推误差偏大: {label}, value={best!r}, err={error:.3e}")
    logger.debug(f"ε-oracle {label}: value={best!r}, err={error:.3e}")
    return OracleReport(best, error, "epsilon", evaluations, values)


def _divergent_from(f: EntireFunction, n: int, center: Optional[float]) -> List[float]:
    if center is None:
        return [f.coeff(j) for j in range(n)]
    return [(-1) ** j * shifted_coefficient(f, center, j) for j in range(n)]


def fp_epsilon_oracle(
    g,
    c: float,
    n: int,
    alpha: float,
    ladder: Optional[EpsilonLadder] = None,
    divergent_coefficients: Optional[Sequence[float]] = None,
) -> OracleReport:
    """
    ⨍₀^c g(x)/(c-x)^{n+α} dx 的ε极限对照值

    Args:
        g: EntireFunction，或逐点求值函数（此时必须给出divergent_coefficients）
        c: 奇点位置
        n: 正整数
        alpha: (0, 1) 内的实数
        ladder: ε阶梯，默认 EpsilonLadder.geometric(c)
        divergent_coefficients: h(t) = g(c-t) 在 t=0 处的前n个Taylor系数

    Raises:
        QuadratureError: 数值积分失败
        ExtrapolationError: 阶梯不收缩
    """
    rho = n + alpha
    _check_noninteger(rho)
    ladder = ladder or EpsilonLadder.geometric(c)
    if divergent_coefficients is None:
        if not isinstance(g, EntireFunction):
            raise ValidationError("逐点求值函数必须同时给出发散项系数")
        divergent_coefficients = _divergent_from(g, n, c)
    evaluator = g.evaluate if isinstance(g, EntireFunction) else g

    def h(t):
        return evaluator(c - np.asarray(t, dtype=float))

    return _bracket_oracle(h, divergent_coefficients, c, rho, ladder, f"endpoint c={c}, ρ={rho}")


def fp_epsilon_oracle_origin(
    f,
    c: float,
    n: int,
    alpha: float,
    ladder: Optional[EpsilonLadder] = None,
    divergent_coefficients: Optional[Sequence[float]] = None,
) -> OracleReport:
    """⨍₀^c f(x)/x^{n+α} dx 的ε极限对照值，发散项系数为 c_0..c_{n-1}"""
    rho = n + alpha
    _check_noninteger(rho)
    ladder = ladder or EpsilonLadder.geometric(c)
    if divergent_coefficients is None:
        if not isinstance(f, EntireFunction):
            raise ValidationError("逐点求值函数必须同时给出发散项系数")
        divergent_coefficients = _divergent_from(f, n, None)
    evaluator = f.evaluate if isinstance(f, EntireFunction) else f
    return _bracket_oracle(evaluator, divergent_coefficients, c, rho, ladder, f"origin c={c}, ρ={rho}")


def fp_catalog_infinite_oracle(
    f: EntireFunction,
    rho: float,
    cutoff: float = 40.0,
    ladder: Optional[EpsilonLadder] = None,
) -> OracleReport:
    """
    ⨍₀^∞ f(x)/x^ρ dx 的对照值：(0, cutoff) 上的ε oracle 加半无穷尾部积分
    """
    n, alpha = split_order(rho)
    head = fp_epsilon_oracle_origin(f, cutoff, n, alpha, ladder)
    tail = integrate_semi_infinite(
        lambda x: f.evaluate(x) * np.asarray(x, dtype=float) ** (-rho),
        cutoff,
        tol=1e-13,
        abs_tol=1e-18,
    )
    return OracleReport(
        head.value + tail.value,
        head.error_estimate + tail.abs_error_estimate,
        "epsilon+tail",
        head.evaluations + tail.evaluations,
        head.rung_values,
    )


# ---------------------------------------------------------------------------
# 闭式与oracle对照目录
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogCase:
    """一条闭式-oracle对照用例"""
    label: str
    closed_form: Callable[[], FinitePartValue]
    oracle: Callable[[], OracleReport]


def _endpoint_case(f: EntireFunction, c: float, rho: float) -> CatalogCase:
    n, alpha = split_order(rho)
    return CatalogCase(
        f"endpoint {f.name} c={c:g} ρ={rho:g}",
        lambda: fp_endpoint(f, c, rho),
        lambda: fp_epsilon_oracle(f, c, n, alpha),
    )


def _origin_case(f: EntireFunction, a: float, rho: float) -> CatalogCase:
    n, alpha = split_order(rho)
    if math.isinf(a):
        oracle = lambda: fp_catalog_infinite_oracle(f, rho)  # noqa: E731
    else:
        oracle = lambda: fp_epsilon_oracle_origin(f, a, n, alpha)  # noqa: E731
    return CatalogCase(
        f"origin {f.name} a={a:g} ρ={rho:g}",
        lambda: fp_origin_noninteger(f, a, rho),
        oracle,
    )


def oracle_catalog() -> List[CatalogCase]:
    """闭式有限部分与ε oracle对照的注册用例"""
    return [
        _endpoint_case(monomial(0), 1.0, 1.5),
        _endpoint_case(exp_neg(), 1.0, 1.5),
        _endpoint_case(exp_neg(), 0.5, 2.25),
        _endpoint_case(power_exp(2), 0.3, 2.5),
        _endpoint_case(gauss_exp(1.0, 2.0), 0.8, 1.75),
        _endpoint_case(beta_poly(2, 4), 0.25, 3.5),
        _origin_case(exp_neg(), 1.0, 1.5),
        _origin_case(power_exp(3), 2.0, 2.75),
        _origin_case(gauss_exp(1.0, 0.0), 1.5, 3.25),
        _origin_case(exp_neg(), math.inf, 2.5),
        _origin_case(power_exp(2), math.inf, 1.5),
        _origin_case(gauss_exp(1.0, 2.0), math.inf, 1.5),
    ]


def catalog_exp_neg_identity(j: int, alpha: float) -> float:
    """⨍₀^∞ e^{-x}/x^{j+α+1} dx = (-1)^{j+1}π/(sin(πα)Γ(j+α+1))"""
    return (-1) ** (j + 1) * math.pi / (math.sin(math.pi * alpha) * gamma(j + alpha + 1.0))

