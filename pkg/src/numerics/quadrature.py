"""
自适应数值积分模块

Gauss-Kronrod (7, 15) 嵌入式求积加全局二分细化，作为所有展开式的
独立对照（oracle）。每次调用都使用独立的工作区，线程安全。
"""
import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.utils.config import config
from src.utils.errors import QuadratureError, ValidationError
from src.utils.logger import setup_logger

logger = setup_logger("quadrature")

# Kronrod节点（非负半部分），偶数下标同时是Gauss节点
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15个求积点在 [-1, 1] 上的完整排列与权重
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_WEIGHTS = np.zeros(15)
# Gauss节点是 ±_XGK[1], ±_XGK[3], ±_XGK[5] 以及 0
for _i, _k in enumerate((1, 3, 5)):
    _GAUSS_WEIGHTS[_k] = _WG[_i]
    _GAUSS_WEIGHTS[14 - _k] = _WG[_i]
_GAUSS_WEIGHTS[7] = _WG[3]

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadResult:
    """数值积分结果"""
    value: float
    abs_error_estimate: float
    evaluations: int


def _sample(f: Callable, x: np.ndarray) -> np.ndarray:
    """在节点上求值，优先整体向量化调用"""
    try:
        values = np.asarray(f(x), dtype=float)
        if values.shape == x.shape:
            return values
        if values.shape == ():
            return np.full(x.shape, float(values))
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(xi))) for xi in x])


def _gauss_kronrod(f: Callable, lo: float, hi: float) -> Tuple[float, float]:
    """
    单个子区间上的G7/K15求积

    Returns:
        Tuple[float, float]: (Kronrod值, 误差估计)
    """
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    values = _sample(f, center + half * _NODES)
    if not np.all(np.isfinite(values)):
        raise QuadratureError(
            "被积函数在采样点处非有限",
            {"lo": lo, "hi": hi},
        )

    kronrod = half * float(np.dot(_KRONROD_WEIGHTS, values))
    gauss = half * float(np.dot(_GAUSS_WEIGHTS, values))
    resabs = abs(half) * float(np.dot(_KRONROD_WEIGHTS, np.abs(values)))
    mean = kronrod / (hi - lo) if hi != lo else 0.0
    resasc = abs(half) * float(np.dot(_KRONROD_WEIGHTS, np.abs(values - mean)))

    err = abs(kronrod - gauss)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return kronrod, err


def _endpoint_substitution(
    f: Callable, lo: float, hi: float, end: str, exponent: float
) -> Tuple[Callable, float, float]:
    """
    端点代换 u = (hi-x)^{1-α} 或 u = (x-lo)^{1-α}，
    消去 (hi-x)^{-α} / (x-lo)^{-α} 型可积奇性
    """
    if exponent >= 1.0:
        raise ValidationError("端点指数必须小于1", {"exponent": exponent})
    power = 1.0 / (1.0 - exponent)
    scale = power

    if end == "hi":
        def mapped(u):
            u = np.asarray(u, dtype=float)
            return _sample(f, hi - u ** power) * scale * u ** (power - 1.0)
    elif end == "lo":
        def mapped(u):
            u = np.asarray(u, dtype=float)
            return _sample(f, lo + u ** power) * scale * u ** (power - 1.0)
    else:
        raise ValidationError("端点只能是 'lo' 或 'hi'", {"end": end})

    return mapped, 0.0, (hi - lo) ** (1.0 - exponent)


def integrate(
    f: Callable,
    lo: float,
    hi: float,
    tol: Optional[float] = None,
    abs_tol: float = 0.0,
    points: Optional[Sequence[float]] = None,
    max_subdivisions: Optional[int] = None,
    singular_end: Optional[str] = None,
    singular_exponent: float = 0.0,
) -> QuadResult:
    """
    有限区间自适应积分

    Args:
        f: 被积函数，最好支持numpy数组输入
        lo: 下限
        hi: 上限
        tol: 相对容差，默认取配置 quadrature.tol
        abs_tol: 绝对容差
        points: 初始断点
        max_subdivisions: 子区间数上限
        singular_end: 若端点存在 (端点距离)^{-α} 奇性，指明 'lo' 或 'hi'
        singular_exponent: 该端点的奇性指数α (< 1)

    Returns:
        QuadResult: 积分值、误差估计、函数求值次数

    Raises:
        QuadratureError: 子区间数超限或出现非有限采样
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise ValidationError("积分区间必须满足 lo < hi 且有限", {"lo": lo, "hi": hi})
    tol = config.get("quadrature.tol", 1e-12) if tol is None else tol
    limit = max_subdivisions or config.get("quadrature.max_subdivisions", 4000)

    if singular_end is not None:
        if points:
            raise ValidationError("端点代换与断点不能同时使用")
        mapped, u_lo, u_hi = _endpoint_substitution(f, lo, hi, singular_end, singular_exponent)
        return integrate(mapped, u_lo, u_hi, tol=tol, abs_tol=abs_tol, max_subdivisions=limit)

    edges = [lo] + sorted(p for p in (points or []) if lo < p < hi) + [hi]
    heap = []
    evaluations = 0
    for left, right in zip(edges[:-1], edges[1:]):
        value, err = _gauss_kronrod(f, left, right)
        evaluations += 15
        heapq.heappush(heap, (-err, left, right, value))

    while True:
        total = math.fsum(item[3] for item in heap)
        error = math.fsum(-item[0] for item in heap)
        if error <= max(abs_tol, tol * abs(total)):
            logger.debug(
                f"积分 [{lo}, {hi}] 收敛: value={total!r}, err={error:.3e}, "
                f"子区间={len(heap)}"
            )
            return QuadResult(total, error, evaluations)

        if len(heap) >= limit:
            raise QuadratureError(
                f"积分在 {limit} 个子区间内未达到容差",
                {"lo": lo, "hi": hi, "value": total, "error": error},
            )

        _, left, right, _ = heapq.heappop(heap)
        mid = 0.5 * (left + right)
        if not left < mid < right:
            raise QuadratureError(
                "子区间已无法继续二分（舍入误差主导）",
                {"lo": lo, "hi": hi, "value": total, "error": error},
            )
        for a, b in ((left, mid), (mid, right)):
            value, err = _gauss_kronrod(f, a, b)
            evaluations += 15
            heapq.heappush(heap, (-err, a, b, value))


def _check_decay(f: Callable, lo: float):
    """检查 x·|f(x)| 在大x处是否衰减"""
    far_points = np.array([lo + 1e4, lo + 1e8])
    try:
        values = np.abs(_sample(f, far_points)) * np.abs(far_points)
    except (OverflowError, FloatingPointError):
        values = np.array([math.inf, math.inf])
    if not np.all(np.isfinite(values)) or not (values[1] == 0.0 or values[1] < 0.5 * values[0]):
        raise QuadratureError(
            "被积函数在无穷远处衰减不足",
            {"lo": lo, "far_values": values.tolist()},
        )


def integrate_semi_infinite(
    f: Callable,
    lo: float,
    tol: Optional[float] = None,
    split: Optional[float] = None,
    abs_tol: float = 0.0,
    points: Optional[Sequence[float]] = None,
) -> QuadResult:
    """
    半无穷区间 [lo, ∞) 积分：先积有限段 [lo, split]，
    尾部经 x = split + t/(1-t) 映射到 [0, 1)

    Args:
        f: 被积函数
        lo: 下限
        tol: 相对容差
        split: 有限段与尾部的分界点，默认 lo + 1
        abs_tol: 绝对容差
        points: 有限段内的断点

    Returns:
        QuadResult: 积分结果
    """
    _check_decay(f, lo)
    x0 = lo + 1.0 if split is None else split
    if not x0 > lo:
        raise ValidationError("分界点必须大于下限", {"lo": lo, "split": x0})

    head = integrate(f, lo, x0, tol=tol, abs_tol=abs_tol, points=points)

    def tail(t):
        t = np.asarray(t, dtype=float)
        one_minus = 1.0 - t
        with np.errstate(over="ignore", under="ignore"):
            return _sample(f, x0 + t / one_minus) / (one_minus * one_minus)

    tol = config.get("quadrature.tol", 1e-12) if tol is None else tol
    rest = integrate(tail, 0.0, 1.0, tol=tol, abs_tol=max(abs_tol, 0.5 * tol * abs(head.value)))
    return QuadResult(
        head.value + rest.value,
        head.abs_error_estimate + rest.abs_error_estimate,
        head.evaluations + rest.evaluations,
    )
