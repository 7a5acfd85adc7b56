"""
级数求和模块，全库共用的截断规则

规则：部分和非零且 |term| ≤ max(rel_tol·|S|, abs_tol) 的项记为"足够小"，
连续 consecutive 项足够小即停止；超过预算抛出 NonConvergenceError。
求和同时记录最大项与部分和的量级，供组装处判断抵消损失。
"""
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from src.utils.config import config
from src.utils.errors import NonConvergenceError, ValidationError

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class SeriesControl:
    """级数截断控制参数"""
    rel_tol: float = 1e-16
    abs_tol: float = 0.0
    term_cap: int = 2000
    consecutive: int = 3

    def __post_init__(self):
        if self.rel_tol < 0 or self.abs_tol < 0:
            raise ValidationError("容差不能为负", {"rel_tol": self.rel_tol, "abs_tol": self.abs_tol})
        if self.term_cap < 1 or self.consecutive < 1:
            raise ValidationError("term_cap 与 consecutive 必须为正", {"term_cap": self.term_cap})

    @classmethod
    def from_config(cls) -> "SeriesControl":
        """从全局配置构造"""
        return cls(
            rel_tol=config.get("series.rel_tol", 1e-16),
            abs_tol=config.get("series.abs_tol", 0.0),
            term_cap=config.get("series.term_cap", 2000),
            consecutive=config.get("series.consecutive", 3),
        )


@dataclass
class SeriesSum:
    """级数求和结果"""
    value: float
    terms_used: int
    tail_estimate: float
    partial_sums: List[float] = field(default_factory=list)
    magnitude: float = 0.0


def resolve_control(control: Optional[SeriesControl]) -> SeriesControl:
    """未显式给出控制参数时使用全局配置"""
    return control if control is not None else SeriesControl.from_config()


def sum_series(
    term: Callable[[int], float],
    control: Optional[SeriesControl] = None,
    label: str = "series",
    start: int = 0,
    budget: Optional[int] = None,
    keep_partials: bool = False,
) -> SeriesSum:
    """
    按共享截断规则对无穷级数求和

    Args:
        term: 第k项的计算函数
        control: 截断控制参数
        label: 出错时报告的级数名称
        start: 起始下标
        budget: 项数预算，默认为 control.term_cap
        keep_partials: 是否保留全部部分和

    Returns:
        SeriesSum: 求和结果

    Raises:
        NonConvergenceError: 预算内未满足截断规则
    """
    control = resolve_control(control)
    cap = control.term_cap if budget is None else min(budget, control.term_cap)
    total = 0.0
    small_run = 0
    seen_nonzero = False
    recent: List[float] = []
    partials: List[float] = []
    last = 0.0
    magnitude = 0.0

    for used, k in enumerate(range(start, start + cap), start=1):
        last = term(k)
        if not math.isfinite(last):
            raise NonConvergenceError(
                f"{label}: 第{k}项非有限",
                {"label": label, "index": k, "term": last},
            )
        total += last
        magnitude = max(magnitude, abs(last), abs(total))
        if keep_partials:
            partials.append(total)
        recent.append(abs(last))
        if len(recent) > control.consecutive:
            recent.pop(0)

        seen_nonzero = seen_nonzero or last != 0.0
        threshold = max(control.rel_tol * abs(total), control.abs_tol)
        # 前导零项不算"足够小"：部分和为零时只有见过非零项之后的零项才算
        if (total != 0.0 and abs(last) <= threshold) or (last == 0.0 and seen_nonzero):
            small_run += 1
        else:
            small_run = 0

        if small_run >= control.consecutive:
            return SeriesSum(total, used, max(recent), partials, magnitude)

    raise NonConvergenceError(
        f"{label}: {cap}项内未收敛",
        {"label": label, "terms_used": cap, "last_term": last, "partial_sum": total},
    )


def sum_finite(terms, keep_partials: bool = False) -> SeriesSum:
    """
    有限项求和（多项式等已知次数的情形）

    Args:
        terms: 可迭代的项
        keep_partials: 是否保留部分和

    Returns:
        SeriesSum: tail_estimate 恒为0
    """
    total = 0.0
    partials = []
    count = 0
    magnitude = 0.0
    for t in terms:
        total += t
        magnitude = max(magnitude, abs(t), abs(total))
        count += 1
        if keep_partials:
            partials.append(total)
    return SeriesSum(total, count, 0.0, partials, magnitude)


def sum_terms(
    term: Callable[[int], float],
    control: Optional[SeriesControl] = None,
    terms: Optional[int] = None,
    label: str = "series",
) -> SeriesSum:
    """
    给定项数时直接截断，否则按截断规则求和

    Args:
        term: 第k项的计算函数
        control: 截断控制参数
        terms: 固定项数
        label: 级数名称
    """
    if terms is not None:
        if terms < 1:
            raise ValidationError("项数必须为正", {"terms": terms})
        return sum_finite(term(k) for k in range(terms))
    return sum_series(term, resolve_control(control), label=label)


def cancellation_loss(magnitude: float) -> float:
    """最大项或部分和量级带来的舍入损失 magnitude·eps"""
    return magnitude * _EPS


def check_cancellation(
    label: str,
    value: float,
    magnitude: float,
    tol: Optional[float] = None,
) -> float:
    """
    检查组装结果是否被抵消吞没

    Args:
        label: 出错时报告的名称
        value: 组装后的结果
        magnitude: 参与组装的最大项或部分和的绝对值
        tol: 允许的相对损失，默认取配置 series.cancellation_tol

    Returns:
        float: 舍入损失的绝对估计

    Raises:
        NonConvergenceError: 损失超过 tol·|value|
    """
    tol = config.get("series.cancellation_tol", 1e-8) if tol is None else tol
    loss = cancellation_loss(magnitude)
    if loss > tol * abs(value):
        raise NonConvergenceError(
            f"{label}: 抵消过大，舍入损失 {loss:.3e} 超过 |结果|·{tol:g}",
            {"label": label, "value": value, "magnitude": magnitude, "loss": loss, "tol": tol},
        )
    return loss
