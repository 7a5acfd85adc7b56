"""
整函数表示模块

整函数以其在0处的Taylor系数流 c_k 表示，系数按需惰性计算并缓存；
反射 f(-x)、g(c-x) 是同一系数流上的派生视图。
"""
import json
import math
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.numerics.series import SeriesControl, sum_finite, sum_series
from src.numerics.specfun import inv_factorial
from src.utils.config import config
from src.utils.errors import NonConvergenceError, ValidationError
from src.utils.logger import setup_logger

logger = setup_logger("entire")

CoefficientRule = Callable[[int], float]
Evaluator = Callable[[np.ndarray], np.ndarray]


class EntireFunction:
    """
    以Taylor系数流表示的整函数

    Attributes:
        name: 显示名称
        family: 闭式目录中的函数族键，派生视图为None
        params: 函数族参数
        degree: 多项式次数；零函数为-1；非多项式为None
    """

    def __init__(
        self,
        name: str,
        coeff_rule: CoefficientRule,
        evaluator: Optional[Evaluator] = None,
        degree: Optional[int] = None,
        family: Optional[str] = None,
        params: Optional[Dict[str, float]] = None,
    ):
        self.name = name
        self.family = family
        self.params = dict(params or {})
        self.degree = degree
        self._rule = coeff_rule
        self._evaluator = evaluator
        self._cache: Dict[int, float] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"EntireFunction({self.name})"

    @property
    def is_polynomial(self) -> bool:
        return self.degree is not None

    @property
    def is_zero(self) -> bool:
        return self.degree == -1

    @property
    def has_evaluator(self) -> bool:
        return self._evaluator is not None

    def coeff(self, k: int) -> float:
        """第k个Taylor系数 c_k = f^{(k)}(0)/k!"""
        if k < 0:
            raise ValidationError("系数下标必须非负", {"k": k})
        if self.degree is not None and k > self.degree:
            return 0.0
        with self._lock:
            if k in self._cache:
                return self._cache[k]
        value = float(self._rule(k))
        with self._lock:
            self._cache.setdefault(k, value)
            return self._cache[k]

    def coefficients(self, count: int) -> np.ndarray:
        """前count个系数 c_0..c_{count-1}"""
        return np.array([self.coeff(k) for k in range(count)])

    def taylor_partial(self, x, order: int):
        """截断Taylor和 Σ_{k≤order} c_k x^k"""
        return np.polynomial.polynomial.polyval(x, self.coefficients(order + 1))

    def evaluate(self, x):
        """
        逐点求值：有闭式时直接调用，否则对系数流求和

        Args:
            x: 标量或numpy数组

        Returns:
            与x形状相同的函数值
        """
        if self._evaluator is not None:
            return self._evaluator(x)
        if self.degree is not None:
            if self.degree < 0:
                return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
            return np.polynomial.polynomial.polyval(x, self.coefficients(self.degree + 1))
        return self._evaluate_by_series(x)

    def __call__(self, x):
        return self.evaluate(x)

    def _evaluate_by_series(self, x):
        control = SeriesControl.from_config()
        values = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty_like(values)
        for i, xi in enumerate(values):
            out[i] = sum_series(
                lambda k: self.coeff(k) * xi ** k, control, label=f"{self.name}({xi})"
            ).value
        return out if np.ndim(x) else float(out[0])

    def order_of_zero(self, threshold: Optional[float] = None) -> int:
        """
        零点阶数：第一个非零系数的下标

        系数 c_k 在 |c_k| < threshold·max_{j≤k}|c_j| 时视为零。

        Raises:
            ValidationError: 零函数
        """
        if self.is_zero:
            raise ValidationError(f"{self.name} 是零函数，没有零点阶数")
        threshold = config.get("asymptotics.zero_threshold", 1e-14) if threshold is None else threshold
        limit = self.degree + 1 if self.degree is not None else config.get("series.term_cap", 2000)
        running_max = 0.0
        for k in range(limit):
            c = abs(self.coeff(k))
            running_max = max(running_max, c)
            if c != 0.0 and c >= threshold * running_max:
                return k
        raise ValidationError(f"{self.name} 在前{limit}个系数内全为零")

    def reflect(self) -> "EntireFunction":
        """f(-x) 视图"""
        base = self
        evaluator = None
        if self.has_evaluator:
            def evaluator(x):
                return base.evaluate(np.negative(x))
        return EntireFunction(
            f"{self.name}(-x)",
            lambda k: (-1) ** k * base.coeff(k),
            evaluator,
            degree=self.degree,
        )

    def reflect_about(self, c: float, control: Optional[SeriesControl] = None) -> "EntireFunction":
        """
        g(c-x) 视图，系数为 (-1)^k g^{(k)}(c)/k!

        Args:
            c: 反射中心
            control: 平移展开内层求和的控制参数
        """
        base = self
        evaluator = None
        if self.has_evaluator or self.is_polynomial:
            def evaluator(x):
                return base.evaluate(np.subtract(c, x))
        return EntireFunction(
            f"{self.name}({c}-x)",
            lambda k: (-1) ** k * shifted_coefficient(base, c, k, control),
            evaluator,
            degree=self.degree,
        )


@dataclass(frozen=True)
class ShiftedExpansion:
    """平移展开 d_k = f^{(k)}(x0)/k!"""
    center: float
    coefficients: np.ndarray
    terms_used: int

    def coeff(self, k: int) -> float:
        return float(self.coefficients[k]) if k < len(self.coefficients) else 0.0

    def as_function(self, name: Optional[str] = None) -> EntireFunction:
        """把截断的平移系数当作多项式使用（用于平移复合）"""
        return from_coefficient_list(
            list(enumerate(self.coefficients.tolist())),
            name or f"shift@{self.center}",
        )


def _shift_control(control: Optional[SeriesControl]) -> SeriesControl:
    if control is not None:
        return control
    return SeriesControl(
        rel_tol=config.get("series.shift_rel_tol", 1e-16),
        abs_tol=0.0,
        term_cap=config.get("series.shift_term_budget", 600),
        consecutive=config.get("series.consecutive", 3),
    )


def shifted_coefficient(
    f: EntireFunction, x0: float, k: int, control: Optional[SeriesControl] = None
) -> float:
    """单个平移系数 d_k = Σ_{m≥k} c_m C(m,k) x0^{m-k}"""
    return _shifted_coefficient_with_count(f, x0, k, control)[0]


def _shifted_coefficient_with_count(
    f: EntireFunction, x0: float, k: int, control: Optional[SeriesControl] = None
) -> Tuple[float, int]:
    if x0 == 0.0:
        return f.coeff(k), 1
    if f.is_polynomial:
        if k > f.degree:
            return 0.0, 0
        result = sum_finite(
            f.coeff(m) * math.comb(m, k) * x0 ** (m - k) for m in range(k, f.degree + 1)
        )
        return result.value, result.terms_used

    def term(i: int) -> float:
        m = k + i
        c = f.coeff(m)
        if c == 0.0:
            return 0.0
        return c * math.comb(m, k) * x0 ** i

    try:
        result = sum_series(term, _shift_control(control), label=f"shift[{f.name}, k={k}]")
    except NonConvergenceError as e:
        logger.error(f"平移展开内层求和失败: {f.name}, x0={x0}, k={k}")
        raise NonConvergenceError(
            f"平移展开 d_{k} 在 x0={x0} 处未收敛",
            {**e.details, "x0": x0, "k": k},
        ) from e
    return result.value, result.terms_used


def shift(
    f: EntireFunction, x0: float, K: int, control: Optional[SeriesControl] = None
) -> ShiftedExpansion:
    """
    平移再展开，返回前K+1个系数 d_k = f^{(k)}(x0)/k!

    Args:
        f: 整函数
        x0: 新的展开中心
        K: 最高系数下标
        control: 内层求和控制参数

    Returns:
        ShiftedExpansion: 平移展开

    Raises:
        NonConvergenceError: 内层求和在预算内未收敛
    """
    if K < 0:
        raise ValidationError("K必须非负", {"K": K})
    coefficients = np.zeros(K + 1)
    terms = 0
    for k in range(K + 1):
        coefficients[k], used = _shifted_coefficient_with_count(f, x0, k, control)
        terms = max(terms, used)
    logger.debug(f"平移展开 {f.name} @ {x0}: K={K}, 内层最多{terms}项")
    return ShiftedExpansion(x0, coefficients, terms)


# ---------------------------------------------------------------------------
# 内置函数库
# ---------------------------------------------------------------------------

def _as_array(x):
    return np.asarray(x, dtype=float)


def exp_neg() -> EntireFunction:
    """exp(-x)"""
    return EntireFunction(
        "exp_neg",
        lambda k: (-1) ** k * inv_factorial(k),
        lambda x: np.exp(-_as_array(x)),
        family="exp_neg",
    )


def power_exp(n: int) -> EntireFunction:
    """e^{-x} x^{n-1}"""
    if n < 1 or int(n) != n:
        raise ValidationError("power_exp 的 n 必须是正整数", {"n": n})
    n = int(n)

    def rule(k: int) -> float:
        i = k - (n - 1)
        return 0.0 if i < 0 else (-1) ** i * inv_factorial(i)

    return EntireFunction(
        f"power_exp[{n}]",
        rule,
        lambda x: np.exp(-_as_array(x)) * _as_array(x) ** (n - 1),
        family="power_exp",
        params={"n": n},
    )


def beta_poly(r: int, s: int) -> EntireFunction:
    """x^{r-1}(1-x)^{s-r-1}"""
    if r < 1 or s < r + 1 or int(r) != r or int(s) != s:
        raise ValidationError("beta_poly 要求整数 r ≥ 1, s ≥ r+1", {"r": r, "s": s})
    r, s = int(r), int(s)
    power = s - r - 1

    def rule(k: int) -> float:
        i = k - (r - 1)
        if i < 0 or i > power:
            return 0.0
        return float((-1) ** i * math.comb(power, i))

    return EntireFunction(
        f"beta_poly[{r},{s}]",
        rule,
        lambda x: _as_array(x) ** (r - 1) * (1.0 - _as_array(x)) ** power,
        degree=s - 2,
        family="beta_poly",
        params={"r": r, "s": s},
    )


def gauss_exp(alpha: float, beta: float = 0.0) -> EntireFunction:
    """e^{-αx²+βx}，系数为两个指数级数的Cauchy乘积"""
    if not alpha > 0:
        raise ValidationError("gauss_exp 要求 α > 0", {"alpha": alpha})
    alpha, beta = float(alpha), float(beta)

    def rule(k: int) -> float:
        terms = []
        for n in range(k // 2 + 1):
            rest = k - 2 * n
            if beta == 0.0 and rest > 0:
                continue
            terms.append((-alpha) ** n * inv_factorial(n) * beta ** rest * inv_factorial(rest))
        return math.fsum(terms)

    return EntireFunction(
        f"gauss_exp[{alpha:g},{beta:g}]",
        rule,
        lambda x: np.exp(-alpha * _as_array(x) ** 2 + beta * _as_array(x)),
        family="gauss_exp",
        params={"alpha": alpha, "beta": beta},
    )


def monomial(m: int) -> EntireFunction:
    """x^m"""
    if m < 0 or int(m) != m:
        raise ValidationError("monomial 的 m 必须是非负整数", {"m": m})
    m = int(m)
    return EntireFunction(
        f"monomial[{m}]",
        lambda k: 1.0 if k == m else 0.0,
        lambda x: _as_array(x) ** m if m else np.ones_like(_as_array(x)),
        degree=m,
        family="monomial",
        params={"m": m},
    )


def zero() -> EntireFunction:
    """恒为零的函数"""
    return EntireFunction(
        "zero",
        lambda k: 0.0,
        lambda x: np.zeros_like(_as_array(x)),
        degree=-1,
        family="zero",
    )


def from_coefficient_list(pairs: Iterable[Sequence[float]], name: str = "user") -> EntireFunction:
    """
    由 (k, c_k) 对构造多项式

    Args:
        pairs: (k, c_k) 序列，未出现的下标系数为0
        name: 名称
    """
    table: Dict[int, float] = {}
    for pair in pairs:
        if len(pair) != 2:
            raise ValidationError("系数项必须是 (k, c_k) 对", {"pair": list(pair)})
        k, c = pair
        if int(k) != k or k < 0:
            raise ValidationError("系数下标必须是非负整数", {"k": k})
        c = float(c)
        if not math.isfinite(c):
            raise ValidationError("系数必须有限", {"k": k, "c": c})
        table[int(k)] = table.get(int(k), 0.0) + c

    nonzero = [k for k, c in table.items() if c != 0.0]
    degree = max(nonzero) if nonzero else -1
    return EntireFunction(name, lambda k: table.get(k, 0.0), degree=degree)


def load_coefficient_file(path: Union[str, Path]) -> EntireFunction:
    """
    从文件加载用户定义的多项式

    支持JSON格式 [[k, c_k], ...] 或每行 "k c_k" 的纯文本（#开头为注释）。
    """
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"系数文件不存在: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        pairs = json.loads(text)
    except json.JSONDecodeError:
        pairs = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.replace(",", " ").split()
            if len(fields) != 2:
                raise ValidationError(f"系数文件第{lineno}行格式错误", {"line": line})
            try:
                pairs.append((int(fields[0]), float(fields[1])))
            except ValueError as e:
                raise ValidationError(f"系数文件第{lineno}行无法解析: {e}") from e
    if not isinstance(pairs, list):
        raise ValidationError("JSON系数文件必须是 [[k, c_k], ...] 列表")
    logger.debug(f"从 {path} 加载 {len(pairs)} 个系数")
    return from_coefficient_list(pairs, name=path.stem)


# 函数族注册表: 名称 -> (构造函数, 参数个数)
_FAMILIES: Dict[str, Tuple[Callable[..., EntireFunction], int]] = {
    "exp_neg": (exp_neg, 0),
    "power_exp": (power_exp, 1),
    "beta_poly": (beta_poly, 2),
    "gauss_exp": (gauss_exp, 2),
    "monomial": (monomial, 1),
    "zero": (zero, 0),
}

_SPEC_PATTERN = re.compile(r"^\s*([a-z_]+)\s*(?:\[([^\]]*)\])?\s*$")


def builtin_library() -> Dict[str, Callable[..., EntireFunction]]:
    """内置函数族构造器目录"""
    return {name: ctor for name, (ctor, _) in _FAMILIES.items()}


def _parse_number(text: str) -> Union[int, float]:
    value = float(text)
    return int(value) if value.is_integer() and "." not in text and "e" not in text.lower() else value


def parse_function_spec(spec: str) -> EntireFunction:
    """
    解析函数描述：注册表键如 "power_exp[2]"，或 "@path" 指向系数文件

    Raises:
        ValidationError: 未知函数族或参数个数不符
    """
    if spec.startswith("@"):
        return load_coefficient_file(spec[1:])
    match = _SPEC_PATTERN.match(spec)
    if not match:
        raise ValidationError(f"无法解析函数描述: {spec}")
    name, arg_text = match.group(1), match.group(2)
    if name not in _FAMILIES:
        raise ValidationError(f"未知的函数族: {name}", {"known": sorted(_FAMILIES)})
    ctor, arity = _FAMILIES[name]
    args: List[Union[int, float]] = []
    if arg_text:
        try:
            args = [_parse_number(a.strip()) for a in arg_text.split(",") if a.strip()]
        except ValueError as e:
            raise ValidationError(f"函数参数无法解析: {spec}") from e
    if len(args) != arity:
        raise ValidationError(
            f"{name} 需要{arity}个参数，实际{len(args)}个",
            {"spec": spec},
        )
    return ctor(*args)
