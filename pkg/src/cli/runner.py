"""
命令执行模块

RunConfig 描述一次命令；run() 执行并返回 (退出码, 报告)。
每个值命令都给出 {value, oracle, rel_err, terms}，sweep 在ω对数网格上并发计算。
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from src.apps.hypergeometric import (
    Gauss2F1Params,
    KummerParams,
    gauss2f1_expansion,
    gauss2f1_via_two_2f1,
    gauss2f1_quadrature,
    kummer_u,
    kummer_u_via_two_1f1,
    kummer_u_quadrature,
)
from src.apps.sqrt_kernel import (
    bessel_k0,
    bessel_k0_classical,
    gaussian_sqrt,
    gaussian_sqrt_quadrature,
)
from src.cli.exporter import SWEEP_COLUMNS, Report
from src.cli.verify import relative_error, run_checks
from src.engine.entire import EntireFunction, parse_function_spec
from src.engine.fpi import (
    fp_catalog_infinite_oracle,
    fp_endpoint,
    fp_epsilon_oracle,
    fp_epsilon_oracle_origin,
    fp_origin,
    split_order,
)
from src.engine.stieltjes import (
    StieltjesQuery,
    dominant_prediction,
    eval_sqrt_transform,
    eval_stieltjes,
    sqrt_transform_quadrature,
    stieltjes_quadrature,
)
from src.numerics.series import SeriesControl
from src.utils.config import config
from src.utils.errors import FPSError, ValidationError, VerifyFailure
from src.utils.logger import setup_logger

logger = setup_logger("runner")

COMMANDS = ("stieltjes", "sqrt-transform", "fp", "gauss2f1", "kummeru", "gaussian-sqrt", "k0", "sweep", "verify")

# 每个命令的必需参数
REQUIRED_PARAMS: Dict[str, Tuple[str, ...]] = {
    "stieltjes": ("f", "a", "n", "alpha", "omega"),
    "sqrt-transform": ("f", "a", "omega"),
    "fp": ("f", "c", "rho"),
    "gauss2f1": ("n", "alpha", "r", "s", "zeta"),
    "kummeru": ("n", "alpha", "omega"),
    "gaussian-sqrt": ("alpha", "beta", "omega"),
    "k0": ("x",),
    "sweep": ("cmd", "f", "a", "omega_grid"),
    "verify": (),
}

SWEEP_TARGETS = ("stieltjes", "sqrt-transform")


@dataclass
class RunConfig:
    """一次命令的完整配置"""
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    output_format: Optional[str] = None
    tol: float = 1e-10
    term_cap: int = 2000
    output_path: Optional[str] = None

    def validate(self):
        """执行前检查命令名与必需参数"""
        if self.command not in COMMANDS:
            raise ValidationError(f"未知命令: {self.command}", {"known": list(COMMANDS)})
        missing = [k for k in REQUIRED_PARAMS[self.command] if self.params.get(k) is None]
        if missing:
            raise ValidationError(f"{self.command} 缺少参数: {', '.join(missing)}", {"missing": missing})
        if self.command == "stieltjes" or (self.command == "sweep" and self.params.get("cmd") == "stieltjes"):
            for key in ("n", "alpha"):
                if self.params.get(key) is None:
                    raise ValidationError(f"{self.command} 缺少参数: {key}", {"missing": [key]})
        if not (self.tol > 0):
            raise ValidationError("tol 必须为正", {"tol": self.tol})
        if self.term_cap < 1:
            raise ValidationError("term_cap 必须为正", {"term_cap": self.term_cap})

    def resolved_format(self) -> str:
        """未指定格式时 sweep 默认 csv，其余命令取配置中的默认格式"""
        if self.output_format:
            return self.output_format
        return "csv" if self.command == "sweep" else config.get("output.format", "text")

    def control(self) -> SeriesControl:
        base = SeriesControl.from_config()
        return SeriesControl(base.rel_tol, base.abs_tol, self.term_cap, base.consecutive)


def parse_upper_limit(value) -> float:
    """上限可写作 inf / ∞ 或正数"""
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"无法解析上限: {value}", {"value": value})


def parse_omega_grid(text: str) -> List[float]:
    """
    解析 "lo:hi:count" 形式的ω对数网格

    Returns:
        List[float]: 对数等距的count个点，含两端
    """
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValidationError("ω网格格式应为 lo:hi:count", {"grid": text})
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValidationError("ω网格格式应为 lo:hi:count", {"grid": text})
    if not (0 < lo < hi and math.isfinite(hi)) or count < 2:
        raise ValidationError("ω网格要求 0 < lo < hi 且 count ≥ 2", {"lo": lo, "hi": hi, "count": count})
    return [float(w) for w in np.geomspace(lo, hi, count)]


def _value_row(value: float, oracle: Optional[float], terms: int, **extra) -> Dict[str, Any]:
    row = {
        "value": value,
        "oracle": oracle,
        "rel_err": None if oracle is None else relative_error(value, oracle),
        "terms": terms,
    }
    row.update(extra)
    return row


class CommandRunner:
    """
    命令分派器：命令名到处理方法的注册表
    """

    def __init__(self, run_config: RunConfig):
        self.config = run_config
        self.params = run_config.params
        self.control = run_config.control()
        self.handlers: Dict[str, Callable[[], Report]] = {
            "stieltjes": self._stieltjes,
            "sqrt-transform": self._sqrt_transform,
            "fp": self._fp,
            "gauss2f1": self._gauss2f1,
            "kummeru": self._kummeru,
            "gaussian-sqrt": self._gaussian_sqrt,
            "k0": self._k0,
            "sweep": self._sweep,
            "verify": self._verify,
        }

    def execute(self) -> Report:
        return self.handlers[self.config.command]()

    # -- 参数读取 ----------------------------------------------------------

    def _function(self) -> EntireFunction:
        return parse_function_spec(str(self.params["f"]))

    def _float(self, key: str) -> float:
        try:
            return float(self.params[key])
        except (TypeError, ValueError):
            raise ValidationError(f"参数 {key} 必须是实数", {key: self.params.get(key)})

    def _int(self, key: str) -> int:
        value = self._float(key)
        if not value.is_integer():
            raise ValidationError(f"参数 {key} 必须是整数", {key: self.params.get(key)})
        return int(value)

    def _report(self, rows: List[Dict[str, Any]], columns=None, **diagnostics) -> Report:
        return Report(self.config.command, dict(self.params), rows, diagnostics, columns)

    # -- 值命令 ------------------------------------------------------------

    def _stieltjes_row(self, f: EntireFunction, q: StieltjesQuery) -> Dict[str, Any]:
        enforce = not self.params.get("no_domain_check", False)
        result = eval_stieltjes(f, q, self.control, enforce_domain=enforce)
        oracle = stieltjes_quadrature(f, q, self.config.tol).value
        try:
            dominant = dominant_prediction(f, q)
        except FPSError:
            dominant = None
        return {
            "omega": q.omega,
            "expansion": result.total,
            "oracle": oracle,
            "rel_err": relative_error(result.total, oracle),
            "singular_term": result.singular_term,
            "naive_sum": result.naive_sum,
            "terms_used": result.terms_used,
            "dominant_pred": dominant,
        }

    def _sqrt_row(self, f: EntireFunction, omega: float, a: float) -> Dict[str, Any]:
        enforce = not self.params.get("no_domain_check", False)
        result = eval_sqrt_transform(f, omega, a, self.control, enforce_domain=enforce)
        oracle = sqrt_transform_quadrature(f, omega, a, self.config.tol).value
        return {
            "omega": omega,
            "expansion": result.total,
            "oracle": oracle,
            "rel_err": relative_error(result.total, oracle),
            "singular_term": result.singular_term,
            "naive_sum": result.naive_sum,
            "terms_used": result.terms_used,
            "dominant_pred": None,
        }

    def _stieltjes(self) -> Report:
        f = self._function()
        q = StieltjesQuery(self._float("omega"), parse_upper_limit(self.params["a"]), self._int("n"), self._float("alpha"))
        row = self._stieltjes_row(f, q)
        return self._report([_value_row(
            row["expansion"], row["oracle"], row["terms_used"],
            singular_term=row["singular_term"], naive_sum=row["naive_sum"], dominant_pred=row["dominant_pred"],
        )])

    def _sqrt_transform(self) -> Report:
        row = self._sqrt_row(self._function(), self._float("omega"), parse_upper_limit(self.params["a"]))
        return self._report([_value_row(
            row["expansion"], row["oracle"], row["terms_used"],
            singular_term=row["singular_term"], naive_sum=row["naive_sum"],
        )])

    def _fp(self) -> Report:
        f = self._function()
        c = parse_upper_limit(self.params["c"])
        rho = self._float("rho")
        at = self.params.get("at") or "origin"
        if at not in ("origin", "endpoint"):
            raise ValidationError(f"奇点位置只能是 origin 或 endpoint: {at}", {"at": at})
        integer_order = rho.is_integer()
        n, alpha = split_order(rho)
        if at == "endpoint":
            if math.isinf(c):
                raise ValidationError("端点奇性要求有限的c", {"c": c})
            value = fp_endpoint(f, c, rho, self.control)
            oracle = fp_epsilon_oracle(f, c, n, alpha)
        else:
            value = fp_origin(f, c, rho, self.control)
            if integer_order:
                oracle = None
            elif math.isinf(c):
                oracle = fp_catalog_infinite_oracle(f, rho)
            else:
                oracle = fp_epsilon_oracle_origin(f, c, n, alpha)
        row = _value_row(value.value, None if oracle is None else oracle.value, value.terms_used)
        diagnostics = {}
        if oracle is not None:
            diagnostics = {"oracle_method": oracle.method, "oracle_error_estimate": oracle.error_estimate}
        return self._report([row], **diagnostics)

    def _gauss2f1(self) -> Report:
        p = Gauss2F1Params(self._int("n"), self._float("alpha"), self._int("r"), self._int("s"), self._float("zeta"))
        result = gauss2f1_expansion(p, control=self.control)
        oracle = gauss2f1_quadrature(p, self.config.tol)
        return self._report(
            [_value_row(result.value, oracle, result.terms_used)],
            two_2f1_assembly=gauss2f1_via_two_2f1(p, self.control),
        )

    def _kummeru(self) -> Report:
        p = KummerParams(self._int("n"), self._float("alpha"), self._float("omega"))
        result = kummer_u(p, control=self.control)
        oracle = kummer_u_quadrature(p, self.config.tol)
        return self._report(
            [_value_row(result.value, oracle, result.terms_used)],
            two_1f1_assembly=kummer_u_via_two_1f1(p, self.control),
        )

    def _gaussian_sqrt(self) -> Report:
        alpha, beta, omega = self._float("alpha"), self._float("beta"), self._float("omega")
        result = gaussian_sqrt(alpha, beta, omega, control=self.control)
        oracle = gaussian_sqrt_quadrature(alpha, beta, omega, self.config.tol)
        return self._report([_value_row(result.value, oracle, result.terms_used)])

    def _k0(self) -> Report:
        x = self._float("x")
        result = bessel_k0(x, control=self.control)
        return self._report([_value_row(result.value, bessel_k0_classical(x, self.control), result.terms_used)])

    # -- sweep / verify ----------------------------------------------------

    def _sweep(self) -> Report:
        target = self.params["cmd"]
        if target not in SWEEP_TARGETS:
            raise ValidationError(f"sweep 只支持 {', '.join(SWEEP_TARGETS)}", {"cmd": target})
        f = self._function()
        a = parse_upper_limit(self.params["a"])
        grid = parse_omega_grid(self.params["omega_grid"])
        if target == "stieltjes":
            n, alpha = self._int("n"), self._float("alpha")
            # 先校验一次参数，避免在线程里才报错
            StieltjesQuery(grid[0], a, n, alpha)

            def row(omega: float) -> Dict[str, Any]:
                return self._stieltjes_row(f, StieltjesQuery(omega, a, n, alpha))
        else:
            def row(omega: float) -> Dict[str, Any]:
                return self._sqrt_row(f, omega, a)

        workers = max(1, int(config.get("sweep.workers", 4)))
        logger.info(f"sweep {target}[{f.name}]: {len(grid)} 个ω点, {workers} 个线程")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # map 按输入顺序返回，与完成顺序无关
            rows = list(executor.map(row, grid))
        return self._report(rows, columns=SWEEP_COLUMNS)

    def _verify(self) -> Report:
        names = self.params.get("checks")
        results = run_checks(names)
        rows = [
            {
                "check": r.name,
                "passed": r.passed,
                "measured": r.measured,
                "tolerance": r.tolerance,
                "seconds": round(r.seconds, 3),
                "message": r.message,
            }
            for r in results
        ]
        failed = [r.name for r in results if not r.passed]
        return self._report(rows, passed=len(results) - len(failed), failed=len(failed), failed_checks=failed)


def run(run_config: RunConfig) -> Tuple[int, Report]:
    """
    执行一条命令

    Args:
        run_config: 命令配置

    Returns:
        Tuple[int, Report]: 退出码与报告；verify 有失败项时退出码为 4

    Raises:
        FPSError: 参数错误或不收敛，由调用方转换为退出码
    """
    run_config.validate()
    logger.info(f"执行命令 {run_config.command}")
    report = CommandRunner(run_config).execute()
    if run_config.command == "verify" and report.diagnostics.get("failed"):
        return VerifyFailure.exit_code, report
    return 0, report
