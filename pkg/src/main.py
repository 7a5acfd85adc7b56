"""
fpstieltjes 程序入口

广义Stieltjes变换的有限部分积分展开与对照的命令行。
"""
import sys
import argparse
from typing import List, Optional

from src.cli.exporter import ReportExporter
from src.cli.runner import REQUIRED_PARAMS, RunConfig, run
from src.utils.errors import FPSError, InternalError, ValidationError, VerifyFailure
from src.utils.logger import setup_logger, set_debug_mode

logger = setup_logger("main")


class CommandParser(argparse.ArgumentParser):
    """解析错误抛出 ValidationError，由入口统一输出单行错误码"""

    def error(self, message: str):
        raise ValidationError(f"{self.prog}: {message}", {"usage": self.format_usage().strip()})


def _common_options() -> argparse.ArgumentParser:
    common = CommandParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="对照数值积分的相对容差")
    common.add_argument("--term-cap", type=int, default=2000, help="级数项数上限")
    common.add_argument("--format", dest="output_format", choices=["json", "csv", "text"],
                        help="输出格式，缺省时sweep为csv，其余命令取配置 output.format（text）")
    common.add_argument("--output", help="报告写入文件而不是标准输出")
    common.add_argument("--debug", action="store_true", help="启用调试模式，显示详细日志")
    return common


def build_parser() -> argparse.ArgumentParser:
    """构造带子命令的参数解析器"""
    common = _common_options()
    parser = CommandParser(
        prog="fpstieltjes",
        description="fpstieltjes - 广义Stieltjes变换的有限部分积分展开",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    p = command("stieltjes", "∫₀^a f(x)/(ω+x)^{n+α} dx")
    p.add_argument("--f", required=True, help="注册函数名如 power_exp[2]，或 @系数文件")
    p.add_argument("--a", required=True, help="上限，正数或 inf")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--no-domain-check", action="store_true", help="ω ≥ a 时仍运行naive级数，由截断规则检测发散")

    p = command("sqrt-transform", "∫₀^a f(x)/√(ω²+x²) dx")
    p.add_argument("--f", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--no-domain-check", action="store_true")

    p = command("fp", "有限部分积分 ⨍₀^c f/x^ρ 或 ⨍₀^c f/(c-x)^ρ")
    p.add_argument("--f", required=True)
    p.add_argument("--c", required=True, help="区间右端，原点奇性时可为 inf")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--at", choices=["origin", "endpoint"], default="origin", help="奇点位置")

    p = command("gauss2f1", "₂F₁(n+α, r; s; -ζ)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--zeta", type=float, required=True)

    p = command("kummeru", "U(n, 1-α, ω)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)

    p = command("gaussian-sqrt", "∫₀^∞ e^{-αx²+βx}/√(ω²+x²) dx")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--omega", type=float, required=True)

    p = command("k0", "K₀(x) 的级数表示")
    p.add_argument("--x", type=float, required=True)

    p = command("sweep", "ω对数网格上的展开与对照，未指定 --format 时输出csv")
    p.add_argument("--cmd", required=True, choices=["stieltjes", "sqrt-transform"])
    p.add_argument("--f", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--omega-grid", required=True, help="lo:hi:count")

    p = command("verify", "运行验证套件")
    p.add_argument("--checks", nargs="*", help="只运行指定的检查")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """把解析结果转换为 RunConfig"""
    skip = {"command", "tol", "term_cap", "output_format", "output", "debug"}
    params = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    # 参数按注册顺序排列，保证输出稳定
    ordered = {k: params.pop(k) for k in REQUIRED_PARAMS[args.command] if k in params}
    ordered.update(sorted(params.items()))
    return RunConfig(args.command, ordered, args.output_format, args.tol, args.term_cap, args.output)


def _fail(error: FPSError) -> int:
    logger.debug(f"{type(error).__name__}: {error.details}")
    sys.stderr.write(error.one_line() + "\n")
    return error.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """程序入口函数，返回退出码"""
    try:
        args = build_parser().parse_args(argv)
        if args.debug:
            set_debug_mode(True)
            logger.debug("调试模式已启用")

        run_config = config_from_args(args)
        exit_code, report = run(run_config)
        text = ReportExporter().export(report, run_config.resolved_format(), run_config.output_path)
        if not run_config.output_path:
            sys.stdout.write(text)
        if exit_code == VerifyFailure.exit_code:
            failed = report.diagnostics.get("failed_checks", [])
            sys.stderr.write(VerifyFailure(f"{len(failed)} 项检查失败: {', '.join(failed)}").one_line() + "\n")
        return exit_code
    except FPSError as e:
        return _fail(e)
    except Exception as e:
        logger.debug(f"未预期的异常: {type(e).__name__}", exc_info=True)
        return _fail(InternalError(f"{type(e).__name__}: {e}", {"type": type(e).__name__}))


if __name__ == "__main__":
    sys.exit(main())
