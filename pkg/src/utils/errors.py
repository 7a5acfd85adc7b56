"""
错误定义模块

所有数值运算的异常都带有错误码、可读信息和详细上下文，
命令行根据异常类型决定退出码。
"""
from typing import Dict, Any, Optional

# 错误码表
ERRORS = {
    "INTERNAL": {"code": "E1001", "message": "内部错误"},
    "VALIDATION": {"code": "E2001", "message": "参数校验失败"},
    "POLE": {"code": "E2002", "message": "函数在极点处求值"},
    "MISSING_CLOSED_FORM": {"code": "E2003", "message": "该函数族没有注册的无穷上限闭式"},
    "UNSUPPORTED_FAMILY": {"code": "E2004", "message": "不支持的函数族"},
    "NON_CONVERGENCE": {"code": "E3001", "message": "级数在项数上限内未收敛"},
    "CONVERGENCE_DOMAIN": {"code": "E3002", "message": "参数超出级数收敛域"},
    "QUADRATURE": {"code": "E3003", "message": "数值积分失败"},
    "EXTRAPOLATION": {"code": "E3004", "message": "ε外推未收敛"},
    "VERIFY_FAILURE": {"code": "E4001", "message": "验证套件存在失败项"},
}


class FPSError(Exception):
    """库内所有异常的基类"""

    error_key = "VALIDATION"
    exit_code = 1

    def __init__(self, message: Optional[str] = None, details: Dict[str, Any] = None):
        entry = ERRORS[self.error_key]
        self.code = entry["code"]
        self.message = message or entry["message"]
        self.details = details or {}
        super().__init__(f"[{self.code}] {self.message}")

    def one_line(self) -> str:
        """命令行使用的单行错误描述"""
        return f"error {self.code}: {self.message}"


class ValidationError(FPSError):
    """参数或前置条件不满足"""
    error_key = "VALIDATION"
    exit_code = 2


class PoleError(ValidationError):
    """特殊函数在极点处求值"""
    error_key = "POLE"


class MissingClosedFormError(ValidationError):
    """a = ∞ 时函数族没有闭式"""
    error_key = "MISSING_CLOSED_FORM"


class UnsupportedFamilyError(ValidationError):
    """整数阶无穷上限有限部分只支持高斯族"""
    error_key = "UNSUPPORTED_FAMILY"


class NonConvergenceError(FPSError):
    """级数或迭代在预算内没有收敛"""
    error_key = "NON_CONVERGENCE"
    exit_code = 3


class ConvergenceDomainError(NonConvergenceError):
    """ω ≥ a，naive级数不收敛"""
    error_key = "CONVERGENCE_DOMAIN"


class QuadratureError(NonConvergenceError):
    """自适应积分失败"""
    error_key = "QUADRATURE"


class ExtrapolationError(NonConvergenceError):
    """ε阶梯外推不收缩"""
    error_key = "EXTRAPOLATION"


class InternalError(FPSError):
    """库外异常（溢出、除零等）在命令行的统一包装"""
    error_key = "INTERNAL"
    exit_code = 1


class VerifyFailure(FPSError):
    """验证套件失败"""
    error_key = "VERIFY_FAILURE"
    exit_code = 4
