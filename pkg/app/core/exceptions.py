"""
重复信道错误类型

每个异常携带 exit_code，命令行层据此退出（相当于 HTTPException 的 status_code）。
每条错误路径一个退出码；用法错误单独使用 USAGE_EXIT_CODE。
"""

# 命令行用法错误与参数校验失败（sysexits 的 EX_USAGE）
USAGE_EXIT_CODE = 64


class DuplicationError(ValueError):
    """所有领域错误的基类"""

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidStringError(DuplicationError):
    """字符串或参数不满足前置条件（长度、字母表、下标）"""

    exit_code = 9


class InfeasibleRequestError(DuplicationError):
    """请求本身不可满足，例如读数多于 |D^t(x)|，或 m 超出单纯形的容量"""

    exit_code = 2


class SamplingExhaustedError(DuplicationError):
    exit_code = 11


class NotInConeError(InvalidStringError):
    """字符串不在给定根的后代锥中"""

    exit_code = 10


class InconsistentReadsError(DuplicationError):
    """读数长度不一致或属于不同的重复根"""

    exit_code = 3


class NoCommonAncestorError(DuplicationError):
    """读数在目标长度上没有公共祖先"""

    exit_code = 4


class CodebookMismatchError(DuplicationError):
    """读数的重复根或层级与码本不匹配"""

    exit_code = 5


class RegimeError(DuplicationError):
    """参数落在渐近结论不适用的区域"""

    exit_code = 6


class InstanceTooLargeError(DuplicationError):
    exit_code = 7


class BudgetExceededError(DuplicationError):
    """穷举预言机超出预算；预言机从不返回近似值"""

    exit_code = 8


class VerificationFailed(DuplicationError):
    exit_code = 1
