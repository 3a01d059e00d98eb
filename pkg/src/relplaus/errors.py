"""异常层级

校验与解析问题以报告/诊断的形式返回；只有违反前置条件的调用才抛出这里的异常。
"""

from typing import Optional


class PlausError(Exception):
    """所有 relplaus 异常的基类，携带机器可读的错误码"""

    code: str = "PLAUS_ERROR"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"[{self.code}] {super().__str__()}"


class InferenceError(PlausError):
    """推理失败：不能折扣的决定性证据、相互矛盾的决定性贡献"""

    code = "INFERENCE_ERROR"


class ScaleError(PlausError):
    """语言刻度查找失败"""

    code = "UNKNOWN_LABEL"


class StandardError(PlausError):
    """证明标准无法解析为数值阈值"""

    code = "UNRESOLVED_STANDARD"


class SweepError(PlausError):
    """敏感性扫描的目标或取值非法"""

    code = "DOMAIN"


class OracleError(PlausError):
    """枚举 oracle 或 DiscreteWorld 不满足前置条件"""

    code = "ORACLE_ERROR"


class WorldFormatError(OracleError):
    """.world 文件格式错误"""

    code = "WORLD_FORMAT"

    def __init__(self, message: str, line: int):
        super().__init__(f"第 {line} 行: {message}")
        self.line = line
