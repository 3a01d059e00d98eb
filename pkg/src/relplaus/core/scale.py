"""语言刻度 - 把口头强度标签映射为似然比

刻度表是用户可编辑的配置（见 settings.ScaleConfig），这里不声称任何"标准"数值。
"""

from typing import Mapping

from ..errors import ScaleError

ScaleTable = Mapping[str, float]


def qualitative_to_lr(label: str, scale: ScaleTable) -> float:
    """查找标签对应的似然比

    Args:
        label: 口头强度标签，如 "moderate_support"
        scale: 标签 → 似然比

    Returns:
        配置的似然比

    Raises:
        ScaleError: 标签不在刻度表中（UNKNOWN_LABEL）
    """
    try:
        return float(scale[label])
    except KeyError:
        known = ", ".join(sorted(scale)) or "（空）"
        raise ScaleError(f"未知的强度标签 '{label}'，可用标签: {known}") from None
