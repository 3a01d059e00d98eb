"""配置管理 - 使用 Pydantic 模型

阈值与语言刻度都是政策配置，不是理论结论；支持从 YAML 文件读取。
查找顺序：显式路径 > 环境变量 PLAUS_CONFIG > config/plaus.yaml > 内置默认值。
"""
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator

from .core.model import StandardName, StandardOfProof
from .errors import StandardError

CONFIG_ENV_VAR = "PLAUS_CONFIG"
DEFAULT_CONFIG_PATH = "config/plaus.yaml"


def _default_scale() -> Dict[str, float]:
    return {
        "very_strong_against": 0.001,
        "strong_against": 0.01,
        "moderate_against": 0.1,
        "weak_against": 0.5,
        "neutral": 1.0,
        "weak_support": 2.0,
        "moderate_support": 10.0,
        "strong_support": 100.0,
        "very_strong_support": 1000.0,
    }


class StandardsConfig(BaseModel):
    """证明标准阈值（赔率）"""
    preponderance: float = 1.0
    clear_and_convincing: float = 3.0
    beyond_reasonable_doubt: float = 99.0
    custom: Optional[float] = None  # 未配置时必须在命令行给出 --threshold

    @field_validator("preponderance", "clear_and_convincing", "beyond_reasonable_doubt", "custom")
    @classmethod
    def threshold_positive(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not v > 0:
            raise ValueError(f"阈值必须为正数: {v}")
        return v

    def threshold_for(self, name: StandardName) -> Optional[float]:
        return getattr(self, name.value)


class ScaleConfig(BaseModel):
    """语言刻度：标签 → 似然比"""
    labels: Dict[str, float] = Field(default_factory=_default_scale)

    @field_validator("labels")
    @classmethod
    def ratios_nonnegative(cls, v: Dict[str, float]) -> Dict[str, float]:
        for label, lr in v.items():
            if not lr >= 0:
                raise ValueError(f"刻度 '{label}' 的似然比必须 ≥ 0: {lr}")
        return v


class CoherenceConfig(BaseModel):
    """一致性检查默认参数"""
    trials: int = 100
    seed: int = 0
    tolerance: float = 1e-12


class ReportConfig(BaseModel):
    """报告输出配置"""
    width: int = 100                    # 文本表格固定宽度，保证输出确定
    max_workers: Optional[int] = None   # sweep 并发线程数


class Settings(BaseModel):
    """全局配置"""
    standards: StandardsConfig = Field(default_factory=StandardsConfig)
    scale: ScaleConfig = Field(default_factory=ScaleConfig)
    coherence: CoherenceConfig = Field(default_factory=CoherenceConfig)
    report: ReportConfig = Field(default_factory=ReportConfig)


def _load_yaml_config(config_path: Path) -> Dict[str, Any]:
    """从 YAML 文件加载配置"""
    import yaml

    if not config_path.exists():
        return {}

    with open(config_path, encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


@lru_cache()
def get_settings(config_path: Optional[str] = None) -> Settings:
    """获取全局配置（单例模式）"""
    path = Path(config_path or os.environ.get(CONFIG_ENV_VAR) or DEFAULT_CONFIG_PATH)
    return Settings(**_load_yaml_config(path))


def reload_settings(config_path: Optional[str] = None) -> Settings:
    """重新加载配置（清除缓存后获取）"""
    get_settings.cache_clear()
    return get_settings(config_path)


def resolve_standard(
    name: StandardName,
    settings: Optional[Settings] = None,
    threshold: Optional[float] = None,
) -> StandardOfProof:
    """把证明标准名称解析为数值阈值

    优先级：显式阈值（视为 custom）> 配置文件中该标准的阈值

    Raises:
        StandardError: custom 标准没有可用阈值
    """
    if threshold is not None:
        if not threshold > 0:
            raise StandardError(f"阈值必须为正数: {threshold}")
        return StandardOfProof(StandardName.CUSTOM, threshold)

    settings = settings or get_settings()
    value = settings.standards.threshold_for(name)
    if value is None:
        raise StandardError(
            f"证明标准 '{name.value}' 没有配置阈值，请在配置文件中设置或使用 --threshold"
        )
    return StandardOfProof(name, value)
