"""RelPlaus - 相对概率证据推理引擎

以后验赔率（"相对概率"）评估相互竞争的案件解释：分组联合似然比、Occam 复杂度惩罚、
覆盖度指数折扣、证明标准阈值，以及基于精确枚举 oracle 的一致性检查。
"""

__version__ = "0.1.0"
