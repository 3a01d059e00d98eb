"""离散世界 - 有限变量上的两张联合概率表（P: 主张方解释，D: 对立解释）

.world 文件格式（逐行，`#` 到行尾为注释）：

    var w1 yes no          # 变量及其取值，先于所有质量行
    var w2 yes no
    observe w1 yes         # 观察到的取值
    P yes yes 0.64         # 表 P 中一个格子的质量，取值按 var 声明顺序
    D yes yes 0.001

未列出的格子质量为 0；同一格子重复出现是错误。
"""

import math
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Mapping, Sequence, Union

import numpy as np

from ..errors import OracleError, WorldFormatError

HYPOTHESES = ("P", "D")
MAX_CELLS = 2 ** 20
MASS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Variable:
    """离散变量"""
    id: str
    outcomes: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class DiscreteWorld:
    """两张同形状的联合质量表 + 观察值

    表的第 i 个轴对应 variables[i]；构造时复制并冻结数组。

    Raises:
        OracleError: WORLD_INVALID（形状、质量或观察值不合法）、WORLD_TOO_LARGE（超过 2^20 个格子）
    """
    variables: tuple[Variable, ...]
    tables: Mapping[str, np.ndarray]
    observed: Mapping[str, str]

    def __post_init__(self):
        ids = [v.id for v in self.variables]
        if len(set(ids)) != len(ids):
            raise OracleError(f"变量 id 重复: {ids}", code="WORLD_INVALID")
        for v in self.variables:
            if not v.outcomes or len(set(v.outcomes)) != len(v.outcomes):
                raise OracleError(f"变量 '{v.id}' 的取值为空或重复", code="WORLD_INVALID")

        shape = tuple(len(v.outcomes) for v in self.variables)
        cells = math.prod(shape)
        if cells > MAX_CELLS:
            raise OracleError(
                f"世界有 {cells} 个格子，超过精确枚举上限 {MAX_CELLS}",
                code="WORLD_TOO_LARGE",
            )

        if set(self.tables) != set(HYPOTHESES):
            raise OracleError(f"需要恰好两张表 {HYPOTHESES}", code="WORLD_INVALID")

        frozen = {}
        for name in HYPOTHESES:
            table = np.array(self.tables[name], dtype=float)
            if table.shape != shape:
                raise OracleError(
                    f"表 {name} 的形状 {table.shape} 与变量 {shape} 不符", code="WORLD_INVALID"
                )
            if not np.all(np.isfinite(table)) or np.any(table < 0):
                raise OracleError(f"表 {name} 含有负数或非有限质量", code="WORLD_INVALID")
            total = math.fsum(table.ravel())
            if abs(total - 1.0) > MASS_TOLERANCE:
                raise OracleError(f"表 {name} 的总质量为 {total!r}，应为 1", code="WORLD_INVALID")
            table.setflags(write=False)
            frozen[name] = table
        object.__setattr__(self, "tables", frozen)

        for var_id, outcome in self.observed.items():
            if var_id not in ids:
                raise OracleError(f"观察了未声明的变量 '{var_id}'", code="WORLD_INVALID")
            if outcome not in self.variable(var_id).outcomes:
                raise OracleError(
                    f"变量 '{var_id}' 没有取值 '{outcome}'", code="WORLD_INVALID"
                )
        object.__setattr__(self, "observed", dict(self.observed))

    # === 查询 ===

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(v.outcomes) for v in self.variables)

    def axis(self, var_id: str) -> int:
        for i, v in enumerate(self.variables):
            if v.id == var_id:
                return i
        raise OracleError(f"世界中没有变量 '{var_id}'", code="UNKNOWN_VARIABLE")

    def variable(self, var_id: str) -> Variable:
        return self.variables[self.axis(var_id)]

    def outcome_index(self, var_id: str, outcome: str) -> int:
        outcomes = self.variable(var_id).outcomes
        if outcome not in outcomes:
            raise OracleError(f"变量 '{var_id}' 没有取值 '{outcome}'", code="UNKNOWN_OUTCOME")
        return outcomes.index(outcome)

    def observed_ids(self) -> tuple[str, ...]:
        """观察变量，按变量声明顺序"""
        return tuple(v.id for v in self.variables if v.id in self.observed)

    # === 变换 ===

    def reordered(self, order: Sequence[str]) -> "DiscreteWorld":
        """按给定变量顺序重排轴（order 必须是全部变量的排列）"""
        if sorted(order) != sorted(v.id for v in self.variables):
            raise OracleError(f"{list(order)} 不是变量的排列", code="WORLD_INVALID")
        axes = [self.axis(var_id) for var_id in order]
        return DiscreteWorld(
            variables=tuple(self.variables[a] for a in axes),
            tables={name: np.transpose(t, axes) for name, t in self.tables.items()},
            observed=self.observed,
        )

    @classmethod
    def from_factors(
        cls,
        variables: Sequence[Variable],
        factors: Mapping[str, Sequence[Sequence[float]]],
        observed: Mapping[str, str],
    ) -> "DiscreteWorld":
        """由逐变量的独立分布构造乘积形式的世界

        Args:
            factors: 表名 → 每个变量一条分布（与 variables 对齐）
        """
        tables = {}
        for name, dists in factors.items():
            arrays = [np.asarray(f, dtype=float) for f in dists]
            tables[name] = reduce(np.multiply.outer, arrays, np.array(1.0))
        return cls(variables=tuple(variables), tables=tables, observed=observed)


# === .world 文件 ===

def parse_world(text: str) -> DiscreteWorld:
    """解析 .world 文本

    Raises:
        WorldFormatError: 语法错误（带行号）
        OracleError: 结构完整但质量或观察值不合法
    """
    variables: list[Variable] = []
    observed: dict[str, str] = {}
    rows: dict[str, dict[tuple[str, ...], float]] = {name: {} for name in HYPOTHESES}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        head, args = words[0], words[1:]

        if head == "var":
            if any(rows.values()):
                raise WorldFormatError("var 必须出现在所有质量行之前", lineno)
            if len(args) < 2:
                raise WorldFormatError("var 需要变量名和至少一个取值", lineno)
            variables.append(Variable(args[0], tuple(args[1:])))
        elif head == "observe":
            if len(args) != 2:
                raise WorldFormatError("observe 需要变量名和取值", lineno)
            if args[0] in observed:
                raise WorldFormatError(f"变量 '{args[0]}' 重复观察", lineno)
            observed[args[0]] = args[1]
        elif head in HYPOTHESES:
            if len(args) != len(variables) + 1:
                raise WorldFormatError(
                    f"质量行需要 {len(variables)} 个取值和 1 个质量", lineno
                )
            cell = tuple(args[:-1])
            for v, outcome in zip(variables, cell):
                if outcome not in v.outcomes:
                    raise WorldFormatError(f"变量 '{v.id}' 没有取值 '{outcome}'", lineno)
            try:
                mass = float(args[-1])
            except ValueError:
                raise WorldFormatError(f"质量不是数字: {args[-1]!r}", lineno) from None
            if cell in rows[head]:
                raise WorldFormatError(f"表 {head} 的格子 {' '.join(cell)} 重复", lineno)
            rows[head][cell] = mass
        else:
            raise WorldFormatError(f"未知指令 '{head}'", lineno)

    if not variables:
        raise WorldFormatError("没有声明任何变量", 1)

    shape = tuple(len(v.outcomes) for v in variables)
    if math.prod(shape) > MAX_CELLS:
        raise OracleError(f"世界超过精确枚举上限 {MAX_CELLS}", code="WORLD_TOO_LARGE")

    tables = {}
    for name in HYPOTHESES:
        table = np.zeros(shape)
        for cell, mass in rows[name].items():
            table[tuple(v.outcomes.index(o) for v, o in zip(variables, cell))] = mass
        tables[name] = table
    return DiscreteWorld(variables=tuple(variables), tables=tables, observed=observed)


def load_world(path: Union[str, Path]) -> DiscreteWorld:
    """读取 .world 文件"""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = len((data[: e.start].decode("utf-8") + "x").splitlines())
        raise WorldFormatError("文件不是有效的 UTF-8", line) from None
    return parse_world(text)
