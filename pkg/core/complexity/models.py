"""
复杂度统计数据模型
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from core.errors import DomainError
from core.neural import MlpSpec


class CostKind(str, Enum):
    PARAMS = "P"
    MULTS = "M"
    ADDS = "A"


@dataclass(frozen=True)
class NetworkDesign:
    """一组 actor / critic 网络结构（不含目标网络副本）"""

    actor: MlpSpec
    critic: MlpSpec

    @property
    def n(self) -> int:
        return self.actor.output_size


@dataclass(frozen=True)
class CostReport:
    """参数量 C_P、乘法次数 C_M、加法次数 C_A"""

    params: int
    mults: int
    adds: int

    def __post_init__(self):
        if min(self.params, self.mults, self.adds) < 0:
            raise DomainError(f"计数不能为负: {self}")

    def __add__(self, other: "CostReport") -> "CostReport":
        return CostReport(self.params + other.params, self.mults + other.mults, self.adds + other.adds)

    def scaled(self, k: int) -> "CostReport":
        return CostReport(k * self.params, k * self.mults, k * self.adds)

    def of(self, kind: CostKind) -> int:
        kind = CostKind(kind)
        if kind == CostKind.PARAMS:
            return self.params
        if kind == CostKind.MULTS:
            return self.mults
        return self.adds


@dataclass(frozen=True)
class DesignFamily:
    """
    随 N 变化的网络结构族

    hidden 为两层隐藏层宽度；concat_layer 为 critic 接收动作的位置，0 表示输入层，1 表示第一隐藏层之后。
    """

    hidden: Tuple[int, int] = (100, 45)
    concat_layer: int = 1

    def __post_init__(self):
        if len(self.hidden) != 2 or min(self.hidden) <= 0:
            raise DomainError(f"隐藏层宽度必须是两个正整数: {self.hidden}")
        if self.concat_layer not in (0, 1, 2):
            raise DomainError(f"拼接位置只能是 0、1 或 2: {self.concat_layer}")

    def describe(self) -> str:
        where = "输入层" if self.concat_layer == 0 else f"第 {self.concat_layer} 隐藏层之后"
        return f"ψ=({self.hidden[0]}, {self.hidden[1]})，动作在{where}拼接"
