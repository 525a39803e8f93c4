"""
信号模型数据结构
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.errors import ShapeMismatchError
from core.numerics import ComplexVector


def wrap_phase(phases) -> np.ndarray:
    """把相位规整到 [−π, π)"""
    wrapped = np.mod(np.asarray(phases, dtype=np.float64) + np.pi, 2.0 * np.pi) - np.pi
    # 浮点舍入可能得到恰好 π
    return np.where(wrapped >= np.pi, -np.pi, wrapped)


def dbm_to_watt(value_dbm: float) -> float:
    """dBm 转瓦特：10^((dBm − 30) / 10)"""
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class PhaseConfig:
    """RIS 相移配置，按 RIS 分组，总长度 N，构造时规整到 [−π, π)"""

    phases: np.ndarray
    group_sizes: Tuple[int, ...] = ()

    def __post_init__(self):
        phases = wrap_phase(np.ravel(self.phases))
        object.__setattr__(self, "phases", phases)
        sizes = tuple(int(s) for s in self.group_sizes) or (phases.size,)
        if sum(sizes) != phases.size:
            raise ShapeMismatchError(f"相位分组 {sizes} 与相位长度 {phases.size} 不符")
        object.__setattr__(self, "group_sizes", sizes)

    @classmethod
    def uniform(cls, group_sizes: Sequence[int], value: float = 0.0) -> "PhaseConfig":
        return cls(np.full(sum(group_sizes), float(value)), tuple(group_sizes))

    @property
    def n_total(self) -> int:
        return int(self.phases.size)

    def groups(self) -> Tuple[np.ndarray, ...]:
        """按 RIS 切分的相位"""
        bounds = np.cumsum((0,) + self.group_sizes)
        return tuple(self.phases[bounds[k]:bounds[k + 1]] for k in range(len(self.group_sizes)))

    def reflection(self, r: int) -> ComplexVector:
        """第 r 个 RIS（从 0 开始）的反射系数 e^{jφ}"""
        return np.exp(1j * self.groups()[r])


@dataclass
class BeamformerPair:
    """S1、S2 的发射波束成形向量（单位 √W）"""

    w1: ComplexVector
    w2: ComplexVector
    iterations: int = 0
    converged: bool = True
    history: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.w1 = np.asarray(self.w1, dtype=np.complex128)
        self.w2 = np.asarray(self.w2, dtype=np.complex128)
        if self.w1.shape != self.w2.shape or self.w1.ndim != 1:
            raise ShapeMismatchError(f"波束成形向量形状不一致: {self.w1.shape} vs {self.w2.shape}")

    @classmethod
    def zeros(cls, M: int) -> "BeamformerPair":
        return cls(np.zeros(M, dtype=np.complex128), np.zeros(M, dtype=np.complex128))

    def of(self, i: int) -> ComplexVector:
        return self.w1 if i == 1 else self.w2

    def power(self, i: int) -> float:
        w = self.of(i)
        return float(np.vdot(w, w).real)

    def is_feasible(self, p_max: float, tol: float = 1e-8) -> bool:
        return self.power(1) <= p_max + tol and self.power(2) <= p_max + tol


class LinkBudget(BaseModel):
    """噪声功率与最大发射功率（瓦特）"""

    model_config = ConfigDict(frozen=True)

    sigma2: float = Field(..., gt=0, description="噪声方差 σ²（W）")
    p_max: float = Field(..., gt=0, description="单节点最大发射功率（W）")

    @classmethod
    def from_dbm(cls, p_max_dbm: float = 15.0, sigma2_dbm: float = -80.0) -> "LinkBudget":
        return cls(sigma2=dbm_to_watt(sigma2_dbm), p_max=dbm_to_watt(p_max_dbm))
