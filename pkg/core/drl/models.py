"""
DRL 数据模型
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.errors import DomainError, ShapeMismatchError
from core.sysmodel import wrap_phase


@dataclass(frozen=True)
class State:
    """状态 [上一步和速率, 上一步相位]"""

    rate: float
    phases: np.ndarray

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=np.float64).ravel()
        if not np.isfinite(self.rate) or not np.all(np.isfinite(phases)):
            raise DomainError("状态包含非有限值")
        object.__setattr__(self, "rate", float(self.rate))
        object.__setattr__(self, "phases", phases)

    @property
    def size(self) -> int:
        return self.phases.size + 1

    def vector(self) -> np.ndarray:
        return np.concatenate(([self.rate], self.phases))


@dataclass(frozen=True)
class Action:
    """动作：N 个相移，构造时规整到 [−π, π)"""

    phases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phases", wrap_phase(np.ravel(self.phases)))

    @property
    def size(self) -> int:
        return self.phases.size


@dataclass(frozen=True)
class Transition:
    s: State
    a: Action
    r: float
    s_next: State

    def __post_init__(self):
        if self.s_next.rate != self.r:
            raise DomainError(f"下一状态的速率 {self.s_next.rate} 与奖励 {self.r} 不一致")
        if self.s_next.phases.shape != self.a.phases.shape or not np.array_equal(self.s_next.phases, self.a.phases):
            raise ShapeMismatchError("下一状态的相位必须等于动作")


class ChannelMode(str, Enum):
    PER_EPISODE = "per_episode"
    FIXED = "fixed"


class DdpgConfig(BaseModel):
    """训练超参数，默认值为标准仿真设置"""

    model_config = ConfigDict(frozen=True)

    steps_per_episode: int = Field(800, gt=0, description="每回合步数 T")
    episodes: int = Field(500, gt=0, description="回合数 K")
    batch_size: int = Field(16, gt=0, description="小批量大小 N_B")
    discount: float = Field(0.99, gt=0, le=1, description="折扣因子 ρ")
    tau: float = Field(0.001, gt=0, le=1, description="软更新系数 τ")
    lr_actor: float = Field(1e-4, gt=0, description="actor 学习率 ν_A")
    lr_critic: float = Field(2e-4, gt=0, description="critic 学习率 ν_C")
    noise_variance: float = Field(0.1, ge=0, description="初始探索噪声方差（每个实维度）")
    noise_decay: float = Field(1e-4, ge=0, lt=1, description="探索噪声每步衰减率")
    hidden: Tuple[int, int] = Field((100, 45), description="隐藏层宽度 (ψ1, ψ2)")
    buffer_size: int = Field(50000, gt=0, description="经验回放容量 D")
    strict_replay: bool = Field(False, description="回放池满后才开始训练")
    channel_mode: ChannelMode = Field(ChannelMode.PER_EPISODE, description="信道按回合重采样或固定")

    def noise_std_at(self, step: int) -> float:
        """全局第 step 步的探索噪声标准差"""
        return float(np.sqrt(self.noise_variance) * (1.0 - self.noise_decay) ** step)

    def warmup_size(self) -> int:
        """开始训练所需的最少样本数"""
        return self.buffer_size if self.strict_replay else self.batch_size
