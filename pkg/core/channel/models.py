"""
信道数据模型定义
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import DomainError, ShapeMismatchError
from core.numerics import ComplexMatrix, ComplexVector


class Geometry(BaseModel):
    """二维部署几何（单位：米）"""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"d1": 50.0, "d01": 1.0, "d02": 49.0, "dv1": 2.0, "dv2": 2.0}
        },
    )

    d1: float = Field(50.0, description="BS 与 UE 的水平距离")
    d01: float = Field(1.0, description="R1 相对 BS 的水平偏移")
    d02: Optional[float] = Field(49.0, description="R2 相对 BS 的水平偏移，单 RIS 时可为空")
    dv1: float = Field(2.0, description="R1 的垂直偏移")
    dv2: float = Field(2.0, description="R2 的垂直偏移")

    @model_validator(mode="after")
    def _check_layout(self) -> "Geometry":
        if not 0 < self.d01 < self.d1:
            raise ValueError(f"要求 0 < d01 < d1，实际 d01={self.d01}, d1={self.d1}")
        if self.d02 is not None and not 0 < self.d02 < self.d1:
            raise ValueError(f"要求 0 < d02 < d1，实际 d02={self.d02}, d1={self.d1}")
        if self.dv1 <= 0 or self.dv2 <= 0:
            raise ValueError(f"垂直偏移必须为正: dv1={self.dv1}, dv2={self.dv2}")
        return self

    def ris_offsets(self, r: int) -> Tuple[float, float]:
        """第 r 个 RIS（从 1 开始）的 (水平偏移, 垂直偏移)"""
        if r == 1:
            return self.d01, self.dv1
        if r == 2:
            if self.d02 is None:
                raise DomainError("分布式部署需要提供 d02")
            return self.d02, self.dv2
        raise DomainError(f"RIS 编号只能是 1 或 2: {r}")


@dataclass(frozen=True)
class LinkDistances:
    """各链路距离（米），d12/d22 在没有 R2 时为 None"""

    d11: float
    d21: float
    d_direct: float
    d12: Optional[float] = None
    d22: Optional[float] = None


class DeploymentKind(str, Enum):
    SINGLE = "single"
    DISTRIBUTED = "distributed"


@dataclass(frozen=True)
class DeploymentScheme:
    """部署方案：总单元数 N 在 Λ 个 RIS 间平分"""

    kind: DeploymentKind
    n_total: int

    def __post_init__(self):
        if self.n_total <= 0:
            raise DomainError(f"RIS 单元总数必须为正: {self.n_total}")
        if self.kind == DeploymentKind.DISTRIBUTED and self.n_total % 2 != 0:
            raise DomainError(f"分布式部署要求 N 为偶数: {self.n_total}")

    @property
    def num_ris(self) -> int:
        """Λ"""
        return 1 if self.kind == DeploymentKind.SINGLE else 2

    @property
    def n_per_ris(self) -> int:
        """N_r = N / Λ"""
        return self.n_total // self.num_ris


class FadingKind(str, Enum):
    RICIAN = "rician"
    RAYLEIGH = "rayleigh"


@dataclass(frozen=True)
class FadingModel:
    """小尺度衰落模型"""

    kind: FadingKind
    k_factor: float = 0.0

    def __post_init__(self):
        if self.kind == FadingKind.RICIAN and self.k_factor < 0:
            raise DomainError(f"Rician 因子不能为负: {self.k_factor}")

    @classmethod
    def rician(cls, k_factor: float) -> "FadingModel":
        return cls(FadingKind.RICIAN, float(k_factor))

    @classmethod
    def rayleigh(cls) -> "FadingModel":
        return cls(FadingKind.RAYLEIGH)


@dataclass(frozen=True)
class LoSSpec:
    """视距分量的到达角（行维度）与离开角（列维度），单位弧度"""

    arrival: float = 0.0
    departure: float = 0.0


class ScenarioId(str, Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"


@dataclass(frozen=True)
class Scenario:
    """场景：链路名 -> 衰落模型 的完整映射"""

    id: ScenarioId
    fading: Dict[str, FadingModel] = field(default_factory=dict)

    def fading_for(self, link: str) -> FadingModel:
        try:
            return self.fading[link]
        except KeyError:
            raise DomainError(f"场景 {self.id.value} 没有链路 {link} 的衰落设置")


class ChannelOptions(BaseModel):
    """信道生成参数，默认值对应标准仿真设置"""

    model_config = ConfigDict(frozen=True)

    rician_k: float = Field(10.0, ge=0, description="Rician 因子（线性）")
    zeta_bu: float = Field(4.0, description="S1-S2 直连路径损耗指数")
    zeta_br: float = Field(2.1, description="S1-R_r 路径损耗指数")
    zeta_ur: float = Field(2.2, description="S2-R_r 路径损耗指数")
    pl0_db: float = Field(-35.6, description="参考距离处的路径损耗")
    si_pl_db: float = Field(-95.0, description="自干扰信道路径损耗")
    direct_fading: FadingKind = Field(FadingKind.RAYLEIGH, description="直连链路衰落类型")
    scenario3_blocked: str = Field("s1-r2", pattern="^(s1-r2|r2-s2)$", description="场景 3 被遮挡的链路")


@dataclass(frozen=True)
class ChannelRealization:
    """
    一次信道实现

    约定：H_s{i}r[r] 是 S_i -> R_r 的 N_r×M 矩阵；h_rs{i}[r] 是 R_r -> S_i 的列向量，
    行向量 hᴴ 通过共轭得到；直连 h_s1s2 表示 S1 -> S2；h_s1s1/h_s2s2 为自干扰信道。
    """

    H_s1r: Tuple[ComplexMatrix, ...]
    H_s2r: Tuple[ComplexMatrix, ...]
    h_rs1: Tuple[ComplexVector, ...]
    h_rs2: Tuple[ComplexVector, ...]
    h_s1s2: ComplexVector
    h_s2s1: ComplexVector
    h_s1s1: ComplexVector
    h_s2s2: ComplexVector

    def __post_init__(self):
        num_ris = len(self.H_s1r)
        if not (len(self.H_s2r) == len(self.h_rs1) == len(self.h_rs2) == num_ris):
            raise ShapeMismatchError("各 RIS 链路数量不一致")
        m = self.h_s1s2.shape[0]
        for name in ("h_s1s2", "h_s2s1", "h_s1s1", "h_s2s2"):
            if getattr(self, name).shape != (m,):
                raise ShapeMismatchError(f"{name} 形状应为 ({m},)，实际为 {getattr(self, name).shape}")
        for r in range(num_ris):
            n_r = self.h_rs1[r].shape[0]
            for name, arr, shape in (
                ("H_s1r", self.H_s1r[r], (n_r, m)),
                ("H_s2r", self.H_s2r[r], (n_r, m)),
                ("h_rs1", self.h_rs1[r], (n_r,)),
                ("h_rs2", self.h_rs2[r], (n_r,)),
            ):
                if arr.shape != shape:
                    raise ShapeMismatchError(f"{name}[{r}] 形状应为 {shape}，实际为 {arr.shape}")

    @property
    def M(self) -> int:
        return int(self.h_s1s2.shape[0])

    @property
    def num_ris(self) -> int:
        return len(self.H_s1r)

    @property
    def ris_sizes(self) -> Tuple[int, ...]:
        return tuple(int(h.shape[0]) for h in self.h_rs1)

    @property
    def n_total(self) -> int:
        return sum(self.ris_sizes)

    def tx_to_ris(self, i: int) -> Tuple[ComplexMatrix, ...]:
        """S_i -> R_r 的矩阵组"""
        return self.H_s1r if i == 1 else self.H_s2r

    def ris_to_rx(self, i: int) -> Tuple[ComplexVector, ...]:
        """R_r -> S_i 的向量组"""
        return self.h_rs1 if i == 1 else self.h_rs2

    def direct_into(self, i: int) -> ComplexVector:
        """到达 S_i 的直连信道（来自 S_ī）"""
        return self.h_s2s1 if i == 1 else self.h_s1s2

    def self_interference(self, i: int) -> ComplexVector:
        return self.h_s1s1 if i == 1 else self.h_s2s2

    def links(self) -> Iterator[Tuple[str, np.ndarray]]:
        """按固定顺序遍历所有链路 (名称, 数组)"""
        for r in range(self.num_ris):
            yield f"H_s1r{r + 1}", self.H_s1r[r]
            yield f"H_s2r{r + 1}", self.H_s2r[r]
            yield f"h_r{r + 1}s1", self.h_rs1[r]
            yield f"h_r{r + 1}s2", self.h_rs2[r]
        yield "h_s1s2", self.h_s1s2
        yield "h_s2s1", self.h_s2s1
        yield "h_s1s1", self.h_s1s1
        yield "h_s2s2", self.h_s2s2

    def without_ris(self, r: int) -> "ChannelRealization":
        """返回第 r 个 RIS（从 1 开始）所有链路置零后的副本"""
        idx = r - 1

        def zeroed(seq):
            return tuple(np.zeros_like(a) if k == idx else a for k, a in enumerate(seq))

        return ChannelRealization(
            H_s1r=zeroed(self.H_s1r),
            H_s2r=zeroed(self.H_s2r),
            h_rs1=zeroed(self.h_rs1),
            h_rs2=zeroed(self.h_rs2),
            h_s1s2=self.h_s1s2,
            h_s2s1=self.h_s2s1,
            h_s1s1=self.h_s1s1,
            h_s2s2=self.h_s2s2,
        )

    def only_ris(self, r: int) -> "ChannelRealization":
        """只保留第 r 个 RIS 的链路，得到单 RIS 形式的实现"""
        idx = r - 1
        return ChannelRealization(
            H_s1r=(self.H_s1r[idx],),
            H_s2r=(self.H_s2r[idx],),
            h_rs1=(self.h_rs1[idx],),
            h_rs2=(self.h_rs2[idx],),
            h_s1s2=self.h_s1s2,
            h_s2s1=self.h_s2s1,
            h_s1s1=self.h_s1s1,
            h_s2s2=self.h_s2s2,
        )
