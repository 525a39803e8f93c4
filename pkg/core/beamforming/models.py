"""
波束成形数据模型
"""

from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

from core.numerics import ComplexVector


@dataclass(frozen=True)
class AuxCoefficients:
    """
    两个接收端的辅助系数

    下标 k 表示接收端 S_k：b_k = |α_k w_{3−k}|²，f_k 为后验均值系数，
    beta_k = f_k α_k + f_{3−k} h_{S_{3−k} S_{3−k}}ᴴ 用于求解 w_{3−k}，sigma_k = 1 − f_k b_k。
    """

    b1: float
    b2: float
    f1: float
    f2: float
    beta1: ComplexVector
    beta2: ComplexVector
    sigma1: float
    sigma2: float

    def b(self, k: int) -> float:
        return self.b1 if k == 1 else self.b2

    def f(self, k: int) -> float:
        return self.f1 if k == 1 else self.f2

    def beta(self, k: int) -> ComplexVector:
        return self.beta1 if k == 1 else self.beta2

    def sigma(self, k: int) -> float:
        return self.sigma1 if k == 1 else self.sigma2


@dataclass(frozen=True)
class DualInterval:
    """对偶变量二分区间 [lo, hi]"""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.hi >= self.lo >= 0:
            raise ValueError(f"对偶区间非法: [{self.lo}, {self.hi}]")


class BeamformingConfig(BaseModel):
    """内层迭代参数"""

    model_config = ConfigDict(frozen=True)

    tol: float = Field(1e-4, gt=0, description="和速率变化收敛阈值（bps/Hz）")
    max_iter: int = Field(50, ge=1, description="最大迭代次数")
    sigma_augmented: bool = Field(False, description="f 的分母是否加入噪声功率 σ²")
    closed_form: bool = Field(True, description="关闭时只使用满功率 MRT 初始化")
