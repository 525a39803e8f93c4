"""
小尺度衰落与链路采样

Rician 视距分量使用半波长间距的均匀线阵导向矢量，角度由二维几何给出。
每条链路 h = √PL_linear · h_smallscale，且 E|h_smallscale|² = 1。
"""

import numpy as np

from core.errors import DomainError
from core.numerics import ComplexMatrix, ComplexVector, RngStream, cgauss_sample
from .models import FadingKind, FadingModel, LoSSpec
from .pathloss import db_to_linear


def steering_vector(length: int, angle: float) -> ComplexVector:
    """半波长均匀线阵导向矢量，每个元素模为 1"""
    n = np.arange(length)
    return np.exp(1j * np.pi * n * np.sin(angle))


def sample_link(
    rng: RngStream,
    rows: int,
    cols: int,
    pl_db: float,
    fading: FadingModel,
    los: LoSSpec = LoSSpec(),
) -> ComplexMatrix:
    """
    采样一条链路的 rows×cols 信道矩阵

    Args:
        rng: 随机数流
        rows: 接收端维度
        cols: 发射端维度
        pl_db: 路径增益（dB）
        fading: 衰落模型
        los: 视距分量角度

    Returns:
        复数信道矩阵

    Raises:
        DomainError: Rician 因子为负
    """
    if fading.kind == FadingKind.RICIAN and fading.k_factor < 0:
        raise DomainError(f"Rician 因子不能为负: {fading.k_factor}")

    scattered = cgauss_sample(rng, rows * cols, 1.0).reshape(rows, cols)
    if fading.kind == FadingKind.RAYLEIGH:
        small_scale = scattered
    else:
        k = fading.k_factor
        los_part = np.outer(
            steering_vector(rows, los.arrival), np.conj(steering_vector(cols, los.departure))
        )
        small_scale = np.sqrt(k / (k + 1.0)) * los_part + np.sqrt(1.0 / (k + 1.0)) * scattered

    return np.sqrt(db_to_linear(pl_db)) * small_scale
