"""
路径损耗与链路距离
"""

import math

from core.errors import DomainError
from .models import Geometry, LinkDistances

PL0_DB = -35.6  # 参考距离处的路径损耗
REFERENCE_DISTANCE_M = 1.0
SI_PATH_LOSS_DB = -95.0


def path_loss_db(d: float, zeta: float, pl0_db: float = PL0_DB) -> float:
    """
    对数距离路径损耗 PL = PL0 − 10·ζ·log10(d / D_r)

    Args:
        d: 距离（米），不得小于参考距离 1 m
        zeta: 路径损耗指数
        pl0_db: 参考距离处的路径损耗（dB）

    Returns:
        路径增益（dB，负值）

    Raises:
        DomainError: d 小于参考距离
    """
    if not d >= REFERENCE_DISTANCE_M:
        raise DomainError(f"距离 {d} m 小于参考距离 {REFERENCE_DISTANCE_M} m")
    return pl0_db - 10.0 * zeta * math.log10(d / REFERENCE_DISTANCE_M)


def db_to_linear(value_db: float) -> float:
    """dB 转线性功率增益"""
    return 10.0 ** (value_db / 10.0)


def link_distances(g: Geometry) -> LinkDistances:
    """计算 S1/S2 与各 RIS 之间以及直连链路的距离"""
    d11 = math.hypot(g.d01, g.dv1)
    d21 = math.hypot(g.d1 - g.d01, g.dv1)
    d12 = d22 = None
    if g.d02 is not None:
        d12 = math.hypot(g.d02, g.dv2)
        d22 = math.hypot(g.d1 - g.d02, g.dv2)
    return LinkDistances(d11=d11, d21=d21, d_direct=g.d1, d12=d12, d22=d22)
