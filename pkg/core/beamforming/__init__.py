"""
闭式波束成形模块

固定相位下的辅助系数计算、对偶变量二分搜索以及 f/w 内层迭代
"""

from .models import AuxCoefficients, BeamformingConfig, DualInterval
from .closed_form import (
    V_FLOOR,
    aux_coefficients,
    dual_interval,
    mrt_beamformers,
    optimize_beamformers,
    qp_objective,
    solve_beamformer,
)

__all__ = [
    "AuxCoefficients",
    "BeamformingConfig",
    "DualInterval",
    "V_FLOOR",
    "aux_coefficients",
    "dual_interval",
    "mrt_beamformers",
    "optimize_beamformers",
    "qp_objective",
    "solve_beamformer",
]
