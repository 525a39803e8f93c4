"""
复杂度模块

actor-critic 参数量、乘法、加法的精确计数，以及相对基线设计的降幅
"""

from .models import CostKind, CostReport, DesignFamily, NetworkDesign
from .counter import (
    DEFAULT_BASELINE,
    PROPOSED,
    asymptote,
    baseline_design,
    cost,
    design_for,
    is_rising,
    linear_coefficients,
    network_cost,
    reduction,
)

__all__ = [
    "CostKind",
    "CostReport",
    "DesignFamily",
    "NetworkDesign",
    "DEFAULT_BASELINE",
    "PROPOSED",
    "asymptote",
    "baseline_design",
    "cost",
    "design_for",
    "is_rising",
    "linear_coefficients",
    "network_cost",
    "reduction",
]
