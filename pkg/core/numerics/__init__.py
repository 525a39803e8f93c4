"""
数值基础模块

提供确定性的复数线性代数与可复现的随机数流，供其他模块共用
"""

from .rng import Purpose, RngStream, cgauss_sample
from .linalg import (
    ComplexMatrix,
    ComplexVector,
    ensure_finite,
    ensure_shape,
    solve_rank1_regularized,
)

__all__ = [
    "Purpose",
    "RngStream",
    "cgauss_sample",
    "ComplexMatrix",
    "ComplexVector",
    "ensure_finite",
    "ensure_shape",
    "solve_rank1_regularized",
]
