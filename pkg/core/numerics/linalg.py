"""
复数线性代数工具

只实现信号模型和波束成形需要的部分：形状校验、有限性校验和秩一正则化线性方程求解。
"""

from typing import Tuple

import numpy as np
import numpy.typing as npt

from core.errors import DomainError, ShapeMismatchError, SingularSystemError

ComplexVector = npt.NDArray[np.complex128]
ComplexMatrix = npt.NDArray[np.complex128]


def ensure_shape(name: str, array: np.ndarray, shape: Tuple[int, ...]) -> np.ndarray:
    """校验数组形状，不一致时抛出 ShapeMismatchError"""
    if array.shape != tuple(shape):
        raise ShapeMismatchError(
            f"{name} 形状应为 {tuple(shape)}，实际为 {array.shape}"
        )
    return array


def ensure_finite(name: str, array: np.ndarray) -> np.ndarray:
    """校验数组不含 NaN/Inf"""
    if not np.all(np.isfinite(array)):
        raise DomainError(f"{name} 含有非有限值")
    return array


def solve_rank1_regularized(
    v: float, f: float, a: ComplexVector, b: ComplexVector
) -> ComplexVector:
    """
    求解 (v·I + f·a·aᴴ) x = b

    使用秩一更新恒等式 x = b/v − f (aᴴb) a / (v (v + f‖a‖²))，代价 O(M)。

    Args:
        v: 正则项，必须严格为正
        f: 秩一项系数，非负
        a: 长度 M 的复向量
        b: 长度 M 的复向量

    Returns:
        解向量 x

    Raises:
        SingularSystemError: v ≤ 0
        ShapeMismatchError: a、b 长度不一致或不是一维向量
    """
    if v <= 0:
        raise SingularSystemError(f"正则项 v 必须为正，实际为 {v}")
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 1:
        raise ShapeMismatchError(f"a 必须是一维向量，实际形状 {a.shape}")
    ensure_shape("b", b, a.shape)

    norm_sq = float(np.vdot(a, a).real)
    projection = np.vdot(a, b)
    denom = v * (v + f * norm_sq)
    return b / v - (f * projection / denom) * a
