"""
SINR 与速率计算

下标约定：i ∈ {1, 2}，ī = 3 − i。effective_channel(ch, θ, i) 是到达 S_i 的复合行向量
Σ_r h_{R_r S_i}ᴴ Θ_r H_{S_ī R_r} + h_{S_ī S_i}ᴴ，它作用于对端发射向量 w_ī。
"""

import numpy as np

from core.channel import ChannelRealization
from core.errors import DomainError, ShapeMismatchError
from core.numerics import ComplexVector, ensure_finite, ensure_shape
from .models import BeamformerPair, LinkBudget, PhaseConfig


def _other(i: int) -> int:
    if i not in (1, 2):
        raise ValueError(f"节点编号只能是 1 或 2: {i}")
    return 3 - i


def effective_channel(ch: ChannelRealization, theta: PhaseConfig, i: int) -> ComplexVector:
    """
    到达 S_i 的有效信道行向量（长度 M）

    Raises:
        ShapeMismatchError: 相位分组与信道的 RIS 规模不一致
    """
    j = _other(i)
    if theta.group_sizes != ch.ris_sizes:
        raise ShapeMismatchError(f"相位分组 {theta.group_sizes} 与 RIS 规模 {ch.ris_sizes} 不符")

    alpha = np.conj(ch.direct_into(i)).astype(np.complex128)
    rx = ch.ris_to_rx(i)
    tx = ch.tx_to_ris(j)
    for r in range(ch.num_ris):
        cascaded = np.conj(rx[r]) * theta.reflection(r)
        alpha = alpha + cascaded @ tx[r]
    return alpha


def sinr(ch: ChannelRealization, theta: PhaseConfig, w: BeamformerPair, budget: LinkBudget, i: int) -> float:
    """
    S_i 处的 SINR：|α_i w_ī|² / (|h_{S_i S_i}ᴴ w_i|² + σ²)

    Raises:
        ShapeMismatchError: 波束成形长度与天线数不符
        DomainError: 波束成形含有非有限值
    """
    j = _other(i)
    alpha = effective_channel(ch, theta, i)
    ensure_shape(f"w{j}", w.of(j), alpha.shape)
    ensure_finite(f"w{j}", w.of(j))
    ensure_finite(f"w{i}", w.of(i))
    signal = abs(alpha @ w.of(j)) ** 2
    interference = abs(np.conj(ch.self_interference(i)) @ w.of(i)) ** 2
    return float(signal / (interference + budget.sigma2))


def rate(gamma: float) -> float:
    """可达速率 log2(1 + γ)，单位 bps/Hz"""
    if gamma < 0:
        raise DomainError(f"SINR 不能为负: {gamma}")
    return float(np.log2(1.0 + gamma))


def sum_rate(ch: ChannelRealization, theta: PhaseConfig, w: BeamformerPair, budget: LinkBudget) -> float:
    """和速率 R1 + R2"""
    return rate(sinr(ch, theta, w, budget, 1)) + rate(sinr(ch, theta, w, budget, 2))
