"""
闭式波束成形

对每个接收端 S_k 计算 b_k、f_k、β_k，再通过二分搜索对偶变量 v 求解
(v·I_M + f_k α_kᴴ α_k) w = β_kᴴ，得到对端发射向量 w_{3−k}。
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np

from core.channel import ChannelRealization
from core.errors import ConvergenceError, DegenerateLinkError, DomainError
from core.numerics import ComplexVector, ensure_finite, ensure_shape, solve_rank1_regularized
from core.sysmodel import BeamformerPair, LinkBudget, PhaseConfig, effective_channel, rate
from .models import AuxCoefficients, BeamformingConfig, DualInterval

logger = logging.getLogger(__name__)

V_FLOOR = 1e-12
BISECTION_MAX_ITER = 200
BISECTION_REL_TOL = 1e-8


def _power(w: ComplexVector) -> float:
    return float(np.vdot(w, w).real)


def beta_row(f_rx: float, alpha_rx: ComplexVector, f_tx: float, si_tx: ComplexVector) -> ComplexVector:
    """β = f_rx·α_rx + f_tx·h_SIᴴ，si_tx 为发射端自干扰信道列向量"""
    return f_rx * np.asarray(alpha_rx) + f_tx * np.conj(si_tx)


def aux_coefficients(
    ch: ChannelRealization,
    theta: PhaseConfig,
    w: BeamformerPair,
    noise_power: float = 0.0,
    alphas: Optional[Dict[int, ComplexVector]] = None,
) -> AuxCoefficients:
    """
    计算两个接收端的辅助系数

    f_k = b_k / (b_k² + |h_{S_k S_k}ᴴ w_k|² [+ σ²])，noise_power 为 0 时即原始形式。

    Args:
        ch: 信道实现
        theta: 相位配置
        w: 当前波束成形
        noise_power: 加到 f 分母中的噪声功率，默认不加
        alphas: 可选的预先计算好的有效信道 {k: α_k}

    Raises:
        DegenerateLinkError: 分母为零而对端发射向量非零
    """
    if alphas is None:
        alphas = {k: effective_channel(ch, theta, k) for k in (1, 2)}

    b: Dict[int, float] = {}
    f: Dict[int, float] = {}
    for k in (1, 2):
        tx = 3 - k
        b[k] = float(abs(alphas[k] @ w.of(tx)) ** 2)
        si = float(abs(np.conj(ch.self_interference(k)) @ w.of(k)) ** 2)
        denom = b[k] ** 2 + si + noise_power
        if denom == 0.0:
            if _power(w.of(tx)) == 0.0:
                # 对端静默，没有可估计的信号
                f[k] = 0.0
                continue
            raise DegenerateLinkError(f"接收端 S{k} 的 f 分母为零（b=0 且自干扰为零）")
        f[k] = b[k] / denom

    beta = {k: beta_row(f[k], alphas[k], f[3 - k], ch.self_interference(3 - k)) for k in (1, 2)}
    return AuxCoefficients(
        b1=b[1],
        b2=b[2],
        f1=f[1],
        f2=f[2],
        beta1=beta[1],
        beta2=beta[2],
        sigma1=1.0 - f[1] * b[1],
        sigma2=1.0 - f[2] * b[2],
    )


def dual_interval(beta: ComplexVector, p_max: float) -> DualInterval:
    """二分区间 [0, √(β βᴴ)/√P_max]"""
    return DualInterval(lo=0.0, hi=float(np.sqrt(np.vdot(beta, beta).real) / np.sqrt(p_max)))


def qp_objective(w: ComplexVector, f: float, alpha: ComplexVector, beta: ComplexVector) -> float:
    """二次目标 −½ f |α w|² + Re(β w)"""
    return float(-0.5 * f * abs(alpha @ w) ** 2 + (beta @ w).real)


def _w_of_v(v: float, f: float, alpha: ComplexVector, beta: ComplexVector) -> ComplexVector:
    return solve_rank1_regularized(v, f, np.conj(alpha), np.conj(beta))


def solve_beamformer(
    aux: AuxCoefficients, alpha: ComplexVector, p_max: float, rx: int
) -> Tuple[ComplexVector, float]:
    """
    求解发往接收端 S_rx 的波束成形向量

    Args:
        aux: 辅助系数
        alpha: 接收端 S_rx 的有效信道 α_rx（行向量）
        p_max: 最大发射功率（W）
        rx: 接收端编号，返回的是 S_{3−rx} 的发射向量

    Returns:
        (w*, v*)，β 为零时返回 (0, 0)

    Raises:
        ConvergenceError: 二分搜索在 200 次内未满足容差
        DomainError: f 为负，或 alpha、beta 含有非有限值
        ShapeMismatchError: alpha 与 beta 长度不一致
    """
    f = aux.f(rx)
    beta = aux.beta(rx)
    if f < 0:
        raise DomainError(f"f 必须非负: {f}")
    ensure_shape("alpha", np.asarray(alpha), beta.shape)
    ensure_finite("alpha", alpha)
    ensure_finite("beta", beta)
    if not np.any(beta):
        return np.zeros_like(beta), 0.0

    w_floor = _w_of_v(V_FLOOR, f, alpha, beta)
    if _power(w_floor) - p_max <= 0:
        return w_floor, V_FLOOR

    tol = BISECTION_REL_TOL * p_max
    lo = V_FLOOR
    hi = dual_interval(beta, p_max).hi
    w_hi = _w_of_v(hi, f, alpha, beta)
    g_hi = _power(w_hi) - p_max
    # ‖w(v)‖ ≤ ‖β‖/v，所以 g(hi) ≤ 0；始终返回可行端点
    for _ in range(BISECTION_MAX_ITER):
        if abs(g_hi) <= tol:
            return w_hi, hi
        mid = 0.5 * (lo + hi)
        w_mid = _w_of_v(mid, f, alpha, beta)
        g_mid = _power(w_mid) - p_max
        if g_mid > 0:
            lo = mid
        else:
            hi, w_hi, g_hi = mid, w_mid, g_mid
    raise ConvergenceError(f"对偶变量二分搜索未收敛: 区间 [{lo}, {hi}], g={g_hi}")


def mrt_beamformers(ch: ChannelRealization, theta: PhaseConfig, p_max: float) -> BeamformerPair:
    """满功率 MRT 初始化 w_i = √P·α_īᴴ/‖α_ī‖，有效信道为零时该端静默"""
    ws = {}
    for i in (1, 2):
        alpha = effective_channel(ch, theta, 3 - i)
        norm = np.linalg.norm(alpha)
        ws[i] = np.sqrt(p_max) * np.conj(alpha) / norm if norm > 0 else np.zeros_like(alpha)
    return BeamformerPair(ws[1], ws[2])


def _sum_rate_from_alphas(
    alphas: Dict[int, ComplexVector], ch: ChannelRealization, w: BeamformerPair, budget: LinkBudget
) -> float:
    total = 0.0
    for i in (1, 2):
        signal = abs(alphas[i] @ w.of(3 - i)) ** 2
        interference = abs(np.conj(ch.self_interference(i)) @ w.of(i)) ** 2
        total += rate(float(signal / (interference + budget.sigma2)))
    return total


def optimize_beamformers(
    ch: ChannelRealization,
    theta: PhaseConfig,
    budget: LinkBudget,
    tol: float = 1e-4,
    max_iter: int = 50,
    cfg: Optional[BeamformingConfig] = None,
) -> BeamformerPair:
    """
    固定相位下的波束成形内层迭代

    从满功率 MRT 出发，每轮先同时刷新两端的 (b, f, β)，再同时求解两个波束成形向量，
    和速率变化小于 tol 或达到 max_iter 时停止。

    Returns:
        BeamformerPair，附带迭代次数、是否收敛以及和速率历史
    """
    cfg = cfg or BeamformingConfig(tol=tol, max_iter=max_iter)
    alphas = {k: effective_channel(ch, theta, k) for k in (1, 2)}
    pair = mrt_beamformers(ch, theta, budget.p_max)
    prev = _sum_rate_from_alphas(alphas, ch, pair, budget)
    pair.history.append(prev)
    if not cfg.closed_form:
        return pair

    silent = {i: not np.any(alphas[3 - i]) for i in (1, 2)}
    noise_power = budget.sigma2 if cfg.sigma_augmented else 0.0
    history = [prev]
    for iteration in range(1, cfg.max_iter + 1):
        aux = aux_coefficients(ch, theta, pair, noise_power=noise_power, alphas=alphas)
        new_w = {}
        for i in (1, 2):
            if silent[i]:
                new_w[i] = np.zeros(ch.M, dtype=np.complex128)
            else:
                new_w[i], _ = solve_beamformer(aux, alphas[3 - i], budget.p_max, rx=3 - i)
        pair = BeamformerPair(new_w[1], new_w[2], iterations=iteration)
        current = _sum_rate_from_alphas(alphas, ch, pair, budget)
        history.append(current)
        if abs(current - prev) < cfg.tol:
            pair.history = history
            return pair
        prev = current

    logger.debug(f"波束成形内层迭代达到上限 {cfg.max_iter} 次，最后变化量 {abs(history[-1] - history[-2]):.3e}")
    pair.converged = False
    pair.history = history
    return pair
