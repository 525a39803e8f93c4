"""
对比基线

随机相位、量化相位穷举（小规模最优值参考）以及只用 MRT 的波束成形
"""

import itertools
import logging
from typing import Optional, Tuple

import numpy as np

from core.beamforming import BeamformingConfig, optimize_beamformers
from core.channel import ChannelRealization
from core.errors import DomainError
from core.numerics import RngStream
from core.sysmodel import LinkBudget, PhaseConfig, sum_rate

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 10 ** 6


def _optimized_rate(ch: ChannelRealization, theta: PhaseConfig, budget: LinkBudget, bf_cfg: BeamformingConfig) -> float:
    w = optimize_beamformers(ch, theta, budget, cfg=bf_cfg)
    return sum_rate(ch, theta, w, budget)


def random_phase_baseline(
    ch: ChannelRealization,
    budget: LinkBudget,
    rng: RngStream,
    trials: int,
    bf_cfg: Optional[BeamformingConfig] = None,
) -> float:
    """在 [−π, π)ᴺ 内均匀抽取 trials 组相位，每组都重新优化波束成形，返回平均和速率"""
    if trials < 1:
        raise DomainError(f"trials 必须至少为 1: {trials}")
    bf_cfg = bf_cfg or BeamformingConfig()
    gen = rng.generator
    rates = []
    for _ in range(trials):
        theta = PhaseConfig(gen.uniform(-np.pi, np.pi, size=ch.n_total), ch.ris_sizes)
        rates.append(_optimized_rate(ch, theta, budget, bf_cfg))
    return float(np.mean(rates))


def exhaustive_phase_search(
    ch: ChannelRealization,
    budget: LinkBudget,
    levels: int = 8,
    bf_cfg: Optional[BeamformingConfig] = None,
) -> Tuple[float, PhaseConfig]:
    """
    在 levels 个等间隔相位上穷举全部 levels^N 种组合

    Returns:
        (最优和速率, 对应相位)，并列时保留最先出现的组合
    """
    if levels < 1:
        raise DomainError(f"量化级数必须至少为 1: {levels}")
    total = levels ** ch.n_total
    if total > EXHAUSTIVE_LIMIT:
        raise DomainError(f"穷举规模 {total} 超过上限 {EXHAUSTIVE_LIMIT}")
    bf_cfg = bf_cfg or BeamformingConfig()
    grid = -np.pi + 2.0 * np.pi * np.arange(levels) / levels

    best_rate, best_theta = -np.inf, None
    for combo in itertools.product(grid, repeat=ch.n_total):
        theta = PhaseConfig(np.array(combo), ch.ris_sizes)
        value = _optimized_rate(ch, theta, budget, bf_cfg)
        if value > best_rate:
            best_rate, best_theta = value, theta
    logger.info(f"穷举完成: {total} 种相位组合，最优和速率 {best_rate:.4f}")
    return float(best_rate), best_theta


def mrt_sum_rate(ch: ChannelRealization, theta: PhaseConfig, budget: LinkBudget) -> float:
    """只用满功率 MRT 初始化（不做闭式迭代）时的和速率"""
    return _optimized_rate(ch, theta, budget, BeamformingConfig(closed_form=False))
