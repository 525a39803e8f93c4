"""
RIS 环境

动作即相位配置；每一步都在新相位下重新求解波束成形，奖励为和速率。
"""

from typing import Callable, NamedTuple, Optional

from core.beamforming import BeamformingConfig, optimize_beamformers
from core.channel import ChannelOptions, ChannelRealization, DeploymentScheme, Geometry, ScenarioId, realize_drop
from core.numerics import Purpose, RngStream
from core.sysmodel import BeamformerPair, LinkBudget, PhaseConfig, sum_rate
from .models import Action, ChannelMode, State

ChannelFactory = Callable[[int], ChannelRealization]


class StepOutcome(NamedTuple):
    reward: float
    state: State
    beamformers: BeamformerPair


def env_step(
    ch: ChannelRealization,
    a: Action,
    budget: LinkBudget,
    bf_cfg: Optional[BeamformingConfig] = None,
) -> StepOutcome:
    """θ := a，重新优化波束成形，返回 (r, [r, a], w)"""
    theta = PhaseConfig(a.phases, ch.ris_sizes)
    w = optimize_beamformers(ch, theta, budget, cfg=bf_cfg or BeamformingConfig())
    reward = sum_rate(ch, theta, w, budget)
    return StepOutcome(reward, State(reward, a.phases), w)


class RisEnvironment:
    """一个回合内信道固定的环境"""

    def __init__(self, ch: ChannelRealization, budget: LinkBudget, bf_cfg: Optional[BeamformingConfig] = None):
        self.ch = ch
        self.budget = budget
        self.bf_cfg = bf_cfg or BeamformingConfig()

    @property
    def n_total(self) -> int:
        return self.ch.n_total

    def reset(self, a: Action) -> StepOutcome:
        """以给定初始相位开始回合，返回初始状态"""
        return env_step(self.ch, a, self.budget, self.bf_cfg)

    def step(self, a: Action) -> StepOutcome:
        return env_step(self.ch, a, self.budget, self.bf_cfg)


def make_channel_factory(
    rng: RngStream,
    geometry: Geometry,
    scheme: DeploymentScheme,
    scenario: ScenarioId,
    M: int,
    mode: ChannelMode = ChannelMode.PER_EPISODE,
    options: Optional[ChannelOptions] = None,
) -> ChannelFactory:
    """
    生成按回合取信道的工厂

    per_episode 模式每回合使用子流 (CHANNEL, episode) 重新采样；
    fixed 模式所有回合共用子流 (CHANNEL, 0) 的同一次实现。
    """
    cache = {}

    def factory(episode: int) -> ChannelRealization:
        key = episode if mode == ChannelMode.PER_EPISODE else 0
        if key not in cache:
            if mode == ChannelMode.PER_EPISODE:
                cache.clear()
            cache[key] = realize_drop(rng.derive(Purpose.CHANNEL, key), geometry, scheme, scenario, M, options)
        return cache[key]

    return factory
