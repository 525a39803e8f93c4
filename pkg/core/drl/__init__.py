"""
DRL 模块

状态/动作/奖励编码、经验回放、actor-critic 更新与训练主循环
"""

from .models import Action, ChannelMode, DdpgConfig, State, Transition
from .replay import ReplayBuffer, replay_push, replay_sample
from .environment import ChannelFactory, RisEnvironment, StepOutcome, env_step, make_channel_factory
from .agent import (
    AgentNetworks,
    TrainDiagnostics,
    act,
    actor_spec,
    critic_spec,
    critic_target,
    train_step,
)
from .trainer import TRACE_COLUMNS, EpisodeStats, TrainResult, train, write_trace

__all__ = [
    "Action",
    "ChannelMode",
    "DdpgConfig",
    "State",
    "Transition",
    "ReplayBuffer",
    "replay_push",
    "replay_sample",
    "ChannelFactory",
    "RisEnvironment",
    "StepOutcome",
    "env_step",
    "make_channel_factory",
    "AgentNetworks",
    "TrainDiagnostics",
    "act",
    "actor_spec",
    "critic_spec",
    "critic_target",
    "train_step",
    "TRACE_COLUMNS",
    "EpisodeStats",
    "TrainResult",
    "train",
    "write_trace",
]
