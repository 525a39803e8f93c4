"""
训练主循环

每回合：取信道、随机初始相位并求解波束成形，然后执行 T 步 act / env_step / 存储 / 训练。
记录训练过程中出现过的最高奖励所对应的相位与波束成形。
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from core.beamforming import BeamformingConfig
from core.errors import ResultWriteError
from core.numerics import Purpose, RngStream
from core.sysmodel import BeamformerPair, LinkBudget, PhaseConfig
from .agent import AgentNetworks, act, train_step
from .environment import ChannelFactory, RisEnvironment
from .models import Action, DdpgConfig, Transition
from .replay import ReplayBuffer, replay_push

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["episode", "mean_reward", "best_reward", "noise_std", "critic_loss"]


@dataclass
class EpisodeStats:
    episode: int
    mean_reward: float
    best_reward: float
    noise_std: float
    critic_loss: float


@dataclass
class TrainResult:
    best_reward: float
    best_theta: PhaseConfig
    best_beamformers: BeamformerPair
    best_episode: int
    trace: List[EpisodeStats] = field(default_factory=list)
    networks: Optional[AgentNetworks] = None
    buffer: Optional[ReplayBuffer] = None
    runtime_seconds: float = 0.0

    @property
    def rewards(self) -> List[float]:
        return [e.mean_reward for e in self.trace]


def train(
    env_factory: ChannelFactory,
    cfg: DdpgConfig,
    rng: RngStream,
    budget: LinkBudget,
    bf_cfg: Optional[BeamformingConfig] = None,
) -> TrainResult:
    """
    训练智能体并返回最优相位配置

    Args:
        env_factory: 回合编号 -> 信道实现
        cfg: 训练超参数
        rng: 根随机流，内部按用途派生子流
        budget: 功率与噪声
        bf_cfg: 内层波束成形参数

    Returns:
        TrainResult，最优动作取首次达到最大奖励的那一个
    """
    started = time.perf_counter()
    bf_cfg = bf_cfg or BeamformingConfig()
    first = env_factory(0)
    n_total = first.n_total
    nets = AgentNetworks.build(n_total, cfg, rng.derive(Purpose.INIT, 0))
    buf = ReplayBuffer(cfg.buffer_size)
    explore = rng.derive(Purpose.EXPLORE)
    replay = rng.derive(Purpose.REPLAY)
    warmup = cfg.warmup_size()

    best_reward = -np.inf
    best_theta, best_w, best_episode = None, None, -1
    trace: List[EpisodeStats] = []
    global_step = 0

    for episode in range(cfg.episodes):
        ch = first if episode == 0 else env_factory(episode)
        env = RisEnvironment(ch, budget, bf_cfg)
        init_phases = rng.derive(Purpose.PHASE, episode).generator.uniform(-np.pi, np.pi, size=n_total)
        s = env.reset(Action(init_phases)).state

        rewards, losses = [], []
        noise_std = cfg.noise_std_at(global_step)
        for _ in range(cfg.steps_per_episode):
            noise_std = cfg.noise_std_at(global_step)
            a = act(nets, s, noise_std, explore)
            r, s_next, w = env.step(a)
            replay_push(buf, Transition(s, a, r, s_next))
            rewards.append(r)
            if r > best_reward:
                best_reward = r
                best_theta = PhaseConfig(a.phases, ch.ris_sizes)
                best_w = w
                best_episode = episode
            if len(buf) >= warmup:
                losses.append(train_step(nets, buf, cfg, replay).critic_loss)
            s = s_next
            global_step += 1

        stats = EpisodeStats(
            episode=episode,
            mean_reward=float(np.mean(rewards)),
            best_reward=float(best_reward),
            noise_std=noise_std,
            critic_loss=float(np.mean(losses)) if losses else float("nan"),
        )
        trace.append(stats)
        logger.info(
            f"回合 {episode + 1}/{cfg.episodes}: 平均奖励 {stats.mean_reward:.4f}, "
            f"最优奖励 {stats.best_reward:.4f}, 噪声 {noise_std:.4f}"
        )

    return TrainResult(
        best_reward=float(best_reward),
        best_theta=best_theta,
        best_beamformers=best_w,
        best_episode=best_episode,
        trace=trace,
        networks=nets,
        buffer=buf,
        runtime_seconds=time.perf_counter() - started,
    )


def write_trace(trace: List[EpisodeStats], path: Union[str, Path]) -> None:
    """每回合一行的训练轨迹 CSV"""
    frame = pd.DataFrame([vars(e) for e in trace], columns=TRACE_COLUMNS)
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format="%.10g", lineterminator="\n")
    except OSError as e:
        raise ResultWriteError(path, e)
