"""
Actor-Critic 智能体

actor: [N+1, ψ1, ψ2, N]，ReLU/ReLU/tanh，输出乘以 π 得到相位；
critic: [N+1, ψ1, ψ2, 1]，在第一隐藏层之后拼接 N 维动作（弧度）。
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from core.neural import (
    Activation,
    AdamState,
    MlpParams,
    MlpSpec,
    adam_step,
    init_params,
    mlp_forward,
    mlp_gradients,
    soft_update,
)
from core.numerics import RngStream
from .models import Action, DdpgConfig, State, Transition
from .replay import ReplayBuffer, replay_sample

logger = logging.getLogger(__name__)


def actor_spec(n: int, hidden: Tuple[int, int]) -> MlpSpec:
    return MlpSpec(
        (n + 1, hidden[0], hidden[1], n),
        (Activation.RELU, Activation.RELU, Activation.TANH),
    )


def critic_spec(n: int, hidden: Tuple[int, int]) -> MlpSpec:
    return MlpSpec(
        (n + 1, hidden[0], hidden[1], 1),
        (Activation.RELU, Activation.RELU, Activation.IDENTITY),
        concat=(1, n),
    )


@dataclass
class AgentNetworks:
    """评估网络、目标网络及其优化器状态，由单个训练循环独占"""

    actor_spec: MlpSpec
    critic_spec: MlpSpec
    actor: MlpParams
    critic: MlpParams
    target_actor: MlpParams
    target_critic: MlpParams
    actor_opt: AdamState
    critic_opt: AdamState

    @classmethod
    def build(cls, n: int, cfg: DdpgConfig, rng: RngStream) -> "AgentNetworks":
        a_spec = actor_spec(n, cfg.hidden)
        c_spec = critic_spec(n, cfg.hidden)
        actor = init_params(a_spec, rng.derive(1))
        critic = init_params(c_spec, rng.derive(2))
        return cls(
            actor_spec=a_spec,
            critic_spec=c_spec,
            actor=actor,
            critic=critic,
            target_actor=actor.copy(),
            target_critic=critic.copy(),
            actor_opt=AdamState.create(actor, cfg.lr_actor),
            critic_opt=AdamState.create(critic, cfg.lr_critic),
        )

    def policy(self, states: np.ndarray, target: bool = False) -> np.ndarray:
        """确定性策略 π·μ(s)（弧度）"""
        params = self.target_actor if target else self.actor
        out, _ = mlp_forward(params, self.actor_spec, states)
        return np.pi * out

    def q_value(self, states: np.ndarray, actions: np.ndarray, target: bool = False) -> np.ndarray:
        params = self.target_critic if target else self.critic
        out, _ = mlp_forward(params, self.critic_spec, states, actions)
        return out[..., 0]


class TrainDiagnostics(NamedTuple):
    critic_loss: float
    actor_objective: float


def act(nets: AgentNetworks, s: State, noise_std: float, rng: RngStream) -> Action:
    """a = π·μ(s) + ξ，ξ ~ N(0, noise_std²)，然后规整到 [−π, π)"""
    phases = nets.policy(s.vector())
    if noise_std > 0:
        phases = phases + rng.generator.normal(0.0, noise_std, size=phases.shape)
    return Action(phases)


def _stack(batch: List[Transition]):
    states = np.stack([t.s.vector() for t in batch])
    actions = np.stack([t.a.phases for t in batch])
    rewards = np.array([t.r for t in batch], dtype=np.float64)
    next_states = np.stack([t.s_next.vector() for t in batch])
    return states, actions, rewards, next_states


def critic_target(batch: List[Transition], nets: AgentNetworks, rho: float) -> np.ndarray:
    """y_j = r_j + ρ·Q'(s_{j+1}, π·μ'(s_{j+1}))，不做终止状态截断"""
    if not batch:
        raise ValueError("batch 不能为空")
    _, _, rewards, next_states = _stack(batch)
    next_actions = nets.policy(next_states, target=True)
    return rewards + rho * nets.q_value(next_states, next_actions, target=True)


def critic_loss_gradients(nets: AgentNetworks, states, actions, y):
    """L = mean((y − Q(s, a))²) 及其对 critic 参数的梯度"""
    q, tape = mlp_forward(nets.critic, nets.critic_spec, states, actions)
    residual = y - q[:, 0]
    loss = float(np.mean(residual ** 2))
    upstream = (-2.0 / len(y)) * residual[:, None]
    grads, _, _ = mlp_gradients(nets.critic, nets.critic_spec, tape, upstream)
    return loss, grads


def actor_objective_gradients(nets: AgentNetworks, states):
    """J = mean Q(s, π·μ(s)) 及其对 actor 参数的梯度"""
    batch = states.shape[0]
    mu, actor_tape = mlp_forward(nets.actor, nets.actor_spec, states)
    q, critic_tape = mlp_forward(nets.critic, nets.critic_spec, states, np.pi * mu)
    objective = float(np.mean(q[:, 0]))
    _, _, dq_da = mlp_gradients(nets.critic, nets.critic_spec, critic_tape, np.full((batch, 1), 1.0 / batch))
    grads, _, _ = mlp_gradients(nets.actor, nets.actor_spec, actor_tape, np.pi * dq_da)
    return objective, grads


def train_step(nets: AgentNetworks, buf: ReplayBuffer, cfg: DdpgConfig, rng: RngStream) -> TrainDiagnostics:
    """
    一次完整更新：critic 的 Adam 下降、actor 的策略梯度上升、两个目标网络软更新

    Raises:
        BufferNotReadyError: 回放池样本不足
    """
    batch = replay_sample(buf, rng, cfg.batch_size)
    states, actions, _, _ = _stack(batch)
    y = critic_target(batch, nets, cfg.discount)

    loss, critic_grads = critic_loss_gradients(nets, states, actions, y)
    nets.critic, nets.critic_opt = adam_step(nets.critic, critic_grads, nets.critic_opt)

    objective, actor_grads = actor_objective_gradients(nets, states)
    nets.actor, nets.actor_opt = adam_step(nets.actor, actor_grads.scaled(-1.0), nets.actor_opt)

    nets.target_critic = soft_update(nets.target_critic, nets.critic, cfg.tau)
    nets.target_actor = soft_update(nets.target_actor, nets.actor, cfg.tau)
    logger.debug(f"train_step: critic_loss={loss:.6e}, actor_objective={objective:.6e}")
    return TrainDiagnostics(loss, objective)
