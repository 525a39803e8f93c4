"""
DRL 模块测试

标记为 slow 的用例需要设置 RISFD_RUN_SLOW=1
"""

import sys
import os

import numpy as np
import pandas as pd
import pytest

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from core.channel import DeploymentKind, DeploymentScheme, Geometry, ScenarioId
from core.drl import (
    TRACE_COLUMNS,
    Action,
    AgentNetworks,
    ChannelMode,
    DdpgConfig,
    ReplayBuffer,
    State,
    Transition,
    act,
    critic_target,
    env_step,
    make_channel_factory,
    replay_push,
    replay_sample,
    train,
    train_step,
    write_trace,
)
from core.drl.agent import actor_objective_gradients, critic_loss_gradients
from core.errors import BufferNotReadyError, DomainError, ShapeMismatchError
from core.neural import AdamState, MlpParams, adam_step
from core.numerics import Purpose, RngStream
from core.sysmodel import LinkBudget, PhaseConfig, sum_rate
from service.baselines import exhaustive_phase_search, random_phase_baseline

BUDGET = LinkBudget.from_dbm()
SMALL = DdpgConfig(hidden=(16, 8))


def make_transition(r: float, n: int = 2, seed: int = 0) -> Transition:
    gen = RngStream(seed).generator
    s = State(gen.uniform(0, 5), gen.uniform(-np.pi, np.pi, n))
    a = Action(gen.uniform(-np.pi, np.pi, n))
    return Transition(s, a, r, State(r, a.phases))


def factory(seed: int, n: int = 4, m: int = 2, mode=ChannelMode.PER_EPISODE, kind=DeploymentKind.SINGLE):
    return make_channel_factory(RngStream(seed), Geometry(), DeploymentScheme(kind, n), ScenarioId.S1, m, mode)


def test_state_and_action_encoding():
    s = State(1.5, [0.1, -0.2])
    assert np.array_equal(s.vector(), [1.5, 0.1, -0.2])
    a = Action([np.pi, 4.0])
    assert np.all(a.phases >= -np.pi) and np.all(a.phases < np.pi)
    with pytest.raises(DomainError):
        State(np.nan, [0.0])


def test_transition_consistency_checks():
    a = Action([0.1, 0.2])
    s = State(0.0, [0.0, 0.0])
    with pytest.raises(DomainError):
        Transition(s, a, 1.0, State(2.0, a.phases))
    with pytest.raises(ShapeMismatchError):
        Transition(s, a, 1.0, State(1.0, [0.3, 0.2]))


def test_config_defaults_and_noise_schedule():
    cfg = DdpgConfig()
    assert (cfg.steps_per_episode, cfg.episodes, cfg.batch_size) == (800, 500, 16)
    assert (cfg.lr_actor, cfg.lr_critic, cfg.discount, cfg.tau) == (1e-4, 2e-4, 0.99, 0.001)
    assert cfg.buffer_size == 50000 and cfg.hidden == (100, 45)
    assert cfg.noise_std_at(0) == pytest.approx(np.sqrt(0.1))
    assert cfg.noise_std_at(10) == pytest.approx(np.sqrt(0.1) * (1 - 1e-4) ** 10)
    assert cfg.warmup_size() == 16
    assert DdpgConfig(strict_replay=True).warmup_size() == 50000


def test_act_without_noise_is_deterministic_and_in_range():
    nets = AgentNetworks.build(6, SMALL, RngStream(1))
    s = State(2.0, RngStream(2).generator.uniform(-np.pi, np.pi, 6))
    a1 = act(nets, s, 0.0, RngStream(3))
    a2 = act(nets, s, 0.0, RngStream(4))
    assert np.array_equal(a1.phases, a2.phases)
    assert np.all(a1.phases >= -np.pi) and np.all(a1.phases < np.pi)


def test_act_noise_variance():
    nets = AgentNetworks.build(4, SMALL, RngStream(1))
    s = State(1.0, np.zeros(4))
    clean = act(nets, s, 0.0, RngStream(0)).phases
    rng = RngStream(5)
    noise = np.concatenate([act(nets, s, np.sqrt(0.1), rng).phases - clean for _ in range(2500)])
    noise = (noise + np.pi) % (2 * np.pi) - np.pi
    assert 0.09 <= np.var(noise) <= 0.11


def test_env_step_consistency():
    ch = factory(3)(0)
    a = Action(RngStream(6).generator.uniform(-np.pi, np.pi, ch.n_total))
    r, s_next, w = env_step(ch, a, BUDGET)
    theta = PhaseConfig(a.phases, ch.ris_sizes)
    assert s_next.rate == r
    assert np.array_equal(s_next.phases, a.phases)
    assert r == sum_rate(ch, theta, w, BUDGET)
    assert w.is_feasible(BUDGET.p_max + 1e-8)


def test_channel_factory_modes():
    per_episode = factory(7)
    assert not np.array_equal(per_episode(0).h_s1s2, per_episode(1).h_s1s2)
    assert np.array_equal(per_episode(3).h_s1s2, factory(7)(3).h_s1s2)
    fixed = factory(7, mode=ChannelMode.FIXED)
    assert fixed(0) is fixed(5)


def test_replay_fifo_eviction():
    buf = ReplayBuffer(3)
    items = [make_transition(float(k), seed=k) for k in range(4)]
    for t in items:
        buf.push(t)
    assert len(buf) == 3
    assert all(buf[k] is not items[0] for k in range(3))
    assert buf[0] is items[1]


def test_replay_uniform_sampling():
    buf = ReplayBuffer(10)
    for k in range(10):
        buf.push(make_transition(float(k), seed=k))
    draws = buf.sample(RngStream(8), 10 ** 5)
    counts = np.bincount([int(t.r) for t in draws], minlength=10) / 10 ** 5
    assert np.all(counts >= 0.08) and np.all(counts <= 0.12)


def test_replay_not_ready():
    buf = ReplayBuffer(5)
    buf.push(make_transition(1.0))
    with pytest.raises(BufferNotReadyError):
        buf.sample(RngStream(0), 2)
    with pytest.raises(DomainError):
        ReplayBuffer(0)


def test_replay_helpers_delegate_to_buffer():
    buf = ReplayBuffer(4)
    for k in range(6):
        replay_push(buf, make_transition(float(k), seed=k))
    assert len(buf) == 4 and buf[0].r == 2.0
    drawn = [t.r for t in replay_sample(buf, RngStream(3), 8)]
    assert drawn == [t.r for t in buf.sample(RngStream(3), 8)]
    with pytest.raises(BufferNotReadyError):
        replay_sample(ReplayBuffer(4), RngStream(3), 1)


def _constant_target_critic(nets: AgentNetworks, value: float) -> MlpParams:
    weights = [np.zeros_like(w) for w in nets.target_critic.weights]
    biases = [np.zeros_like(b) for b in nets.target_critic.biases]
    biases[-1] = np.array([value])
    return MlpParams(weights, biases)


def test_critic_target_direct_evaluation():
    nets = AgentNetworks.build(2, SMALL, RngStream(9))
    nets.target_critic = _constant_target_critic(nets, 2.0)
    batch = [make_transition(1.0, seed=1), make_transition(1.0, seed=2)]
    assert np.allclose(critic_target(batch, nets, 0.99), 2.98)
    assert np.allclose(critic_target(batch, nets, 0.0), 1.0)


def test_critic_target_zero_discount_equals_rewards():
    nets = AgentNetworks.build(2, SMALL, RngStream(10))
    batch = [make_transition(float(k) / 3, seed=k) for k in range(5)]
    assert np.array_equal(critic_target(batch, nets, 0.0), [t.r for t in batch])


def _frozen_batch(n: int, size: int, seed: int):
    gen = RngStream(seed).generator
    states = np.column_stack([gen.uniform(0, 5, size), gen.uniform(-np.pi, np.pi, (size, n))])
    actions = gen.uniform(-np.pi, np.pi, (size, n))
    y = gen.uniform(1.0, 3.0, size)
    return states, actions, y


def test_critic_loss_gradients_match_finite_differences():
    nets = AgentNetworks.build(3, DdpgConfig(hidden=(5, 4)), RngStream(11))
    states, actions, y = _frozen_batch(3, 6, 12)
    _, grads = critic_loss_gradients(nets, states, actions, y)
    h = 1e-5
    for analytic, arr in zip(grads.arrays(), nets.critic.arrays()):
        numeric = np.zeros_like(arr)
        for idx in np.ndindex(arr.shape):
            original = arr[idx]
            arr[idx] = original + h
            plus, _ = critic_loss_gradients(nets, states, actions, y)
            arr[idx] = original - h
            minus, _ = critic_loss_gradients(nets, states, actions, y)
            arr[idx] = original
            numeric[idx] = (plus - minus) / (2 * h)
        scale = max(np.max(np.abs(numeric)), np.max(np.abs(analytic)), 1e-12)
        assert np.max(np.abs(analytic - numeric)) / scale < 1e-5


def test_critic_fits_frozen_batch():
    nets = AgentNetworks.build(4, SMALL, RngStream(13))
    states, actions, y = _frozen_batch(4, 16, 14)
    opt = AdamState.create(nets.critic, 1e-2)
    initial, _ = critic_loss_gradients(nets, states, actions, y)
    for _ in range(200):
        _, grads = critic_loss_gradients(nets, states, actions, y)
        nets.critic, opt = adam_step(nets.critic, grads, opt)
    loss, _ = critic_loss_gradients(nets, states, actions, y)
    assert loss <= 0.5 * initial


def test_actor_step_ascends_frozen_critic():
    nets = AgentNetworks.build(4, SMALL, RngStream(15))
    states, _, _ = _frozen_batch(4, 16, 16)
    before, grads = actor_objective_gradients(nets, states)
    nets.actor, _ = adam_step(nets.actor, grads.scaled(-1.0), AdamState.create(nets.actor, 1e-6))
    after, _ = actor_objective_gradients(nets, states)
    assert after > before


TINY = DdpgConfig(steps_per_episode=6, episodes=2, batch_size=4, hidden=(8, 6), buffer_size=50)


def test_train_is_deterministic():
    a = train(factory(17), TINY, RngStream(18), BUDGET)
    b = train(factory(17), TINY, RngStream(18), BUDGET)
    assert a.best_reward == b.best_reward
    assert np.array_equal(a.best_theta.phases, b.best_theta.phases)
    assert a.rewards == b.rewards


def test_train_result_bookkeeping():
    result = train(factory(19), TINY, RngStream(20), BUDGET)
    assert len(result.trace) == 2
    assert result.best_reward >= max(e.mean_reward for e in result.trace)
    assert result.trace[1].noise_std < result.trace[0].noise_std
    assert 0 <= result.best_episode < 2
    assert result.best_beamformers.is_feasible(BUDGET.p_max + 1e-8)


def test_targets_trail_evaluation_networks():
    cfg = DdpgConfig(hidden=(8, 6), batch_size=4, tau=0.1)
    nets = AgentNetworks.build(2, cfg, RngStream(25))
    buf = ReplayBuffer(20)
    for k in range(8):
        buf.push(make_transition(1.0 + 0.1 * k, seed=k))
    old_actor = [x.copy() for x in nets.target_actor.arrays()]
    old_critic = [x.copy() for x in nets.target_critic.arrays()]

    train_step(nets, buf, cfg, RngStream(26))

    pairs = [
        (old_actor, nets.actor.arrays(), nets.target_actor.arrays()),
        (old_critic, nets.critic.arrays(), nets.target_critic.arrays()),
    ]
    for old, source, target in pairs:
        moved = False
        for t_old, s_new, t_new in zip(old, source, target):
            assert np.allclose(t_new, 0.1 * s_new + 0.9 * t_old, rtol=0, atol=1e-12)
            # 目标网络只走了评估网络位移的 τ 倍
            assert np.allclose(t_new - t_old, 0.1 * (s_new - t_old), rtol=0, atol=1e-12)
            moved = moved or not np.array_equal(s_new, t_old)
        assert moved
        assert not all(np.array_equal(s, t) for s, t in zip(source, target))


def test_stored_rewards_match_environment():
    channels = factory(27)
    result = train(channels, TINY, RngStream(28), BUDGET)
    assert len(result.buffer) == TINY.episodes * TINY.steps_per_episode
    for k in range(len(result.buffer)):
        t = result.buffer[k]
        ch = channels(k // TINY.steps_per_episode)
        r, s_next, _ = env_step(ch, t.a, BUDGET)
        assert t.r == r
        assert t.s_next.rate == t.r
        assert np.array_equal(t.s_next.phases, s_next.phases)
        if (k + 1) % TINY.steps_per_episode:
            assert result.buffer[k + 1].s.rate == t.r


def test_strict_replay_never_trains_before_full():
    cfg = TINY.model_copy(update={"strict_replay": True, "buffer_size": 1000})
    result = train(factory(21), cfg, RngStream(22), BUDGET)
    assert all(np.isnan(e.critic_loss) for e in result.trace)


def test_write_trace(tmp_path):
    result = train(factory(23), TINY, RngStream(24), BUDGET)
    path = tmp_path / "trace.csv"
    write_trace(result.trace, path)
    frame = pd.read_csv(path)
    assert list(frame.columns) == TRACE_COLUMNS
    assert list(frame["episode"]) == [0, 1]


def test_write_trace_creates_missing_directories(tmp_path):
    result = train(factory(23), TINY, RngStream(24), BUDGET)
    path = tmp_path / "runs" / "seed24" / "trace.csv"
    write_trace(result.trace, path)
    assert len(pd.read_csv(path)) == TINY.episodes


@pytest.mark.slow
def test_small_instance_reaches_exhaustive_optimum():
    cfg = DdpgConfig(episodes=50, steps_per_episode=200, channel_mode=ChannelMode.FIXED)
    ratios = []
    for seed in range(5):
        channels = factory(seed, n=4, m=2, mode=ChannelMode.FIXED)
        optimum, _ = exhaustive_phase_search(channels(0), BUDGET, levels=8)
        result = train(channels, cfg, RngStream(seed), BUDGET)
        ratios.append(result.best_reward / optimum)
    assert np.median(ratios) >= 0.9


@pytest.mark.slow
def test_drl_beats_random_phases():
    cfg = DdpgConfig(episodes=5, steps_per_episode=100, channel_mode=ChannelMode.FIXED)
    wins = 0
    for seed in range(10):
        channels = factory(seed, n=20, m=4, mode=ChannelMode.FIXED)
        result = train(channels, cfg, RngStream(seed), BUDGET)
        baseline = random_phase_baseline(channels(0), BUDGET, RngStream(seed).derive(Purpose.BASELINE), 20)
        wins += result.best_reward > baseline
    # 单侧符号检验：10 次中至少 9 次胜出时 p ≈ 0.011
    assert wins >= 9
