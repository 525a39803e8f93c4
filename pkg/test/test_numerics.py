"""
数值基础模块测试

随机流可复现性、复高斯采样与秩一正则化求解
"""

import sys
import os

import numpy as np
import pytest

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from core.errors import DomainError, ShapeMismatchError, SingularSystemError
from core.numerics import Purpose, RngStream, cgauss_sample, ensure_finite, ensure_shape, solve_rank1_regularized


def test_zero_variance_gives_zero_vector():
    h = cgauss_sample(RngStream(1), 4, 0.0)
    assert h.shape == (4,)
    assert np.all(h == 0)


def test_same_seed_same_draws():
    a = cgauss_sample(RngStream(1), 4, 1.0)
    b = cgauss_sample(RngStream(1), 4, 1.0)
    assert np.array_equal(a, b)


def test_second_moment_matches_variance():
    n = 10 ** 5
    h = cgauss_sample(RngStream(1), n, 1.0)
    power = np.mean(np.abs(h) ** 2)
    assert 0.99 <= power <= 1.01
    assert abs(power - 1.0) <= 4.0 / np.sqrt(n)


def test_real_and_imag_parts_each_carry_half_variance():
    h = cgauss_sample(RngStream(5), 10 ** 5, 2.0)
    assert np.var(h.real) == pytest.approx(1.0, rel=0.03)
    assert np.var(h.imag) == pytest.approx(1.0, rel=0.03)


def test_negative_variance_rejected():
    with pytest.raises(DomainError):
        cgauss_sample(RngStream(1), 4, -1.0)


def test_derived_streams_are_reproducible_and_distinct():
    root = RngStream(42)
    a1 = root.derive(Purpose.CHANNEL, 3).generator.standard_normal(8)
    a2 = RngStream(42).derive(Purpose.CHANNEL, 3).generator.standard_normal(8)
    b = root.derive(Purpose.PHASE, 3).generator.standard_normal(8)
    c = root.derive(Purpose.CHANNEL, 4).generator.standard_normal(8)
    assert np.array_equal(a1, a2)
    assert not np.array_equal(a1, b)
    assert not np.array_equal(a1, c)


def test_training_streams_do_not_overlap():
    root = RngStream(0)
    streams = {
        "init-actor": root.derive(Purpose.INIT, 0).derive(1),
        "init-critic": root.derive(Purpose.INIT, 0).derive(2),
        "explore": root.derive(Purpose.EXPLORE),
        "replay": root.derive(Purpose.REPLAY),
        "baseline": root.derive(Purpose.BASELINE),
    }
    for purpose in Purpose:
        for episode in range(11):
            streams[f"{purpose.name}-{episode}"] = root.derive(purpose, episode)
    keys = {name: s.spawn_key for name, s in streams.items()}
    assert len(set(keys.values())) == len(keys)
    draws = {name: tuple(s.generator.random(4)) for name, s in streams.items()}
    assert len(set(draws.values())) == len(draws)

    phase = RngStream(0).derive(Purpose.PHASE, 5).generator.random(4)
    critic_init = RngStream(0).derive(Purpose.INIT, 0).derive(2).generator.random(4)
    assert not np.array_equal(phase, critic_init)


def test_derive_requires_an_id():
    with pytest.raises(ValueError):
        RngStream(0).derive()


def test_rank1_solve_without_rank1_term():
    rng = RngStream(2).generator
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert np.allclose(solve_rank1_regularized(2.0, 0.0, a, b), b / 2.0, atol=1e-15)


def test_rank1_solve_orthogonal_update_vanishes():
    a = np.array([1.0, 0.0], dtype=complex)
    b = np.array([0.0, 3.0 + 1j])
    assert np.allclose(solve_rank1_regularized(0.5, 7.0, a, b), b / 0.5)


def test_rank1_solve_matches_dense_solver():
    rng = RngStream(7).generator
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v, f = 0.3, 1.7
    dense = np.linalg.solve(v * np.eye(4) + f * np.outer(a, np.conj(a)), b)
    assert np.allclose(solve_rank1_regularized(v, f, a, b), dense, rtol=0, atol=1e-10)


@pytest.mark.parametrize("m", [1, 2, 4, 8])
def test_rank1_solve_residual_small(m):
    rng = RngStream(100 + m).generator
    for _ in range(100):
        a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        b = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        v = rng.uniform(0.01, 5.0)
        f = rng.uniform(0.0, 5.0)
        x = solve_rank1_regularized(v, f, a, b)
        lhs = v * x + f * a * np.vdot(a, x)
        assert np.linalg.norm(lhs - b) / np.linalg.norm(b) <= 1e-10


def test_rank1_solve_rejects_nonpositive_v():
    a = np.ones(2, dtype=complex)
    with pytest.raises(SingularSystemError):
        solve_rank1_regularized(0.0, 1.0, a, a)


def test_rank1_solve_rejects_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        solve_rank1_regularized(1.0, 1.0, np.ones(2, dtype=complex), np.ones(3, dtype=complex))


def test_shape_and_finite_guards():
    ensure_shape("x", np.zeros((2, 3)), (2, 3))
    with pytest.raises(ShapeMismatchError):
        ensure_shape("x", np.zeros((2, 3)), (3, 2))
    with pytest.raises(DomainError):
        ensure_finite("x", np.array([1.0, np.nan]))
