"""
实验配置加载测试
"""

import sys
import os

import pytest
from pydantic import ValidationError

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from core.channel import DeploymentKind, ScenarioId
from core.drl import ChannelMode
from service.config_loader import (
    DEFAULT_M,
    ExperimentConfig,
    ExperimentKind,
    Scale,
    load_config,
    parse_config_text,
)


def test_parse_nested_keys_lists_and_comments():
    tree = parse_config_text(
        """
        # 注释
        kind = n-sweep
        ddpg.episodes = 50   # 行尾注释
        ddpg.strict_replay = true
        seeds = 0, 1, 2
        geometry.d02 = none
        """
    )
    assert tree["kind"] == "n-sweep"
    assert tree["ddpg"] == {"episodes": "50", "strict_replay": True}
    assert tree["seeds"] == ["0", "1", "2"]
    assert tree["geometry"]["d02"] is None


def test_parse_rejects_malformed_lines():
    with pytest.raises(ValueError):
        parse_config_text("kind n-sweep")
    with pytest.raises(ValueError):
        parse_config_text(" = 3")
    with pytest.raises(ValueError):
        parse_config_text("seeds = 1\nseeds.x = 2")


def test_defaults_match_standard_settings():
    cfg = ExperimentConfig()
    budget = cfg.link_budget()
    assert budget.p_max == pytest.approx(10 ** 1.5 * 1e-3)
    assert budget.sigma2 == pytest.approx(1e-11)
    assert cfg.geometry.d1 == 50
    assert cfg.channel.si_pl_db == -95.0
    assert cfg.ddpg.buffer_size == 50000
    assert cfg.antennas == DEFAULT_M


def test_desk_preset_is_default(tmp_path):
    cfg = load_config()
    assert cfg.scale == Scale.DESK
    assert cfg.ddpg.episodes == 50 and cfg.ddpg.steps_per_episode == 80
    assert cfg.ddpg.channel_mode == ChannelMode.FIXED
    assert cfg.seeds == [0, 1, 2, 3, 4]


def test_full_preset():
    cfg = load_config(scale="full")
    assert cfg.ddpg.episodes == 500 and cfg.ddpg.steps_per_episode == 800
    assert cfg.random_trials == 100
    assert cfg.n_list == [10, 20, 30, 40, 50]


def test_file_overrides_preset_and_cli_overrides_file(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(
        "kind = deploy-sweep\nddpg.episodes = 7\nseeds = 3\nM = 2\nscenarios = S2, S3\noutput.path = a.csv\n",
        encoding="utf-8",
    )
    cfg = load_config(path)
    assert cfg.kind == ExperimentKind.DEPLOYMENT_SWEEP
    assert cfg.ddpg.episodes == 7
    assert cfg.ddpg.steps_per_episode == 80
    assert cfg.seeds == [3]
    assert cfg.antennas == 2
    assert cfg.scenarios == [ScenarioId.S2, ScenarioId.S3]

    cfg = load_config(path, kind="n-sweep", seeds=[8, 9], out="b.csv")
    assert cfg.kind == ExperimentKind.N_SWEEP
    assert cfg.seeds == [8, 9]
    assert cfg.output.path == "b.csv"


def test_scalar_fields_are_wrapped():
    cfg = ExperimentConfig(seeds=4, schemes="single", n_list=6)
    assert cfg.seeds == [4]
    assert cfg.schemes == [DeploymentKind.SINGLE]
    assert cfg.n_list == [6]


def test_odd_n_rejected_for_distributed():
    with pytest.raises(ValidationError):
        ExperimentConfig(n_total=5, schemes=["single", "distributed"])
    ExperimentConfig(n_total=5, n_list=[5], schemes=["single"])


def test_positions_inside_inter_node_distance():
    with pytest.raises(ValidationError):
        ExperimentConfig(positions=[0.0])
    with pytest.raises(ValidationError):
        ExperimentConfig(positions=[50.0])


def test_invalid_values_rejected(tmp_path):
    with pytest.raises(ValidationError):
        ExperimentConfig(seeds=[-1])
    with pytest.raises(ValidationError):
        ExperimentConfig(random_trials=0)
    with pytest.raises(ValidationError):
        load_config(scale="desk", kind="n-sweep", seeds=[])
    with pytest.raises(ValueError):
        load_config(kind="unknown")


def test_complexity_range():
    cfg = ExperimentConfig()
    assert cfg.complexity.n_values() == [20, 25, 30, 35, 40, 45, 50, 55, 60]
    with pytest.raises(ValidationError):
        ExperimentConfig(complexity={"n_min": 30, "n_max": 20})
