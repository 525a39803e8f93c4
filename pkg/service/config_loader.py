"""
实验配置加载

配置文件为扁平的键值文本，键名用点号表示层级：

    # 注释
    kind = n-sweep
    ddpg.episodes = 50
    seeds = 0, 1, 2
    channel.scenario3_blocked = r2-s2

文件内容覆盖在规模预设（full / desk）之上，再由 ExperimentConfig 校验。
"""

import copy
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.beamforming import BeamformingConfig
from core.channel import ChannelOptions, DeploymentKind, Geometry, ScenarioId
from core.complexity import DesignFamily
from core.drl import DdpgConfig
from core.sysmodel import LinkBudget

logger = logging.getLogger(__name__)

DEFAULT_M = 4


class ExperimentKind(str, Enum):
    DEPLOYMENT_SWEEP = "deploy-sweep"
    N_SWEEP = "n-sweep"
    COMPLEXITY_SWEEP = "complexity"
    TRAIN_ONCE = "train-once"


class Scale(str, Enum):
    FULL = "full"
    DESK = "desk"


class BudgetConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_max_dbm: float = Field(15.0, description="单节点最大发射功率（dBm）")
    sigma2_dbm: float = Field(-80.0, description="噪声功率（dBm）")

    def to_link_budget(self) -> LinkBudget:
        return LinkBudget.from_dbm(self.p_max_dbm, self.sigma2_dbm)


class ComplexityConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_min: int = Field(20, gt=0)
    n_max: int = Field(60, gt=0)
    n_step: int = Field(5, gt=0)
    proposed_hidden: Tuple[int, int] = (100, 45)
    baseline_hidden: Tuple[int, int] = (220, 16)
    baseline_concat_layer: int = Field(0, ge=0, le=2, description="基线 critic 拼接动作的位置，0 为输入层")

    @model_validator(mode="after")
    def _check_range(self) -> "ComplexityConfig":
        if self.n_max < self.n_min:
            raise ValueError(f"n_max 不能小于 n_min: {self.n_min} > {self.n_max}")
        return self

    def n_values(self) -> List[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))

    def proposed(self) -> DesignFamily:
        return DesignFamily(hidden=self.proposed_hidden, concat_layer=1)

    def baseline(self) -> DesignFamily:
        return DesignFamily(hidden=self.baseline_hidden, concat_layer=self.baseline_concat_layer)


class OutputConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    path: str = Field("results/results.csv", description="结果 CSV 路径")
    include_runtime: bool = Field(False, description="CSV 是否包含运行时间列")
    write_trace: bool = Field(False, description="扫描实验是否为每个任务写训练轨迹")
    save_checkpoints: bool = Field(False, description="train-once 是否保存网络参数")


class ExperimentConfig(BaseModel):
    """一次实验的完整配置"""

    model_config = ConfigDict(frozen=True)

    kind: ExperimentKind = ExperimentKind.TRAIN_ONCE
    scale: Scale = Scale.DESK
    geometry: Geometry = Field(default_factory=Geometry)
    channel: ChannelOptions = Field(default_factory=ChannelOptions)
    budget: BudgetConfig = Field(default_factory=BudgetConfig)
    beamforming: BeamformingConfig = Field(default_factory=BeamformingConfig)
    ddpg: DdpgConfig = Field(default_factory=DdpgConfig)
    complexity: ComplexityConfig = Field(default_factory=ComplexityConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    M: Optional[int] = Field(None, gt=0, description="发射天线数，未设置时使用 4")
    n_total: int = Field(20, gt=0, description="train-once 与部署扫描使用的 RIS 单元总数")
    n_list: List[int] = Field(default_factory=lambda: [10, 20, 30, 40, 50])
    positions: List[float] = Field(default_factory=lambda: [1.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 49.0])
    scenarios: List[ScenarioId] = Field(default_factory=lambda: [ScenarioId.S1])
    schemes: List[DeploymentKind] = Field(default_factory=lambda: [DeploymentKind.SINGLE, DeploymentKind.DISTRIBUTED])
    seeds: List[int] = Field(default_factory=lambda: list(range(10)))
    random_trials: int = Field(100, gt=0, description="随机相位基线的抽样次数")

    @field_validator("n_list", "positions", "scenarios", "schemes", "seeds", mode="before")
    @classmethod
    def _wrap_scalar(cls, value):
        if isinstance(value, (list, tuple)):
            return list(value)
        return [value]

    @model_validator(mode="after")
    def _check_consistency(self) -> "ExperimentConfig":
        if not self.seeds:
            raise ValueError("seeds 不能为空")
        if any(s < 0 for s in self.seeds):
            raise ValueError(f"种子必须非负: {self.seeds}")
        if DeploymentKind.DISTRIBUTED in self.schemes:
            odd = [n for n in self.n_list + [self.n_total] if n % 2]
            if odd:
                raise ValueError(f"分布式部署要求 N 为偶数: {odd}")
        for p in self.positions:
            if not 0 < p < self.geometry.d1:
                raise ValueError(f"RIS 位置必须在 (0, d1) 内: {p}")
        return self

    @property
    def antennas(self) -> int:
        return self.M if self.M is not None else DEFAULT_M

    def link_budget(self) -> LinkBudget:
        return self.budget.to_link_budget()


PRESETS: Dict[Scale, Dict[str, Any]] = {
    Scale.FULL: {
        "scale": "full",
        "ddpg": {"steps_per_episode": 800, "episodes": 500, "channel_mode": "per_episode"},
        "seeds": list(range(10)),
        "random_trials": 100,
        "n_list": [10, 20, 30, 40, 50],
    },
    Scale.DESK: {
        "scale": "desk",
        "ddpg": {"steps_per_episode": 80, "episodes": 50, "channel_mode": "fixed"},
        "seeds": list(range(5)),
        "random_trials": 20,
        "n_list": [4, 8, 12, 16, 20],
        "positions": [1.0, 13.0, 25.0, 37.0, 49.0],
    },
}


def _parse_scalar(text: str) -> Any:
    lowered = text.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    if lowered in ("none", "null", ""):
        return None
    return text


def _parse_value(text: str) -> Any:
    text = text.strip()
    if "," in text:
        return [_parse_scalar(part.strip()) for part in text.split(",") if part.strip()]
    return _parse_scalar(text)


def parse_config_text(text: str) -> Dict[str, Any]:
    """把扁平键值文本解析为嵌套字典"""
    tree: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"第 {lineno} 行缺少 '=': {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"第 {lineno} 行键名为空: {raw!r}")
        node = tree
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ValueError(f"第 {lineno} 行键 {key} 与已有的标量键冲突")
        node[parts[-1]] = _parse_value(value)
    return tree


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(
    path: Optional[Union[str, Path]] = None,
    scale: Optional[Union[Scale, str]] = None,
    kind: Optional[Union[ExperimentKind, str]] = None,
    seeds: Optional[List[int]] = None,
    out: Optional[str] = None,
) -> ExperimentConfig:
    """
    解析配置

    优先级：命令行参数 > 配置文件 > 规模预设 > 字段默认值

    Raises:
        pydantic.ValidationError: 配置不合法
    """
    file_tree = parse_config_text(Path(path).read_text(encoding="utf-8")) if path else {}
    chosen = Scale(scale or file_tree.get("scale") or Scale.DESK)
    tree = _merge(PRESETS[chosen], file_tree)
    tree["scale"] = chosen.value
    if kind is not None:
        tree["kind"] = ExperimentKind(kind).value
    if seeds is not None:
        tree["seeds"] = list(seeds)
    if out is not None:
        tree["output"] = _merge(tree.get("output", {}), {"path": out})

    cfg = ExperimentConfig.model_validate(tree)
    if cfg.M is None:
        logger.warning(f"未设置发射天线数 M，使用默认值 M = {DEFAULT_M}，请确认")
    logger.info(f"配置加载完成: kind={cfg.kind.value}, scale={cfg.scale.value}, seeds={cfg.seeds}")
    return cfg
