"""
信道模块

几何、路径损耗、Rician/Rayleigh 衰落生成，覆盖单 RIS / 分布式 RIS 部署与三种场景
"""

from .models import (
    ChannelOptions,
    ChannelRealization,
    DeploymentKind,
    DeploymentScheme,
    FadingKind,
    FadingModel,
    Geometry,
    LinkDistances,
    LoSSpec,
    Scenario,
    ScenarioId,
)
from .pathloss import PL0_DB, REFERENCE_DISTANCE_M, SI_PATH_LOSS_DB, db_to_linear, link_distances, path_loss_db
from .fading import sample_link, steering_vector
from .generator import build_scenario, realize_drop
from .dump import read_channel_dump, write_channel_dump

__all__ = [
    "ChannelOptions",
    "ChannelRealization",
    "DeploymentKind",
    "DeploymentScheme",
    "FadingKind",
    "FadingModel",
    "Geometry",
    "LinkDistances",
    "LoSSpec",
    "Scenario",
    "ScenarioId",
    "PL0_DB",
    "REFERENCE_DISTANCE_M",
    "SI_PATH_LOSS_DB",
    "db_to_linear",
    "link_distances",
    "path_loss_db",
    "sample_link",
    "steering_vector",
    "build_scenario",
    "realize_drop",
    "read_channel_dump",
    "write_channel_dump",
]
