"""
信道实现生成

按场景的衰落映射为每条链路采样，链路采样顺序固定，保证同一随机流得到相同结果。
"""

import logging
import math
from typing import Optional, Union

import numpy as np

from core.numerics import RngStream, ensure_finite
from .fading import sample_link
from .models import (
    ChannelOptions,
    ChannelRealization,
    DeploymentScheme,
    FadingKind,
    FadingModel,
    Geometry,
    LoSSpec,
    Scenario,
    ScenarioId,
)
from .pathloss import path_loss_db

logger = logging.getLogger(__name__)

RIS_LINKS = ("S1-R1", "S2-R1", "S1-R2", "S2-R2")
DIRECT_LINK = "S1-S2"
SI_LINKS = ("S1-S1", "S2-S2")


def build_scenario(scenario_id: Union[ScenarioId, str], options: Optional[ChannelOptions] = None) -> Scenario:
    """
    构建场景的完整衰落映射

    场景 1 所有 RIS 链路为 Rician；场景 2 的 R1-S2 链路为 Rayleigh；
    场景 3 的 S1-R2（或按配置为 R2-S2）链路为 Rayleigh。直连与自干扰链路单独设置。
    """
    options = options or ChannelOptions()
    scenario_id = ScenarioId(scenario_id)
    rician = FadingModel.rician(options.rician_k)
    rayleigh = FadingModel.rayleigh()

    fading = {link: rician for link in RIS_LINKS}
    if scenario_id == ScenarioId.S2:
        fading["S2-R1"] = rayleigh
    elif scenario_id == ScenarioId.S3:
        blocked = "S1-R2" if options.scenario3_blocked == "s1-r2" else "S2-R2"
        fading[blocked] = rayleigh

    fading[DIRECT_LINK] = rician if options.direct_fading == FadingKind.RICIAN else rayleigh
    for link in SI_LINKS:
        fading[link] = rayleigh
    return Scenario(id=scenario_id, fading=fading)


def _row_to_column(row: np.ndarray) -> np.ndarray:
    """单接收天线链路采样得到 1×L 行向量 hᴴ，存储为列向量 h"""
    return np.conj(row.ravel())


def realize_drop(
    rng: RngStream,
    g: Geometry,
    scheme: DeploymentScheme,
    scen: Union[Scenario, ScenarioId, str],
    M: int,
    options: Optional[ChannelOptions] = None,
) -> ChannelRealization:
    """
    生成一次信道实现

    Args:
        rng: 随机数流
        g: 部署几何
        scheme: 部署方案（单 RIS 忽略 d02）
        scen: 场景或场景编号
        M: 发射天线数
        options: 信道参数

    Returns:
        ChannelRealization
    """
    options = options or ChannelOptions()
    if not isinstance(scen, Scenario):
        scen = build_scenario(scen, options)
    if M <= 0:
        raise ValueError(f"发射天线数必须为正: {M}")

    n_r = scheme.n_per_ris
    H_s1r, H_s2r, h_rs1, h_rs2 = [], [], [], []
    for r in range(1, scheme.num_ris + 1):
        horizontal, vertical = g.ris_offsets(r)
        d_s1 = math.hypot(horizontal, vertical)
        d_s2 = math.hypot(g.d1 - horizontal, vertical)
        los_s1 = LoSSpec(arrival=math.atan2(vertical, horizontal), departure=math.atan2(vertical, horizontal))
        los_s2 = LoSSpec(
            arrival=math.atan2(vertical, g.d1 - horizontal),
            departure=math.atan2(vertical, g.d1 - horizontal),
        )
        pl_s1 = path_loss_db(d_s1, options.zeta_br, options.pl0_db)
        pl_s2 = path_loss_db(d_s2, options.zeta_ur, options.pl0_db)
        fading_s1 = scen.fading_for(f"S1-R{r}")
        fading_s2 = scen.fading_for(f"S2-R{r}")

        H_s1r.append(sample_link(rng, n_r, M, pl_s1, fading_s1, los_s1))
        H_s2r.append(sample_link(rng, n_r, M, pl_s2, fading_s2, los_s2))
        h_rs1.append(_row_to_column(sample_link(rng, 1, n_r, pl_s1, fading_s1, los_s1)))
        h_rs2.append(_row_to_column(sample_link(rng, 1, n_r, pl_s2, fading_s2, los_s2)))

    pl_direct = path_loss_db(g.d1, options.zeta_bu, options.pl0_db)
    direct = scen.fading_for(DIRECT_LINK)
    h_s1s2 = _row_to_column(sample_link(rng, 1, M, pl_direct, direct))
    h_s2s1 = _row_to_column(sample_link(rng, 1, M, pl_direct, direct))
    h_s1s1 = _row_to_column(sample_link(rng, 1, M, options.si_pl_db, scen.fading_for("S1-S1")))
    h_s2s2 = _row_to_column(sample_link(rng, 1, M, options.si_pl_db, scen.fading_for("S2-S2")))

    logger.debug(
        f"生成信道实现: scheme={scheme.kind.value}, N={scheme.n_total}, "
        f"scenario={scen.id.value}, M={M}, stream={rng.spawn_key}"
    )
    ch = ChannelRealization(
        H_s1r=tuple(H_s1r),
        H_s2r=tuple(H_s2r),
        h_rs1=tuple(h_rs1),
        h_rs2=tuple(h_rs2),
        h_s1s2=h_s1s2,
        h_s2s1=h_s2s1,
        h_s1s1=h_s1s1,
        h_s2s2=h_s2s2,
    )
    for name, arr in ch.links():
        ensure_finite(name, arr)
    return ch
