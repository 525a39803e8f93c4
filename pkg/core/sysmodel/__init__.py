"""
全双工 MISO 信号模型

有效信道、SINR、可达速率与和速率
"""

from .models import BeamformerPair, LinkBudget, PhaseConfig, dbm_to_watt, wrap_phase
from .signal import effective_channel, rate, sinr, sum_rate

__all__ = [
    "BeamformerPair",
    "LinkBudget",
    "PhaseConfig",
    "dbm_to_watt",
    "wrap_phase",
    "effective_channel",
    "rate",
    "sinr",
    "sum_rate",
]
