"""
极简全连接网络

numpy 实现的前向/反向传播、Adam 与软更新，全部使用 64 位浮点
"""

from .models import Activation, AdamState, MlpGrads, MlpParams, MlpSpec, Tape
from .network import init_params, mlp_forward, mlp_gradients
from .optimizer import adam_step, soft_update
from .checkpoint import load_params, save_params

__all__ = [
    "Activation",
    "AdamState",
    "MlpGrads",
    "MlpParams",
    "MlpSpec",
    "Tape",
    "init_params",
    "mlp_forward",
    "mlp_gradients",
    "adam_step",
    "soft_update",
    "load_params",
    "save_params",
]
