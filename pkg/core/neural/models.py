"""
神经网络数据模型
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from core.errors import DomainError, ShapeMismatchError

_versions = itertools.count(1)


def next_version() -> int:
    """参数版本号，每次产生新参数时递增，用于检测过期的前向记录"""
    return next(_versions)


class Activation(str, Enum):
    RELU = "relu"
    TANH = "tanh"
    IDENTITY = "identity"

    def apply(self, z: np.ndarray) -> np.ndarray:
        if self is Activation.RELU:
            return np.maximum(z, 0.0)
        if self is Activation.TANH:
            return np.tanh(z)
        return z

    def derivative(self, z: np.ndarray, out: np.ndarray) -> np.ndarray:
        """激活函数在预激活值 z 处的导数，out 为对应输出"""
        if self is Activation.RELU:
            return (z > 0).astype(np.float64)
        if self is Activation.TANH:
            return 1.0 - out * out
        return np.ones_like(z)


@dataclass(frozen=True)
class MlpSpec:
    """
    全连接网络结构

    sizes 为各层宽度（含输入与输出）；activations[l] 作用于第 l 个仿射层的输出；
    concat = (k, width) 表示在第 k 层激活（0 为输入层）之后拼接宽度为 width 的旁路输入。
    """

    sizes: Tuple[int, ...]
    activations: Tuple[Activation, ...]
    concat: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        acts = tuple(Activation(a) for a in self.activations)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "activations", acts)
        if len(sizes) < 2:
            raise DomainError(f"网络至少需要两层: {sizes}")
        if any(s <= 0 for s in sizes):
            raise DomainError(f"层宽必须为正: {sizes}")
        if len(acts) != len(sizes) - 1:
            raise ShapeMismatchError(f"激活函数个数应为 {len(sizes) - 1}，实际为 {len(acts)}")
        if self.concat is not None:
            layer, width = (int(v) for v in self.concat)
            if not 0 <= layer <= len(sizes) - 2 or width <= 0:
                raise DomainError(f"拼接位置非法: {self.concat}")
            object.__setattr__(self, "concat", (layer, width))

    @property
    def num_layers(self) -> int:
        """仿射层个数"""
        return len(self.sizes) - 1

    @property
    def input_size(self) -> int:
        return self.sizes[0]

    @property
    def output_size(self) -> int:
        return self.sizes[-1]

    @property
    def side_size(self) -> int:
        return self.concat[1] if self.concat else 0

    def fan_in(self, layer: int) -> int:
        """第 layer 个仿射层的输入宽度（含拼接部分）"""
        extra = self.concat[1] if self.concat and self.concat[0] == layer else 0
        return self.sizes[layer] + extra

    def weight_shapes(self) -> List[Tuple[int, int]]:
        return [(self.fan_in(l), self.sizes[l + 1]) for l in range(self.num_layers)]


@dataclass
class MlpParams:
    """各层权重 (fan_in, fan_out) 与偏置，version 标识这一组参数"""

    weights: List[np.ndarray]
    biases: List[np.ndarray]
    version: int = field(default_factory=next_version)

    def check(self, spec: MlpSpec) -> None:
        if len(self.weights) != spec.num_layers or len(self.biases) != spec.num_layers:
            raise ShapeMismatchError(f"参数层数与结构不符: {len(self.weights)} vs {spec.num_layers}")
        for l, shape in enumerate(spec.weight_shapes()):
            if self.weights[l].shape != shape:
                raise ShapeMismatchError(f"W{l} 形状应为 {shape}，实际为 {self.weights[l].shape}")
            if self.biases[l].shape != (shape[1],):
                raise ShapeMismatchError(f"b{l} 形状应为 ({shape[1]},)，实际为 {self.biases[l].shape}")

    def arrays(self) -> List[np.ndarray]:
        """按 W0..W_{L-1}, b0..b_{L-1} 的顺序展开"""
        return list(self.weights) + list(self.biases)

    @classmethod
    def from_arrays(cls, arrays: List[np.ndarray]) -> "MlpParams":
        half = len(arrays) // 2
        return cls(weights=list(arrays[:half]), biases=list(arrays[half:]))

    def copy(self) -> "MlpParams":
        return MlpParams.from_arrays([a.copy() for a in self.arrays()])

    @property
    def count(self) -> int:
        return int(sum(a.size for a in self.arrays()))


@dataclass
class MlpGrads:
    """与 MlpParams 同形的梯度"""

    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def arrays(self) -> List[np.ndarray]:
        return list(self.weights) + list(self.biases)

    def scaled(self, factor: float) -> "MlpGrads":
        return MlpGrads([factor * g for g in self.weights], [factor * g for g in self.biases])


@dataclass
class AdamState:
    """Adam 一阶/二阶矩与步数"""

    m: List[np.ndarray]
    v: List[np.ndarray]
    lr: float
    step: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def create(cls, params: MlpParams, lr: float) -> "AdamState":
        if lr <= 0:
            raise DomainError(f"学习率必须为正: {lr}")
        return cls(
            m=[np.zeros_like(a) for a in params.arrays()],
            v=[np.zeros_like(a) for a in params.arrays()],
            lr=float(lr),
        )


@dataclass
class Tape:
    """前向记录：每层输入（含拼接）、预激活与输出"""

    version: int
    spec: MlpSpec
    inputs: List[np.ndarray]
    pre_activations: List[np.ndarray]
    outputs: List[np.ndarray]
    batched: bool
