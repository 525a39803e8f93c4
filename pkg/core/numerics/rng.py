"""
可复现随机数流

同一个 (seed, stream_id, lineage) 在任何平台上都生成相同的序列。
底层使用 numpy 的 SeedSequence + PCG64，派生流互相独立。
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional, Tuple

import numpy as np

from core.errors import DomainError
from .linalg import ComplexVector


class Purpose(IntEnum):
    """随机流用途编号，用于从根种子派生独立子流"""

    CHANNEL = 1
    PHASE = 2
    EXPLORE = 3
    REPLAY = 4
    INIT = 5
    BASELINE = 6
    EVALUATION = 7


@dataclass
class RngStream:
    """带编号的随机数流"""

    seed: int
    stream_id: int = 0
    lineage: Tuple[int, ...] = ()
    _generator: Optional[np.random.Generator] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.seed < 0 or self.seed >= 2**64:
            raise DomainError(f"种子必须是 64 位非负整数: {self.seed}")

    @property
    def spawn_key(self) -> Tuple[int, ...]:
        """SeedSequence 使用的派生键"""
        return self.lineage + (int(self.stream_id),)

    @property
    def generator(self) -> np.random.Generator:
        """惰性创建的 numpy 生成器，抽样会推进其内部状态"""
        if self._generator is None:
            seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
            self._generator = np.random.Generator(np.random.PCG64(seq))
        return self._generator

    def derive(self, *ids: int) -> "RngStream":
        """
        派生子流

        Args:
            ids: 一个或多个整数编号，用途在前、序号在后，例如 (Purpose.CHANNEL, episode)

        Returns:
            与当前流及其他子流统计独立的新流
        """
        if not ids:
            raise ValueError("派生子流至少需要一个编号")
        lineage = self.spawn_key + tuple(int(i) for i in ids[:-1])
        return RngStream(seed=self.seed, stream_id=int(ids[-1]), lineage=lineage)


def cgauss_sample(rng: RngStream, n: int, variance: float) -> ComplexVector:
    """
    采样循环对称复高斯向量 CN(0, variance)

    实部和虚部独立，各自方差为 variance/2。

    Args:
        rng: 随机数流
        n: 样本数
        variance: 复方差，必须非负

    Returns:
        长度为 n 的复数向量

    Raises:
        DomainError: variance 为负
    """
    if variance < 0:
        raise DomainError(f"方差不能为负: {variance}")
    if n < 0:
        raise DomainError(f"样本数不能为负: {n}")
    gen = rng.generator
    scale = np.sqrt(variance / 2.0)
    real = gen.standard_normal(n)
    imag = gen.standard_normal(n)
    return scale * (real + 1j * imag)
