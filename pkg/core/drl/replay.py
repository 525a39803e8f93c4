"""
经验回放池
"""

from collections import deque
from typing import List

from core.errors import BufferNotReadyError, DomainError
from core.numerics import RngStream
from .models import Transition


class ReplayBuffer:
    """容量为 D 的先进先出回放池，满后淘汰最旧样本"""

    def __init__(self, capacity: int):
        if capacity <= 0:
            raise DomainError(f"回放池容量必须为正: {capacity}")
        self.capacity = capacity
        self._store: deque = deque(maxlen=capacity)

    def __len__(self) -> int:
        return len(self._store)

    def __getitem__(self, index: int) -> Transition:
        return self._store[index]

    def push(self, transition: Transition) -> None:
        self._store.append(transition)

    def ready(self, n: int) -> bool:
        return len(self._store) >= n

    def sample(self, rng: RngStream, n: int) -> List[Transition]:
        """
        有放回地均匀采样 n 条

        Raises:
            BufferNotReadyError: 样本数少于 n
        """
        if not self.ready(n):
            raise BufferNotReadyError(f"回放池只有 {len(self._store)} 条样本，需要 {n} 条")
        indices = rng.generator.integers(0, len(self._store), size=n)
        return [self._store[int(i)] for i in indices]


def replay_push(buf: ReplayBuffer, transition: Transition) -> None:
    buf.push(transition)


def replay_sample(buf: ReplayBuffer, rng: RngStream, n: int) -> List[Transition]:
    return buf.sample(rng, n)
