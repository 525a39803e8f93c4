"""
信道转储文件

每行一条链路：名称、行数、列数，随后是实部/虚部交错的数值，空格分隔。
数值使用 %.17g 保证精确往返。
"""

from pathlib import Path
from typing import Dict, Union

import numpy as np

from core.errors import ResultWriteError, ShapeMismatchError
from .models import ChannelRealization

HEADER = "# link rows cols re im re im ..."


def write_channel_dump(ch: ChannelRealization, path: Union[str, Path]) -> None:
    """写出信道转储文件"""
    lines = [HEADER]
    for name, arr in ch.links():
        matrix = np.atleast_2d(arr) if arr.ndim == 2 else arr.reshape(-1, 1)
        rows, cols = matrix.shape
        flat = matrix.ravel()
        values = np.empty(2 * flat.size)
        values[0::2] = flat.real
        values[1::2] = flat.imag
        lines.append(" ".join([name, str(rows), str(cols)] + [f"{x:.17g}" for x in values]))
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise ResultWriteError(path, e)


def read_channel_dump(path: Union[str, Path]) -> Dict[str, np.ndarray]:
    """
    读取信道转储文件

    Returns:
        链路名 -> 复数数组（向量链路返回一维数组）
    """
    links: Dict[str, np.ndarray] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        name, rows, cols = parts[0], int(parts[1]), int(parts[2])
        values = np.array([float(x) for x in parts[3:]])
        if values.size != 2 * rows * cols:
            raise ShapeMismatchError(f"链路 {name} 的数值个数与形状 {rows}x{cols} 不符")
        data = (values[0::2] + 1j * values[1::2]).reshape(rows, cols)
        links[name] = data[:, 0] if name.startswith("h_") else data
    return links
