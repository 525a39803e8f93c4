"""
网络参数检查点

文本格式：
    sizes 21 100 45 20
    activations relu relu tanh
    concat none            # 或 concat <layer> <width>
    W0 <rows> <cols>
    <每行一行权重，%.17g 空格分隔>
    b0 <len>
    <偏置值>
    ...
"""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from core.errors import ResultWriteError, ShapeMismatchError
from .models import MlpParams, MlpSpec


def _fmt(values) -> str:
    return " ".join(f"{x:.17g}" for x in values)


def save_params(path: Union[str, Path], spec: MlpSpec, params: MlpParams) -> None:
    params.check(spec)
    lines = [
        "sizes " + " ".join(str(s) for s in spec.sizes),
        "activations " + " ".join(a.value for a in spec.activations),
        "concat none" if spec.concat is None else f"concat {spec.concat[0]} {spec.concat[1]}",
    ]
    for l, w in enumerate(params.weights):
        lines.append(f"W{l} {w.shape[0]} {w.shape[1]}")
        lines.extend(_fmt(row) for row in w)
    for l, b in enumerate(params.biases):
        lines.append(f"b{l} {b.size}")
        lines.append(_fmt(b))
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise ResultWriteError(path, e)


def load_params(path: Union[str, Path]) -> Tuple[MlpSpec, MlpParams]:
    lines = [ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    sizes = tuple(int(x) for x in lines[0].split()[1:])
    activations = tuple(lines[1].split()[1:])
    concat_parts = lines[2].split()[1:]
    concat = None if concat_parts == ["none"] else (int(concat_parts[0]), int(concat_parts[1]))
    spec = MlpSpec(sizes, activations, concat)

    cursor = 3
    weights: List[np.ndarray] = []
    for _ in range(spec.num_layers):
        _, rows, cols = lines[cursor].split()
        rows, cols = int(rows), int(cols)
        data = [[float(x) for x in lines[cursor + 1 + r].split()] for r in range(rows)]
        weights.append(np.array(data, dtype=np.float64).reshape(rows, cols))
        cursor += 1 + rows
    biases: List[np.ndarray] = []
    for _ in range(spec.num_layers):
        size = int(lines[cursor].split()[1])
        values = np.array([float(x) for x in lines[cursor + 1].split()], dtype=np.float64)
        if values.size != size:
            raise ShapeMismatchError(f"偏置长度应为 {size}，实际为 {values.size}")
        biases.append(values)
        cursor += 2

    params = MlpParams(weights, biases)
    params.check(spec)
    return spec, params
