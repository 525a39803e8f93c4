"""
前向传播与手写反向传播

输入可以是一维向量，也可以是 (batch, width) 的二维数组；批量时参数梯度按样本求和。
"""

from typing import Optional, Tuple

import numpy as np

from core.errors import ShapeMismatchError, StaleTapeError
from core.numerics import RngStream
from .models import MlpGrads, MlpParams, MlpSpec, Tape


def init_params(spec: MlpSpec, rng: RngStream) -> MlpParams:
    """各层权重与偏置均匀初始化于 ±1/√fan_in"""
    gen = rng.generator
    weights, biases = [], []
    for fan_in, fan_out in spec.weight_shapes():
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(gen.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(gen.uniform(-bound, bound, size=fan_out))
    return MlpParams(weights, biases)


def _as_batch(name: str, x, width: int) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=np.float64)
    batched = arr.ndim == 2
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != width:
        raise ShapeMismatchError(f"{name} 宽度应为 {width}，实际形状 {np.shape(x)}")
    return arr, batched


def mlp_forward(
    p: MlpParams, spec: MlpSpec, x, side_input=None
) -> Tuple[np.ndarray, Tape]:
    """
    前向计算

    Args:
        p: 网络参数
        spec: 网络结构
        x: 输入，形状 (in,) 或 (batch, in)
        side_input: 拼接输入，仅当 spec.concat 非空时提供

    Returns:
        (输出, 前向记录)
    """
    p.check(spec)
    h, batched = _as_batch("input", x, spec.input_size)
    side = None
    if spec.concat is not None:
        if side_input is None:
            raise ShapeMismatchError("网络需要拼接输入，但未提供 side_input")
        side, side_batched = _as_batch("side_input", side_input, spec.side_size)
        if side.shape[0] != h.shape[0] or side_batched != batched:
            raise ShapeMismatchError(f"side_input 批量 {side.shape[0]} 与输入批量 {h.shape[0]} 不符")
    elif side_input is not None:
        raise ShapeMismatchError("网络没有拼接层，却提供了 side_input")

    inputs, pres, outs = [], [], []
    for l in range(spec.num_layers):
        if spec.concat is not None and spec.concat[0] == l:
            h = np.concatenate([h, side], axis=1)
        z = h @ p.weights[l] + p.biases[l]
        a = spec.activations[l].apply(z)
        inputs.append(h)
        pres.append(z)
        outs.append(a)
        h = a

    tape = Tape(version=p.version, spec=spec, inputs=inputs, pre_activations=pres, outputs=outs, batched=batched)
    return (h if batched else h[0]), tape


def mlp_gradients(
    p: MlpParams, spec: MlpSpec, tape: Tape, upstream
) -> Tuple[MlpGrads, np.ndarray, Optional[np.ndarray]]:
    """
    计算 ⟨upstream, output⟩ 对参数、输入和拼接输入的梯度

    Raises:
        StaleTapeError: 前向记录不是由当前参数产生的
    """
    if tape.version != p.version or tape.spec != spec:
        raise StaleTapeError(f"前向记录版本 {tape.version} 与参数版本 {p.version} 不符")
    delta, _ = _as_batch("upstream", upstream, spec.output_size)
    if delta.shape[0] != tape.outputs[-1].shape[0]:
        raise ShapeMismatchError(f"upstream 批量 {delta.shape[0]} 与前向批量 {tape.outputs[-1].shape[0]} 不符")

    grad_w = [None] * spec.num_layers
    grad_b = [None] * spec.num_layers
    side_grad = None
    for l in reversed(range(spec.num_layers)):
        dz = delta * spec.activations[l].derivative(tape.pre_activations[l], tape.outputs[l])
        grad_w[l] = tape.inputs[l].T @ dz
        grad_b[l] = dz.sum(axis=0)
        delta = dz @ p.weights[l].T
        if spec.concat is not None and spec.concat[0] == l:
            width = spec.sizes[l]
            side_grad = delta[:, width:]
            delta = delta[:, :width]

    if not tape.batched:
        delta = delta[0]
        side_grad = side_grad[0] if side_grad is not None else None
    return MlpGrads(grad_w, grad_b), delta, side_grad
