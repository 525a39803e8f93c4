"""
Adam 与目标网络软更新
"""

from typing import Tuple

import numpy as np

from core.errors import DomainError, ShapeMismatchError
from .models import AdamState, MlpGrads, MlpParams


def adam_step(p: MlpParams, grads: MlpGrads, st: AdamState) -> Tuple[MlpParams, AdamState]:
    """
    带偏差修正的 Adam 下降一步

    返回新的参数与状态，输入对象不被修改。梯度上升时由调用方传入取负的梯度。
    """
    params = p.arrays()
    g_all = grads.arrays()
    if len(params) != len(g_all):
        raise ShapeMismatchError(f"梯度个数 {len(g_all)} 与参数个数 {len(params)} 不符")

    step = st.step + 1
    corr1 = 1.0 - st.beta1 ** step
    corr2 = 1.0 - st.beta2 ** step
    new_params, new_m, new_v = [], [], []
    for theta, g, m, v in zip(params, g_all, st.m, st.v):
        if g.shape != theta.shape:
            raise ShapeMismatchError(f"梯度形状 {g.shape} 与参数形状 {theta.shape} 不符")
        m = st.beta1 * m + (1.0 - st.beta1) * g
        v = st.beta2 * v + (1.0 - st.beta2) * g * g
        m_hat = m / corr1
        v_hat = v / corr2
        new_params.append(theta - st.lr * m_hat / (np.sqrt(v_hat) + st.eps))
        new_m.append(m)
        new_v.append(v)

    state = AdamState(m=new_m, v=new_v, lr=st.lr, step=step, beta1=st.beta1, beta2=st.beta2, eps=st.eps)
    return MlpParams.from_arrays(new_params), state


def soft_update(target: MlpParams, source: MlpParams, tau: float) -> MlpParams:
    """θ' ← τ·θ + (1 − τ)·θ'"""
    if not 0 < tau <= 1:
        raise DomainError(f"软更新系数必须在 (0, 1] 内: {tau}")
    if len(target.arrays()) != len(source.arrays()):
        raise ShapeMismatchError("目标网络与评估网络层数不同")
    blended = []
    for t, s in zip(target.arrays(), source.arrays()):
        if t.shape != s.shape:
            raise ShapeMismatchError(f"目标网络形状 {t.shape} 与评估网络形状 {s.shape} 不符")
        blended.append(tau * s + (1.0 - tau) * t)
    return MlpParams.from_arrays(blended)
