"""
复杂度计数

按实际权重矩阵形状逐层枚举：每个 (fan_in, fan_out) 仿射层贡献
参数 fan_in·fan_out + fan_out，乘法 fan_in·fan_out，
加法 (fan_in − 1)·fan_out + fan_out（偏置）+ fan_out（每个激活记一次加法）。
评估网络与目标网络各一份，因此总数乘以 2。
"""

from typing import Tuple

from core.errors import DomainError
from core.neural import Activation, MlpSpec
from .models import CostKind, CostReport, DesignFamily, NetworkDesign

COPIES = 2
PROPOSED = DesignFamily(hidden=(100, 45), concat_layer=1)
DEFAULT_BASELINE = DesignFamily(hidden=(220, 16), concat_layer=0)


def _design(n: int, family: DesignFamily) -> NetworkDesign:
    if n <= 0:
        raise DomainError(f"RIS 单元数必须为正: {n}")
    h1, h2 = family.hidden
    actor = MlpSpec((n + 1, h1, h2, n), (Activation.RELU, Activation.RELU, Activation.TANH))
    critic = MlpSpec(
        (n + 1, h1, h2, 1),
        (Activation.RELU, Activation.RELU, Activation.IDENTITY),
        concat=(family.concat_layer, n),
    )
    return NetworkDesign(actor=actor, critic=critic)


def design_for(n: int, psi1: int = 100, psi2: int = 45) -> NetworkDesign:
    """actor [N+1, ψ1, ψ2, N]；critic [N+1, ψ1(+N), ψ2, 1]"""
    if psi1 <= 0 or psi2 <= 0:
        raise DomainError(f"隐藏层宽度必须为正: ({psi1}, {psi2})")
    return _design(n, DesignFamily(hidden=(psi1, psi2), concat_layer=1))


def baseline_design(n: int, family: DesignFamily = DEFAULT_BASELINE) -> NetworkDesign:
    return _design(n, family)


def network_cost(spec: MlpSpec) -> CostReport:
    params = mults = adds = 0
    for fan_in, fan_out in spec.weight_shapes():
        params += fan_in * fan_out + fan_out
        mults += fan_in * fan_out
        adds += (fan_in - 1) * fan_out + fan_out + fan_out
    return CostReport(params, mults, adds)


def cost(design: NetworkDesign) -> CostReport:
    """actor 与 critic 合计，再乘以评估/目标两份"""
    return (network_cost(design.actor) + network_cost(design.critic)).scaled(COPIES)


def reduction(proposed: CostReport, baseline: CostReport, kind: CostKind) -> float:
    """1 − proposed_χ / baseline_χ，可以为负"""
    base = baseline.of(kind)
    if base <= 0:
        raise DomainError(f"基线计数必须为正: {kind} = {base}")
    return 1.0 - proposed.of(kind) / base


def linear_coefficients(family: DesignFamily, kind: CostKind) -> Tuple[int, int]:
    """计数随 N 线性变化：返回 (截距, 斜率)"""
    c1 = cost(_design(1, family)).of(kind)
    c2 = cost(_design(2, family)).of(kind)
    slope = c2 - c1
    return c1 - slope, slope


def asymptote(proposed: DesignFamily, baseline: DesignFamily, kind: CostKind) -> float:
    """N → ∞ 时的降幅极限 1 − 斜率比"""
    _, slope_p = linear_coefficients(proposed, kind)
    _, slope_b = linear_coefficients(baseline, kind)
    return 1.0 - slope_p / slope_b


def is_rising(proposed: DesignFamily, baseline: DesignFamily, kind: CostKind) -> bool:
    """降幅曲线随 N 单调上升，当且仅当 a_p·b_b ≥ a_b·b_p（a 为截距，b 为斜率）"""
    a_p, b_p = linear_coefficients(proposed, kind)
    a_b, b_b = linear_coefficients(baseline, kind)
    return a_p * b_b >= a_b * b_p
