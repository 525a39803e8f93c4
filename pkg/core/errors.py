"""
异常定义

所有仿真相关异常都继承 RisSimError，调用方可以统一捕获；
同时继承对应的内置异常类型，便于与通用代码协作。
"""


class RisSimError(Exception):
    """仿真库异常基类"""


class DomainError(RisSimError, ValueError):
    """参数超出定义域（负方差、距离小于参考距离、负 SINR 等）"""


class ShapeMismatchError(RisSimError, ValueError):
    """数组形状不匹配，禁止隐式广播"""


class SingularSystemError(RisSimError, ArithmeticError):
    """线性系统奇异或可能秩亏"""


class DegenerateLinkError(RisSimError, ArithmeticError):
    """链路退化：辅助系数 f 的分母为零且发射端并未静默"""


class ConvergenceError(RisSimError, RuntimeError):
    """迭代算法在最大迭代次数内未收敛"""


class StaleTapeError(RisSimError, RuntimeError):
    """反向传播使用了与当前参数不匹配的前向记录"""


class BufferNotReadyError(RisSimError, RuntimeError):
    """经验回放池样本不足，调用方应跳过本次训练"""


class ResultWriteError(RisSimError, OSError):
    """结果文件写入失败"""

    def __init__(self, path, reason):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"写入文件失败: {self.path}: {reason}")
