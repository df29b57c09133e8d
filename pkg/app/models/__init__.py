# 模型模块初始化文件
from .schemas import *

__all__ = [
    "GString", "DerivativeProfile", "SimplexParams", "RunVector",
    "Cone", "TypicalityWindow", "SimplexCode", "ReadSet", "DecodeReport",
    "OracleBudget", "ExponentResult", "CheckResult", "RunConfig",
    "MonteCarloEstimate",
]
