# 服务模块初始化文件
from .oracle import BruteForceOracle
from .reconstruct import DuplicationChannel, list_decode_ecc, list_decode_typical
from .verification import VerificationSuite

__all__ = ["BruteForceOracle", "DuplicationChannel", "list_decode_typical", "list_decode_ecc", "VerificationSuite"]
