# 命令模块初始化文件
from .analysis import cmd_codebook, cmd_mu, cmd_sigma, cmd_typical, cmd_uncertainty
from .decode import decode
from .simulate import simulate
from .tables import tables
from .verify import verify

__all__ = [
    "simulate", "decode", "tables", "verify",
    "cmd_mu", "cmd_sigma", "cmd_uncertainty", "cmd_typical", "cmd_codebook",
]
