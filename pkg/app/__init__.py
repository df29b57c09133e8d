# 应用模块初始化文件
from .core import config, exceptions
from .models import schemas
from .services import lattice, reconstruct, strings, transform, typicality

__all__ = [
    "config", "exceptions",
    "schemas",
    "strings", "transform", "lattice", "typicality", "reconstruct",
]
