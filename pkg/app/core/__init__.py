# 核心模块初始化文件
from .config import settings
from .exceptions import DuplicationError

__all__ = ["settings", "DuplicationError"]
