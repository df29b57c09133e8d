"""
均匀串联重复的字符串模型
串联重复、不可约性、重复根、后代枚举与锥等价
"""

import logging
from itertools import product
from typing import Iterator, Set, Tuple

from app.core.exceptions import InvalidStringError
from app.models.schemas import Cone, GString

logger = logging.getLogger(__name__)

Symbols = Tuple[int, ...]


def _require_length(x: GString) -> None:
    if len(x) < x.k:
        raise InvalidStringError(f"string of length {len(x)} is shorter than k={x.k}")


def _duplicate(s: Symbols, i: int, k: int) -> Symbols:
    return s[:i + k] + s[i:]


def _first_square(s: Symbols, k: int, start: int = 0) -> int:
    """返回第一个长度为 2k 且前后两半相等的窗口位置，没有则返回 -1"""
    for i in range(start, len(s) - 2 * k + 1):
        if s[i:i + k] == s[i + k:i + 2 * k]:
            return i
    return -1


def tandem_duplicate(x: GString, i: int) -> GString:
    """
    在位置 i 做一次长度为 k 的串联重复 T_i

    Args:
        x: 输入字符串
        i: 重复窗口起点，0 ≤ i ≤ |x|-k

    Returns:
        x[0..i] ‖ x[i..i+k] ‖ x[i..i+k] ‖ x[i+k..]
    """
    _require_length(x)
    if not 0 <= i <= len(x) - x.k:
        raise InvalidStringError(f"duplication index {i} outside [0, {len(x) - x.k}]")
    return GString.trusted(_duplicate(x.symbols, i, x.k), x.q, x.k)


def is_irreducible(x: GString) -> bool:
    """x 不含形如 yy、|y| = k 的子串"""
    _require_length(x)
    return _first_square(x.symbols, x.k) < 0


def _root_symbols(s: Symbols, k: int) -> Symbols:
    # 反复删除最左侧的 yy 块；根唯一，所以删除顺序不影响结果
    start = 0
    i = _first_square(s, k, start)
    while i >= 0:
        s = s[:i + k] + s[i + 2 * k:]
        start = max(0, i - 2 * k)
        i = _first_square(s, k, start)
    return s


def root(y: GString) -> GString:
    """
    计算重复根 rt(y)

    Args:
        y: |y| ≥ k 的字符串

    Returns:
        唯一的不可约 x，使 y ∈ D^*(x)
    """
    _require_length(y)
    return GString.trusted(_root_symbols(y.symbols, y.k), y.q, y.k)


def cone_of(y: GString) -> Cone:
    """y 所在的锥与层级 (|y| - |rt(y)|)/k"""
    x = root(y)
    return Cone(root=x, level=(len(y) - len(x)) // y.k)


def expand_level(level: Set[Symbols], k: int) -> Set[Symbols]:
    """一层后代集合经一次重复得到的下一层"""
    return {_duplicate(z, i, k) for z in level for i in range(len(z) - k + 1)}


def iter_descendant_levels(s: Symbols, k: int, depth: int) -> Iterator[Set[Symbols]]:
    """逐层产生 D^0, D^1, ..., D^depth（以符号元组表示）"""
    level = {s}
    yield level
    for _ in range(depth):
        level = expand_level(level, k)
        yield level


def descendants(x: GString, t: int) -> Set[GString]:
    """
    恰好 t 次重复可达的全部后代 D^t(x)（集合语义，已去重）

    Args:
        x: 祖先字符串
        t: 重复次数

    Returns:
        长度均为 |x| + kt 的字符串集合
    """
    _require_length(x)
    if t < 0:
        raise InvalidStringError("t must be nonnegative")
    *_, last = iter_descendant_levels(x.symbols, x.k, t)
    logger.debug(f"|D^{t}(x)| = {len(last)} for |x| = {len(x)}")
    return {GString.trusted(z, x.q, x.k) for z in last}


def same_cone(x: GString, y: GString) -> bool:
    """x ∼_k y，即 rt(x) = rt(y)"""
    if x.q != y.q or x.k != y.k:
        raise InvalidStringError(f"mismatched alphabets: (q={x.q}, k={x.k}) vs (q={y.q}, k={y.k})")
    return root(x) == root(y)


def irreducible_strings(length: int, q: int, k: int) -> Iterator[GString]:
    """按字典序枚举给定长度的全部不可约字符串"""
    if length < k:
        raise InvalidStringError(f"length {length} is shorter than k={k}")
    for s in product(range(q), repeat=length):
        if _first_square(s, k) < 0:
            yield GString.trusted(s, q, k)
