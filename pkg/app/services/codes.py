"""
Δ^w_r 中的纠错码与唯一译码器
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from app.core.exceptions import InvalidStringError
from app.models.schemas import GString, RunVector, SimplexCode
from app.services.lattice import greedy_packing, iter_simplex
from app.services.transform import VectorLike, d1_distance, stats

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def _far_from_all(v: Sequence[int], words: Sequence[Vector], d: int) -> bool:
    return all(sum(abs(a - b) for a, b in zip(v, c)) >= 2 * d for c in words)


def build_code_greedy(w: int, r: int, d: int, root: GString, typical_subset: bool = False,
                      max_words: Optional[int] = None) -> SimplexCode:
    """
    按字典序升序的首次适配贪心码

    Args:
        w: 根的导数重量
        r: 码字层级
        d: 设计最小 d₁ 距离
        root: 不可约根，其 w 必须与参数一致
        max_words: 码字数上限；凑够即停止扫描，得到的码不一定极大

    Returns:
        最小距离 ≥ d 的 SimplexCode
    """
    if d < 1:
        raise InvalidStringError("d must be ≥ 1")
    root_w = stats(root).w
    if root_w != w:
        raise InvalidStringError(f"root has derivative weight {root_w}, expected w={w}")
    words = greedy_packing(w, r, d, limit=max_words)
    logger.info(f"greedy code in Δ^{w}_{r} with d={d}: {len(words)} words")
    return SimplexCode(root=root, w=w, r=r, d=d, words=tuple(words), typical_subset=typical_subset)


def min_distance(code: SimplexCode) -> Fraction:
    """码字两两 d₁ 距离的最小值"""
    if len(code) < 2:
        raise InvalidStringError("minimum distance needs at least two codewords")
    return min(
        d1_distance(a, b)
        for i, a in enumerate(code.words)
        for b in code.words[i + 1:]
    )


def is_ancestor_within(c: VectorLike, v: VectorLike, limit: int) -> bool:
    """c ≤ v 逐坐标成立且 ‖v - c‖₁ ≤ limit"""
    c = c.entries if isinstance(c, RunVector) else tuple(c)
    v = v.entries if isinstance(v, RunVector) else tuple(v)
    if len(c) != len(v):
        raise InvalidStringError(f"dimension mismatch: {len(c)} vs {len(v)}")
    return all(a <= b for a, b in zip(c, v)) and sum(v) - sum(c) <= limit


def unique_decode(v: RunVector, code: SimplexCode) -> Optional[RunVector]:
    """
    唯一译码器 D：在码本中扫描满足 c ≤ v、‖v-c‖₁ ≤ d-1 的码字

    码的最小距离为 d，这样的码字至多一个。没有时返回 None，
    调用方将其视为被丢弃的候选。

    Raises:
        InvalidStringError: ‖v‖₁ 超出 [r, r+d-1]
    """
    if len(v.entries) != code.w + 1:
        raise InvalidStringError(f"vector dimension {len(v.entries)} != w+1 = {code.w + 1}")
    if not code.r <= v.norm <= code.r + code.d - 1:
        raise InvalidStringError(f"‖v‖₁ = {v.norm} outside [{code.r}, {code.r + code.d - 1}]")
    for word in code.words:
        if is_ancestor_within(word, v.entries, code.d - 1):
            return RunVector(entries=word, root=code.root)
    return None


def is_maximal(code: SimplexCode) -> bool:
    """Δ^w_r 中不存在可以加入而不破坏最小距离的向量"""
    present = set(code.words)
    return not any(
        v not in present and _far_from_all(v, code.words, code.d)
        for v in iter_simplex(code.w, code.r)
    )
