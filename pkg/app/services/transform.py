"""
离散导数 φ 与等距同构 ψ_x

ψ 把一个后代锥映到 N^{w+1}：φ̄(y) 中第 i 段零游程的长度除以 k 的下取整。
串联重复在 φ̄ 中恰好插入 0^k，因此 ψ 把重复变成某个坐标加一。
"""

import logging
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from app.core.exceptions import InvalidStringError, NotInConeError
from app.models.schemas import DerivativeProfile, GString, RunVector, SimplexParams
from app.services.strings import root, same_cone

logger = logging.getLogger(__name__)

VectorLike = Union[RunVector, Sequence[int]]


def _tail(s: Tuple[int, ...], q: int, k: int) -> Tuple[int, ...]:
    return tuple((s[i + k] - s[i]) % q for i in range(len(s) - k))


def zero_runs(tail: Sequence[int]) -> Tuple[List[int], List[int]]:
    """
    把 φ̄ 解析为 0^{u(1)} a_1 0^{u(2)} ... a_w 0^{u(w+1)}

    Returns:
        (游程长度 u, 非零符号 a)
    """
    runs, letters = [], []
    current = 0
    for a in tail:
        if a == 0:
            current += 1
        else:
            runs.append(current)
            letters.append(a)
            current = 0
    runs.append(current)
    return runs, letters


def discrete_derivative(x: GString) -> DerivativeProfile:
    """
    离散导数 φ(x)

    Args:
        x: |x| ≥ k 的字符串

    Returns:
        head = x(1..k)，tail(i) = x(k+i) - x(i) mod q
    """
    if len(x) < x.k:
        raise InvalidStringError(f"string of length {len(x)} is shorter than k={x.k}")
    return DerivativeProfile(head=x.symbols[:x.k], tail=_tail(x.symbols, x.q, x.k), q=x.q, k=x.k)


def inverse_derivative(profile: DerivativeProfile) -> GString:
    """φ 的逆：x(k+i) = x(i) + tail(i) mod q"""
    s = list(profile.head)
    for i, a in enumerate(profile.tail):
        s.append((s[i] + a) % profile.q)
    return GString.trusted(tuple(s), profile.q, profile.k)


def psi(y: GString, x_root: GString) -> RunVector:
    """
    计算 ψ_{x_root}(y)

    Args:
        y: x_root 后代锥中的字符串
        x_root: 不可约根

    Returns:
        (⌊u(1)/k⌋, ..., ⌊u(w+1)/k⌋)

    Raises:
        NotInConeError: y 不在 x_root 的锥中
    """
    if (y.q, y.k) != (x_root.q, x_root.k):
        raise InvalidStringError("string and root use different (q, k)")
    if len(y) < y.k or len(x_root) < y.k:
        raise InvalidStringError(f"strings must have length ≥ k={y.k}")
    k = y.k
    if y.symbols[:k] != x_root.symbols[:k]:
        raise NotInConeError(f"{y} does not descend from {x_root}: heads differ")
    y_runs, y_letters = zero_runs(_tail(y.symbols, y.q, k))
    x_runs, x_letters = zero_runs(_tail(x_root.symbols, x_root.q, k))
    if y_letters != x_letters:
        raise NotInConeError(f"{y} does not descend from {x_root}: nonzero derivative symbols differ")
    entries = []
    for u_y, u_x in zip(y_runs, x_runs):
        # 根的游程都短于 k；锥中每段游程只能多出 k 的整数倍
        if u_x >= k or u_y < u_x or (u_y - u_x) % k:
            raise NotInConeError(f"{y} does not descend from {x_root}: run {u_y} vs root run {u_x}")
        entries.append(u_y // k)
    return RunVector(entries=tuple(entries), root=x_root)


def psi_inverse(v: RunVector) -> GString:
    """
    ψ 的逆：在根的每段零游程中补上 k·v(i) 个零

    Args:
        v: 锚定在不可约根上的向量

    Returns:
        锥中唯一满足 ψ(y) = v 的字符串
    """
    x_root = v.root
    k = x_root.k
    runs, letters = zero_runs(_tail(x_root.symbols, x_root.q, k))
    if len(runs) != len(v.entries):
        raise InvalidStringError(f"vector dimension {len(v.entries)} != w+1 = {len(runs)}")
    tail: List[int] = []
    for j, (u, extra) in enumerate(zip(runs, v.entries)):
        tail.extend([0] * (u + k * extra))
        if j < len(letters):
            tail.append(letters[j])
    profile = DerivativeProfile.model_construct(
        head=x_root.symbols[:k], tail=tuple(tail), q=x_root.q, k=k
    )
    return inverse_derivative(profile)


def stats(x: GString) -> SimplexParams:
    """
    统计量 w(x) = wt_H(φ̄(x)) 与 r(x) = ‖ψ_{rt(x)}(x)‖₁

    r 直接由零游程得到：每段贡献 ⌊u/k⌋，等于 (|x| - |rt(x)|)/k。
    """
    if len(x) < x.k:
        raise InvalidStringError(f"string of length {len(x)} is shorter than k={x.k}")
    runs, letters = zero_runs(_tail(x.symbols, x.q, x.k))
    return SimplexParams(w=len(letters), r=sum(u // x.k for u in runs))


def cone_size(x: GString, t: int) -> int:
    """|D^t(x)| = C(w+t, w)：单个向量的向上壳层"""
    return comb(stats(x).w + t, t)


def _entries(u: VectorLike) -> Tuple[int, ...]:
    return u.entries if isinstance(u, RunVector) else tuple(u)


def d1_distance(u: VectorLike, v: VectorLike) -> Fraction:
    """d₁(u, v) = ½‖u - v‖₁，精确有理数"""
    a, b = _entries(u), _entries(v)
    if len(a) != len(b):
        raise InvalidStringError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return Fraction(sum(abs(x - y) for x, y in zip(a, b)), 2)


def duplication_distance(y1: GString, y2: GString, x_root: Optional[GString] = None) -> int:
    """
    重复距离 d(y1, y2)，通过 ψ 的等距性计算

    Args:
        y1, y2: 同一锥、同一长度的字符串
        x_root: 已知的公共根；给出时不再重新计算两串的根

    Returns:
        使 D^t(y1) ∩ D^t(y2) 非空的最小 t
    """
    if len(y1) != len(y2):
        raise InvalidStringError(f"lengths differ: {len(y1)} vs {len(y2)}")
    if x_root is None:
        if not same_cone(y1, y2):
            raise NotInConeError(f"{y1} and {y2} have different duplication roots")
        x_root = root(y1)
    distance = d1_distance(psi(y1, x_root), psi(y2, x_root))
    assert distance.denominator == 1
    return int(distance)
