"""
N^{w+1} 中的单纯形组合学

下界集合 A_r(u)、最大下界集合大小 μ、最小上确界高度 σ、交集大小 N̄，
以及它们的距离 d 版本与定重二元码规模 A(ν, 2δ, ω)。所有计数都是精确整数。
"""

import logging
from collections import Counter
from contextlib import contextmanager
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import InfeasibleRequestError, InstanceTooLargeError, InvalidStringError
from app.models.schemas import CountResult

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

# 分支定界搜索的码字数上限
_CW_MAX_WORDS = 4096

# verify --inject-fault 的自检开关：(n, k) -> 偏移
_binomial_faults = {}


def binomial(n: int, k: int) -> int:
    """精确二项式系数，n 或 k 越界时为 0"""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k) + _binomial_faults.get((n, k), 0)


@contextmanager
def binomial_fault(n: int = 4, k: int = 2, offset: int = 1):
    """临时篡改一个二项式系数，用于检验验证套件能否发现错误"""
    _binomial_faults[(n, k)] = offset
    try:
        yield
    finally:
        _binomial_faults.pop((n, k), None)


def _l1(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(abs(a - b) for a, b in zip(u, v))


def supremum(vectors: Sequence[Sequence[int]]) -> Vector:
    return tuple(max(column) for column in zip(*vectors))


def infimum(vectors: Sequence[Sequence[int]]) -> Vector:
    return tuple(min(column) for column in zip(*vectors))


def iter_simplex(w: int, r: int) -> Iterator[Vector]:
    """按字典序升序枚举 Δ^w_r"""
    if w == 0:
        yield (r,)
        return
    for head in range(r + 1):
        for rest in iter_simplex(w - 1, r - head):
            yield (head,) + rest


def simplex_size(w: int, r: int) -> CountResult:
    """|Δ^w_r| = C(r+w, r)"""
    return binomial(r + w, r)


def simplex_at_least(w: int, r: int, m: int) -> bool:
    """|Δ^w_r| ≥ m，逐项累乘，超过 m 即停止"""
    value = 1
    for i in range(1, min(w, r) + 1):
        value = value * (max(w, r) + i) // i
        if value >= m:
            return True
    return value >= m


def lower_bounds(u: Sequence[int], r: int) -> List[Vector]:
    """
    下界集合 A_r(u) = {v ∈ Δ^w_r : v ≤ u}

    组合生成器枚举把 ‖u‖₁ - r 个球放进 w+1 个箱子的全部方式，
    再按每个箱子的容量 u(i) 剪枝。

    Args:
        u: N^{w+1} 中的向量
        r: 目标层级

    Returns:
        按字典序排列的下界列表
    """
    u = tuple(u)
    excess = sum(u) - r
    if excess < 0:
        raise InvalidStringError(f"‖u‖₁ = {sum(u)} is below r = {r}")
    result = []
    for balls in combinations_with_replacement(range(len(u)), excess):
        taken = Counter(balls)
        if any(count > u[i] for i, count in taken.items()):
            continue
        result.append(tuple(a - taken.get(i, 0) for i, a in enumerate(u)))
    result.sort()
    return result


def _bounded_count(bins: int, cap: int, total: int) -> int:
    # 容量均为 cap 的 bins 个箱子中放 total 个球的方法数（容斥）
    if bins == 0:
        return 1 if total == 0 else 0
    count = 0
    for i in range(min(bins, total // (cap + 1)) + 1):
        count += (-1) ** i * binomial(bins, i) * binomial(total - i * (cap + 1) + bins - 1, bins - 1)
    return count


def lower_bound_count(u: Sequence[int], r: int) -> int:
    """|A_r(u)|，按坐标动态规划，不枚举"""
    excess = sum(u) - r
    if excess < 0:
        return 0
    ways = [1] + [0] * excess
    for cap in u:
        nxt = [0] * (excess + 1)
        for total, count in enumerate(ways):
            if count:
                for take in range(min(cap, excess - total) + 1):
                    nxt[total + take] += count
        ways = nxt
    return ways[excess]


def spread_vector(w: int, norm: int) -> Vector:
    """所有坐标两两相差不超过 1 的向量（在置换意义下唯一）"""
    base, extra = divmod(norm, w + 1)
    return tuple([base + 1] * extra + [base] * (w + 1 - extra))


def mu(w: int, r: int, s: int, restricted: bool = True) -> CountResult:
    """
    最大下界集合大小 μ(w,r,s) = max{|A_r(u)| : u ∈ Δ^w_{r+s}}

    Args:
        restricted: True 时只看均匀分布的 u（在置换意义下唯一）；
                    False 时遍历整个 Δ^w_{r+s}，供交叉检验

    Returns:
        精确整数
    """
    if min(w, r, s) < 0:
        raise InvalidStringError("w, r, s must be nonnegative")
    if not restricted:
        return max(lower_bound_count(u, r) for u in iter_simplex(w, r + s))
    if r + s <= w + 1:
        return binomial(r + s, s)
    base, extra = divmod(r + s, w + 1)
    # u 在 extra 个坐标上为 base+1，其余为 base；数 b = u - v，‖b‖₁ = s
    return sum(
        _bounded_count(extra, base + 1, j) * _bounded_count(w + 1 - extra, base, s - j)
        for j in range(s + 1)
    )


def mu_2_piecewise(w: int, r: int) -> int:
    """三段式 μ(w,r,2) 公式，仅用于与穷举结果对照"""
    if r >= 2 * w:
        return binomial(w + 2, 2)
    if w - 1 <= r < 2 * w:
        return binomial(w + 1, 2) + (r - w + 1)
    return binomial(r + 2, 2)


def sigma(m: int, w: int, r: int, cap: Optional[int] = None) -> int:
    """
    最小上确界高度 σ(m,w,r)，由对偶关系 μ(w,r,s-1) < m ≤ μ(w,r,s) ⟹ σ = s 求得

    Args:
        m: 点数，1 ≤ m ≤ |Δ^w_r|
        cap: 若给出，返回 min(σ, cap)

    Returns:
        σ(m,w,r)
    """
    if m < 1 or not simplex_at_least(w, r, m):
        raise InfeasibleRequestError(f"m={m} outside [1, |Δ^{w}_{r}|]")
    s = 0
    while mu(w, r, s) < m:
        s += 1
        if cap is not None and s >= cap:
            return cap
        if s > w * r:
            raise AssertionError("μ(w,r,wr) must equal |Δ^w_r|")
    return s


def nbar(t: int, m: int, w: int, r: int) -> CountResult:
    """N̄_t(m,w,r) = C(w+t-σ, w)，σ > t 时为 0"""
    s = sigma(m, w, r, cap=t + 1)
    return binomial(w + t - s, w) if s <= t else 0


def intersection_size(t: int, u_list: Sequence[Sequence[int]]) -> CountResult:
    """
    |S̄_t(u_1,...,u_m)|：0 若 ‖⋁u_i‖₁ > r+t，否则 C(w+t+r-‖⋁u_i‖₁, w)
    """
    if not u_list:
        raise InvalidStringError("at least one vector is required")
    dims = {len(u) for u in u_list}
    norms = {sum(u) for u in u_list}
    if len(dims) != 1 or len(norms) != 1:
        raise InvalidStringError("vectors must share dimension and norm")
    w, r = dims.pop() - 1, norms.pop()
    height = sum(supremum(u_list))
    if height > r + t:
        return 0
    return binomial(w + t + r - height, w)


# ---------------------------------------------------------------------------
# 定重码与距离 d 版本
# ---------------------------------------------------------------------------

def _max_clique(adjacency: List[int], candidates: int, budget: Optional[int] = None) -> int:
    """
    最大团大小，位集表示的分支定界

    Args:
        adjacency: adjacency[i] 为与 i 相邻的顶点位集
        candidates: 初始候选顶点位集
        budget: 搜索节点上限，默认 settings.CLIQUE_MAX_NODES

    Raises:
        InstanceTooLargeError: 超出节点上限
    """
    budget = settings.CLIQUE_MAX_NODES if budget is None else budget
    best = 0
    nodes = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise InstanceTooLargeError(f"clique search exceeded {budget} nodes")
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & adjacency[v])

    expand(0, candidates)
    return best


def _packing_number(points: Sequence[Vector], d: int) -> int:
    """两两 d₁ 距离至少为 d 的最大子集大小"""
    if d <= 1 or len(points) <= 1:
        return len(points)
    adjacency = [0] * len(points)
    for i, j in combinations(range(len(points)), 2):
        if _l1(points[i], points[j]) >= 2 * d:
            adjacency[i] |= 1 << j
            adjacency[j] |= 1 << i
    return _max_clique(adjacency, (1 << len(points)) - 1)


def _closed_form_cw(nu: int, delta: int, omega: int) -> Optional[int]:
    # 已知精确值的情形；delta 为距离的一半
    if omega < 0 or omega > nu:
        return 0
    omega = min(omega, nu - omega)
    if delta <= 1:
        return binomial(nu, omega)
    if omega < delta:
        return 1
    if omega == delta:
        return nu // omega
    if delta == 2 and omega == 3:
        # 三元组的最大填充
        value = (nu * ((nu - 1) // 2)) // 3
        return value - 1 if nu % 6 == 5 else value
    return None


@lru_cache(maxsize=None)
def _search_cw(nu: int, delta: int, omega: int) -> Optional[int]:
    """精确搜索；超出节点预算时返回 None（同样缓存）"""
    words = [sum(1 << i for i in support) for support in combinations(range(nu), omega)]
    adjacency = [0] * len(words)
    for i, j in combinations(range(len(words)), 2):
        if bin(words[i] ^ words[j]).count("1") >= 2 * delta:
            adjacency[i] |= 1 << j
            adjacency[j] |= 1 << i
    # 坐标置换对称：可以假定第一个码字是 1^ω 0^{ν-ω}（索引 0）
    try:
        return 1 + _max_clique(adjacency, adjacency[0])
    except InstanceTooLargeError:
        return None


def constant_weight_bound(nu: int, two_delta: int, omega: int) -> CountResult:
    """
    A(ν, 2δ, ω)：长度 ν、重量 ω、最小汉明距离 2δ 的最大二元码规模

    已知闭式的情形直接给出，其余用分支定界精确搜索。

    Raises:
        InstanceTooLargeError: 需要搜索且 ν 超过 CW_MAX_LENGTH、字数超过上限或搜索超出节点预算
    """
    if nu < 0 or two_delta < 0:
        raise InvalidStringError("ν and 2δ must be nonnegative")
    delta = (two_delta + 1) // 2
    known = _closed_form_cw(nu, delta, omega)
    if known is not None:
        return known
    if nu > settings.CW_MAX_LENGTH:
        raise InstanceTooLargeError(
            f"A({nu},{two_delta},{omega}) needs exhaustive search beyond ν ≤ {settings.CW_MAX_LENGTH}"
        )
    omega = min(omega, nu - omega)
    if binomial(nu, omega) > _CW_MAX_WORDS:
        raise InstanceTooLargeError(
            f"A({nu},{two_delta},{omega}) would search {binomial(nu, omega)} words"
        )
    value = _search_cw(nu, delta, omega)
    if value is None:
        raise InstanceTooLargeError(
            f"A({nu},{two_delta},{omega}) search exceeded {settings.CLIQUE_MAX_NODES} nodes"
        )
    logger.debug(f"A({nu},{two_delta},{omega}) = {value} by search")
    return value


def constant_weight_bounds(nu: int, two_delta: int, omega: int) -> Tuple[int, int]:
    """
    A(ν, 2δ, ω) 的区间

    能精确求得时上下界相等；否则给出贪心 Gilbert–Varshamov 下界与第一 Johnson 上界，
    只用于判定不等式。
    """
    try:
        value = constant_weight_bound(nu, two_delta, omega)
        return value, value
    except InstanceTooLargeError:
        pass
    delta = (two_delta + 1) // 2
    omega = min(omega, nu - omega)
    ball = sum(binomial(omega, i) * binomial(nu - omega, i) for i in range(delta))
    total = binomial(nu, omega)
    lower = -(-total // ball)
    free = omega - delta + 1
    upper = binomial(nu, free) // binomial(omega, free)
    return lower, upper


def _restricted_partitions(total: int, parts: int) -> Iterator[Vector]:
    """
    u ∈ Δ^w_{r+s} 在置换意义下的代表元，满足：没有坐标 ≥ 2 与坐标 0 同时出现
    """
    def partitions(remaining: int, slots: int, largest: int) -> Iterator[Vector]:
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for head in range(min(remaining, largest), -1, -1):
            for rest in partitions(remaining - head, slots - 1, head):
                yield (head,) + rest

    for u in partitions(total, parts, total):
        if u[0] >= 2 and u[-1] == 0:
            continue
        yield u


def mu_d(w: int, r: int, s: int, d: int, restricted: bool = True) -> CountResult:
    """
    μ(w,r,s,d)：A_r(u) 中最大 d-间隔子集的规模，对 u ∈ Δ^w_{r+s} 取最大

    Args:
        restricted: True 时只搜索不含“≥2 与 0 并存”的 u；r+s ≤ w+1 时
                    直接等于 A(r+s, 2d, s)

    Returns:
        精确整数

    Raises:
        InstanceTooLargeError: 某个 A_r(u) 超过搜索上限
    """
    if min(w, r, s) < 0 or d < 1:
        raise InvalidStringError("w, r, s must be nonnegative and d ≥ 1")
    if d == 1:
        return mu(w, r, s, restricted=restricted)
    if not restricted:
        return max(_packing_number(lower_bounds(u, r), d) for u in iter_simplex(w, r + s))
    # A_r(u) 中任意两点的 d₁ 距离不超过 s
    if s < d:
        return 1
    if r + s <= w + 1:
        return constant_weight_bound(r + s, 2 * d, s)
    best = 0
    for u in _restricted_partitions(r + s, w + 1):
        size = lower_bound_count(u, r)
        if size <= best:
            continue
        if size > _CW_MAX_WORDS:
            raise InstanceTooLargeError(f"|A_{r}(u)| = {size} for u = {u} exceeds {_CW_MAX_WORDS}")
        best = max(best, _packing_number(lower_bounds(u, r), d))
    return best


def packing_number(w: int, r: int, d: int) -> CountResult:
    """Δ^w_r 中两两 d₁ ≥ d 的最大点集规模，即 μ(w,r,wr,d)"""
    if d <= 1:
        return simplex_size(w, r)
    # Δ^w_r 的 d₁ 直径为 r（w ≥ 1）
    if w == 0 or r < d:
        return 1
    if simplex_size(w, r) > _CW_MAX_WORDS:
        raise InstanceTooLargeError(f"|Δ^{w}_{r}| = {simplex_size(w, r)} exceeds {_CW_MAX_WORDS}")
    return _packing_number(list(iter_simplex(w, r)), d)


def greedy_packing(w: int, r: int, d: int, limit: Optional[int] = None) -> List[Vector]:
    """
    按字典序首次适配的 d-间隔点集，凑够 limit 个即停止

    Args:
        limit: 点数上限，None 时扫描整个 Δ^w_r
    """
    chosen: List[Vector] = []
    for v in iter_simplex(w, r):
        if limit is not None and len(chosen) >= limit:
            break
        if all(_l1(v, c) >= 2 * d for c in chosen):
            chosen.append(v)
    return chosen


def packing_at_least(w: int, r: int, d: int, m: int) -> bool:
    """
    判定 Δ^w_r 中存在 m 个两两 d₁ ≥ d 的点

    先用构造性下界：r ≥ d 时坐标轴上的 r·e_i 两两距离为 r，给出 w+1 个点；
    再用首次适配贪心。两者都不够时才做精确搜索。
    """
    if m <= 1:
        return True
    if d <= 1:
        return simplex_at_least(w, r, m)
    if w == 0 or r < d:
        return False
    if m <= w + 1:
        return True
    if len(greedy_packing(w, r, d, limit=m)) >= m:
        return True
    return packing_number(w, r, d) >= m


def mu_d_at_least(w: int, r: int, s: int, d: int, m: int) -> bool:
    """
    判定 μ(w,r,s,d) ≥ m

    取 u ≥ 1 时，A_r(u) 中的二元 b = u - v 给出 μ ≥ A(min(r+s, w+1), 2d, s)；
    r+s ≤ w+1 时两者相等。另有 μ(w,r,s,d) ≤ μ(w,r,s)。
    区间都无法判定时才精确求值。
    """
    if d == 1:
        return mu(w, r, s) >= m
    if s < d:
        return m <= 1
    lower, upper = constant_weight_bounds(min(r + s, w + 1), 2 * d, s)
    if lower >= m:
        return True
    if r + s > w + 1:
        upper = mu(w, r, s)
    if upper < m:
        return False
    return mu_d(w, r, s, d) >= m


def sigma_d(m: int, w: int, r: int, d: int, cap: Optional[int] = None) -> int:
    """
    σ(m,w,r,d)，由 μ(w,r,s-1,d) < m ≤ μ(w,r,s,d) ⟹ σ = s 求得

    Args:
        cap: 若给出，返回 min(σ, cap)，且不再判定可行性

    Raises:
        InfeasibleRequestError: 未给出 cap 且 Δ^w_r 中不存在 m 个两两距离 ≥ d 的点
    """
    if m < 1:
        raise InfeasibleRequestError(f"m={m} must be positive")
    if d == 1:
        return sigma(m, w, r, cap=cap)
    if cap is None and not packing_at_least(w, r, d, m):
        raise InfeasibleRequestError(f"no {m} points of Δ^{w}_{r} are pairwise at d₁ distance ≥ {d}")
    s = 0
    while not mu_d_at_least(w, r, s, d, m):
        s += 1
        if cap is not None and s >= cap:
            return cap
        if s > w * r:
            raise InfeasibleRequestError(
                f"no {m} points of Δ^{w}_{r} are pairwise at d₁ distance ≥ {d}"
            )
    return s


def nbar_d(t: int, m: int, w: int, r: int, d: int, strict: bool = True) -> CountResult:
    """
    N̄_t(m,w,r,d) = C(w+t-σ(m,w,r,d), w)，σ > t 时为 0

    Args:
        strict: σ 超过 t 时是否区分“为 0”与“不可行”；
                把两者同样当作 0 的调用方传 False

    Raises:
        InfeasibleRequestError: strict 且 Δ^w_r 中放不下 m 个 d-间隔点
    """
    s = sigma_d(m, w, r, d, cap=t + 1)
    if s <= t:
        return binomial(w + t - s, w)
    if strict and not packing_at_least(w, r, d, m):
        raise InfeasibleRequestError(
            f"no {m} points of Δ^{w}_{r} are pairwise at d₁ distance ≥ {d}"
        )
    return 0
