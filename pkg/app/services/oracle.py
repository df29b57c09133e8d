"""
穷举预言机

直接按定义计算，不使用任何闭式或搜索空间约简；超出预算时报错，从不返回近似值。
"""

import logging
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Set, Tuple

from app.core.config import settings
from app.core.exceptions import BudgetExceededError, InfeasibleRequestError, InvalidStringError, NotInConeError
from app.models.schemas import GString, OracleBudget
from app.services.lattice import iter_simplex, supremum
from app.services.strings import expand_level, root

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Symbols = Tuple[int, ...]


def _leq(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _l1(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(abs(a - b) for a, b in zip(u, v))


class BruteForceOracle:
    """
    参照实现，供测试与 verify 命令交叉检验
    """

    def __init__(self, budget: Optional[OracleBudget] = None):
        self.budget = budget or OracleBudget(
            max_states=settings.ORACLE_MAX_STATES, max_depth=settings.ORACLE_MAX_DEPTH
        )
        self._levels: Dict[Tuple[Symbols, int], List[Set[Symbols]]] = {}
        self._states = 0

    # ------------------------------------------------------------------
    # 预算
    # ------------------------------------------------------------------

    def _start(self) -> None:
        self._states = 0

    def _tick(self, count: int = 1) -> None:
        self._states += count
        if self._states > self.budget.max_states:
            raise BudgetExceededError(f"oracle exceeded {self.budget.max_states} states")

    def _check_depth(self, depth: int) -> None:
        if depth > self.budget.max_depth:
            raise BudgetExceededError(f"depth {depth} exceeds oracle max_depth={self.budget.max_depth}")

    # ------------------------------------------------------------------
    # 字符串层面
    # ------------------------------------------------------------------

    def descendant_level(self, x: GString, t: int) -> Set[Symbols]:
        """D^t(x)，按 (x, k) 缓存各层"""
        self._check_depth(t)
        key = (x.symbols, x.k)
        levels = self._levels.setdefault(key, [{x.symbols}])
        while len(levels) <= t:
            level = expand_level(levels[-1], x.k)
            self._tick(len(level))
            levels.append(level)
        return levels[t]

    def bfs_distance(self, y1: GString, y2: GString, known_root: Optional[GString] = None) -> int:
        """
        使 D^t(y1) ∩ D^t(y2) 非空的最小 t

        Args:
            known_root: 调用方已知的公共根，给出时跳过根的比较

        Raises:
            NotInConeError: 两串不在同一个锥中
            BudgetExceededError: 超过 max_depth 仍未相交
        """
        if len(y1) != len(y2):
            raise InvalidStringError(f"lengths differ: {len(y1)} vs {len(y2)}")
        if known_root is None and root(y1) != root(y2):
            raise NotInConeError(f"{y1} and {y2} have different duplication roots")
        self._start()
        for t in range(self.budget.max_depth + 1):
            if self.descendant_level(y1, t) & self.descendant_level(y2, t):
                return t
        raise BudgetExceededError(f"no common descendant within depth {self.budget.max_depth}")

    def exhaustive_uncertainty(self, strings: Sequence[GString], t: int) -> int:
        """|⋂ D^t(x_i)|，直接求集合交"""
        if not strings:
            raise InvalidStringError("at least one string is required")
        self._start()
        common = set(self.descendant_level(strings[0], t))
        for x in strings[1:]:
            common &= self.descendant_level(x, t)
        return len(common)

    # ------------------------------------------------------------------
    # 单纯形层面
    # ------------------------------------------------------------------

    def _simplex(self, w: int, r: int) -> List[Vector]:
        points = list(iter_simplex(w, r))
        self._tick(len(points))
        return points

    def shell_size(self, t: int, u_list: Sequence[Sequence[int]]) -> int:
        """|S̄_t(u_1..u_m)|：Δ^w_{r+t} 中同时位于所有 u_i 之上的向量数"""
        w, r = len(u_list[0]) - 1, sum(u_list[0])
        self._start()
        return sum(1 for v in self._simplex(w, r + t) if all(_leq(u, v) for u in u_list))

    def exhaustive_mu(self, w: int, r: int, s: int) -> int:
        """max |A_r(u)|，u 取遍 Δ^w_{r+s}，下界集合由过滤 Δ^w_r 得到"""
        self._start()
        lower = self._simplex(w, r)
        best = 0
        for u in self._simplex(w, r + s):
            self._tick(len(lower))
            best = max(best, sum(1 for v in lower if _leq(v, u)))
        return best

    def _packs(self, points: Sequence[Vector], d: int, target: int) -> bool:
        """points 中是否存在 target 个两两 ‖·‖₁ ≥ 2d 的点（无剪枝回溯）"""
        def extend(chosen: List[Vector], start: int) -> bool:
            if len(chosen) == target:
                return True
            for i in range(start, len(points)):
                self._tick()
                if all(_l1(points[i], c) >= 2 * d for c in chosen):
                    chosen.append(points[i])
                    if extend(chosen, i + 1):
                        return True
                    chosen.pop()
            return False

        return extend([], 0)

    def _largest_packing(self, points: Sequence[Vector], d: int) -> int:
        size = 0
        while size < len(points) and self._packs(points, d, size + 1):
            size += 1
        return size

    def exhaustive_mu_d(self, w: int, r: int, s: int, d: int) -> int:
        """max over u ∈ Δ^w_{r+s} of A_r(u) 的最大 d-填充"""
        self._start()
        lower = self._simplex(w, r)
        best = 0
        for u in self._simplex(w, r + s):
            below = [v for v in lower if _leq(v, u)]
            best = max(best, self._largest_packing(below, d))
        return best

    def _suprema(self, w: int, r: int) -> List[Vector]:
        # m 个点的上确界逐坐标不超过 r；按范数升序
        candidates = [u for u in product(range(r + 1), repeat=w + 1) if sum(u) >= r]
        self._tick(len(candidates))
        return sorted(candidates, key=lambda u: (sum(u), u))

    def exhaustive_sigma_d(self, m: int, w: int, r: int, d: int = 1) -> int:
        """
        min ‖⋁u_i‖₁ - r，取遍 Δ^w_r 中 m 个两两 d₁ ≥ d 的点

        候选上确界 U 下方若能放下这样的 m 个点，其上确界不超过 U。
        """
        if m < 1:
            raise InvalidStringError("m must be positive")
        self._start()
        lower = self._simplex(w, r)
        for u in self._suprema(w, r):
            below = [v for v in lower if _leq(v, u)]
            self._tick(len(lower))
            if len(below) >= m and self._packs(below, d, m):
                return sum(u) - r
        raise InfeasibleRequestError(f"no {m} points of Δ^{w}_{r} are pairwise at d₁ distance ≥ {d}")

    def exhaustive_sigma(self, m: int, w: int, r: int) -> int:
        return self.exhaustive_sigma_d(m, w, r, 1)

    def exhaustive_sigma_literal(self, m: int, w: int, r: int) -> int:
        """逐个枚举 m 元子集，只适用于极小的单纯形"""
        self._start()
        points = self._simplex(w, r)
        if m > len(points):
            raise InfeasibleRequestError(f"m={m} exceeds |Δ^{w}_{r}| = {len(points)}")
        best = None
        for subset in combinations(points, m):
            self._tick()
            height = sum(supremum(subset)) - r
            best = height if best is None else min(best, height)
        return best

    def exhaustive_nbar(self, t: int, m: int, w: int, r: int, d: int = 1) -> int:
        """
        max |S̄_t| over m 元（两两 d₁ ≥ d 的）子集，壳层直接枚举并按上确界缓存
        """
        self._start()
        points = self._simplex(w, r)
        shell = self._simplex(w, r + t)
        counts: Dict[Vector, int] = {}
        best = None
        for subset in combinations(points, m):
            self._tick()
            if d > 1 and any(_l1(a, b) < 2 * d for a, b in combinations(subset, 2)):
                continue
            top = supremum(subset)
            if top not in counts:
                self._tick(len(shell))
                counts[top] = sum(1 for v in shell if _leq(top, v))
            best = counts[top] if best is None else max(best, counts[top])
        if best is None:
            raise InfeasibleRequestError(f"no {m} points of Δ^{w}_{r} are pairwise at d₁ distance ≥ {d}")
        return best

    def exhaustive_constant_weight(self, nu: int, two_delta: int, omega: int) -> int:
        """A(ν, 2δ, ω)：全部重量 ω 的字，无对称性约简"""
        if not 0 <= omega <= nu:
            return 0
        self._start()
        words = [
            tuple(1 if i in support else 0 for i in range(nu))
            for support in combinations(range(nu), omega)
        ]
        self._tick(len(words))
        delta = (two_delta + 1) // 2
        return self._largest_packing(words, delta)
