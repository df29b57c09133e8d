"""
典型集 typ^n

窗口判定全部用精确整数完成：|a/b| < n^{3/4} 改写为 a⁴ < b⁴·n³。
蒙特卡洛估计使用显式种子的 numpy Generator。
"""

import logging
import math
from fractions import Fraction
from typing import Iterator, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import InfeasibleRequestError, InstanceTooLargeError, InvalidStringError, RegimeError
from app.models.schemas import ExponentResult, GString, MonteCarloEstimate, TypicalityWindow
from app.services.lattice import binomial, constant_weight_bounds, nbar, nbar_d, simplex_at_least
from app.services.transform import stats

logger = logging.getLogger(__name__)

# 99% 双侧正态分位数
Z_99 = 2.5758293035489


def _inside(numerator: int, scale: int, n: int) -> bool:
    # |numerator| < scale · n^{3/4}
    return numerator ** 4 < scale ** 4 * n ** 3


def _interval(center_num: int, denom: int, scale: int, n: int, upper: int) -> Tuple[int, int]:
    """满足 |denom·v - center_num| < scale·n^{3/4} 的整数 v ∈ [0, upper]"""
    start = min(max(center_num // denom, 0), upper)
    if not _inside(denom * start - center_num, scale * denom, n):
        return 1, 0
    lo = start
    while lo > 0 and _inside(denom * (lo - 1) - center_num, scale * denom, n):
        lo -= 1
    hi = start
    while hi < upper and _inside(denom * (hi + 1) - center_num, scale * denom, n):
        hi += 1
    return lo, hi


def window(n: int, q: int, k: int) -> TypicalityWindow:
    """
    典型窗口的整数端点

    Args:
        n: 字符串长度
        q: 字母表大小
        k: 重复窗口长度

    Returns:
        w ∈ [w_lo, w_hi]、r ∈ [r_lo, r_hi] 严格落在窗口内的整数范围
    """
    if n < k:
        raise InvalidStringError(f"n={n} is shorter than k={k}")
    w_num, w_den = (q - 1) * (n - k), q
    r_num, r_den = (q - 1) * (n - k), q * (q ** k - 1)
    w_lo, w_hi = _interval(w_num, w_den, 1, n, n - k)
    r_lo, r_hi = _interval(r_num, r_den, 2, n, (n - k) // k)
    return TypicalityWindow(
        n=n, q=q, k=k,
        w_center=Fraction(w_num, w_den), r_center=Fraction(r_num, r_den),
        w_lo=w_lo, w_hi=w_hi, r_lo=r_lo, r_hi=r_hi,
    )


def feasible_weights(n: int, k: int, r: int, win: Optional[TypicalityWindow] = None) -> range:
    """
    层级 r 上可实现的 w：存在长度 n-kr、导数重量 w 的不可约根

    根的 φ̄ 长度 T = n-k(r+1)，由 w 个非零符号与 w+1 段短于 k 的零游程组成，
    因此 w ≤ T ≤ w + (k-1)(w+1)。
    """
    length = n - k * (r + 1)
    if r < 0 or length < 0:
        return range(0)
    lo = max(0, -(-(length - k + 1) // k))
    hi = length
    if win is not None:
        lo, hi = max(lo, win.w_lo), min(hi, win.w_hi)
    return range(lo, hi + 1)


def is_typical(x: GString) -> bool:
    """
    x ∈ typ^n

    Returns:
        |w(x) - (q-1)(n-k)/q| < n^{3/4} 且 |r(x) - (q-1)(n-k)/(q(q^k-1))| < 2n^{3/4}
    """
    n, q, k = len(x), x.q, x.k
    if n < k:
        raise InvalidStringError(f"string of length {n} is shorter than k={k}")
    params = stats(x)
    w_ok = _inside(q * params.w - (q - 1) * (n - k), q, n)
    big_q = q * (q ** k - 1)
    r_ok = _inside(big_q * params.r - (q - 1) * (n - k), 2 * big_q, n)
    return w_ok and r_ok


def typical_fraction_bound(n: int) -> float:
    """|typ^n| / q^n ≥ 1 - 4e^{-√n/2}"""
    if n < 1:
        raise InvalidStringError("n must be positive")
    return 1.0 - 4.0 * math.exp(-math.sqrt(n) / 2.0)


def expected_r(n: int, q: int, k: int) -> Fraction:
    """E[r(x)] 的主项 (q-1)(n-k)/(q(q^k-1))"""
    if n < k:
        raise InvalidStringError(f"n={n} is shorter than k={k}")
    return Fraction((q - 1) * (n - k), q * (q ** k - 1))


def expected_r_exact(n: int, q: int, k: int) -> Fraction:
    """
    精确的 E[r(x)]

    x 均匀时 φ̄(x) 的 n-k 个符号独立均匀，r(x) 为各段极大零游程长度除以 k 之和。
    按游程长度 j 与其两端是否触及边界分组求和。
    """
    if n < k:
        raise InvalidStringError(f"n={n} is shorter than k={k}")
    length = n - k
    p = Fraction(1, q)
    total = Fraction(0)
    for j in range(k, length + 1):
        if j == length:
            weight = p ** j
        else:
            interior = max(0, length - j - 1)
            weight = p ** j * (1 - p) * (2 + interior * (1 - p))
        total += (j // k) * weight
    return total


def _batches(samples: int, n: int) -> Iterator[int]:
    # 单批约 2·10^6 个符号
    size = max(1, 2_000_000 // max(n, 1))
    while samples > 0:
        yield min(size, samples)
        samples -= size


def _sample_stats(rng: np.random.Generator, batch: int, n: int, q: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """一批均匀样本的 (w, r) 数组"""
    x = rng.integers(0, q, size=(batch, n), dtype=np.int64)
    tail = (x[:, k:] - x[:, :-k]) % q
    w = np.count_nonzero(tail, axis=1)
    run = np.zeros(batch, dtype=np.int64)
    r = np.zeros(batch, dtype=np.int64)
    for column in tail.T:
        run = np.where(column == 0, run + 1, 0)
        r += (run > 0) & (run % k == 0)
    return w, r


def _estimate(values: np.ndarray, seed: int) -> MonteCarloEstimate:
    mean = float(values.mean())
    std = float(values.std(ddof=1)) if values.size > 1 else 0.0
    return MonteCarloEstimate(
        mean=mean, half_width=Z_99 * std / math.sqrt(values.size), samples=int(values.size), seed=seed
    )


def estimate_typical_fraction(n: int, q: int, k: int, samples: Optional[int] = None,
                              seed: Optional[int] = None) -> MonteCarloEstimate:
    """
    均匀串中典型串比例的蒙特卡洛估计

    Args:
        samples: 样本数，默认 settings.MC_SAMPLES
        seed: 随机种子，默认 settings.DEFAULT_SEED
    """
    samples = samples or settings.MC_SAMPLES
    seed = settings.DEFAULT_SEED if seed is None else seed
    win = window(n, q, k)
    rng = np.random.default_rng(seed)
    hits = []
    for batch in _batches(samples, n):
        w, r = _sample_stats(rng, batch, n, q, k)
        hits.append((w >= win.w_lo) & (w <= win.w_hi) & (r >= win.r_lo) & (r <= win.r_hi))
    result = _estimate(np.concatenate(hits).astype(np.float64), seed)
    logger.info(f"typical fraction n={n}: {result.mean:.5f} ± {result.half_width:.5f}")
    return result


def estimate_mean_r(n: int, q: int, k: int, samples: Optional[int] = None,
                    seed: Optional[int] = None) -> MonteCarloEstimate:
    """r(x) 均值的蒙特卡洛估计"""
    samples = samples or settings.MC_SAMPLES
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    values = [_sample_stats(rng, batch, n, q, k)[1] for batch in _batches(samples, n)]
    return _estimate(np.concatenate(values).astype(np.float64), seed)


def _window_points(n: int, q: int, k: int, exhaustive_grid: bool) -> Iterator[Tuple[int, int]]:
    """
    窗口内可实现的 (w, r)

    σ 关于 w 不增、C(w+t-σ, w) 关于 w 递增，所以默认每个 r 只取最大的可行 w。
    """
    win = window(n, q, k)
    for r in range(win.r_lo, win.r_hi + 1):
        weights = feasible_weights(n, k, r, win)
        if not weights:
            continue
        if exhaustive_grid:
            for w in weights:
                yield w, r
        else:
            yield weights[-1], r


def _uncertainty(n: int, q: int, k: int, m: int, exhaustive_grid: bool, count) -> int:
    best = None
    for w, r in _window_points(n, q, k, exhaustive_grid):
        # 放不下 m 个（d-间隔的）点时该处不确定度为 0
        try:
            value = count(w, r) if simplex_at_least(w, r, m) else 0
        except InfeasibleRequestError:
            value = 0
        best = value if best is None else max(best, value)
    if best is None:
        raise InfeasibleRequestError(f"typicality window at n={n} contains no realizable (w, r)")
    return best


def uncertainty_typ(n: int, t: int, m: int, q: int, k: int, exhaustive_grid: bool = False) -> int:
    """
    典型集上的不确定度 max N̄_t(m,w,r)，(w,r) 取遍窗口

    Args:
        exhaustive_grid: True 时扫描窗口中全部 (w,r)
    """
    if m < 2 or t < 0:
        raise InvalidStringError("m must be ≥ 2 and t ≥ 0")
    return _uncertainty(n, q, k, m, exhaustive_grid, lambda w, r: nbar(t, m, w, r))


def uncertainty_typ_d(n: int, t: int, m: int, q: int, k: int, d: int, exhaustive_grid: bool = False) -> int:
    """纠错版本：max N̄_t(m,w,r,d)"""
    if m < 2 or not 1 <= d <= t:
        raise InvalidStringError("m must be ≥ 2 and 1 ≤ d ≤ t")
    return _uncertainty(n, q, k, m, exhaustive_grid, lambda w, r: nbar_d(t, m, w, r, d, strict=False))


def log_ceil(n: int, m: int) -> int:
    """⌈log_n m⌉，即使 n^s ≥ m 的最小 s"""
    s, power = 0, 1
    while power < m:
        power *= n
        s += 1
    return s


def _exceeds_cw(m: int, nu: int, d: int, omega: int) -> bool:
    lower, upper = constant_weight_bounds(nu, 2 * d, omega)
    if lower >= m:
        return False
    if upper < m:
        return True
    raise InstanceTooLargeError(f"cannot decide m={m} against A({nu},{2 * d},{omega})")


def exponent_e(n: int, t: int, m: int, q: int, k: int, d: Optional[int] = None) -> ExponentResult:
    """
    渐近指数 e_t

    无纠错：e = t - ⌈log_n m⌉ - δ，δ = 1 当且仅当窗口内每个 r 都有 m > C(r+s, s)。
    纠错：s = ⌈log_n m⌉ + d - 1，e = t - ⌈log_n m⌉ - d + ε，
    ε = 0 当且仅当每个 r 都有 m > A(r+s, 2d, s)。
    两个量都关于 r 单调，因此只需检查窗口内最大的可实现 r。

    Raises:
        RegimeError: s > t、e < 0 或窗口为空
    """
    if n < 2 or m < 2 or t < 0:
        raise InvalidStringError("need n ≥ 2, m ≥ 2, t ≥ 0")
    if d is not None and not 1 <= d <= t:
        raise InvalidStringError(f"d={d} must satisfy 1 ≤ d ≤ t={t}")
    win = window(n, q, k)
    radii = [r for r in range(win.r_lo, win.r_hi + 1) if feasible_weights(n, k, r, win)]
    if not radii:
        raise RegimeError(f"typicality window at n={n} contains no realizable (w, r)")
    r_max = radii[-1]
    s = log_ceil(n, m) + (d - 1 if d else 0)
    if s > t:
        raise RegimeError(f"m={m} is outside the m = O(n^{t}) regime at n={n} (s={s} > t={t})")
    if d is None:
        delta = 1 if m > binomial(r_max + s, s) else 0
    else:
        delta = 1 if _exceeds_cw(m, r_max + s, d, s) else 0
    e = t - s - delta
    if e < 0:
        raise RegimeError(f"exponent t - s - δ = {e} is negative")
    return ExponentResult(
        n=n, t=t, m=m, d=d, s=s, delta=delta,
        epsilon=None if d is None else 1 - delta, e=e,
    )
