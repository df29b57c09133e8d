"""
重复信道模拟与列表译码

list_decode_typical：把读数映到 N^{w+1}，取逐坐标最小值 u，
A_r(u) 的逆像即全部候选祖先。
list_decode_ecc：先在中间层 n+k(d-1) 上做同样的事，再用码本的唯一译码器收敛到码字。
"""

import logging
from typing import Callable, Iterable, List, Optional, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    CodebookMismatchError,
    InconsistentReadsError,
    InfeasibleRequestError,
    InvalidStringError,
    NoCommonAncestorError,
    SamplingExhaustedError,
)
from app.models.schemas import DecodeReport, GString, ReadSet, RunVector, SimplexCode
from app.services.codes import unique_decode
from app.services.lattice import infimum, lower_bound_count, lower_bounds, nbar, nbar_d
from app.services.strings import root, tandem_duplicate
from app.services.transform import cone_size, psi, psi_inverse
from app.services.typicality import is_typical, uncertainty_typ, uncertainty_typ_d

logger = logging.getLogger(__name__)

MembershipFilter = Union[str, Callable[[GString], bool]]


def channel_apply(x: GString, t: int, rng: np.random.Generator) -> GString:
    """
    t 次独立的串联重复，每次在所有合法位置中均匀选取

    Returns:
        D^t(x) 中的一个元素，长度 |x| + kt
    """
    if len(x) < x.k:
        raise InvalidStringError(f"string of length {len(x)} is shorter than k={x.k}")
    if t < 0:
        raise InvalidStringError("t must be nonnegative")
    y = x
    for _ in range(t):
        y = tandem_duplicate(y, int(rng.integers(0, len(y) - y.k + 1)))
    return y


def sample_distinct_reads(x: GString, t: int, count: int, rng: np.random.Generator,
                          max_attempts: Optional[int] = None) -> ReadSet:
    """
    反复通过信道直到收集到 count 个不同读数

    Raises:
        InfeasibleRequestError: count > |D^t(x)|
        SamplingExhaustedError: 尝试次数用尽
    """
    if count < 1:
        raise InvalidStringError("count must be positive")
    available = cone_size(x, t)
    if count > available:
        raise InfeasibleRequestError(f"requested {count} distinct reads but |D^{t}(x)| = {available}")
    max_attempts = max_attempts or settings.SAMPLING_MAX_ATTEMPTS
    reads = set()
    for _ in range(max_attempts):
        reads.add(channel_apply(x, t, rng))
        if len(reads) == count:
            return ReadSet.of(reads, t)
    raise SamplingExhaustedError(
        f"collected {len(reads)} of {count} distinct reads in {max_attempts} attempts"
    )


class DuplicationChannel:
    """
    均匀串联重复信道

    持有一个带种子的 numpy Generator，同一种子产生同一串读数。
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.rng = np.random.default_rng(self.seed)

    def apply(self, x: GString, t: int) -> GString:
        return channel_apply(x, t, self.rng)

    def sample_reads(self, x: GString, t: int, count: int, max_attempts: Optional[int] = None) -> ReadSet:
        reads = sample_distinct_reads(x, t, count, self.rng, max_attempts)
        logger.debug(f"sampled {count} reads of length {len(x) + x.k * t} (seed={self.seed})")
        return reads


def required_reads(n: int, t: int, m: int, q: int, k: int, d: Optional[int] = None,
                   exhaustive_grid: bool = False) -> int:
    """
    典型集上保证列表小于 m 所需的读数 N + 1

    N 取整个窗口上的最大值，不看具体的 (w, r)；译码器拿到读数后可用
    required_reads_for_profile 得到更小的值。例如 n=11、t=3、m=4（q=3、k=2）时
    窗口最大值为 11，而示例串所在的剖面只需要 4 个读数。
    """
    if d is None:
        return uncertainty_typ(n, t, m, q, k, exhaustive_grid) + 1
    return uncertainty_typ_d(n, t, m, q, k, d, exhaustive_grid) + 1


def required_reads_for_profile(w: int, r: int, t: int, m: int, d: Optional[int] = None) -> int:
    """
    固定 (w, r) 时所需读数 N̄ + 1；译码器从第一个读数得到 (w, r)

    m 超过单纯形（或其 d-填充）容量时不存在 m 个候选，N̄ = 0。
    """
    try:
        if d is None or d == 1:
            return nbar(t, m, w, r) + 1
        return nbar_d(t, m, w, r, d, strict=False) + 1
    except InfeasibleRequestError:
        return 1


def _anchor(reads: ReadSet) -> Tuple[GString, List[RunVector]]:
    """以 rt(y₁) 为根计算全部 ψ 像，并检查读数属于同一个锥"""
    first = reads.reads[0]
    x_root = root(first)
    images = []
    for y in reads.reads:
        if (y.q, y.k) != (first.q, first.k):
            raise InconsistentReadsError(f"read {y} uses a different (q, k)")
        if root(y) != x_root:
            raise InconsistentReadsError(f"read {y} has root {root(y)}, expected {x_root}")
        images.append(psi(y, x_root))
    return x_root, images


def _accepts(membership_filter: MembershipFilter) -> Callable[[GString], bool]:
    if callable(membership_filter):
        return membership_filter
    if membership_filter == "typical":
        return is_typical
    if membership_filter == "all":
        return lambda x: True
    raise InvalidStringError(f"unknown membership filter {membership_filter!r}")


def _level(images: List[RunVector], t: int) -> int:
    r = images[0].norm - t
    if r < 0:
        raise NoCommonAncestorError(f"reads sit {images[0].norm} duplications above their root, fewer than t={t}")
    return r


def list_decode_typical(reads: ReadSet, m: int, t: Optional[int] = None,
                        membership_filter: MembershipFilter = "typical") -> DecodeReport:
    """
    典型集列表译码

    Args:
        reads: 两两不同的读数
        m: 设计的列表上限
        t: 重复次数，默认取 reads.t
        membership_filter: "typical"、"all" 或任意判定函数

    Returns:
        DecodeReport，candidates 按字典序排列

    Raises:
        InconsistentReadsError: 读数属于不同的锥
        NoCommonAncestorError: 读数在目标层级上没有公共祖先
    """
    t = reads.t if t is None else t
    accept = _accepts(membership_filter)
    x_root, images = _anchor(reads)
    r = _level(images, t)
    u = infimum([v.entries for v in images])
    if sum(u) < r:
        raise NoCommonAncestorError(f"infimum {u} has norm {sum(u)} below level r={r}")

    candidates = [psi_inverse(RunVector(entries=v, root=x_root)) for v in lower_bounds(u, r)]
    candidates = sorted((x for x in candidates if accept(x)), key=lambda x: x.symbols)

    required = required_reads_for_profile(len(u) - 1, r, t, m)
    guaranteed = len(reads) >= required
    if not guaranteed:
        logger.warning(f"{len(reads)} reads below the {required} needed for a list smaller than m={m}")
    logger.info(f"decoded {len(reads)} reads at level r={r}: {len(candidates)} candidates")
    return DecodeReport(
        candidates=candidates, list_size=len(candidates), guaranteed=guaranteed,
        discarded=0, required_reads=required, m=m, t=t, d=None, root=x_root, infimum=u,
    )


def _decode_intermediates(u: Tuple[int, ...], level: int, code: SimplexCode) -> Tuple[List[Tuple[int, ...]], int, int]:
    """
    对 A_{level}(u) 中每个 z 做唯一译码，按码字计数而不逐个枚举 z

    z 译码到 c 当且仅当 c ≤ z ≤ u；最小距离 d 保证这些 z 的集合两两不交，
    每个 c ≤ u 恰有 |A_{d-1}(u - c)| 个。

    Returns:
        (译码得到的码字, 中间点总数, 被丢弃的中间点数)
    """
    total = lower_bound_count(u, level)
    decoded = [c for c in code.words if all(a <= b for a, b in zip(c, u))]
    hits = sum(lower_bound_count(tuple(b - a for a, b in zip(c, u)), code.d - 1) for c in decoded)
    return decoded, total, total - hits


def list_decode_ecc(reads: ReadSet, code: SimplexCode, m: int, t: Optional[int] = None,
                    d: Optional[int] = None) -> DecodeReport:
    """
    带纠错码的列表译码

    Args:
        reads: 两两不同的读数
        code: 码本，码字在 Δ^w_r 中
        m: 设计的列表上限
        t: 重复次数，默认取 reads.t
        d: 最小距离，默认取 code.d；给出时必须与码本一致

    Returns:
        DecodeReport，candidates 为去重后的码字串

    Raises:
        CodebookMismatchError: 读数的根或层级与码本不符
    """
    t = reads.t if t is None else t
    d = code.d if d is None else d
    if d != code.d:
        raise CodebookMismatchError(f"decoder distance d={d} differs from codebook d={code.d}")
    if d > t:
        raise InvalidStringError(f"d={d} must not exceed t={t}")
    x_root, images = _anchor(reads)
    if x_root != code.root:
        raise CodebookMismatchError(f"reads have root {x_root}, codebook root is {code.root}")
    if images[0].norm - t != code.r:
        raise CodebookMismatchError(
            f"reads decode to level {images[0].norm - t}, codebook level is r={code.r}"
        )

    level = code.r + d - 1
    u = infimum([v.entries for v in images])
    if sum(u) < code.r:
        raise NoCommonAncestorError(f"infimum {u} has norm {sum(u)} below level r={code.r}")
    if sum(u) >= level:
        decoded, intermediates, discarded = _decode_intermediates(u, level, code)
    else:
        # 公共下确界已低于中间层时直接交给唯一译码器
        c = unique_decode(RunVector(entries=u, root=x_root), code)
        decoded = [] if c is None else [c.entries]
        intermediates, discarded = 1, int(c is None)

    candidates = [psi_inverse(RunVector(entries=c, root=x_root)) for c in decoded]
    if code.typical_subset:
        candidates = [x for x in candidates if is_typical(x)]
    candidates.sort(key=lambda x: x.symbols)

    required = required_reads_for_profile(code.w, code.r, t, m, d)
    guaranteed = len(reads) >= required
    if not guaranteed:
        logger.warning(f"{len(reads)} reads below the {required} needed for a list smaller than m={m}")
    logger.info(
        f"ecc decode: {intermediates} intermediates, {discarded} discarded, {len(candidates)} codewords"
    )
    return DecodeReport(
        candidates=candidates, list_size=len(candidates), guaranteed=guaranteed,
        discarded=discarded, required_reads=required, m=m, t=t, d=d, root=x_root, infimum=u,
    )


def collect_reads(reads: Iterable[GString], t: int) -> ReadSet:
    """去重并检查长度一致；长度不同的读数不可能来自同一层级"""
    reads = list(reads)
    if len({len(y) for y in reads}) > 1:
        raise InconsistentReadsError("reads do not all have the same length")
    read_set = ReadSet.of(reads, t)
    if len(read_set) < len(reads):
        logger.warning(f"dropped {len(reads) - len(read_set)} duplicate reads")
    return read_set


def decode_strings(reads: Iterable[GString], t: int, m: int, code: Optional[SimplexCode] = None,
                   membership_filter: MembershipFilter = "typical") -> DecodeReport:
    """读数去重后按模式分派到两种译码器"""
    read_set = collect_reads(reads, t)
    if code is None:
        return list_decode_typical(read_set, m, t, membership_filter)
    return list_decode_ecc(read_set, code, m, t)
