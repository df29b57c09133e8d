"""
验证套件

把闭式计算与穷举预言机、示例数据和端到端模拟逐项对照，每项产出一个 CheckResult。
"""

import logging
from contextlib import nullcontext
from itertools import combinations, product
from math import comb
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import DuplicationError, InfeasibleRequestError, InstanceTooLargeError
from app.models.schemas import CheckResult, GString, ReadSet, RunVector, SimplexCode
from app.services.codes import build_code_greedy
from app.services.lattice import (
    binomial_fault,
    constant_weight_bound,
    mu,
    mu_2_piecewise,
    mu_d,
    nbar,
    nbar_d,
    sigma,
    sigma_d,
    simplex_size,
)
from app.services.oracle import BruteForceOracle
from app.services.reconstruct import (
    DuplicationChannel,
    list_decode_ecc,
    list_decode_typical,
    required_reads_for_profile,
    sample_distinct_reads,
)
from app.services.strings import descendants, irreducible_strings, root
from app.services.transform import duplication_distance, psi, psi_inverse, stats
from app.services.typicality import (
    estimate_mean_r,
    estimate_typical_fraction,
    exponent_e,
    expected_r,
    is_typical,
    log_ceil,
    typical_fraction_bound,
    window,
)

logger = logging.getLogger(__name__)

# 示例：x ∈ typ^11，q=3，k=2，t=3
EXAMPLE_Q, EXAMPLE_K = 3, 2
EXAMPLE_READS = (
    "10101012122222222",
    "10101010122222222",
    "10101012222222222",
    "10101012121222222",
)
EXAMPLE_DECODED = ("10101012222", "10101222222")
EXAMPLE_ROOT = "10122"
ECC_CODE = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
ECC_ALTERNATE_CODE = ((2, 0, 0), (0, 1, 1))
ECC_DECODED = ("101010122", "101222222")
# 示例正文对 μ(2,3,2) 给出的数值
WORKED_EXAMPLE_MU_2 = 4
# 端到端检查中贪心码的码字数上限
E2E_CODE_WORDS = 32


def example_reads(count: int = 4, t: int = 3) -> ReadSet:
    reads = [GString.parse(s, EXAMPLE_Q, EXAMPLE_K) for s in EXAMPLE_READS[:count]]
    return ReadSet.of(reads, t)


def example_code(words: Sequence[Tuple[int, ...]] = ECC_CODE, d: int = 2) -> SimplexCode:
    return SimplexCode(
        root=GString.parse(EXAMPLE_ROOT, EXAMPLE_Q, EXAMPLE_K), w=2, r=2, d=d, words=tuple(words)
    )


def _outcome(func: Callable[[], int]):
    """把不可行请求当作一种可比较的结果"""
    try:
        return func()
    except InfeasibleRequestError:
        return "infeasible"


class VerificationSuite:
    """
    验证套件

    Args:
        trials: 端到端检查每个网格点的试验次数
        mc_samples: 蒙特卡洛样本数
        isometry_max_length: 等距检查中不可约根的最大长度
        seed: 随机种子
        quick: 缩小穷举网格，供测试使用
    """

    def __init__(self, trials: Optional[int] = None, mc_samples: Optional[int] = None,
                 isometry_max_length: int = 8, seed: Optional[int] = None, quick: bool = False):
        self.trials = settings.E2E_TRIALS if trials is None else trials
        self.mc_samples = mc_samples or settings.MC_SAMPLES
        self.isometry_max_length = isometry_max_length
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.quick = quick
        self.oracle = BruteForceOracle()

    # ------------------------------------------------------------------
    # 示例
    # ------------------------------------------------------------------

    def check_worked_example(self) -> CheckResult:
        report = list_decode_typical(example_reads(), m=4, t=3)
        got = tuple(str(x) for x in report.candidates)
        passed = got == EXAMPLE_DECODED and report.guaranteed and all(is_typical(x) for x in report.candidates)
        return CheckResult(name="worked_example", passed=passed, detail=f"list={','.join(got)}")

    def check_ecc_example(self) -> CheckResult:
        reads = example_reads(count=2, t=4)
        first = list_decode_ecc(reads, example_code(), m=3, t=4)
        second = list_decode_ecc(reads, example_code(ECC_ALTERNATE_CODE), m=3, t=4)
        lone = str(psi_inverse(RunVector(entries=(2, 0, 0), root=example_code().root)))
        got_first = tuple(str(x) for x in first.candidates)
        got_second = tuple(str(x) for x in second.candidates)
        passed = got_first == ECC_DECODED and got_second == (lone,) and second.discarded == 2
        return CheckResult(
            name="ecc_example", passed=passed,
            detail=f"list={','.join(got_first)} alternate={','.join(got_second)} discarded={second.discarded}",
        )

    # ------------------------------------------------------------------
    # 闭式与预言机
    # ------------------------------------------------------------------

    def _grid(self, limit: int) -> range:
        return range(min(limit, 3) + 1) if self.quick else range(limit + 1)

    def check_closed_forms(self) -> CheckResult:
        mismatches = []
        for w, r in product(self._grid(4), repeat=2):
            if simplex_size(w, r) != comb(r + w, r):
                mismatches.append(f"|Δ^{w}_{r}|")
            for s in self._grid(4):
                if mu(w, r, s) != self.oracle.exhaustive_mu(w, r, s):
                    mismatches.append(f"μ({w},{r},{s})")
            for m in range(2, min(8, comb(r + w, r)) + 1):
                if sigma(m, w, r) != self.oracle.exhaustive_sigma(m, w, r):
                    mismatches.append(f"σ({m},{w},{r})")
        for w, r, t in product(range(1, 4), self._grid(3), self._grid(3)):
            for m in range(2, min(4, comb(r + w, r)) + 1):
                if nbar(t, m, w, r) != self.oracle.exhaustive_nbar(t, m, w, r):
                    mismatches.append(f"N̄_{t}({m},{w},{r})")
        return CheckResult(
            name="closed_form_vs_oracle", passed=not mismatches,
            detail="mismatches=" + (";".join(mismatches) or "none"),
        )

    def check_distance_variants(self) -> CheckResult:
        mismatches = []
        limit = 2 if self.quick else 3
        for w, r, d in product(range(1, limit + 1), range(limit + 1), range(2, limit + 1)):
            for s in range(limit + 1):
                if mu_d(w, r, s, d) != self.oracle.exhaustive_mu_d(w, r, s, d):
                    mismatches.append(f"μ({w},{r},{s},{d})")
            for m in range(2, 5):
                if _outcome(lambda: sigma_d(m, w, r, d)) != _outcome(lambda: self.oracle.exhaustive_sigma_d(m, w, r, d)):
                    mismatches.append(f"σ({m},{w},{r},{d})")
                for t in range(d, limit + 1):
                    ours = _outcome(lambda: nbar_d(t, m, w, r, d))
                    theirs = _outcome(lambda: self.oracle.exhaustive_nbar(t, m, w, r, d))
                    if ours != theirs:
                        mismatches.append(f"N̄_{t}({m},{w},{r},{d})")
        return CheckResult(
            name="distance_variants_vs_oracle", passed=not mismatches,
            detail="mismatches=" + (";".join(mismatches) or "none"),
        )

    def check_named_values(self) -> CheckResult:
        failures = []
        for w, r in product(range(7), repeat=2):
            if mu(w, r, 1) != 1 + min(w, r):
                failures.append(f"μ({w},{r},1)")
            for s in range(w + 2 - r):
                if mu(w, r, s, restricted=False) != comb(r + s, s):
                    failures.append(f"μ({w},{r},{s})=C({r + s},{s})")
        for w, r, s in product(range(1, 4), range(4), range(4)):
            if r + s <= w + 1 and self.oracle.exhaustive_mu_d(w, r, s, 2) != constant_weight_bound(r + s, 4, s):
                failures.append(f"μ({w},{r},{s},2)=A")
        named = {
            "μ(2,2,3,2)=2": mu_d(2, 2, 3, 2) == 2,
            "μ(2,2,4,2)=3": mu_d(2, 2, 4, 2) == 3,
            "σ(3,2,2,2)=4": sigma_d(3, 2, 2, 2) == 4,
            "N̄_4(3,2,2,2)=1": nbar_d(4, 3, 2, 2, 2) == 1,
            "μ(2,3,1)=3": mu(2, 3, 1) == 3,
            "σ(4,2,3)=2": sigma(4, 2, 3) == 2,
            "N̄_3(4,2,3)=3": nbar(3, 4, 2, 3) == 3,
        }
        failures.extend(name for name, ok in named.items() if not ok)
        return CheckResult(
            name="named_values", passed=not failures, detail="failures=" + (";".join(failures) or "none")
        )

    def check_mu_2_adjudication(self) -> CheckResult:
        """示例中的 μ(2,3,2)=4 与三段式公式的 5 对照，以穷举值为准"""
        exhaustive = self.oracle.exhaustive_mu(2, 3, 2)
        piecewise = mu_2_piecewise(2, 3)
        holds = [label for label, value in (("worked_example", WORKED_EXAMPLE_MU_2), ("piecewise", piecewise))
                 if value == exhaustive]
        # 与对偶关系一致：σ 恰在 μ 跨过 m 处加一
        consistent = exhaustive == mu(2, 3, 2) and all(
            (sigma(m, 2, 3) <= 2) == (m <= exhaustive) for m in range(1, simplex_size(2, 3) + 1)
        )
        return CheckResult(
            name="mu_2_adjudication", passed=consistent,
            detail=f"exhaustive={exhaustive} worked_example={WORKED_EXAMPLE_MU_2} piecewise={piecewise} "
                   f"holds={','.join(holds) or 'neither'}",
        )

    # ------------------------------------------------------------------
    # 等距性
    # ------------------------------------------------------------------

    def _isometry_roots(self) -> Iterator[GString]:
        max_length = min(self.isometry_max_length, 6) if self.quick else self.isometry_max_length
        for q in (2, 3):
            for length in range(2, max_length + 1):
                yield from irreducible_strings(length, q, 2)

    def check_isometry(self) -> CheckResult:
        failures = []
        pairs = 0
        for x in self._isometry_roots():
            # 每个根一个预言机，各 y 的 BFS 层在它参与的所有点对间共享
            oracle = BruteForceOracle(self.oracle.budget)
            for r in range(3):
                level = sorted(descendants(x, r), key=lambda y: y.symbols)
                images = {y: psi(y, x).entries for y in level}
                for y1, y2 in combinations(level, 2):
                    pairs += 1
                    distance = duplication_distance(y1, y2, x_root=x)
                    half_norm = sum(abs(a - b) for a, b in zip(images[y1], images[y2])) // 2
                    if not distance == half_norm == oracle.bfs_distance(y1, y2, known_root=x):
                        failures.append(f"{y1}/{y2}")
        return CheckResult(
            name="isometry", passed=not failures,
            detail=f"pairs={pairs} failures=" + (";".join(failures[:5]) or "none"),
        )

    # ------------------------------------------------------------------
    # 典型性
    # ------------------------------------------------------------------

    def check_typicality(self) -> CheckResult:
        details = []
        passed = True
        for q in (2, 4):
            estimate = estimate_typical_fraction(200, q, 2, self.mc_samples, self.seed)
            bound = typical_fraction_bound(200)
            ok = estimate.high >= bound
            passed &= ok
            details.append(f"q={q}:fraction={estimate.mean:.6f}>=bound={bound:.6f}:{ok}")
        mean_r = estimate_mean_r(300, 2, 2, self.mc_samples, self.seed)
        lead = expected_r(300, 2, 2)
        ok = abs(mean_r.mean - float(lead)) <= 2
        passed &= ok
        details.append(f"mean_r={mean_r.mean:.4f} lead={float(lead):.4f}:{ok}")
        return CheckResult(name="typicality", passed=passed, detail=" ".join(details))

    # ------------------------------------------------------------------
    # 端到端
    # ------------------------------------------------------------------

    def _e2e_grid(self) -> Iterator[Tuple[int, int, int, int, int, int]]:
        ns, ts, ms = ((8,), (1, 2), (2, 5)) if self.quick else ((20, 40, 60), (1, 2, 3), (2, 3, 4, 5))
        for q, k, n, t in product((2, 3), (2, 3), ns, ts):
            for d, m in product(range(t + 1), ms):
                yield q, k, n, t, d, m

    def _e2e_trial(self, rng: np.random.Generator, q: int, k: int, n: int, t: int, d: int, m: int) -> bool:
        x = GString.trusted(tuple(rng.integers(0, q, size=n).tolist()), q, k)
        params = stats(x)
        x_root = root(x)
        if d == 0:
            count = required_reads_for_profile(params.w, params.r, t, m)
            reads = sample_distinct_reads(x, t, count, rng)
            report = list_decode_typical(reads, m, t, membership_filter="all")
            return x in report.candidates and report.guaranteed and report.list_size < m
        code = build_code_greedy(params.w, params.r, d, x_root, max_words=E2E_CODE_WORDS)
        word = code.words[int(rng.integers(0, len(code)))]
        x = psi_inverse(RunVector(entries=word, root=x_root))
        count = required_reads_for_profile(params.w, params.r, t, m, d)
        reads = sample_distinct_reads(x, t, count, rng)
        report = list_decode_ecc(reads, code, m, t)
        codewords = set(code.words)
        return (
            x in report.candidates
            and report.list_size < m
            and all(psi(c, x_root).entries in codewords for c in report.candidates)
        )

    def check_end_to_end(self) -> CheckResult:
        rng = np.random.default_rng(self.seed)
        failures = []
        runs = 0
        for q, k, n, t, d, m in self._e2e_grid():
            for _ in range(self.trials):
                runs += 1
                if not self._e2e_trial(rng, q, k, n, t, d, m):
                    failures.append(f"q={q},k={k},n={n},t={t},d={d},m={m}")
        return CheckResult(
            name="end_to_end", passed=not failures,
            detail=f"trials={runs} failures={len(failures)}" + (f" first={failures[0]}" if failures else ""),
        )

    # ------------------------------------------------------------------
    # 大 n 下的指数恒等式
    # ------------------------------------------------------------------

    def _exponent_points(self, n: int) -> Iterator[Tuple[int, int, Optional[int]]]:
        for t in (1, 2, 3):
            for m in sorted({2, 3, n - 1, n, n + 1, n * n}):
                for d in [None] + list(range(1, t + 1)):
                    yield t, m, d

    def check_exponents(self) -> CheckResult:
        failures = []
        checked = excluded = 0
        for n in ((1000,) if self.quick else (1000, 10000)):
            win = window(n, 2, 2)
            weights = sorted({win.w_lo, int(win.w_center), win.w_hi})
            for t, m, d in self._exponent_points(n):
                s = log_ceil(n, m) + (d - 1 if d else 0)
                if s > t:
                    continue
                try:
                    result = exponent_e(n, t, m, 2, 2, d)
                except DuplicationError:
                    excluded += 1
                    continue
                if d is not None and result.e + log_ceil(n, m) + d != t + result.epsilon:
                    failures.append(f"tradeoff n={n},t={t},m={m},d={d}")
                for w, r in product(weights, range(win.r_lo, win.r_hi + 1, 1 if self.quick else 7)):
                    try:
                        ok, in_regime = self._sigma_identity(m, w, r, s, d)
                    except InstanceTooLargeError:
                        excluded += 1
                        continue
                    if not in_regime:
                        excluded += 1
                        continue
                    checked += 1
                    if not ok:
                        failures.append(f"σ n={n},w={w},r={r},m={m},d={d}")
        return CheckResult(
            name="exponent_identities", passed=not failures,
            detail=f"checked={checked} excluded={excluded} failures=" + (";".join(failures[:5]) or "none"),
        )

    def _sigma_identity(self, m: int, w: int, r: int, s: int, d: Optional[int]) -> Tuple[bool, bool]:
        """σ = s + δ，δ = [m > C(r+s, s)]（纠错变体为 [m > A(r+s, 2d, s)]）"""
        if r + s + 1 > w + 1:
            return True, False
        if d is None or d == 1:
            if mu(w, r, s + 1) < m:
                return True, False
            delta = 1 if m > comb(r + s, s) else 0
            return sigma(m, w, r) == s + delta, True
        if constant_weight_bound(r + s + 1, 2 * d, s + 1) < m:
            return True, False
        delta = 1 if m > constant_weight_bound(r + s, 2 * d, s) else 0
        return sigma_d(m, w, r, d, cap=s + 2) == s + delta, True

    # ------------------------------------------------------------------
    # 确定性
    # ------------------------------------------------------------------

    def check_determinism(self) -> CheckResult:
        x = GString.parse("10101012222", EXAMPLE_Q, EXAMPLE_K)
        first = DuplicationChannel(self.seed).sample_reads(x, 3, 4)
        second = DuplicationChannel(self.seed).sample_reads(x, 3, 4)
        same_reads = first == second
        same_report = (
            list_decode_typical(first, 4, 3).model_dump_json() == list_decode_typical(second, 4, 3).model_dump_json()
        )
        single = DuplicationChannel(self.seed).apply(x, 3), DuplicationChannel(self.seed).apply(x, 3)
        same_output = single[0] == single[1] and single[0] in descendants(x, 3)
        return CheckResult(
            name="determinism", passed=same_reads and same_report and same_output,
            detail=f"reads={same_reads} report={same_report} channel={same_output}",
        )

    # ------------------------------------------------------------------

    def checks(self) -> List[Callable[[], CheckResult]]:
        return [
            self.check_worked_example,
            self.check_ecc_example,
            self.check_closed_forms,
            self.check_distance_variants,
            self.check_named_values,
            self.check_mu_2_adjudication,
            self.check_isometry,
            self.check_typicality,
            self.check_end_to_end,
            self.check_exponents,
            self.check_determinism,
        ]

    def run(self, inject_fault: bool = False, only: Optional[Sequence[str]] = None) -> List[CheckResult]:
        """
        依次运行全部检查

        Args:
            inject_fault: 篡改 C(4,2)，检验套件本身能否发现错误
            only: 只运行名称以这些前缀开头的检查
        """
        results = []
        with binomial_fault() if inject_fault else nullcontext():
            for check in self.checks():
                name = check.__name__.replace("check_", "")
                if only and not any(name.startswith(prefix) for prefix in only):
                    continue
                try:
                    result = check()
                except Exception as e:
                    result = CheckResult(name=name, passed=False, detail=f"error={e}")
                logger.info(f"check {result.name}: {'PASS' if result.passed else 'FAIL'}")
                results.append(result)
        return results
