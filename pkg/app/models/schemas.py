from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import List, Optional, Tuple
from fractions import Fraction
from math import comb

# 精确计数一律使用 Python 任意精度整数
CountResult = int


class GString(BaseModel):
    """Z_q 上的字符串，附带重复窗口长度 k"""
    model_config = ConfigDict(frozen=True)

    symbols: Tuple[int, ...] = Field(..., description="符号序列，取值 0..q-1")
    q: int = Field(..., ge=2, description="字母表大小")
    k: int = Field(..., ge=2, description="重复窗口长度")

    @model_validator(mode="after")
    def _check_symbols(self):
        for a in self.symbols:
            if not 0 <= a < self.q:
                raise ValueError(f"symbol {a} outside Z_{self.q}")
        return self

    @classmethod
    def parse(cls, text: str, q: int, k: int) -> "GString":
        """
        解析字符串表示

        Args:
            text: q ≤ 10 时每个符号一位数字；否则为逗号分隔的整数
            q: 字母表大小
            k: 重复窗口长度

        Returns:
            GString
        """
        text = text.strip()
        if "," in text or q > 10:
            symbols = tuple(int(part) for part in text.split(",") if part.strip())
        else:
            if not text.isdigit():
                raise ValueError(f"not a digit string: {text!r}")
            symbols = tuple(int(ch) for ch in text)
        return cls(symbols=symbols, q=q, k=k)

    @classmethod
    def trusted(cls, symbols: Tuple[int, ...], q: int, k: int) -> "GString":
        # 内部路径：符号已经在 Z_q 中
        return cls.model_construct(symbols=tuple(symbols), q=q, k=k)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        if self.q <= 10:
            return "".join(str(a) for a in self.symbols)
        return ",".join(str(a) for a in self.symbols)


class DerivativeProfile(BaseModel):
    """离散导数 φ(x) = (φ̂(x), φ̄(x))"""
    model_config = ConfigDict(frozen=True)

    head: Tuple[int, ...] = Field(..., description="前 k 个符号 φ̂(x)")
    tail: Tuple[int, ...] = Field(..., description="差分 φ̄(x)，长度 |x|-k")
    q: int = Field(..., ge=2)
    k: int = Field(..., ge=2)

    @model_validator(mode="after")
    def _check_head(self):
        if len(self.head) != self.k:
            raise ValueError(f"head must have exactly k={self.k} symbols")
        for a in self.head + self.tail:
            if not 0 <= a < self.q:
                raise ValueError(f"symbol {a} outside Z_{self.q}")
        return self


class SimplexParams(BaseModel):
    """单纯形 Δ^w_r 的参数"""
    model_config = ConfigDict(frozen=True)

    w: int = Field(..., ge=0, description="维数减一")
    r: int = Field(..., ge=0, description="1-范数层级")

    @property
    def size(self) -> int:
        return comb(self.r + self.w, self.r)


class RunVector(BaseModel):
    """ψ 的像：N^{w+1} 中的向量，锚定在一个不可约根上"""
    model_config = ConfigDict(frozen=True)

    entries: Tuple[int, ...] = Field(..., description="零游程长度除以 k 的下取整")
    root: GString = Field(..., description="锚定的重复根")

    @model_validator(mode="after")
    def _check_entries(self):
        if any(e < 0 for e in self.entries):
            raise ValueError("run-vector entries must be nonnegative")
        return self

    @property
    def w(self) -> int:
        return len(self.entries) - 1

    @property
    def norm(self) -> int:
        return sum(self.entries)


class Cone(BaseModel):
    """后代锥 D^*(root) 中的一层"""
    model_config = ConfigDict(frozen=True)

    root: GString
    level: int = Field(..., ge=0)


class TypicalityWindow(BaseModel):
    """typ^n 的两个严格窗口，端点为满足严格不等式的整数"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    q: int
    k: int
    w_center: Fraction
    r_center: Fraction
    w_lo: int
    w_hi: int
    r_lo: int
    r_hi: int

    @property
    def empty(self) -> bool:
        return self.w_lo > self.w_hi or self.r_lo > self.r_hi


class SimplexCode(BaseModel):
    """Δ^w_r 中最小 d₁ 距离为 d 的码本"""
    model_config = ConfigDict(frozen=True)

    root: GString = Field(..., description="不可约根")
    w: int = Field(..., ge=0)
    r: int = Field(..., ge=0)
    d: int = Field(..., ge=1, description="设计最小距离")
    words: Tuple[Tuple[int, ...], ...] = Field(default_factory=tuple)
    typical_subset: bool = Field(False, description="码本是否声明为 typ^n 的子集")

    @model_validator(mode="after")
    def _check_words(self):
        if len(set(self.words)) != len(self.words):
            raise ValueError("codewords must be distinct")
        for word in self.words:
            if len(word) != self.w + 1 or sum(word) != self.r or min(word) < 0:
                raise ValueError(f"codeword {word} not in the simplex Δ^{self.w}_{self.r}")
        for i, a in enumerate(self.words):
            for b in self.words[i + 1:]:
                if sum(abs(x - y) for x, y in zip(a, b)) < 2 * self.d:
                    raise ValueError(f"codewords {a} and {b} closer than d={self.d}")
        root_weight = sum(
            1 for i in range(self.root.k, len(self.root))
            if self.root.symbols[i] != self.root.symbols[i - self.root.k]
        )
        if root_weight != self.w:
            raise ValueError(f"root derivative weight {root_weight} != w={self.w}")
        return self

    def __len__(self) -> int:
        return len(self.words)


class ReadSet(BaseModel):
    """去重后的等长读数集合"""
    model_config = ConfigDict(frozen=True)

    reads: Tuple[GString, ...] = Field(..., min_length=1)
    t: int = Field(..., ge=0, description="每个读数经历的重复次数")

    @model_validator(mode="after")
    def _check_reads(self):
        lengths = {len(y) for y in self.reads}
        if len(lengths) != 1:
            raise ValueError("reads must all have the same length")
        if len(set(self.reads)) != len(self.reads):
            raise ValueError("reads must be pairwise distinct")
        return self

    @classmethod
    def of(cls, reads, t: int) -> "ReadSet":
        """去重并按字典序排列"""
        unique = sorted(set(reads), key=lambda y: y.symbols)
        return cls(reads=tuple(unique), t=t)

    def __len__(self) -> int:
        return len(self.reads)


class DecodeReport(BaseModel):
    """列表译码结果"""
    candidates: List[GString] = Field(default_factory=list, description="按字典序排列的译码列表")
    list_size: int = Field(0, ge=0)
    guaranteed: bool = Field(False, description="读数是否达到 N+1")
    discarded: int = Field(0, ge=0, description="被纠错码检验丢弃的候选数")
    required_reads: int = Field(..., ge=1)
    m: int = Field(..., ge=2)
    t: int = Field(..., ge=0)
    d: Optional[int] = Field(None, description="纠错模式的最小距离")
    root: GString
    infimum: Tuple[int, ...] = Field(..., description="读数 ψ 像的逐坐标最小值")

    @model_validator(mode="after")
    def _check_guarantee(self):
        if self.list_size != len(self.candidates):
            raise ValueError("list_size must equal the number of candidates")
        if self.guaranteed and self.list_size >= self.m:
            raise ValueError("guaranteed decode produced a list of size ≥ m")
        return self


class OracleBudget(BaseModel):
    """穷举预言机预算"""
    max_states: int = Field(1_000_000, gt=0)
    max_depth: int = Field(6, gt=0)


class ExponentResult(BaseModel):
    """渐近指数 e_t 及其组成部分"""
    n: int
    t: int
    m: int
    d: Optional[int] = None
    s: int = Field(..., description="⌈log_n m⌉，纠错变体中再加 d-1")
    delta: int = Field(..., ge=0, le=1)
    epsilon: Optional[int] = Field(None, ge=0, le=1)
    e: int = Field(..., ge=0)


class CheckResult(BaseModel):
    """验证套件中单项检查的结果"""
    name: str
    passed: bool
    detail: str = ""


class RunConfig(BaseModel):
    """命令行参数"""
    q: int = Field(3, ge=2)
    k: int = Field(2, ge=2)
    n: Optional[int] = Field(None, ge=2)
    t: int = Field(0, ge=0)
    m: int = Field(2, ge=2)
    d: Optional[int] = Field(None, ge=1)
    seed: int = 0
    input_path: Optional[str] = None
    output_path: Optional[str] = None

    @model_validator(mode="after")
    def _check_d(self):
        if self.d is not None and self.d > self.t:
            raise ValueError(f"d={self.d} must not exceed t={self.t}")
        return self


class MonteCarloEstimate(BaseModel):
    """蒙特卡洛估计值与 99% 正态置信区间"""
    mean: float
    half_width: float = Field(..., ge=0)
    samples: int = Field(..., gt=0)
    seed: int

    @property
    def low(self) -> float:
        return self.mean - self.half_width

    @property
    def high(self) -> float:
        return self.mean + self.half_width
