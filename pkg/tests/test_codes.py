from fractions import Fraction
from itertools import product

import pytest
from pydantic import ValidationError

from app.core.exceptions import InvalidStringError
from app.models.schemas import GString, RunVector, SimplexCode
from app.services.codes import build_code_greedy, is_ancestor_within, is_maximal, min_distance, unique_decode
from app.services.lattice import iter_simplex, packing_number
from app.services.strings import descendants, irreducible_strings
from app.services.transform import psi, psi_inverse, stats


def root_of_weight(w: int) -> GString:
    return next(x for n in range(2, 10) for x in irreducible_strings(n, 3, 2) if stats(x).w == w)


class TestSimplexCode:
    """测试 Δ^w_r 中的码本"""

    def setup_method(self):
        """设置测试环境"""
        self.root = GString.parse("10122", 3, 2)
        self.code = build_code_greedy(2, 2, 2, self.root)

    def test_greedy_code(self):
        """测试字典序贪心码"""
        assert self.code.words == ((0, 0, 2), (0, 2, 0), (2, 0, 0))
        assert min_distance(self.code) == Fraction(2)
        assert is_maximal(self.code)

    def test_greedy_code_d_one_takes_everything(self):
        code = build_code_greedy(2, 2, 1, self.root)
        assert len(code) == 6

    def test_greedy_code_checks_root_weight(self):
        with pytest.raises(InvalidStringError):
            build_code_greedy(3, 2, 2, self.root)

    def test_not_maximal(self):
        code = SimplexCode(root=self.root, w=2, r=2, d=2, words=((2, 0, 0),))
        assert not is_maximal(code)

    def test_rejects_close_codewords(self):
        """测试码本校验最小距离"""
        with pytest.raises(ValidationError):
            SimplexCode(root=self.root, w=2, r=2, d=2, words=((0, 1, 1), (0, 0, 2)))

    def test_rejects_words_off_the_simplex(self):
        with pytest.raises(ValidationError):
            SimplexCode(root=self.root, w=2, r=2, d=1, words=((1, 1, 1),))

    def test_min_distance_needs_two_words(self):
        code = SimplexCode(root=self.root, w=2, r=2, d=2, words=((2, 0, 0),))
        with pytest.raises(InvalidStringError):
            min_distance(code)


class TestUniqueDecoder:
    """测试唯一译码器"""

    def setup_method(self):
        """设置测试环境"""
        self.root = GString.parse("10122", 3, 2)
        self.code = build_code_greedy(2, 2, 2, self.root)

    def test_is_ancestor_within(self):
        assert is_ancestor_within((0, 0, 2), (1, 0, 2), 1)
        assert not is_ancestor_within((0, 0, 2), (1, 0, 2), 0)
        assert not is_ancestor_within((0, 2, 0), (1, 0, 2), 1)

    def test_decodes_to_ancestor(self):
        decoded = unique_decode(RunVector(entries=(1, 0, 2), root=self.root), self.code)
        assert decoded.entries == (0, 0, 2)
        decoded = unique_decode(RunVector(entries=(0, 2, 0), root=self.root), self.code)
        assert decoded.entries == (0, 2, 0)

    def test_no_codeword_below(self):
        """没有码字在下方时返回 None"""
        assert unique_decode(RunVector(entries=(1, 1, 1), root=self.root), self.code) is None

    def test_norm_out_of_range(self):
        with pytest.raises(InvalidStringError):
            unique_decode(RunVector(entries=(2, 1, 1), root=self.root), self.code)



class TestGreedyCodeProperties:
    """测试 w, r, d ≤ 3 的全部贪心码"""

    def setup_method(self):
        """设置测试环境"""
        self.codes = [
            build_code_greedy(w, r, d, root_of_weight(w))
            for w, r, d in product(range(1, 4), range(4), range(1, 4))
        ]

    def test_unique_ancestor(self):
        """d-1 步以内的向量至多有一个码字祖先"""
        for code in self.codes:
            for extra in range(code.d):
                for v in iter_simplex(code.w, code.r + extra):
                    assert sum(is_ancestor_within(c, v, code.d - 1) for c in code.words) <= 1

    def test_decoder_recovers_after_duplications(self):
        """码字经过至多 d-1 次重复后唯一译码回原码字"""
        for code in self.codes:
            for word in code.words:
                x = psi_inverse(RunVector(entries=word, root=code.root))
                for extra in range(code.d):
                    for y in descendants(x, extra):
                        decoded = unique_decode(psi(y, code.root), code)
                        assert decoded is not None and decoded.entries == word

    def test_maximal(self):
        assert all(is_maximal(code) for code in self.codes)

    def test_not_larger_than_packing(self):
        for code in self.codes:
            assert len(code) <= packing_number(code.w, code.r, code.d)

    def test_capped_code_is_prefix(self):
        for code in self.codes:
            capped = build_code_greedy(code.w, code.r, code.d, code.root, max_words=2)
            assert capped.words == code.words[:2]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
