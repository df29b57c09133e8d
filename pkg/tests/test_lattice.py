from itertools import product

import pytest

from app.core.exceptions import InfeasibleRequestError, InstanceTooLargeError, InvalidStringError
from app.services.lattice import (
    binomial,
    binomial_fault,
    constant_weight_bound,
    constant_weight_bounds,
    infimum,
    intersection_size,
    iter_simplex,
    lower_bounds,
    mu,
    mu_2_piecewise,
    mu_d,
    nbar,
    nbar_d,
    greedy_packing,
    packing_at_least,
    packing_number,
    sigma,
    sigma_d,
    simplex_at_least,
    simplex_size,
    spread_vector,
    supremum,
)
from app.services.oracle import BruteForceOracle


class TestSimplex:
    """测试单纯形与下界集合"""

    def test_iter_simplex(self):
        assert list(iter_simplex(2, 1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
        assert len(list(iter_simplex(3, 3))) == simplex_size(3, 3) == 20

    def test_simplex_at_least(self):
        assert simplex_at_least(2, 3, 10)
        assert not simplex_at_least(2, 3, 11)
        assert simplex_at_least(0, 5, 1)
        assert simplex_at_least(400, 300, 10 ** 6)

    def test_lattice_operations(self):
        vectors = [(2, 1, 3), (3, 0, 3), (2, 0, 4), (2, 2, 2)]
        assert infimum(vectors) == (2, 0, 2)
        assert supremum(vectors) == (3, 2, 4)

    def test_lower_bounds(self):
        """测试 A_r(u)"""
        assert lower_bounds((2, 0, 2), 3) == [(1, 0, 2), (2, 0, 1)]
        assert lower_bounds((2, 0, 3), 3) == [(0, 0, 3), (1, 0, 2), (2, 0, 1)]
        assert lower_bounds((1, 1), 2) == [(1, 1)]

    def test_lower_bounds_below_level(self):
        with pytest.raises(InvalidStringError):
            lower_bounds((1, 0, 1), 3)

    def test_spread_vector(self):
        assert spread_vector(2, 5) == (2, 2, 1)
        assert spread_vector(3, 4) == (1, 1, 1, 1)

    def test_binomial_fault(self):
        """测试自检用的二项式篡改"""
        with binomial_fault():
            assert binomial(4, 2) == 7
        assert binomial(4, 2) == 6
        assert binomial(3, 5) == 0


class TestMuSigma:
    """测试 μ、σ 与 N̄"""

    def setup_method(self):
        """设置测试环境"""
        self.oracle = BruteForceOracle()

    def test_mu_values(self):
        assert mu(2, 3, 1) == 3
        assert mu(3, 1, 2) == 3
        assert mu(2, 3, 2) == 5
        assert mu(2, 3, 2, restricted=False) == 5
        assert mu_2_piecewise(2, 3) == 5

    def test_mu_one_step(self):
        """μ(w,r,1) = 1 + min(w, r)"""
        for w, r in product(range(5), repeat=2):
            assert mu(w, r, 1) == 1 + min(w, r)

    def test_mu_against_oracle(self):
        """测试闭式 μ 与穷举结果一致"""
        for w, r, s in product(range(4), repeat=3):
            assert mu(w, r, s) == self.oracle.exhaustive_mu(w, r, s)

    def test_sigma(self):
        assert sigma(1, 2, 3) == 0
        assert sigma(4, 2, 3) == 2
        assert sigma(10, 2, 3) == 6

    def test_sigma_against_literal_oracle(self):
        """测试对偶求得的 σ 与逐个枚举子集一致"""
        for w, r in product(range(1, 3), range(1, 4)):
            for m in range(1, min(5, simplex_size(w, r)) + 1):
                assert sigma(m, w, r) == self.oracle.exhaustive_sigma_literal(m, w, r)

    def test_sigma_infeasible(self):
        with pytest.raises(InfeasibleRequestError):
            sigma(11, 2, 3)
        with pytest.raises(InfeasibleRequestError):
            sigma(0, 2, 3)

    def test_sigma_cap(self):
        assert sigma(10, 2, 3, cap=4) == 4

    def test_nbar(self):
        """测试示例参数下的 N̄"""
        assert nbar(3, 4, 2, 3) == 3
        assert nbar(1, 4, 2, 3) == 0
        assert nbar(3, 4, 2, 3) == self.oracle.exhaustive_nbar(3, 4, 2, 3)

    def test_nbar_monotonicity(self):
        """N̄ 关于 m 不增、关于 t 不减"""
        for w, r in product(range(1, 4), range(1, 4)):
            for t in range(4):
                values = [nbar(t, m, w, r) for m in range(2, simplex_size(w, r) + 1)]
                assert values == sorted(values, reverse=True)
            for m in range(2, simplex_size(w, r) + 1):
                values = [nbar(t, m, w, r) for t in range(5)]
                assert values == sorted(values)

    def test_intersection_size(self):
        """测试 |S̄_t| 公式"""
        points = [(1, 0, 2), (2, 0, 1)]
        assert intersection_size(0, points) == 0
        assert intersection_size(1, points) == 1
        assert intersection_size(2, points) == 3
        assert intersection_size(2, points) == self.oracle.shell_size(2, points)

    def test_intersection_size_mixed_norms(self):
        with pytest.raises(InvalidStringError):
            intersection_size(1, [(1, 0), (1, 1)])


class TestConstantWeight:
    """测试定重码规模 A(ν, 2δ, ω)"""

    def test_closed_forms(self):
        assert constant_weight_bound(5, 2, 2) == 10
        assert constant_weight_bound(4, 4, 2) == 2
        assert constant_weight_bound(7, 4, 3) == 7
        assert constant_weight_bound(6, 4, 3) == 4
        assert constant_weight_bound(5, 6, 2) == 1

    def test_search(self):
        """测试分支定界与穷举一致"""
        assert constant_weight_bound(8, 6, 4) == 2
        assert BruteForceOracle().exhaustive_constant_weight(8, 6, 4) == 2

    def test_too_large(self):
        with pytest.raises(InstanceTooLargeError):
            constant_weight_bound(30, 6, 5)

    def test_bounds(self):
        """测试无法精确求值时的区间"""
        lower, upper = constant_weight_bounds(30, 6, 5)
        assert 1 <= lower <= upper
        assert constant_weight_bounds(7, 4, 3) == (7, 7)


class TestDistanceVariants:
    """测试距离 d 版本"""

    def setup_method(self):
        """设置测试环境"""
        self.oracle = BruteForceOracle()

    def test_named_values(self):
        assert mu_d(2, 2, 3, 2) == 2
        assert mu_d(2, 2, 4, 2) == 3
        assert sigma_d(3, 2, 2, 2) == 4
        assert nbar_d(4, 3, 2, 2, 2) == 1

    def test_mu_d_against_oracle(self):
        for w, r, s in product(range(1, 3), range(3), range(3)):
            assert mu_d(w, r, s, 2) == self.oracle.exhaustive_mu_d(w, r, s, 2)

    def test_sigma_d_against_oracle(self):
        assert sigma_d(3, 2, 2, 2) == self.oracle.exhaustive_sigma_d(3, 2, 2, 2)
        assert sigma_d(2, 2, 2, 2) == self.oracle.exhaustive_sigma_d(2, 2, 2, 2)

    def test_d_equal_one_reduces(self):
        assert mu_d(2, 3, 2, 1) == mu(2, 3, 2)
        assert sigma_d(4, 2, 3, 1) == sigma(4, 2, 3)

    def test_packing_number(self):
        assert packing_number(2, 2, 2) == 3
        assert packing_number(1, 1, 2) == 1

    def test_infeasible_packing(self):
        """Δ^1_1 中不存在两个距离 ≥ 2 的点"""
        with pytest.raises(InfeasibleRequestError):
            sigma_d(2, 1, 1, 2)
        with pytest.raises(InfeasibleRequestError):
            nbar_d(2, 2, 1, 1, 2)

    def test_large_simplex_without_search(self):
        """|Δ^8_3| 很大时由坐标轴上的点直接判定，不做精确搜索"""
        assert packing_at_least(8, 3, 2, 5)
        assert nbar_d(3, 5, 8, 3, 2) == 0
        assert nbar_d(3, 5, 8, 3, 2, strict=False) == 0
        assert sigma_d(5, 8, 3, 2) > 3

    def test_packing_at_least_matches_exact(self):
        for w, r, d in product(range(1, 4), range(4), range(2, 4)):
            exact = packing_number(w, r, d)
            for m in range(1, exact + 3):
                assert packing_at_least(w, r, d, m) == (m <= exact)

    def test_greedy_packing(self):
        assert greedy_packing(2, 2, 2) == [(0, 0, 2), (0, 2, 0), (2, 0, 0)]
        assert greedy_packing(2, 2, 2, limit=2) == [(0, 0, 2), (0, 2, 0)]
        for w, r, d in product(range(1, 4), range(4), range(2, 4)):
            assert len(greedy_packing(w, r, d)) <= packing_number(w, r, d)

    def test_strict_flag(self):
        """不可行时非严格模式返回 0"""
        assert nbar_d(2, 2, 1, 1, 2, strict=False) == 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
