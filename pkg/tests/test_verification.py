import numpy as np
import pytest

from app.services.verification import VerificationSuite


class TestVerificationSuite:
    """测试验证套件（缩小网格）"""

    def setup_method(self):
        """设置测试环境"""
        self.suite = VerificationSuite(trials=1, mc_samples=2000, isometry_max_length=4, seed=7, quick=True)

    def test_worked_examples(self):
        assert self.suite.check_worked_example().passed
        assert self.suite.check_ecc_example().passed

    def test_named_values(self):
        result = self.suite.check_named_values()
        assert result.passed, result.detail

    def test_mu_2_adjudication(self):
        """穷举值与三段式公式一致，与示例正文的 4 不一致"""
        result = self.suite.check_mu_2_adjudication()
        assert result.passed
        assert "exhaustive=5" in result.detail
        assert "holds=piecewise" in result.detail

    def test_distance_variants(self):
        result = self.suite.check_distance_variants()
        assert result.passed, result.detail

    def test_isometry(self):
        result = self.suite.check_isometry()
        assert result.passed, result.detail

    def test_typicality(self):
        assert self.suite.check_typicality().passed

    def test_end_to_end(self):
        result = self.suite.check_end_to_end()
        assert result.passed, result.detail

    def test_determinism(self):
        assert self.suite.check_determinism().passed

    def test_full_grid(self):
        """完整网格：q ≤ 3、k ∈ {2,3}、n ≤ 60、t ≤ 3、d ∈ {0..t}、m ∈ {2..5}"""
        grid = list(VerificationSuite(trials=1, quick=False)._e2e_grid())
        assert {(q, k) for q, k, _, _, _, _ in grid} == {(2, 2), (2, 3), (3, 2), (3, 3)}
        assert {n for _, _, n, _, _, _ in grid} == {20, 40, 60}
        assert {(t, d) for _, _, _, t, d, _ in grid} == {(t, d) for t in (1, 2, 3) for d in range(t + 1)}
        assert {m for _, _, _, _, _, m in grid} == {2, 3, 4, 5}
        assert len(grid) == 4 * 3 * 9 * 4

    def test_long_message_trials(self):
        """n=60 的纠错与典型集试验"""
        rng = np.random.default_rng(3)
        for q, k, d, m in [(3, 3, 3, 5), (3, 2, 2, 5), (2, 2, 1, 3), (2, 3, 0, 4)]:
            assert self.suite._e2e_trial(rng, q, k, 60, 3, d, m)

    def test_only_filter(self):
        results = self.suite.run(only=["worked"])
        assert [r.name for r in results] == ["worked_example"]

    def test_injected_fault_is_detected(self):
        """篡改 C(4,2) 后闭式检查必须失败"""
        results = self.suite.run(inject_fault=True, only=["closed_forms"])
        assert len(results) == 1
        assert not results[0].passed
        # 篡改只在本次运行内生效
        assert self.suite.run(only=["closed_forms"])[0].passed


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
