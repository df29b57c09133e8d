import io
import json

import pandas as pd
import pytest
from click.testing import CliRunner

from app.commands.tables import COLUMNS
from app.core import exceptions
from app.core.exceptions import USAGE_EXIT_CODE, InvalidStringError
from app.services.reconstruct import required_reads
from app.services.verification import EXAMPLE_READS
from main import cli


def write_reads(path, reads, header="# q=3 k=2"):
    lines = ([header] if header else []) + list(reads)
    path.write_text("\n".join(lines) + "\n")
    return str(path)


class TestQueryCommands:
    """测试单值查询命令"""

    def setup_method(self):
        """设置测试环境"""
        self.runner = CliRunner()

    def test_mu(self):
        result = self.runner.invoke(cli, ["mu", "--w", "2", "--r", "3", "--s", "2"])
        assert result.exit_code == 0
        assert "mu=5" in result.stdout.splitlines()

    def test_sigma_with_distance(self):
        result = self.runner.invoke(cli, ["sigma", "--m", "3", "--w", "2", "--r", "2", "--d", "2"])
        assert result.exit_code == 0
        assert "sigma=4" in result.stdout.splitlines()

    def test_sigma_infeasible(self):
        result = self.runner.invoke(cli, ["sigma", "--m", "11", "--w", "2", "--r", "3"])
        assert result.exit_code == 2

    def test_sigma_json(self):
        result = self.runner.invoke(cli, ["sigma", "--m", "4", "--w", "2", "--r", "3", "--json"])
        assert json.loads(result.stdout)["sigma"] == 2

    def test_typical_string(self):
        result = self.runner.invoke(cli, ["typical", "--x", "10101012222", "--q", "3", "--k", "2"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "typical=true" in lines
        assert "w=2" in lines
        assert "r=3" in lines

    def test_typical_window(self):
        result = self.runner.invoke(cli, ["typical", "--n", "10000"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "w_lo=4000" in lines
        assert "r_hi=3666" in lines

    def test_typical_needs_input(self):
        result = self.runner.invoke(cli, ["typical"])
        assert result.exit_code == USAGE_EXIT_CODE

    def test_uncertainty_rejects_large_d(self):
        """d 不能超过 t"""
        result = self.runner.invoke(cli, ["uncertainty", "--n", "100", "--t", "1", "--m", "2", "--d", "2"])
        assert result.exit_code == USAGE_EXIT_CODE

    def test_uncertainty_window_reads(self):
        """窗口上的最大值，而不是示例剖面的 4"""
        result = self.runner.invoke(cli, ["uncertainty", "--n", "11", "--t", "3", "--m", "4", "--q", "3", "--k", "2"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "required_reads=11" in lines
        assert "uncertainty=10" in lines

    def test_codebook(self):
        result = self.runner.invoke(cli, ["codebook", "--root", "10122", "--r", "2", "--d", "2"])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "# root=10122 q=3 k=2 w=2 r=2 d=2", "0,0,2", "0,2,0", "2,0,0",
        ]

    def test_codebook_reducible_root(self):
        result = self.runner.invoke(cli, ["codebook", "--root", "1010", "--r", "1", "--d", "1"])
        assert result.exit_code == InvalidStringError.exit_code

    def test_version(self):
        result = self.runner.invoke(cli, ["--version"])
        assert result.exit_code == 0


class TestDecodeCommand:
    """测试 decode 命令"""

    def setup_method(self):
        """设置测试环境"""
        self.runner = CliRunner()

    def test_worked_example(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS)
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3", "--m", "4", "--no-timing"])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "mode=typical",
            "list=10101012222,10101222222",
            "list_size=2",
            "guaranteed=true",
            "required_reads=4",
            "reads=4",
            "discarded=0",
            "root=10122",
            "infimum=2,0,2",
        ]

    def test_json_output(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS)
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3", "--m", "4", "--json"])
        payload = json.loads(result.stdout)
        assert payload["list"] == ["10101012222", "10101222222"]
        assert payload["guaranteed"] is True
        assert "elapsed_ms" in payload

    def test_header_from_options(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS, header=None)
        result = self.runner.invoke(
            cli, ["decode", "-i", path, "--t", "3", "--m", "4", "--q", "3", "--k", "2", "--no-timing"]
        )
        assert result.exit_code == 0
        assert "list_size=2" in result.stdout.splitlines()

    def test_missing_header(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS, header=None)
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3"])
        assert result.exit_code == USAGE_EXIT_CODE

    def test_ecc(self, tmp_path):
        """码本文件 + 两个读数"""
        code = tmp_path / "code.txt"
        code.write_text("# root=10122 q=3 k=2 w=2 r=2 d=2\n2,0,0\n0,2,0\n0,0,2\n")
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS[:2])
        result = self.runner.invoke(
            cli, ["decode", "-i", path, "--t", "4", "--m", "3", "--ecc", str(code), "--no-timing"]
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "mode=ecc" in lines
        assert "list=101010122,101222222" in lines
        assert "discarded=0" in lines
        assert "required_reads=2" in lines

    def test_codebook_mismatch(self, tmp_path):
        code = tmp_path / "code.txt"
        code.write_text("# root=10122 q=3 k=2 w=2 r=2 d=2\n2,0,0\n0,2,0\n0,0,2\n")
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS[:2])
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3", "--m", "3", "--ecc", str(code)])
        assert result.exit_code == 5

    def test_inconsistent_reads(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", [EXAMPLE_READS[0], "22222222222222222"])
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3"])
        assert result.exit_code == 3

    def test_mixed_lengths(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", [EXAMPLE_READS[0], "10101012222"])
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3"])
        assert result.exit_code == 3

    def test_no_common_ancestor(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", EXAMPLE_READS)
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "7"])
        assert result.exit_code == 4

    def test_invalid_symbol(self, tmp_path):
        path = write_reads(tmp_path / "reads.txt", ["10101012122222229"])
        result = self.runner.invoke(cli, ["decode", "-i", path, "--t", "3"])
        assert result.exit_code == InvalidStringError.exit_code


class TestSimulateCommand:
    """测试 simulate 命令"""

    def setup_method(self):
        """设置测试环境"""
        self.runner = CliRunner()
        self.args = ["simulate", "-x", "10101012222", "--q", "3", "--k", "2", "--t", "3", "--m", "4", "--seed", "7"]

    def test_default_count(self):
        """缺省读数个数为 N̄ + 1"""
        result = self.runner.invoke(cli, self.args)
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "# q=3 k=2"
        assert len(lines) == 5
        assert all(len(line) == 17 for line in lines[1:])

    def test_deterministic(self):
        first = self.runner.invoke(cli, self.args)
        second = self.runner.invoke(cli, self.args)
        assert first.stdout == second.stdout

    def test_round_trip(self, tmp_path):
        """模拟后译码，原串在列表中且列表有保证"""
        reads = tmp_path / "reads.txt"
        result = self.runner.invoke(cli, self.args + ["-o", str(reads)])
        assert result.exit_code == 0
        result = self.runner.invoke(cli, ["decode", "-i", str(reads), "--t", "3", "--m", "4", "--no-timing"])
        lines = result.stdout.splitlines()
        assert "guaranteed=true" in lines
        listed = next(line for line in lines if line.startswith("list=")).split("=", 1)[1].split(",")
        assert "10101012222" in listed
        assert len(listed) < 4

    def test_too_many_reads(self):
        result = self.runner.invoke(cli, self.args + ["--count", "11"])
        assert result.exit_code == 2

    def test_needs_message(self):
        result = self.runner.invoke(cli, ["simulate", "--t", "1"])
        assert result.exit_code == USAGE_EXIT_CODE


class TestReportCommands:
    """测试 tables 与 verify"""

    def setup_method(self):
        """设置测试环境"""
        self.runner = CliRunner()

    def test_tables(self):
        result = self.runner.invoke(cli, ["tables", "--n", "1000", "--t", "1", "--t", "2", "--m", "2"])
        assert result.exit_code == 0
        frame = pd.read_csv(io.StringIO(result.stdout))
        assert list(frame.columns) == COLUMNS
        assert frame["e"].tolist() == [0, 1]
        assert frame["status"].tolist() == ["ok", "ok"]
        assert frame["required_reads"].tolist() == [required_reads(1000, t, 2, 2, 2) for t in (1, 2)]
        assert (frame["required_reads"] == frame["N"] + 1).all()

    def test_tables_to_file(self, tmp_path):
        output = tmp_path / "table.csv"
        result = self.runner.invoke(cli, ["tables", "--n", "1000", "--t", "1", "--m", "2", "-o", str(output)])
        assert result.exit_code == 0
        assert len(pd.read_csv(output)) == 1

    def test_verify_selected_checks(self):
        result = self.runner.invoke(cli, ["verify", "--quick", "--only", "worked_example", "--only", "ecc_example"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[-1] == "verify=PASS"
        assert any(line.startswith("check.worked_example=PASS") for line in lines)
        assert any(line.startswith("check.ecc_example=PASS") for line in lines)

    def test_verify_detects_injected_fault(self):
        result = self.runner.invoke(cli, ["verify", "--quick", "--inject-fault", "--only", "closed_forms"])
        assert result.exit_code == 1
        assert result.stdout.splitlines()[-1] == "verify=FAIL"


class TestExitCodes:
    """测试退出码映射"""

    def test_distinct_per_error(self):
        classes = [
            getattr(exceptions, name) for name in dir(exceptions)
            if isinstance(getattr(exceptions, name), type)
            and issubclass(getattr(exceptions, name), exceptions.DuplicationError)
            and getattr(exceptions, name) is not exceptions.DuplicationError
        ]
        codes = [cls.exit_code for cls in classes]
        assert len(classes) == 11
        assert len(set(codes)) == len(codes)
        assert USAGE_EXIT_CODE not in codes
        assert 0 not in codes

    def test_usage_error_code(self):
        """缺少必填选项由 click 报告"""
        result = CliRunner().invoke(cli, ["mu", "--w", "2"])
        assert result.exit_code == USAGE_EXIT_CODE

    def test_unknown_command(self):
        result = CliRunner().invoke(cli, ["nonexistent"])
        assert result.exit_code == USAGE_EXIT_CODE


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
