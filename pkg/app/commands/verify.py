import logging
from typing import Optional, Tuple

import click
import pandas as pd

from app.commands.formats import emit, guarded
from app.core.exceptions import VerificationFailed
from app.services.verification import VerificationSuite

logger = logging.getLogger(__name__)


@click.command("verify")
@click.option("--trials", type=int, help="端到端检查每个网格点的试验次数，默认 E2E_TRIALS")
@click.option("--samples", type=int, help="蒙特卡洛样本数，默认 MC_SAMPLES")
@click.option("--seed", type=int)
@click.option("--quick", is_flag=True, help="缩小穷举网格")
@click.option("--only", multiple=True, help="只运行名称以此开头的检查，可重复")
@click.option("--inject-fault", is_flag=True, help="篡改一个二项式系数以自检")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="检查结果 CSV")
@click.option("--json", "as_json", is_flag=True)
@guarded
def verify(trials: Optional[int], samples: Optional[int], seed: Optional[int], quick: bool,
           only: Tuple[str, ...], inject_fault: bool, output: Optional[str], as_json: bool):
    """
    运行验证套件；全部通过时退出码为 0
    """
    suite = VerificationSuite(trials=trials, mc_samples=samples, seed=seed, quick=quick)
    results = suite.run(inject_fault=inject_fault, only=only)
    passed = all(result.passed for result in results)

    if output:
        pd.DataFrame([result.model_dump() for result in results]).to_csv(output, index=False)
    payload = {
        f"check.{result.name}": f"{'PASS' if result.passed else 'FAIL'} {result.detail}" for result in results
    }
    payload["verify"] = "PASS" if passed else "FAIL"
    emit(payload, as_json)

    if not passed:
        failed = ", ".join(result.name for result in results if not result.passed)
        raise VerificationFailed(f"failed checks: {failed}")
