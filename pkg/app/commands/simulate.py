import logging
from pathlib import Path
from typing import Optional

import click

from app.commands.formats import format_reads, guarded, write_or_echo
from app.core.config import settings
from app.core.exceptions import InvalidStringError
from app.models.schemas import GString, RunConfig
from app.services.reconstruct import DuplicationChannel, required_reads_for_profile
from app.services.transform import stats

logger = logging.getLogger(__name__)


@click.command("simulate")
@click.option("--message", "-x", help="原始串（q ≤ 10 时为数字串）")
@click.option("--message-file", type=click.Path(exists=True, dir_okay=False), help="从文件读取原始串")
@click.option("--q", type=int, default=3, show_default=True)
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--t", type=int, required=True, help="每个读数经历的重复次数")
@click.option("--count", type=int, help="读数个数；缺省时取保证 m 的最少读数")
@click.option("--m", type=int, default=2, show_default=True)
@click.option("--d", type=int, help="纠错模式的最小距离（只影响缺省读数个数）")
@click.option("--seed", type=int, default=None, help="随机种子，默认 DEFAULT_SEED")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="输出读数文件，缺省为标准输出")
@guarded
def simulate(message: Optional[str], message_file: Optional[str], q: int, k: int, t: int,
             count: Optional[int], m: int, d: Optional[int], seed: Optional[int], output: Optional[str]):
    """
    通过均匀串联重复信道生成互不相同的读数
    """
    seed = settings.DEFAULT_SEED if seed is None else seed
    config = RunConfig(q=q, k=k, t=t, m=m, d=d, seed=seed, output_path=output)
    if message_file:
        message = Path(message_file).read_text().strip()
    if not message:
        raise click.UsageError("provide --message or --message-file")
    try:
        x = GString.parse(message, config.q, config.k)
    except ValueError as e:
        raise InvalidStringError(f"invalid message {message!r}: {e}")
    if len(x) < config.k:
        raise InvalidStringError(f"message of length {len(x)} is shorter than k={config.k}")

    if count is None:
        params = stats(x)
        count = required_reads_for_profile(params.w, params.r, config.t, config.m, config.d)
    reads = DuplicationChannel(config.seed).sample_reads(x, config.t, count)
    logger.info(f"simulated {len(reads)} reads (t={config.t}, seed={config.seed})")
    write_or_echo(format_reads(list(reads.reads)), config.output_path)
