import logging
import time
from typing import Optional

import click

from app.commands.formats import emit, guarded, load_codebook, load_reads
from app.models.schemas import RunConfig
from app.services.reconstruct import collect_reads, list_decode_ecc, list_decode_typical

logger = logging.getLogger(__name__)


@click.command("decode")
@click.option("--input", "-i", "input_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="读数文件")
@click.option("--t", type=int, required=True, help="每个读数经历的重复次数")
@click.option("--m", type=int, default=2, show_default=True, help="设计的列表上限")
@click.option("--d", type=int, help="最小距离，须与码本一致")
@click.option("--ecc", "codebook_path", type=click.Path(exists=True, dir_okay=False), help="码本文件，启用纠错译码")
@click.option("--typical-code", is_flag=True, help="码本声明为典型集的子集")
@click.option("--filter", "membership", type=click.Choice(["typical", "all"]), default="typical", show_default=True)
@click.option("--q", type=int, help="读数文件没有头部时的字母表大小")
@click.option("--k", type=int, help="读数文件没有头部时的重复长度")
@click.option("--json", "as_json", is_flag=True, help="输出单个 JSON 文档")
@click.option("--no-timing", is_flag=True, help="不输出 elapsed_ms")
@guarded
def decode(input_path: str, t: int, m: int, d: Optional[int], codebook_path: Optional[str], typical_code: bool,
           membership: str, q: Optional[int], k: Optional[int], as_json: bool, no_timing: bool):
    """
    列表译码一个读数文件
    """
    reads, q, k = load_reads(input_path, q, k)
    config = RunConfig(q=q, k=k, t=t, m=m, d=d, input_path=input_path)
    read_set = collect_reads(reads, config.t)

    start = time.perf_counter()
    if codebook_path:
        code = load_codebook(codebook_path, typical_subset=typical_code)
        report = list_decode_ecc(read_set, code, config.m, config.t, config.d)
    else:
        report = list_decode_typical(read_set, config.m, config.t, membership)
    elapsed_ms = (time.perf_counter() - start) * 1000
    logger.info(f"decoded {len(read_set)} reads into a list of {report.list_size}")

    payload = {
        "mode": "ecc" if codebook_path else "typical",
        "list": [str(x) for x in report.candidates],
        "list_size": report.list_size,
        "guaranteed": report.guaranteed,
        "required_reads": report.required_reads,
        "reads": len(read_set),
        "discarded": report.discarded,
        "root": str(report.root),
        "infimum": list(report.infimum),
    }
    if not no_timing:
        payload["elapsed_ms"] = round(elapsed_ms, 3)
    emit(payload, as_json)
