import logging
from typing import Dict, List, Optional, Tuple

import click
import pandas as pd

from app.commands.formats import guarded, write_or_echo
from app.core.exceptions import DuplicationError
from app.services.reconstruct import required_reads
from app.services.typicality import exponent_e, log_ceil

logger = logging.getLogger(__name__)

COLUMNS = ["n", "t", "m", "d", "s", "delta", "epsilon", "e", "N", "required_reads", "tradeoff", "status"]


def table_row(n: int, t: int, m: int, d: Optional[int], q: int, k: int) -> Dict:
    """
    一行：指数分解与典型集不确定度

    越出渐近区域的行保留下来，status 记录原因。
    """
    row = {column: None for column in COLUMNS}
    row.update(n=n, t=t, m=m, d=d if d is not None else 0, status="ok")
    try:
        result = exponent_e(n, t, m, q, k, d)
        row.update(s=result.s, delta=result.delta, epsilon=result.epsilon, e=result.e)
        if d is not None:
            row["tradeoff"] = result.e + log_ceil(n, m) + d == t + result.epsilon
    except DuplicationError as e:
        row["status"] = f"{type(e).__name__}: {e.message}"
    try:
        reads = required_reads(n, t, m, q, k, d)
        row.update(N=reads - 1, required_reads=reads)
    except DuplicationError as e:
        if row["status"] == "ok":
            row["status"] = f"{type(e).__name__}: {e.message}"
    return row


def build_table(ns: Tuple[int, ...], ts: Tuple[int, ...], ms: Tuple[int, ...], ds: Tuple[int, ...],
                q: int, k: int) -> pd.DataFrame:
    rows: List[Dict] = []
    for n in ns:
        for t in ts:
            for d in ds:
                if d > t:
                    continue
                for m in ms:
                    rows.append(table_row(n, t, m, d or None, q, k))
    logger.info(f"built {len(rows)} table rows")
    return pd.DataFrame(rows, columns=COLUMNS, dtype=object)


@click.command("tables")
@click.option("--n", "ns", type=int, multiple=True, default=(100, 1000), show_default=True)
@click.option("--t", "ts", type=int, multiple=True, default=(1, 2, 3), show_default=True)
@click.option("--m", "ms", type=int, multiple=True, default=(2, 3, 4, 10), show_default=True)
@click.option("--d", "ds", type=int, multiple=True, default=(0,), show_default=True, help="0 表示不使用纠错码")
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="CSV 输出路径")
@guarded
def tables(ns, ts, ms, ds, q: int, k: int, output: Optional[str]):
    """
    指数 e_t、δ/ε 与不确定度 N 的参数表（CSV）
    """
    frame = build_table(tuple(ns), tuple(ts), tuple(ms), tuple(ds), q, k)
    write_or_echo(frame.to_csv(index=False), output)
