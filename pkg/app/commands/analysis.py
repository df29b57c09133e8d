"""
单值查询：μ、σ、典型集不确定度、典型性，以及贪心码本生成
"""

import logging
from typing import Optional

import click

from app.commands.formats import emit, format_codebook, guarded, write_or_echo
from app.core.exceptions import InvalidStringError
from app.models.schemas import GString, RunConfig
from app.services.codes import build_code_greedy
from app.services.lattice import mu, mu_d, sigma, sigma_d
from app.services.reconstruct import required_reads
from app.services.strings import is_irreducible
from app.services.transform import stats
from app.services.typicality import (
    estimate_typical_fraction,
    is_typical,
    typical_fraction_bound,
    window,
)

logger = logging.getLogger(__name__)

json_option = click.option("--json", "as_json", is_flag=True, help="输出单个 JSON 文档")


@click.command("mu")
@click.option("--w", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--d", type=int, default=1, show_default=True)
@json_option
@guarded
def cmd_mu(w: int, r: int, s: int, d: int, as_json: bool):
    """最大下界集合大小 μ(w,r,s[,d])"""
    value = mu(w, r, s) if d == 1 else mu_d(w, r, s, d)
    emit({"w": w, "r": r, "s": s, "d": d, "mu": value}, as_json)


@click.command("sigma")
@click.option("--m", type=int, required=True)
@click.option("--w", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--d", type=int, default=1, show_default=True)
@json_option
@guarded
def cmd_sigma(m: int, w: int, r: int, d: int, as_json: bool):
    """最小上确界高度 σ(m,w,r[,d])"""
    value = sigma(m, w, r) if d == 1 else sigma_d(m, w, r, d)
    emit({"m": m, "w": w, "r": r, "d": d, "sigma": value}, as_json)


@click.command("uncertainty")
@click.option("--n", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--d", type=int)
@click.option("--exhaustive-grid", is_flag=True, help="扫描窗口中全部 (w, r)")
@json_option
@guarded
def cmd_uncertainty(n: int, t: int, m: int, q: int, k: int, d: Optional[int], exhaustive_grid: bool, as_json: bool):
    """典型集上的不确定度 N 与所需读数 N+1"""
    config = RunConfig(q=q, k=k, n=n, t=t, m=m, d=d)
    reads = required_reads(n, t, m, q, k, config.d, exhaustive_grid)
    emit({"n": n, "t": t, "m": m, "d": d, "uncertainty": reads - 1, "required_reads": reads}, as_json)


@click.command("typical")
@click.option("--x", "text", help="判定单个串是否典型")
@click.option("--n", type=int, help="给出长度 n 的窗口与测度下界")
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--samples", type=int, help="附带蒙特卡洛估计的样本数")
@click.option("--seed", type=int)
@json_option
@guarded
def cmd_typical(text: Optional[str], n: Optional[int], q: int, k: int, samples: Optional[int],
                seed: Optional[int], as_json: bool):
    """典型性判定与典型窗口"""
    if text:
        try:
            x = GString.parse(text, q, k)
        except ValueError as e:
            raise InvalidStringError(f"invalid string {text!r}: {e}")
        params = stats(x)
        emit({"n": len(x), "w": params.w, "r": params.r, "typical": is_typical(x)}, as_json)
        return
    if n is None:
        raise click.UsageError("provide --x or --n")
    win = window(n, q, k)
    payload = {
        "n": n, "q": q, "k": k,
        "w_center": str(win.w_center), "w_lo": win.w_lo, "w_hi": win.w_hi,
        "r_center": str(win.r_center), "r_lo": win.r_lo, "r_hi": win.r_hi,
        "bound": f"{typical_fraction_bound(n):.12f}",
    }
    if samples:
        estimate = estimate_typical_fraction(n, q, k, samples, seed)
        payload.update(
            estimate=f"{estimate.mean:.6f}", half_width=f"{estimate.half_width:.6f}", seed=estimate.seed
        )
    emit(payload, as_json)


@click.command("codebook")
@click.option("--root", "root_text", required=True, help="不可约根")
@click.option("--q", type=int, default=3, show_default=True)
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--r", type=int, required=True, help="码字层级")
@click.option("--d", type=int, required=True, help="最小 d₁ 距离")
@click.option("--output", "-o", type=click.Path(dir_okay=False))
@guarded
def cmd_codebook(root_text: str, q: int, k: int, r: int, d: int, output: Optional[str]):
    """按字典序贪心构造 Δ^w_r 中的码本"""
    try:
        x_root = GString.parse(root_text, q, k)
    except ValueError as e:
        raise InvalidStringError(f"invalid root {root_text!r}: {e}")
    if len(x_root) < k or not is_irreducible(x_root):
        raise InvalidStringError(f"{root_text} is not an irreducible string")
    code = build_code_greedy(stats(x_root).w, r, d, x_root)
    write_or_echo(format_codebook(code), output)
