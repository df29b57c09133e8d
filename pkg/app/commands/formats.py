"""
命令行共用部分：读数/码本文件格式、报告输出与错误到退出码的映射
"""

import functools
import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import click
from pydantic import ValidationError

from app.core.exceptions import USAGE_EXIT_CODE, DuplicationError, InvalidStringError
from app.models.schemas import GString, SimplexCode

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"(\w+)=(\S+)")


def guarded(func):
    """
    命令体的统一错误处理

    DuplicationError 按 exit_code 退出；参数校验失败按用法错误（USAGE_EXIT_CODE）退出。
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except DuplicationError as e:
            logger.debug(f"{func.__name__} failed: {e.message}")
            click.echo(f"error={e.message}", err=True)
            ctx.exit(e.exit_code)
        except ValidationError as e:
            click.echo(f"error={e.errors()[0]['msg']}", err=True)
            ctx.exit(USAGE_EXIT_CODE)

    return wrapper


class UsageExitGroup(click.Group):
    """命令组：click 的用法错误改用 USAGE_EXIT_CODE 退出，与领域错误的退出码区分"""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT_CODE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT_CODE
            raise


def _parse_header(line: str) -> Dict[str, str]:
    if not line.startswith("#"):
        return {}
    return dict(_HEADER.findall(line))


def _parse_string(text: str, q: int, k: int) -> GString:
    try:
        return GString.parse(text, q, k)
    except ValueError as e:
        raise InvalidStringError(f"cannot parse {text!r} over Z_{q}: {e}")


def format_reads(reads: List[GString]) -> str:
    """读数文件：头部 `# q=<q> k=<k>`，每行一个串"""
    first = reads[0]
    lines = [f"# q={first.q} k={first.k}"]
    lines.extend(str(y) for y in sorted(reads, key=lambda y: y.symbols))
    return "\n".join(lines) + "\n"


def load_reads(path: str, q: Optional[int] = None, k: Optional[int] = None) -> Tuple[List[GString], int, int]:
    """
    读取读数文件

    Returns:
        (读数列表, q, k)；头部缺失时使用命令行给出的 q、k
    """
    lines = [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]
    header: Dict[str, str] = {}
    if lines and lines[0].startswith("#"):
        header = _parse_header(lines.pop(0))
    q = int(header.get("q", q or 0))
    k = int(header.get("k", k or 0))
    if q < 2 or k < 2:
        raise click.UsageError("reads file needs a '# q=<q> k=<k>' header or --q/--k")
    body = [line for line in lines if not line.startswith("#")]
    if not body:
        raise click.UsageError(f"reads file {path} contains no reads")
    return [_parse_string(line, q, k) for line in body], q, k


def format_codebook(code: SimplexCode) -> str:
    """码本文件：头部 `# root=... q k w r d`，每行一个逗号分隔的向量"""
    lines = [
        f"# root={code.root} q={code.root.q} k={code.root.k} w={code.w} r={code.r} d={code.d}"
    ]
    lines.extend(",".join(str(a) for a in word) for word in code.words)
    return "\n".join(lines) + "\n"


def load_codebook(path: str, typical_subset: bool = False) -> SimplexCode:
    lines = [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]
    if not lines or not lines[0].startswith("#"):
        raise click.UsageError(f"codebook {path} is missing its '# root=... q=... k=...' header")
    header = _parse_header(lines[0])
    missing = {"root", "q", "k", "w", "r", "d"} - set(header)
    if missing:
        raise click.UsageError(f"codebook header lacks {', '.join(sorted(missing))}")
    q, k = int(header["q"]), int(header["k"])
    root_text = header["root"]
    words = tuple(tuple(int(a) for a in line.split(",")) for line in lines[1:] if not line.startswith("#"))
    try:
        return SimplexCode(
            root=_parse_string(root_text, q, k), w=int(header["w"]), r=int(header["r"]),
            d=int(header["d"]), words=words, typical_subset=typical_subset,
        )
    except ValidationError as e:
        raise InvalidStringError(f"invalid codebook {path}: {e.errors()[0]['msg']}")


def _render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_render(v) for v in value)
    if value is None:
        return "none"
    return str(value)


def emit(payload: Dict[str, Any], as_json: bool = False) -> None:
    """key=value 逐行输出，或一个 JSON 文档；计数保持为精确整数"""
    if as_json:
        click.echo(json.dumps(payload, ensure_ascii=False, default=str))
        return
    for key, value in payload.items():
        click.echo(f"{key}={_render(value)}")


def write_or_echo(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
        logger.info(f"wrote {output}")
    else:
        click.echo(text, nl=False)
