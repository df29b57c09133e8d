import logging
import sys

import click
from dotenv import load_dotenv

load_dotenv()

from app.commands import (  # noqa: E402
    cmd_codebook,
    cmd_mu,
    cmd_sigma,
    cmd_typical,
    cmd_uncertainty,
    decode,
    simulate,
    tables,
    verify,
)
from app.commands.formats import UsageExitGroup  # noqa: E402
from app.core.config import settings  # noqa: E402


def configure_logging(level: str) -> None:
    # 日志只写 stderr，stdout 保持逐字节确定
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@click.group(cls=UsageExitGroup, help="均匀串联重复噪声下的列表译码重建")
@click.version_option(settings.APP_VERSION, prog_name=settings.APP_NAME)
@click.option("--log-level", default=None, help="覆盖 LOG_LEVEL")
def cli(log_level):
    configure_logging(log_level or ("DEBUG" if settings.DEBUG else settings.LOG_LEVEL))


# 注册命令
cli.add_command(simulate)
cli.add_command(decode)
cli.add_command(tables)
cli.add_command(verify)
cli.add_command(cmd_mu)
cli.add_command(cmd_sigma)
cli.add_command(cmd_uncertainty)
cli.add_command(cmd_typical)
cli.add_command(cmd_codebook)


if __name__ == "__main__":
    cli()
