"""命令行应用工厂：解析参数、加载配置、分派子命令。"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import NoReturn, Sequence

from loguru import logger

from homothet_enclosure import __version__
from homothet_enclosure.cli.commands import COMMANDS
from homothet_enclosure.cli.context import EXIT_INPUT_ERROR, build_run_config, configure_logging
from homothet_enclosure.core.errors import EnclosureError
from homothet_enclosure.core.settings import load_settings


class _Parser(argparse.ArgumentParser):
    """参数错误按输入错误处理（退出码 1，而不是 argparse 默认的 2）。"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: 错误: {message}\n")


def create_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homothet-enclosure", description="同形三角形点包含查询")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v 输出 INFO，-vv 输出 DEBUG")
    parser.add_argument("--config", type=Path, help="覆盖默认 settings.yaml 的配置文件")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = create_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        settings = load_settings(args.config)
        config = build_run_config(args, settings)
        logger.debug(f"[cli] {config.command} mode={config.mode.value} seed={config.seed} n={list(config.n)}")
        return args.handler(config)
    except (EnclosureError, ValueError, OSError) as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
