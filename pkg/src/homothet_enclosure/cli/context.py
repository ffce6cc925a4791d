"""命令行共享部分：RunConfig、日志 sink、通用参数。"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from loguru import logger

from homothet_enclosure.core.errors import EnclosureError
from homothet_enclosure.core.index import SearchMode
from homothet_enclosure.core.settings import OUTPUT_FORMATS, PROFILES, Settings

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_MISMATCH = 2

_LOG_LEVELS = {0: "WARNING", 1: "INFO"}


def configure_logging(verbosity: int = 0) -> None:
    """库本身不配置 sink；命令行只往 stderr 写，stdout 留给答案。"""
    logger.remove()
    logger.add(sys.stderr, level=_LOG_LEVELS.get(verbosity, "DEBUG"), format="{level: <8} | {message}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    mode: SearchMode = SearchMode.CASCADED
    inputs: tuple[Path, ...] = ()
    seed: int = 1
    n: tuple[int, ...] = (300,)
    profile: str = "uniform"
    trials: int = 20
    output_format: str = "plain"
    workers: int = 1
    out: Path | None = None
    queries: int = 1000
    settings: Settings = field(default_factory=Settings)

    @property
    def profiles(self) -> tuple[str, ...]:
        return PROFILES if self.profile == "all" else (self.profile,)


def add_run_options(parser: argparse.ArgumentParser, *names: str) -> None:
    """按需挂通用参数；默认值留空，由 settings.yaml 补齐。"""
    if "mode" in names:
        parser.add_argument("--mode", choices=[m.value for m in SearchMode], help="查询模式（默认 cascaded）")
    if "seed" in names:
        parser.add_argument("--seed", type=int, help="随机种子")
    if "n" in names:
        parser.add_argument("--n", type=int, help="三角形个数")
    if "n_list" in names:
        parser.add_argument("--n", type=int, nargs="+", dest="n", help="三角形个数列表")
    if "profile" in names:
        parser.add_argument("--profile", choices=[*PROFILES, "all"], help="实例分布")
    if "trials" in names:
        parser.add_argument("--trials", type=int, help="连续种子个数")
    if "out" in names:
        parser.add_argument("--out", type=Path, required=True, help="输出路径前缀")
    if "out_prefix" in names:
        parser.add_argument("--out", type=Path, help="可选输出路径前缀")
    if "format" in names:
        parser.add_argument("--format", choices=OUTPUT_FORMATS, dest="output_format", help="输出格式")
    if "workers" in names:
        parser.add_argument("--workers", type=int, help="并发查询线程数")
    if "queries" in names:
        parser.add_argument("--queries", type=int, help="每个 n 的随机查询数")


def _check_readable(path: Path) -> Path:
    if not path.is_file() or not os.access(path, os.R_OK):
        raise EnclosureError(f"无法读取输入文件: {path}")
    return path


def build_run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """合并命令行参数与默认值；在开始任何工作前确认输入文件可读。"""

    def pick(name: str, default):
        value = getattr(args, name, None)
        return default if value is None else value

    raw_n = getattr(args, "n", None)
    if raw_n is None:
        n = settings.bench.n_list if args.command == "bench" else (settings.n,)
    elif isinstance(raw_n, int):
        n = (raw_n,)
    else:
        n = tuple(raw_n)
    if any(value < 0 for value in n):
        raise EnclosureError(f"n 不能为负: {list(n)}")

    trials = pick("trials", settings.trials)
    workers = pick("workers", settings.workers)
    if trials < 1 or workers < 1:
        raise EnclosureError("--trials 与 --workers 必须 ≥ 1")

    return RunConfig(
        command=args.command,
        mode=SearchMode.parse(pick("mode", settings.mode)),
        inputs=tuple(_check_readable(Path(getattr(args, name))) for name in getattr(args, "input_names", ())),
        seed=pick("seed", settings.seed),
        n=tuple(n),
        profile=pick("profile", settings.bench.profile if args.command == "bench" else settings.profile),
        trials=trials,
        output_format=pick("output_format", settings.format),
        workers=workers,
        out=getattr(args, "out", None),
        queries=pick("queries", settings.bench.queries),
        settings=settings,
    )
