"""gen：把生成器输出写成三角形文件 + 查询文件。"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import TextIO

from loguru import logger

from homothet_enclosure.cli.context import EXIT_OK, RunConfig, add_run_options
from homothet_enclosure.core.errors import EnclosureError
from homothet_enclosure.core.fileformat import dump_queries, dump_triangles
from homothet_enclosure.core.oracle import gen_instance
from homothet_enclosure.core.settings import GeneratorSettings


def register(subparsers) -> None:
    parser = subparsers.add_parser("gen", help="生成实例文件（PREFIX.triangles / PREFIX.queries）")
    add_run_options(parser, "n", "seed", "profile", "out")
    parser.set_defaults(handler=run_gen)


def output_paths(prefix: str | Path) -> tuple[Path, Path]:
    prefix = Path(prefix)
    return prefix.with_name(prefix.name + ".triangles"), prefix.with_name(prefix.name + ".queries")


def cmd_gen(
    n: int,
    seed: int,
    profile: str,
    out: str | Path,
    *,
    settings: GeneratorSettings | None = None,
    stdout: TextIO | None = None,
) -> int:
    instance = gen_instance(n, seed, profile, settings=settings)
    triangles_path, queries_path = output_paths(out)
    triangles_path.write_text(dump_triangles(instance.reference, instance.triangles), encoding="utf-8")
    queries_path.write_text(dump_queries(instance.original_queries()), encoding="utf-8")
    logger.info(f"[gen] 已写入 {triangles_path} 与 {queries_path}")
    print(f"{triangles_path}\n{queries_path}", file=stdout or sys.stdout)
    return EXIT_OK


def run_gen(config: RunConfig) -> int:
    if config.profile == "all":
        raise EnclosureError("gen 只能指定单个 --profile")
    return cmd_gen(config.n[0], config.seed, config.profile, config.out, settings=config.settings.generator)
