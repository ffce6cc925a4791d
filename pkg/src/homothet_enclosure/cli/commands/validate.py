"""validate：生成实例，两种模式逐点对照暴力真值；首个反例原样打印以便回放。"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable, Iterable, Optional, TextIO

from loguru import logger

from homothet_enclosure.cli.commands.gen import output_paths
from homothet_enclosure.cli.context import EXIT_MISMATCH, EXIT_OK, RunConfig, add_run_options
from homothet_enclosure.core.cascade import build_cascade
from homothet_enclosure.core.fileformat import dump_queries, dump_triangles, format_answer
from homothet_enclosure.core.geometry import Point
from homothet_enclosure.core.index import EnclosureIndex, SearchMode, build_index
from homothet_enclosure.core.oracle import Instance, gen_instance, oracle_query
from homothet_enclosure.core.settings import GeneratorSettings

IndexHook = Callable[[EnclosureIndex], None]


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="与暴力真值对照（两种模式）")
    add_run_options(parser, "n", "seed", "profile", "trials", "out_prefix")
    parser.set_defaults(handler=run_validate)


def find_mismatch(
    instance: Instance, corrupt: Optional[IndexHook] = None
) -> Optional[tuple[Point, SearchMode, list[int], list[int]]]:
    """返回首个 (查询, 模式, 期望, 实际)；全部一致时返回 None。

    corrupt 在级联构建之前作用于索引，用于自检测试。
    """
    index = build_index(instance.triangles, with_cascade=False)
    if corrupt is not None:
        corrupt(index)
    index.attach_cascade(build_cascade(index))
    for q in instance.queries:
        expected = oracle_query(instance.triangles, q)
        for mode in SearchMode:
            got, _ = index.query(q, mode)
            if got != expected:
                return q, mode, expected, got
    return None


def _print_counterexample(
    instance: Instance, q: Point, mode: SearchMode, expected: list[int], got: list[int], out: TextIO
) -> None:
    original_q = instance.family.inverse_map.apply(q)
    print(f"# 不一致：profile={instance.profile} seed={instance.seed} mode={mode.value}", file=out)
    print(f"# 期望 {format_answer(original_q, expected)}", file=out)
    print(f"# 实际 {format_answer(original_q, got)}", file=out)
    print("# --- triangles ---", file=out)
    out.write(dump_triangles(instance.reference, instance.triangles))
    print("# --- queries ---", file=out)
    out.write(dump_queries([original_q]))


def write_counterexample(instance: Instance, q: Point, prefix: str | Path) -> tuple[Path, Path]:
    """按 gen 的文件名约定写出反例，可直接交给 solve 回放。"""
    triangles_path, queries_path = output_paths(prefix)
    triangles_path.write_text(dump_triangles(instance.reference, instance.triangles), encoding="utf-8")
    queries_path.write_text(dump_queries([instance.family.inverse_map.apply(q)]), encoding="utf-8")
    logger.info(f"[validate] 反例已写入 {triangles_path} 与 {queries_path}")
    return triangles_path, queries_path


def cmd_validate(
    n: int,
    seed: int,
    profiles: Iterable[str],
    trials: int,
    *,
    corrupt: Optional[IndexHook] = None,
    settings: GeneratorSettings | None = None,
    out: TextIO | None = None,
    out_prefix: str | Path | None = None,
) -> int:
    out = out or sys.stdout
    checked = 0
    for profile in profiles:
        for trial_seed in range(seed, seed + trials):
            instance = gen_instance(n, trial_seed, profile, settings=settings)
            mismatch = find_mismatch(instance, corrupt)
            if mismatch is not None:
                logger.error(f"[validate] profile={profile} seed={trial_seed} 出现不一致")
                _print_counterexample(instance, *mismatch, out)
                if out_prefix is not None:
                    write_counterexample(instance, mismatch[0], out_prefix)
                return EXIT_MISMATCH
            checked += len(instance.queries)
            logger.info(f"[validate] profile={profile} seed={trial_seed} 通过，查询 {len(instance.queries)}")
    print(f"PASS n={n} trials={trials} queries={checked}", file=out)
    return EXIT_OK


def run_validate(config: RunConfig) -> int:
    return cmd_validate(
        config.n[0],
        config.seed,
        config.profiles,
        config.trials,
        settings=config.settings.generator,
        out_prefix=config.out,
    )
