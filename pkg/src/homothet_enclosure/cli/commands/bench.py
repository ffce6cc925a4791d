"""bench：按 n 输出一行制表符分隔的构建/查询计数。"""
from __future__ import annotations

import sys
import time
from typing import Iterable, Sequence, TextIO

import numpy as np
from loguru import logger

from homothet_enclosure.cli.context import EXIT_OK, RunConfig, add_run_options
from homothet_enclosure.core.index import EnclosureIndex, SearchMode, build_index
from homothet_enclosure.core.oracle import Instance, gen_instance
from homothet_enclosure.core.settings import GeneratorSettings

COLUMNS = (
    "n",
    "mode",
    "build_s",
    "fragments",
    "tree_height",
    "sum_L",
    "sum_M",
    "rectangles",
    "queries",
    "k0_queries",
    "k0_mean_cmp",
    "k0_max_cmp",
    "kpos_mean_cmp",
    "kpos_max_cmp",
    "max_cmp_minus_2k",
    "mean_cmp_minus_2k",
    "mean_nodes",
    "max_rect_cmp",
    "mean_k",
)


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="构建时间、空间与查询比较次数")
    add_run_options(parser, "n_list", "seed", "mode", "profile", "queries")
    parser.set_defaults(handler=run_bench)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def _mean(values: np.ndarray) -> float:
    return float(values.mean()) if values.size else 0.0


def _max(values: np.ndarray) -> int:
    return int(values.max()) if values.size else 0


def _measure(index: EnclosureIndex, instance: Instance, mode: SearchMode) -> dict[str, object]:
    k = np.zeros(len(instance.queries), dtype=np.int64)
    key_cmp = np.zeros_like(k)
    rect_cmp = np.zeros_like(k)
    nodes = np.zeros_like(k)
    for i, q in enumerate(instance.queries):
        ids, stats = index.query(q, mode)
        k[i], key_cmp[i] = len(ids), stats.key_comparisons
        rect_cmp[i], nodes[i] = stats.rect_comparisons, stats.nodes_visited

    empty = k == 0
    return {
        "mode": mode.value,
        "queries": int(k.size),
        "k0_queries": int(empty.sum()),
        "k0_mean_cmp": _mean(key_cmp[empty]),
        "k0_max_cmp": _max(key_cmp[empty]),
        "kpos_mean_cmp": _mean(key_cmp[~empty]),
        "kpos_max_cmp": _max(key_cmp[~empty]),
        "max_cmp_minus_2k": _max(key_cmp - 2 * k),
        "mean_cmp_minus_2k": _mean(key_cmp - 2 * k),
        "mean_nodes": _mean(nodes),
        "max_rect_cmp": _max(rect_cmp),
        "mean_k": _mean(k),
    }


def bench_rows(
    n: int,
    seed: int,
    modes: Sequence[SearchMode | str],
    queries: int,
    profile: str = "multiscale",
    settings: GeneratorSettings | None = None,
) -> list[dict[str, object]]:
    """同一实例、同一棵树，按 modes 各出一行。"""
    instance = gen_instance(n, seed, profile, random_queries=queries, adversarial=False, settings=settings)

    started = time.perf_counter()
    index = build_index(instance.triangles)
    build_s = time.perf_counter() - started

    if not instance.queries:
        logger.warning(f"[bench] n={n} 没有查询点")
    shared = {
        "n": n,
        "build_s": build_s,
        "fragments": index.fragment_count,
        "tree_height": index.tree_height,
        "sum_L": index.total_list_size,
        "sum_M": index.cascade.total_size if index.cascade is not None else 0,
        "rectangles": index.total_rectangle_count,
    }
    return [{**shared, **_measure(index, instance, SearchMode.parse(mode))} for mode in modes]


def bench_row(
    n: int,
    seed: int,
    mode: SearchMode | str,
    queries: int,
    profile: str = "multiscale",
    settings: GeneratorSettings | None = None,
) -> dict[str, object]:
    return bench_rows(n, seed, [mode], queries, profile, settings)[0]


def cmd_bench(
    n_list: Iterable[int],
    seed: int,
    mode: SearchMode | str = SearchMode.CASCADED,
    *,
    queries: int = 1000,
    profile: str = "multiscale",
    settings: GeneratorSettings | None = None,
    out: TextIO | None = None,
) -> int:
    out = out or sys.stdout
    print("\t".join(COLUMNS), file=out)
    for n in n_list:
        row = bench_row(n, seed, mode, queries, profile, settings)
        print("\t".join(_fmt(row[column]) for column in COLUMNS), file=out, flush=True)
        logger.info(f"[bench] n={n} 完成，构建 {row['build_s']:.3f}s")
    return EXIT_OK


def run_bench(config: RunConfig) -> int:
    profile = config.settings.bench.profile if config.profile == "all" else config.profile
    return cmd_bench(
        config.n,
        config.seed,
        config.mode,
        queries=config.queries,
        profile=profile,
        settings=config.settings.generator,
    )
