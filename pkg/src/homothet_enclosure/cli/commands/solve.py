"""solve / polygons：读文件、建索引、逐行输出答案。"""
from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence, TextIO, TypeVar

from loguru import logger

from homothet_enclosure.cli.context import EXIT_OK, RunConfig, add_run_options
from homothet_enclosure.core.fileformat import format_answer, load_polygons, load_queries, load_triangles
from homothet_enclosure.core.geometry import Point
from homothet_enclosure.core.index import QueryResult, SearchMode, build_index
from homothet_enclosure.core.polygon import build_polygon_index, query_polygons
from homothet_enclosure.core.stats import QueryStats

T = TypeVar("T")

STATS_COLUMNS = ("qx", "qy", "k", "nodes_visited", "key_comparisons", "rect_comparisons", "candidates_examined")


def register(subparsers) -> None:
    solve = subparsers.add_parser("solve", help="对三角形文件回答查询文件中的每个点")
    solve.add_argument("triangles", help="三角形文件")
    solve.add_argument("queries_file", metavar="queries", help="查询文件")
    add_run_options(solve, "mode", "format", "workers")
    solve.set_defaults(handler=run_solve, input_names=("triangles", "queries_file"))

    polygons = subparsers.add_parser("polygons", help="同形多边形版本的 solve")
    polygons.add_argument("polygons_file", metavar="polygons", help="多边形文件")
    polygons.add_argument("queries_file", metavar="queries", help="查询文件")
    add_run_options(polygons, "mode", "workers")
    polygons.set_defaults(handler=run_polygons, input_names=("polygons_file", "queries_file"))


def _map_in_order(fn: Callable[[Point], T], queries: Sequence[Point], workers: int) -> list[T]:
    """并发执行，但按输入顺序返回。"""
    if workers <= 1 or len(queries) < 2:
        return [fn(q) for q in queries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, queries))


def _write_stats(queries: Sequence[Point], results: Sequence[QueryResult], err: TextIO) -> None:
    print("\t".join(STATS_COLUMNS), file=err)
    total = QueryStats()
    for q, (ids, stats) in zip(queries, results):
        total = total.merge(stats)
        row = (q.x, q.y, len(ids), stats.nodes_visited, stats.key_comparisons,
               stats.rect_comparisons, stats.candidates_examined)
        print("\t".join(str(value) for value in row), file=err)
    logger.info(f"[solve] 合计 {total.as_dict()}")


def cmd_solve(
    triangles_file: str | Path,
    queries_file: str | Path,
    mode: SearchMode | str = SearchMode.CASCADED,
    *,
    workers: int = 1,
    output_format: str = "plain",
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    family, triangles = load_triangles(triangles_file)
    queries = load_queries(queries_file)
    index = build_index(triangles)
    results = _map_in_order(lambda q: index.query(family.to_canonical(q), mode), queries, workers)
    for q, (ids, _) in zip(queries, results):
        print(format_answer(q, ids), file=out)
    if output_format == "tabular-stats":
        _write_stats(queries, results, err)
    return EXIT_OK


def cmd_polygons(
    polygons_file: str | Path,
    queries_file: str | Path,
    mode: SearchMode | str = SearchMode.CASCADED,
    *,
    workers: int = 1,
    out: TextIO | None = None,
) -> int:
    out = out or sys.stdout
    reference, instances = load_polygons(polygons_file)
    queries = load_queries(queries_file)
    polygon_index = build_polygon_index(reference, instances)
    results = _map_in_order(lambda q: query_polygons(polygon_index, q, mode), queries, workers)
    for q, ids in zip(queries, results):
        print(format_answer(q, ids), file=out)
    return EXIT_OK


def run_solve(config: RunConfig) -> int:
    triangles_file, queries_file = config.inputs
    return cmd_solve(
        triangles_file,
        queries_file,
        config.mode,
        workers=config.workers,
        output_format=config.output_format,
    )


def run_polygons(config: RunConfig) -> int:
    polygons_file, queries_file = config.inputs
    return cmd_polygons(polygons_file, queries_file, config.mode, workers=config.workers)
