"""大规模对照，默认跳过：pytest -m slow 运行。"""
import math
import time

import pytest

from homothet_enclosure.cli.commands.bench import bench_rows
from homothet_enclosure.cli.commands.validate import find_mismatch
from homothet_enclosure.core.geometry import ReferenceTriangle, contains_point
from homothet_enclosure.core.index import SearchMode, build_index
from homothet_enclosure.core.oracle import gen_instance
from homothet_enclosure.core.settings import PROFILES

pytestmark = pytest.mark.slow

SIZES = (1 << 10, 1 << 12, 1 << 14, 1 << 16)


@pytest.mark.parametrize("profile", PROFILES)
def test_every_generated_query_matches_oracle(profile):
    for seed in range(1, 21):
        instance = gen_instance(300, seed, profile)
        assert find_mismatch(instance) is None, f"profile={profile} seed={seed}"


@pytest.fixture(scope="module")
def bench_table():
    """{mode: [每个 n 一行]}，每个 n 只建一次树。"""
    table = {mode: [] for mode in SearchMode}
    for n in SIZES:
        for row in bench_rows(n, 1, list(SearchMode), 1000):
            table[SearchMode(row["mode"])].append(row)
    return table


def _doublings(rows):
    return [math.log2(after["n"] / before["n"]) for before, after in zip(rows, rows[1:])]


def test_tree_height_follows_n(bench_table):
    heights = [row["tree_height"] for row in bench_table[SearchMode.CASCADED]]
    assert all(after > before for before, after in zip(heights, heights[1:]))


def test_cascaded_excess_comparisons_grow_by_a_constant_per_doubling(bench_table):
    rows = bench_table[SearchMode.CASCADED]
    for (before, after), doublings in zip(zip(rows, rows[1:]), _doublings(rows)):
        assert after["max_cmp_minus_2k"] - before["max_cmp_minus_2k"] <= 8 * doublings, (before, after)


def test_binary_excess_comparisons_grow_superlinearly(bench_table):
    binary = [row["mean_cmp_minus_2k"] for row in bench_table[SearchMode.BINARY]]
    cascaded = [row["mean_cmp_minus_2k"] for row in bench_table[SearchMode.CASCADED]]
    steps = [after - before for before, after in zip(binary, binary[1:])]
    # 每次倍增的增量本身在变大：log² n 而不是 log n
    assert steps[-1] > steps[0]
    gaps = [b - c for b, c in zip(binary, cascaded)]
    assert all(after > before for before, after in zip(gaps, gaps[1:]))


def test_space_bounds_at_every_size(bench_table):
    for row in bench_table[SearchMode.CASCADED]:
        assert row["fragments"] <= 2 * row["n"] * row["tree_height"]
        assert row["sum_L"] <= row["sum_M"] <= 2 * row["sum_L"]


def test_build_of_largest_uniform_instance_is_fast():
    n = SIZES[-1]
    instance = gen_instance(n, 1, adversarial=False, random_queries=0)
    started = time.perf_counter()
    index = build_index(instance.triangles)
    elapsed = time.perf_counter() - started
    assert elapsed < 30, f"构建 n={n} 用时 {elapsed:.1f}s"
    assert index.fragment_count <= 2 * n * index.tree_height
    assert index.cascade.total_size <= 2 * index.total_list_size


@pytest.mark.parametrize("seed", range(1, 11))
def test_non_axis_reference_reduction(seed):
    reference = ReferenceTriangle.of(0, 0, 3, 1, -1, 2)
    instance = gen_instance(200, seed, reference=reference)
    family = instance.family
    index = build_index(instance.triangles)
    originals = [(t.id, family.vertices(t)) for t in instance.triangles]
    for q, original_q in zip(instance.queries, instance.original_queries()):
        expected = [i for i, vertices in originals if contains_point(*vertices, original_q)]
        for mode in SearchMode:
            assert index.query(q, mode).ids == expected
