from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache

from hypothesis import given, settings, strategies as st

from homothet_enclosure.core.cascade import build_cascade, locate_path
from homothet_enclosure.core.geometry import CanonicalTriangle, Point
from homothet_enclosure.core.index import SearchMode, build_index, counted_bisect_right
from homothet_enclosure.core.oracle import gen_instance
from homothet_enclosure.core.stats import QueryStats


@lru_cache(maxsize=None)
def _random_index(n=256, seed=4, profile="uniform"):
    instance = gen_instance(n, seed, profile, adversarial=False, random_queries=0)
    return build_index(instance.triangles)


_quarters = st.integers(-400, 400).map(lambda value: Fraction(value, 4))
_abscissae = st.integers(-1200, 1200).map(lambda value: Fraction(value, 4))


def test_cascade_size_is_at_most_twice_the_lists():
    index = _random_index()
    assert index.cascade is not None
    assert index.total_list_size <= index.cascade.total_size <= 2 * index.total_list_size


@given(
    profile=st.sampled_from(["uniform", "nested", "duplicates", "multiscale"]),
    q_x=_abscissae,
    q_y=_quarters,
)
@settings(max_examples=300, deadline=None)
def test_cascaded_positions_equal_binary_search(profile, q_x, q_y):
    index = _random_index(profile=profile)
    stats = QueryStats()
    steps = index.cascade.locate_path(q_x, q_y, stats)
    assert [node for node, _ in steps] == index.path(q_x)
    for node, position in steps:
        assert position == bisect_right(node.keys, q_y)

    root_stats = QueryStats()
    counted_bisect_right(index.cascade.root.keys, q_y, root_stats)
    # 根以下每层至多一次修正比较
    assert stats.key_comparisons - root_stats.key_comparisons <= len(steps) - 1


def test_keys_below_and_above_everything():
    index = _random_index(64, 2)
    keys = [key for cnode in index.cascade.nodes() for key in cnode.keys]
    low, high = min(keys) - 1, max(keys) + 1
    for x in index.endpoints[::7]:
        for node, position in index.cascade.locate_path(x, low):
            assert position == 0
        for node, position in index.cascade.locate_path(x, high):
            assert position == len(node.L)


def test_single_node_tree_has_no_bridges():
    index = build_index([], with_cascade=True)
    root = index.cascade.root
    assert root.left is None and root.right is None
    assert root.bridge_left is None and root.bridge_right is None
    assert root.keys == []
    assert index.cascade.locate_path(Fraction(3), Fraction(3)) == [(index.root, 0)]


def test_all_lists_empty_degenerates_to_path_walk():
    index = build_index([CanonicalTriangle.of(1, 0, 0, 1)], with_cascade=False)
    for node in index.nodes():
        node.L.clear()
        node.keys = []
    cascade = build_cascade(index)
    assert cascade.total_size == 0
    stats = QueryStats()
    steps = cascade.locate_path(Fraction(1, 2), Fraction(0), stats)
    assert [node for node, _ in steps] == index.path(Fraction(1, 2))
    assert all(position == 0 for _, position in steps)
    assert stats.key_comparisons == 0


def test_native_prefix_tracks_list_positions():
    index = _random_index(32, 6)
    for cnode in index.cascade.nodes():
        assert len(cnode.native_prefix) == len(cnode.keys) + 1
        assert cnode.native_prefix[-1] == len(cnode.node.L)
        assert [k for k, native in zip(cnode.keys, cnode.native) if native] == cnode.node.keys
        if cnode.keys:
            assert cnode.native_rank(len(cnode.keys) - 1) == len(cnode.node.L) - 1


def test_boundary_queries_agree_between_modes():
    instance = gen_instance(80, 12, "clustered")
    index = build_index(instance.triangles)
    for q in instance.queries:
        assert index.query(q, SearchMode.CASCADED).ids == index.query(q, SearchMode.BINARY).ids
    assert index.query(Point.of(0, 0), SearchMode.CASCADED).stats.nodes_visited == len(index.path(Fraction(0)))


@given(q_x=_quarters, q_y=_quarters)
@settings(max_examples=50, deadline=None)
def test_locate_path_function_matches_method(q_x, q_y):
    index = _random_index(48, 1)
    assert locate_path(index.cascade, q_x, q_y) == index.cascade.locate_path(q_x, q_y)


def test_subtrees_without_lists_get_no_cascade_nodes():
    index = _random_index(64, 5)
    cascade_nodes = list(index.cascade.nodes())
    assert len(cascade_nodes) < sum(1 for _ in index.nodes())
    for cnode in cascade_nodes[1:]:
        stack = [cnode.node]
        stored = 0
        while stack:
            node = stack.pop()
            stored += len(node.L)
            stack.extend(child for child in node.children if child is not None)
        assert stored > 0
