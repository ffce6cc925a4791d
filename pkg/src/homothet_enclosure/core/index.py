"""点包含索引：x 区间线段树，每个节点挂修剪三角形列表 L(v) 与修剪矩形区间树 I(v)。

叶子是端点原子：(-∞,x1), [x1,x1], (x1,x2), …, [xm,xm], (xm,+∞)。
边界横坐标的查询会落在点原子上，因此不需要任何 epsilon 约定。

“T 穿过 H(v)” 在这里实现为 “T 的 x 区间覆盖 slab”。三角形顶点的横坐标
都是 x 区间端点，也都是原子边界，所以覆盖 slab 与“相交且无顶点落在
slab 内部”等价。
"""
from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from operator import attrgetter
from typing import TYPE_CHECKING, Callable, Iterable, Iterator, NamedTuple, Optional

from loguru import logger

from homothet_enclosure.core.errors import DuplicateIdError, EnclosureError, SlabError
from homothet_enclosure.core.geometry import CanonicalTriangle, Point
from homothet_enclosure.core.stab import IntervalStab, stab_build
from homothet_enclosure.core.stats import QueryStats

if TYPE_CHECKING:
    from homothet_enclosure.core.cascade import CascadeIndex


class SearchMode(str, Enum):
    BINARY = "binary"
    CASCADED = "cascaded"

    @classmethod
    def parse(cls, value: "str | SearchMode") -> "SearchMode":
        try:
            return cls(value)
        except ValueError as exc:
            raise EnclosureError(f"未知查询模式: {value}") from exc


class SlabKind(str, Enum):
    OPEN = "open"
    POINT = "point"
    UNION = "union"


@dataclass(frozen=True)
class Slab:
    """竖直条带。lo/hi 为 None 表示 -∞/+∞，只出现在两端原子上。"""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    kind: SlabKind

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def width(self) -> Fraction:
        if not self.bounded:
            raise SlabError("无界 slab 没有宽度")
        return self.hi - self.lo

    @classmethod
    def closed(cls, lo, hi) -> "Slab":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls(lo, hi, SlabKind.POINT if lo == hi else SlabKind.UNION)


class TrimmedTriangle(NamedTuple):
    """腰长等于所在节点 slab 宽度，不逐条存储。字段顺序即 L(v) 排序键。"""

    y_bot: Fraction
    owner_id: int


class TrimmedRectangle(NamedTuple):
    """y 区间 [y_lo, y_hi)：下闭上开，直线 y=y_bot 归修剪三角形。"""

    y_lo: Fraction
    y_hi: Fraction
    owner_id: int


_EMPTY_STAB = stab_build(())


def _trim_pieces(
    t: CanonicalTriangle, x_r: Fraction
) -> tuple[TrimmedTriangle, Optional[TrimmedRectangle]]:
    y_bot = t.c - x_r
    rectangle = TrimmedRectangle(t.b, y_bot, t.id) if y_bot > t.b else None
    return TrimmedTriangle(y_bot, t.id), rectangle


def trim(t: CanonicalTriangle, slab: Slab) -> tuple[TrimmedTriangle, Optional[TrimmedRectangle]]:
    """把 T ∩ slab 切成斜边下的直角等腰三角形和其下方（可能为空）的矩形。"""
    if not slab.bounded:
        raise SlabError(f"三角形 {t.id}: slab 无界，无法修剪")
    x_lo, x_hi = t.x_interval
    if slab.lo < x_lo or slab.hi > x_hi:
        raise SlabError(
            f"三角形 {t.id}: slab [{slab.lo}, {slab.hi}] 不在 x 区间 [{x_lo}, {x_hi}] 内"
        )
    return _trim_pieces(t, slab.hi)


class IndexNode:
    """线段树节点，覆盖原子 [lo_atom, hi_atom)。"""

    __slots__ = ("slab", "lo_atom", "hi_atom", "left", "right", "L", "keys", "I", "_rectangles")

    def __init__(
        self,
        slab: Slab,
        lo_atom: int = 0,
        hi_atom: int = 1,
        triangles: Iterable[TrimmedTriangle] = (),
        rectangles: Iterable[TrimmedRectangle] = (),
    ):
        self.slab = slab
        self.lo_atom = lo_atom
        self.hi_atom = hi_atom
        self.left: Optional[IndexNode] = None
        self.right: Optional[IndexNode] = None
        self.L: list[TrimmedTriangle] = list(triangles)
        self._rectangles: list[TrimmedRectangle] = list(rectangles)
        self.keys: list[Fraction] = []
        self.I: IntervalStab = _EMPTY_STAB
        if self.L or self._rectangles:
            self.seal()

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None

    @property
    def children(self) -> tuple[Optional["IndexNode"], Optional["IndexNode"]]:
        return self.left, self.right

    def add(self, t: CanonicalTriangle) -> None:
        triangle, rectangle = _trim_pieces(t, self.slab.hi)
        self.L.append(triangle)
        if rectangle is not None:
            self._rectangles.append(rectangle)

    def seal(self) -> None:
        """排序 L(v)（y_bot 相同按 id 升序）；有新矩形时重建 I(v)。"""
        self.L.sort()
        self.keys = [entry.y_bot for entry in self.L]
        if len(self._rectangles) != len(self.I):
            self.I = stab_build(self._rectangles)

    def rectangles(self) -> list[TrimmedRectangle]:
        return [TrimmedRectangle(*item) for item in self.I.intervals()]

    def stored_ids(self) -> list[int]:
        return [entry.owner_id for entry in self.L]

    def __len__(self) -> int:
        return len(self.L)

    def __repr__(self) -> str:
        return f"IndexNode(slab={self.slab!r}, |L|={len(self.L)}, |I|={len(self.I)})"


def counted_bisect_right(keys: list[Fraction], key: Fraction, stats: QueryStats) -> int:
    """bisect_right，每次比较计入 key_comparisons。"""
    lo, hi = 0, len(keys)
    while lo < hi:
        mid = (lo + hi) // 2
        stats.key_comparisons += 1
        if key < keys[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


def node_query_triangles(
    node: IndexNode,
    q: Point,
    stats: QueryStats | None = None,
    position: int | None = None,
) -> list[int]:
    """报告满足 q_x + q_y - x_r ≤ y_bot ≤ q_y 的条目。

    position 是 q_y 在 L(v) 中的 bisect_right 位置；缺省时就地二分。
    合格条目在 L(v) 中连续，所以从 position-1 向左扫，遇到第一个不合格即停。
    """
    stats = stats if stats is not None else QueryStats()
    if not node.L:
        return []
    if position is None:
        position = counted_bisect_right(node.keys, q.y, stats)
    threshold = q.x + q.y - node.slab.hi
    found: list[int] = []
    i = position - 1
    while i >= 0:
        stats.key_comparisons += 1
        stats.candidates_examined += 1
        entry = node.L[i]
        if entry.y_bot < threshold:
            break
        found.append(entry.owner_id)
        i -= 1
    stats.reported += len(found)
    return found


def node_query_rectangles(node: IndexNode, q_y: Fraction, stats: QueryStats | None = None) -> list[int]:
    return node.I.query(q_y, stats)


class QueryResult(NamedTuple):
    ids: list[int]
    stats: QueryStats


PathStep = tuple[IndexNode, int]


class EnclosureIndex:
    """同形（标准直角等腰）三角形的点包含索引。构建后只读，可并发查询。"""

    def __init__(
        self,
        root: IndexNode,
        endpoints: list[Fraction],
        triangles: dict[int, CanonicalTriangle],
        fragment_count: int,
        tree_height: int,
    ):
        self.root = root
        self.endpoints = endpoints
        self.triangles = triangles
        self.fragment_count = fragment_count
        self.tree_height = tree_height
        self.cascade: Optional[CascadeIndex] = None

    def __len__(self) -> int:
        return len(self.triangles)

    def attach_cascade(self, cascade: "CascadeIndex") -> None:
        self.cascade = cascade

    def nodes(self) -> Iterator[IndexNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(child for child in node.children if child is not None)

    @property
    def total_list_size(self) -> int:
        """Σ|L(v)|。"""
        return sum(len(node.L) for node in self.nodes())

    @property
    def total_rectangle_count(self) -> int:
        return sum(len(node.I) for node in self.nodes())

    def atom_of(self, q_x: Fraction) -> int:
        k = bisect_left(self.endpoints, q_x)
        if k < len(self.endpoints) and self.endpoints[k] == q_x:
            return 2 * k + 1
        return 2 * k

    def path(self, q_x: Fraction) -> list[IndexNode]:
        """q_x 所在原子的根到叶路径。"""
        atom = self.atom_of(q_x)
        nodes: list[IndexNode] = []
        node: Optional[IndexNode] = self.root
        while node is not None:
            nodes.append(node)
            if node.left is not None and atom < node.left.hi_atom:
                node = node.left
            else:
                node = node.right
        return nodes

    def query(self, q: Point, mode: SearchMode | str = SearchMode.CASCADED) -> QueryResult:
        return query(self, q, mode)


def _locate_binary(index: EnclosureIndex, q: Point, stats: QueryStats) -> list[PathStep]:
    steps: list[PathStep] = []
    for node in index.path(q.x):
        stats.nodes_visited += 1
        position = counted_bisect_right(node.keys, q.y, stats) if node.L else 0
        steps.append((node, position))
    return steps


def _locate_cascaded(index: EnclosureIndex, q: Point, stats: QueryStats) -> list[PathStep]:
    if index.cascade is None:
        raise EnclosureError("索引未构建分数级联，无法使用 cascaded 模式")
    return index.cascade.locate_path(q.x, q.y, stats)


_LOCATORS: dict[SearchMode, Callable[[EnclosureIndex, Point, QueryStats], list[PathStep]]] = {
    SearchMode.BINARY: _locate_binary,
    SearchMode.CASCADED: _locate_cascaded,
}


def query(index: EnclosureIndex, q: Point, mode: SearchMode | str = SearchMode.CASCADED) -> QueryResult:
    """报告所有包含 q 的三角形 id（升序）及本次查询的计数。"""
    stats = QueryStats()
    locate = _LOCATORS[SearchMode.parse(mode)]
    found: list[int] = []
    for node, position in locate(index, q, stats):
        if node.I:
            found.extend(node_query_rectangles(node, q.y, stats))
        if node.L:
            found.extend(node_query_triangles(node, q, stats, position))
    found.sort()
    return QueryResult(found, stats)


def _atom_slab(endpoints: list[Fraction], atom: int) -> Slab:
    k, odd = divmod(atom, 2)
    if odd:
        x = endpoints[k]
        return Slab(x, x, SlabKind.POINT)
    lo = endpoints[k - 1] if k > 0 else None
    hi = endpoints[k] if k < len(endpoints) else None
    return Slab(lo, hi, SlabKind.OPEN)


def _build_skeleton(endpoints: list[Fraction], lo: int, hi: int, depth: int) -> tuple[IndexNode, int]:
    if hi - lo == 1:
        return IndexNode(_atom_slab(endpoints, lo), lo, hi), depth
    first = _atom_slab(endpoints, lo)
    last = _atom_slab(endpoints, hi - 1)
    node = IndexNode(Slab(first.lo, last.hi, SlabKind.UNION), lo, hi)
    mid = (lo + hi) // 2
    node.left, left_height = _build_skeleton(endpoints, lo, mid, depth + 1)
    node.right, right_height = _build_skeleton(endpoints, mid, hi, depth + 1)
    return node, max(left_height, right_height)


def _insert(node: IndexNode, lo: int, hi: int, t: CanonicalTriangle) -> int:
    """把 t（覆盖原子 [lo, hi]）挂到覆盖其 slab、但不覆盖父 slab 的节点上，返回碎片数。"""
    if lo <= node.lo_atom and node.hi_atom - 1 <= hi:
        node.add(t)
        return 1
    stored = 0
    for child in node.children:
        if child is not None and child.lo_atom <= hi and lo < child.hi_atom:
            stored += _insert(child, lo, hi, t)
    return stored


def build_index(triangles: Iterable[CanonicalTriangle], *, with_cascade: bool = True) -> EnclosureIndex:
    started = time.perf_counter()
    by_id: dict[int, CanonicalTriangle] = {}
    for t in triangles:
        if t.id in by_id:
            raise DuplicateIdError(t.id)
        by_id[t.id] = t

    endpoints = sorted({x for t in by_id.values() for x in t.x_interval})
    root, height = _build_skeleton(endpoints, 0, 2 * len(endpoints) + 1, 1)
    atom_of_endpoint = {x: 2 * k + 1 for k, x in enumerate(endpoints)}

    # 按 (c, id) 插入：同一节点的 y_bot = c - x_r，L(v) 插入后即有序
    ordered = sorted(sorted(by_id.values(), key=attrgetter("id")), key=attrgetter("c"))
    fragments = 0
    for t in ordered:
        x_lo, x_hi = t.x_interval
        fragments += _insert(root, atom_of_endpoint[x_lo], atom_of_endpoint[x_hi], t)

    index = EnclosureIndex(root, endpoints, by_id, fragments, height)
    for node in index.nodes():
        if node.L:
            node.seal()
    logger.info(
        f"[EnclosureIndex] 构建完成，三角形 n={len(by_id)}，碎片 {fragments}，"
        f"树高 {height}，耗时 {time.perf_counter() - started:.3f}s"
    )

    if with_cascade:
        from homothet_enclosure.core.cascade import build_cascade

        index.attach_cascade(build_cascade(index))
    return index
