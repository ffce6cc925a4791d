"""静态区间树（中心分解），回答半开区间 [lo, hi) 的刺探查询。"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from homothet_enclosure.core.stats import QueryStats

Interval = tuple[Fraction, Fraction, int]


@dataclass
class _StabNode:
    center: Fraction
    # 经过 center 的区间：按 lo 升序、按 hi 降序各存一份
    by_lo: list[Interval]
    by_hi: list[Interval]
    left: Optional["_StabNode"] = None
    right: Optional["_StabNode"] = None


def _build(ranked: list[tuple[int, int, int]], items: list[Interval], values: list[Fraction]) -> Optional[_StabNode]:
    """ranked 是 (lo 秩, hi 秩, 下标)，已按 lo 秩排好；划分保持这个顺序。"""
    if not ranked:
        return None
    # 取左端点中位数：该区间必落在中心集合，保证每层都有进展
    center = ranked[len(ranked) // 2][0]
    left: list[tuple[int, int, int]] = []
    right: list[tuple[int, int, int]] = []
    middle: list[tuple[int, int, int]] = []
    for entry in ranked:
        lo, hi, _ = entry
        if hi <= center:
            left.append(entry)
        elif lo > center:
            right.append(entry)
        else:
            middle.append(entry)
    return _StabNode(
        center=values[center],
        by_lo=[items[k] for _, _, k in middle],
        by_hi=[items[k] for _, _, k in sorted(middle, key=lambda entry: (-entry[1], entry[2]))],
        left=_build(left, items, values),
        right=_build(right, items, values),
    )


class IntervalStab:
    """半开区间 [y_lo, y_hi) 的静态刺探结构，O(log m + k) 次比较。"""

    def __init__(self, root: Optional[_StabNode], size: int):
        self._root = root
        self._size = size

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def query(self, key: Fraction, stats: QueryStats | None = None) -> list[int]:
        stats = stats if stats is not None else QueryStats()
        found: list[int] = []
        node = self._root
        while node is not None:
            stats.rect_comparisons += 1
            if key < node.center:
                # 这些区间的 hi > center > key，只需看 lo
                for lo, _, owner in node.by_lo:
                    stats.rect_comparisons += 1
                    stats.candidates_examined += 1
                    if lo > key:
                        break
                    found.append(owner)
                node = node.left
            else:
                # 这些区间的 lo ≤ center ≤ key，只需看 hi
                for _, hi, owner in node.by_hi:
                    stats.rect_comparisons += 1
                    stats.candidates_examined += 1
                    if hi <= key:
                        break
                    found.append(owner)
                node = node.right
        stats.reported += len(found)
        return found

    def intervals(self) -> Iterator[Interval]:
        stack = [self._root] if self._root is not None else []
        while stack:
            node = stack.pop()
            yield from node.by_lo
            stack.extend(child for child in (node.left, node.right) if child is not None)

    def depth(self) -> int:
        def _depth(node: Optional[_StabNode]) -> int:
            if node is None:
                return 0
            return 1 + max(_depth(node.left), _depth(node.right))

        return _depth(self._root)


def _rank(items: list[Interval]) -> tuple[list[Fraction], list[tuple[int, int, int]]]:
    """端点只排序一次，换成整数秩；之后的划分只比较整数。"""
    ends = [value for lo, hi, _ in items for value in (lo, hi)]
    values: list[Fraction] = []
    rank = [0] * len(ends)
    for j in sorted(range(len(ends)), key=ends.__getitem__):
        if not values or values[-1] != ends[j]:
            values.append(ends[j])
        rank[j] = len(values) - 1
    return values, sorted((rank[2 * k], rank[2 * k + 1], k) for k in range(len(items)))


def stab_build(intervals: Iterable[Interval]) -> IntervalStab:
    items = list(intervals)
    values, ranked = _rank(items)
    for lo, hi, k in ranked:
        if lo >= hi:
            raise ValueError(f"区间 [{values[lo]}, {values[hi]}) 为空（owner={items[k][2]}）")
    return IntervalStab(_build(ranked, items, values), len(items))
