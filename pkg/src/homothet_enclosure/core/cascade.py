"""L(v) 列表上的分数级联。

M(v) = L(v) 与两个孩子 M 的每第 2 个元素（奇数下标）归并。对 M(v) 的每个前缀
长度 p 记录桥：M[:p] 里最后一个来自该孩子的采样元素的下标 + 1，归并时顺带得到，
不需要比较。孩子里两个相邻的采样元素之间最多夹一个未采样元素，桥值之后至多
再比较一次即可得到孩子中的 bisect_right 位置。只有根节点做一次完整二分。
L 全空的子树不建级联节点。
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from fractions import Fraction
from operator import itemgetter
from typing import Iterator, Optional, Sequence

from loguru import logger

from homothet_enclosure.core.index import EnclosureIndex, IndexNode, PathStep, counted_bisect_right
from homothet_enclosure.core.stats import QueryStats

SAMPLING = 2

_NATIVE = 0
_LEFT = 1
_RIGHT = 2


@dataclass(eq=False)
class CascadeNode:
    node: IndexNode
    keys: list[Fraction]
    native: list[bool]
    # 长度 |M|+1：M[:p] 中原生条目个数，即 q 在 L(v) 中的 bisect_right 位置
    native_prefix: Sequence[int]
    bridge_left: Optional[Sequence[int]] = None
    bridge_right: Optional[Sequence[int]] = None
    left: Optional["CascadeNode"] = None
    right: Optional["CascadeNode"] = None

    def __len__(self) -> int:
        return len(self.keys)

    def native_rank(self, i: int) -> int:
        """M[i] 及其之前最近的原生条目在 L(v) 中的下标；没有则为 -1。"""
        return self.native_prefix[i + 1] - 1


def _bridge(merged: list[tuple[Fraction, int, int]], source: int) -> list[int]:
    """bridge[p]：M[:p] 中最后一个来自 source 孩子的条目在孩子 M 中的下标 + 1。

    查询时 p 总是 bisect_right 位置，孩子中下一个采样元素已大于 q_y，
    所以真实位置是 bridge[p] 或 bridge[p] + 1。
    """
    bridge = [0] * (len(merged) + 1)
    last = 0
    for p, (_, origin, child_index) in enumerate(merged, start=1):
        if origin == source:
            last = child_index + 1
        bridge[p] = last
    return bridge


def _build(node: IndexNode, keep_empty: bool = False) -> Optional[CascadeNode]:
    left = _build(node.left) if node.left is not None else None
    right = _build(node.right) if node.right is not None else None
    if left is None and right is None and not node.keys and not keep_empty:
        # 整棵子树的 L 都为空
        return None

    streams = [[(key, _NATIVE, i) for i, key in enumerate(node.keys)]]
    for source, child in ((_LEFT, left), (_RIGHT, right)):
        if child is not None:
            sampled = range(SAMPLING - 1, len(child.keys), SAMPLING)
            streams.append([(child.keys[i], source, i) for i in sampled])
    # merge 是稳定的：同键时原生条目在前，然后是左孩子、右孩子
    merged = list(heapq.merge(*streams, key=itemgetter(0)))
    keys = [key for key, _, _ in merged]
    native = [origin == _NATIVE for _, origin, _ in merged]

    prefix = [0] * (len(keys) + 1)
    for i, is_native in enumerate(native):
        prefix[i + 1] = prefix[i] + is_native

    return CascadeNode(
        node=node,
        keys=keys,
        native=native,
        native_prefix=prefix,
        bridge_left=_bridge(merged, _LEFT) if left is not None else None,
        bridge_right=_bridge(merged, _RIGHT) if right is not None else None,
        left=left,
        right=right,
    )


class CascadeIndex:
    def __init__(self, index: EnclosureIndex, root: CascadeNode):
        self.index = index
        self.root = root

    def nodes(self) -> Iterator[CascadeNode]:
        stack = [self.root]
        while stack:
            cnode = stack.pop()
            yield cnode
            stack.extend(child for child in (cnode.left, cnode.right) if child is not None)

    @property
    def total_size(self) -> int:
        """Σ|M(v)|。"""
        return sum(len(cnode) for cnode in self.nodes())

    def locate_path(self, q_x: Fraction, q_y: Fraction, stats: QueryStats | None = None) -> list[PathStep]:
        """沿 q_x 的根到叶路径，返回每个节点上 q_y 在 L(v) 中的 bisect_right 位置。

        L 全空的子树没有级联节点，进入后位置恒为 0。
        """
        stats = stats if stats is not None else QueryStats()
        atom = self.index.atom_of(q_x)
        node: IndexNode = self.index.root
        cnode: Optional[CascadeNode] = self.root
        p = counted_bisect_right(self.root.keys, q_y, stats)
        steps: list[PathStep] = []
        while True:
            stats.nodes_visited += 1
            steps.append((node, cnode.native_prefix[p] if cnode is not None else 0))
            if node.left is None:
                break
            go_left = atom < node.left.hi_atom
            node = node.left if go_left else node.right
            if cnode is None:
                continue
            child = cnode.left if go_left else cnode.right
            if child is not None:
                p = (cnode.bridge_left if go_left else cnode.bridge_right)[p]
                if p < len(child.keys):
                    stats.key_comparisons += 1
                    if child.keys[p] <= q_y:
                        p += 1
            cnode = child
        return steps


def build_cascade(index: EnclosureIndex) -> CascadeIndex:
    started = time.perf_counter()
    cascade = CascadeIndex(index, _build(index.root, keep_empty=True))
    logger.info(
        f"[CascadeIndex] 构建完成，Σ|M|={cascade.total_size}，Σ|L|={index.total_list_size}，"
        f"耗时 {time.perf_counter() - started:.3f}s"
    )
    return cascade


def locate_path(
    c: CascadeIndex, q_x: Fraction, q_y: Fraction, stats: QueryStats | None = None
) -> list[PathStep]:
    return c.locate_path(q_x, q_y, stats)
