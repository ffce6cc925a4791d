"""同形简单多边形的点包含：参考多边形耳切三角剖分，每块一个三角形族索引，查询时去重。"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from loguru import logger

from homothet_enclosure.core.errors import DuplicateIdError, NonPositiveScaleError, PolygonError
from homothet_enclosure.core.geometry import (
    HomotheticFamily,
    Point,
    ReferenceTriangle,
    RationalLike,
    contains_point,
    cross,
    to_rational,
)
from homothet_enclosure.core.index import EnclosureIndex, SearchMode, build_index

PolygonInstance = tuple[int, Point, Fraction]


def polygon_area2(vertices: Sequence[Point]) -> Fraction:
    """鞋带公式，两倍有向面积。"""
    total = Fraction(0)
    for i, p in enumerate(vertices):
        q = vertices[(i + 1) % len(vertices)]
        total += p.x * q.y - q.x * p.y
    return total


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        cross(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = cross(a, b, c), cross(a, b, d)
    d3, d4 = cross(c, d, a), cross(c, d, b)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return _on_segment(c, a, b) or _on_segment(d, a, b) or _on_segment(a, c, d) or _on_segment(b, c, d)


@dataclass(frozen=True)
class ReferencePolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        pts = self.vertices
        m = len(pts)
        if m < 3:
            raise PolygonError(f"多边形至少需要 3 个顶点，实际 {m}")
        if len(set(pts)) != m:
            raise PolygonError("多边形含重复顶点")
        for i in range(m):
            if cross(pts[i - 1], pts[i], pts[(i + 1) % m]) == 0:
                raise PolygonError(f"多边形在顶点 {i} 处共线（退化）")
        if polygon_area2(pts) < 0:
            raise PolygonError("多边形顶点必须逆时针排列")
        for i in range(m):
            for j in range(i + 1, m):
                # 相邻边共享端点，跳过
                if j == i + 1 or (i == 0 and j == m - 1):
                    continue
                if _segments_meet(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m]):
                    raise PolygonError(f"多边形自相交：边 {i} 与边 {j}")

    @classmethod
    def of(cls, *coords: RationalLike) -> "ReferencePolygon":
        if len(coords) % 2:
            raise PolygonError("多边形坐标个数必须为偶数")
        values = [to_rational(c) for c in coords]
        return cls(tuple(Point(values[i], values[i + 1]) for i in range(0, len(values), 2)))

    @property
    def area2(self) -> Fraction:
        return polygon_area2(self.vertices)

    def instance_vertices(self, anchor: Point, scale: Fraction) -> list[Point]:
        """锚点是参考 v0 的像。"""
        origin = self.vertices[0]
        return [anchor + (v - origin).scaled(scale) for v in self.vertices]


def triangulate_reference(p: ReferencePolygon) -> list[ReferenceTriangle]:
    """耳切法，得到 m-2 个内部互不相交的逆时针三角形。只对参考形状做一次，O(m²) 足够。"""
    pts = p.vertices
    ring = list(range(len(pts)))
    pieces: list[ReferenceTriangle] = []
    while len(ring) > 3:
        for k in range(len(ring)):
            i_prev, i, i_next = ring[k - 1], ring[k], ring[(k + 1) % len(ring)]
            a, b, c = pts[i_prev], pts[i], pts[i_next]
            if cross(a, b, c) <= 0:
                continue
            # 其余顶点落在耳（含边界）上则不是耳
            if any(contains_point(a, b, c, pts[j]) for j in ring if j not in (i_prev, i, i_next)):
                continue
            pieces.append(ReferenceTriangle(a, b, c))
            del ring[k]
            break
        else:
            raise PolygonError("耳切失败：找不到耳（多边形可能不简单）")
    pieces.append(ReferenceTriangle(*(pts[i] for i in ring)))
    return pieces


def polygon_contains(vertices: Sequence[Point], q: Point) -> bool:
    """闭多边形包含：边界算在内，内部用奇偶射线法。"""
    m = len(vertices)
    inside = False
    for i in range(m):
        a, b = vertices[i], vertices[(i + 1) % m]
        if _on_segment(q, a, b):
            return True
        if (a.y > q.y) != (b.y > q.y):
            x_cross = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if q.x < x_cross:
                inside = not inside
    return inside


@dataclass(frozen=True)
class PolygonIndex:
    reference: ReferencePolygon
    pieces: tuple[ReferenceTriangle, ...]
    families: tuple[HomotheticFamily, ...]
    indexes: tuple[EnclosureIndex, ...]
    # 三角形标签 → 多边形 id
    owners: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.owners)


def build_polygon_index(
    p: ReferencePolygon,
    instances: Iterable[PolygonInstance],
    *,
    with_cascade: bool = True,
) -> PolygonIndex:
    items = list(instances)
    seen: set[int] = set()
    for poly_id, _, scale in items:
        if poly_id in seen:
            raise DuplicateIdError(poly_id)
        seen.add(poly_id)
        if scale <= 0:
            raise NonPositiveScaleError(f"多边形 {poly_id} 的比例必须为正: {scale}", poly_id)

    pieces = triangulate_reference(p)
    origin = p.vertices[0]
    families = []
    indexes = []
    for piece in pieces:
        family = HomotheticFamily(piece)
        offset = piece.v0 - origin
        triangles = [
            family.canonical(label, anchor + offset.scaled(scale), scale)
            for label, (_, anchor, scale) in enumerate(items)
        ]
        families.append(family)
        indexes.append(build_index(triangles, with_cascade=with_cascade))
    logger.info(f"[PolygonIndex] 参考多边形剖分为 {len(pieces)} 块，实例 {len(items)} 个")
    return PolygonIndex(
        reference=p,
        pieces=tuple(pieces),
        families=tuple(families),
        indexes=tuple(indexes),
        owners=tuple(poly_id for poly_id, _, _ in items),
    )


def query_polygons(pi: PolygonIndex, q: Point, mode: SearchMode | str = SearchMode.CASCADED) -> list[int]:
    """各块结果映射回多边形 id，去重后升序。对角线上的点会被两块同时命中。"""
    seen: set[int] = set()
    for family, index in zip(pi.families, pi.indexes):
        ids, _ = index.query(family.to_canonical(q), mode)
        seen.update(pi.owners[label] for label in ids)
    return sorted(seen)


def polygon_oracle_query(
    p: ReferencePolygon, instances: Iterable[PolygonInstance], q: Point
) -> list[int]:
    return sorted(
        poly_id
        for poly_id, anchor, scale in instances
        if polygon_contains(p.instance_vertices(anchor, scale), q)
    )
