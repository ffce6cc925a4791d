"""暴力真值与可复现的实例生成。所有索引结果都以这里为准。"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from loguru import logger

from homothet_enclosure.core.geometry import (
    CanonicalTriangle,
    HomotheticFamily,
    Point,
    ReferenceTriangle,
    point_in_canonical,
)
from homothet_enclosure.core.settings import PROFILES, GeneratorSettings, get_settings

_SEED_MASK = (1 << 64) - 1


def oracle_query(triangles: Iterable[CanonicalTriangle], q: Point) -> list[int]:
    return sorted(t.id for t in triangles if point_in_canonical(t, q))


@dataclass(frozen=True)
class Instance:
    """triangles / queries 都在标准空间；reference 决定写文件时的原始空间。"""

    reference: ReferenceTriangle
    triangles: tuple[CanonicalTriangle, ...]
    queries: tuple[Point, ...]
    seed: int
    profile: str = "uniform"

    @property
    def family(self) -> HomotheticFamily:
        return HomotheticFamily(self.reference)

    def original_queries(self) -> list[Point]:
        family = self.family
        return [family.inverse_map.apply(q) for q in self.queries]

    def dumps(self) -> str:
        """三角形文件 + 查询文件的文本，用于确定性比较与反例回放。"""
        from homothet_enclosure.core.fileformat import dump_queries, dump_triangles

        return dump_triangles(self.reference, self.triangles) + dump_queries(self.original_queries())


class _Draw:
    """把 numpy 整数抽样换成精确 Fraction。"""

    def __init__(self, seed: int, denominator: int):
        self.rng = np.random.default_rng(seed & _SEED_MASK)
        self.denominator = denominator

    def units(self, low: int, high: int) -> int:
        """[low, high] 闭区间整数。"""
        return int(self.rng.integers(low, high, endpoint=True))

    def coord(self, low_units: int, high_units: int, denominator: int | None = None) -> Fraction:
        return Fraction(self.units(low_units, high_units), denominator or self.denominator)


Shape = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class _Extent:
    """锚点范围（单位 1/denominator）：x ∈ [-width, width]，y ∈ [-height, height]。"""

    width: int
    height: int


def _scale_levels(width: int) -> int:
    return max(1, width.bit_length() - 1)


def _extent(n: int, profile: str, cfg: GeneratorSettings) -> _Extent:
    # x 半宽与 n 成正比：不同端点约 2n 个，单位面积内的三角形数不随 n 变化
    width = max(cfg.span * cfg.denominator, math.ceil(n * cfg.spread * cfg.denominator))
    height = cfg.span * cfg.denominator
    if profile == "multiscale":
        height = max(height, n * width // (20 * _scale_levels(width) * cfg.multiscale_k))
    return _Extent(width, height)


def _anchor(draw: _Draw, extent: _Extent) -> tuple[int, int]:
    return draw.units(-extent.width, extent.width), draw.units(-extent.height, extent.height)


def _uniform(n: int, draw: _Draw, cfg: GeneratorSettings, extent: _Extent) -> list[Shape]:
    top = cfg.max_scale * cfg.denominator
    shapes = []
    for _ in range(n):
        a, b = _anchor(draw, extent)
        shapes.append((Fraction(a, cfg.denominator), Fraction(b, cfg.denominator), draw.coord(1, top)))
    return shapes


def _nested(n: int, draw: _Draw, cfg: GeneratorSettings, extent: _Extent) -> list[Shape]:
    big = 4 * cfg.max_scale * cfg.denominator
    shapes: list[Shape] = []
    a = b = s = 0
    while len(shapes) < n:
        if s <= 0:
            a, b = _anchor(draw, extent)
            s = draw.units(big // 2, big)
        shapes.append((Fraction(a, cfg.denominator), Fraction(b, cfg.denominator), Fraction(s, cfg.denominator)))
        # 新三角形 (a+da, b+db, s-da-db-ds) 必含于上一个
        da, db, ds = draw.units(0, 2), draw.units(0, 2), draw.units(1, 3)
        a, b, s = a + da, b + db, s - da - db - ds
    return shapes


def _clustered(n: int, draw: _Draw, cfg: GeneratorSettings, extent: _Extent) -> list[Shape]:
    radius = cfg.cluster_radius * cfg.denominator
    top = max(1, cfg.max_scale * cfg.denominator // 4)
    centers = [_anchor(draw, extent) for _ in range(max(1, cfg.clusters, n // cfg.cluster_size))]
    shapes = []
    for _ in range(n):
        cx, cy = centers[draw.units(0, len(centers) - 1)]
        shapes.append(
            (
                Fraction(cx + draw.units(-radius, radius), cfg.denominator),
                Fraction(cy + draw.units(-radius, radius), cfg.denominator),
                draw.coord(1, top),
            )
        )
    return shapes


def _duplicates(n: int, draw: _Draw, cfg: GeneratorSettings, extent: _Extent) -> list[Shape]:
    if n == 0:
        return []
    pool = _uniform(max(1, n // 4), draw, cfg, extent)
    shapes = [pool[draw.units(0, len(pool) - 1)] for _ in range(n)]
    if n >= 2:
        shapes[1] = shapes[0]
    return shapes


def _multiscale(n: int, draw: _Draw, cfg: GeneratorSettings, extent: _Extent) -> list[Shape]:
    """比例在 [1, width) 上对数均匀：每一层线段树节点都有可观的 L 列表。"""
    levels = _scale_levels(extent.width)
    shapes = []
    for _ in range(n):
        a, b = _anchor(draw, extent)
        e = draw.units(0, levels - 1)
        shapes.append((Fraction(a, cfg.denominator), Fraction(b, cfg.denominator), draw.coord(1 << e, (2 << e) - 1)))
    return shapes


_PROFILE_GENERATORS = {
    "uniform": _uniform,
    "nested": _nested,
    "clustered": _clustered,
    "duplicates": _duplicates,
    "multiscale": _multiscale,
}


def adversarial_points(triangles: Iterable[CanonicalTriangle], offset: Fraction) -> list[Point]:
    """顶点、各边中点、斜边外侧、下直角边下方、竖直角边左侧的点。"""
    points: list[Point] = []
    for t in triangles:
        v0, v1, v2 = t.vertices
        hyp_mid = v1.midpoint(v2)
        points.extend(
            (
                v0,
                v1,
                v2,
                v0.midpoint(v1),
                hyp_mid,
                v2.midpoint(v0),
                Point(hyp_mid.x + offset, hyp_mid.y + offset),
                Point(t.a + t.s / 2, t.b - offset),
                Point(t.a - offset, t.b + t.s / 2),
            )
        )
    return points


def _random_queries(
    triangles: Sequence[CanonicalTriangle], count: int, draw: _Draw, cfg: GeneratorSettings, extent: _Extent
) -> list[Point]:
    fine = 2 * cfg.denominator
    margin = 4 * cfg.max_scale * cfg.denominator
    reach_x, reach_y = 2 * (extent.width + margin), 2 * (extent.height + margin)
    points = []
    for i in range(count):
        if triangles and i % 2 == 0:
            t = triangles[draw.units(0, len(triangles) - 1)]
            # 三角形内部附近的点，k 通常 > 0
            units = int(t.s * fine)
            u = draw.units(0, units)
            v = draw.units(0, units - u)
            points.append(Point(t.a + Fraction(u, fine), t.b + Fraction(v, fine)))
        else:
            points.append(Point(draw.coord(-reach_x, reach_x, fine), draw.coord(-reach_y, reach_y, fine)))
    return points


def gen_instance(
    n: int,
    seed: int,
    profile: str = "uniform",
    *,
    reference: ReferenceTriangle | None = None,
    random_queries: int | None = None,
    adversarial: bool = True,
    settings: GeneratorSettings | None = None,
) -> Instance:
    """确定性实例：同样的 (n, seed, profile, 参数) 得到完全相同的实例。"""
    if n < 0:
        raise ValueError(f"n 不能为负: {n}")
    if profile not in _PROFILE_GENERATORS:
        raise ValueError(f"未知实例分布: {profile}（可选 {', '.join(PROFILES)}）")
    cfg = settings or get_settings().generator
    draw = _Draw(seed, cfg.denominator)
    extent = _extent(n, profile, cfg)
    shapes = _PROFILE_GENERATORS[profile](n, draw, cfg, extent)
    triangles = tuple(CanonicalTriangle(i, a, b, s) for i, (a, b, s) in enumerate(shapes, start=1))

    count = cfg.random_queries if random_queries is None else random_queries
    queries = _random_queries(triangles, count, draw, cfg, extent)
    if adversarial:
        queries.extend(adversarial_points(triangles, cfg.boundary_offset))
    queries = list(dict.fromkeys(queries))

    logger.debug(f"[Oracle] 生成实例 profile={profile} n={n} seed={seed}，查询 {len(queries)} 个")
    return Instance(
        reference=reference or ReferenceTriangle.canonical(),
        triangles=triangles,
        queries=tuple(queries),
        seed=seed,
        profile=profile,
    )


def gen_homothets(
    n: int, seed: int, *, settings: GeneratorSettings | None = None
) -> list[tuple[int, Point, Fraction]]:
    """(id, 锚点, 比例) 列表，供多边形实例与原始空间测试使用。"""
    cfg = settings or get_settings().generator
    draw = _Draw(seed, cfg.denominator)
    shapes = _uniform(n, draw, cfg, _extent(n, "uniform", cfg))
    return [(i, Point(a, b), s) for i, (a, b, s) in enumerate(shapes, start=1)]
