"""精确几何核心：有理数、标准直角等腰三角形谓词、同形校验与仿射规约。

所有坐标都是 ``Fraction``，比较与运算全程精确，没有任何浮点。
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from homothet_enclosure.core.errors import (
    DegenerateTriangleError,
    NonPositiveScaleError,
    NotHomotheticError,
)

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """int / Fraction / "p/q" 字符串 → Fraction。拒绝浮点。"""
    if isinstance(value, bool):
        raise TypeError("布尔值不是坐标")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"不支持的坐标类型: {type(value).__name__}")


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "Point":
        return cls(to_rational(x), to_rational(y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, factor: Fraction) -> "Point":
        return Point(self.x * factor, self.y * factor)

    def midpoint(self, other: "Point") -> "Point":
        return Point((self.x + other.x) / 2, (self.y + other.y) / 2)


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """(a-o) × (b-o)，即有向面积的两倍。"""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class CanonicalTriangle:
    """闭区域 { x ≥ a, y ≥ b, (x-a)+(y-b) ≤ s }。"""

    id: int
    a: Fraction
    b: Fraction
    s: Fraction
    # 斜边常数 a+b+s，trim 时每个碎片只需一次减法
    c: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.s <= 0:
            raise NonPositiveScaleError(f"三角形 {self.id} 的边长必须为正: {self.s}", self.id)
        object.__setattr__(self, "c", self.a + self.b + self.s)

    @classmethod
    def of(cls, id: int, a: RationalLike, b: RationalLike, s: RationalLike) -> "CanonicalTriangle":
        return cls(id, to_rational(a), to_rational(b), to_rational(s))

    @property
    def x_interval(self) -> tuple[Fraction, Fraction]:
        return self.a, self.a + self.s

    @property
    def y_interval(self) -> tuple[Fraction, Fraction]:
        return self.b, self.b + self.s

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (
            Point(self.a, self.b),
            Point(self.a + self.s, self.b),
            Point(self.a, self.b + self.s),
        )

    def same_geometry(self, other: "CanonicalTriangle") -> bool:
        return (self.a, self.b, self.s) == (other.a, other.b, other.s)


def point_in_canonical(t: CanonicalTriangle, q: Point) -> bool:
    """闭包含：边界上的点也算。"""
    return q.x >= t.a and q.y >= t.b and q.x + q.y <= t.c


@dataclass(frozen=True)
class AffineMap:
    """p ↦ A·p + t，A = [[m00, m01], [m10, m11]]。"""

    m00: Fraction
    m01: Fraction
    m10: Fraction
    m11: Fraction
    tx: Fraction = Fraction(0)
    ty: Fraction = Fraction(0)

    def __post_init__(self):
        if self.determinant == 0:
            raise DegenerateTriangleError("仿射变换不可逆（行列式为零）")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @property
    def determinant(self) -> Fraction:
        return self.m00 * self.m11 - self.m01 * self.m10

    def apply(self, p: Point) -> Point:
        return Point(
            self.m00 * p.x + self.m01 * p.y + self.tx,
            self.m10 * p.x + self.m11 * p.y + self.ty,
        )

    def inverse(self) -> "AffineMap":
        det = self.determinant
        i00, i01 = self.m11 / det, -self.m01 / det
        i10, i11 = -self.m10 / det, self.m00 / det
        return AffineMap(
            i00,
            i01,
            i10,
            i11,
            -(i00 * self.tx + i01 * self.ty),
            -(i10 * self.tx + i11 * self.ty),
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self ∘ other：先 other 后 self。"""
        return AffineMap(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
            self.m00 * other.tx + self.m01 * other.ty + self.tx,
            self.m10 * other.tx + self.m11 * other.ty + self.ty,
        )


def apply_map(m: AffineMap, p: Point) -> Point:
    return m.apply(p)


@dataclass(frozen=True)
class ReferenceTriangle:
    """同形族的参考形状，顶点逆时针。三条边方向即族的三个固定方向。"""

    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        area2 = cross(self.v0, self.v1, self.v2)
        if area2 == 0:
            raise DegenerateTriangleError("参考三角形退化（面积为零）")
        if area2 < 0:
            raise DegenerateTriangleError("参考三角形顶点必须逆时针排列")

    @classmethod
    def of(cls, *coords: RationalLike) -> "ReferenceTriangle":
        if len(coords) != 6:
            raise ValueError("参考三角形需要 6 个坐标")
        x0, y0, x1, y1, x2, y2 = coords
        return cls(Point.of(x0, y0), Point.of(x1, y1), Point.of(x2, y2))

    @classmethod
    def canonical(cls) -> "ReferenceTriangle":
        return cls.of(0, 0, 1, 0, 0, 1)

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return self.v0, self.v1, self.v2

    @property
    def area2(self) -> Fraction:
        return cross(self.v0, self.v1, self.v2)


def canonicalizing_map(r: ReferenceTriangle) -> AffineMap:
    """求 M 使 M(v0)=(0,0), M(v1)=(1,0), M(v2)=(0,1)。

    线性部分是 [e1 e2] 的逆矩阵，e1=v1-v0, e2=v2-v0；平移为 -A·v0。
    """
    e1 = r.v1 - r.v0
    e2 = r.v2 - r.v0
    det = e1.x * e2.y - e2.x * e1.y
    if det == 0:
        raise DegenerateTriangleError("参考三角形退化（面积为零）")
    m00, m01 = e2.y / det, -e2.x / det
    m10, m11 = -e1.y / det, e1.x / det
    return AffineMap(
        m00,
        m01,
        m10,
        m11,
        -(m00 * r.v0.x + m01 * r.v0.y),
        -(m10 * r.v0.x + m11 * r.v0.y),
    )


def validate_homothet(
    r: ReferenceTriangle,
    v0: Point,
    v1: Point,
    v2: Point,
    triangle_id: int | None = None,
) -> tuple[Point, Fraction]:
    """按给定顶点顺序匹配 r，返回 (锚点, 比例)。不做旋转匹配。"""
    e1 = r.v1 - r.v0
    e2 = r.v2 - r.v0
    d1 = v1 - v0
    d2 = v2 - v0
    scale = d1.x / e1.x if e1.x != 0 else d1.y / e1.y
    if d1 != e1.scaled(scale) or d2 != e2.scaled(scale):
        label = f"三角形 {triangle_id}" if triangle_id is not None else "三角形"
        raise NotHomotheticError(f"{label} 与参考形状不同形", triangle_id)
    if scale <= 0:
        label = f"三角形 {triangle_id}" if triangle_id is not None else "三角形"
        raise NonPositiveScaleError(f"{label} 的比例必须为正，实际为 {scale}", triangle_id)
    return v0, scale


def contains_point(v0: Point, v1: Point, v2: Point, q: Point) -> bool:
    """原始空间的闭包含测试：三个半平面同号（不依赖顶点方向）。"""
    d0 = cross(v0, v1, q)
    d1 = cross(v1, v2, q)
    d2 = cross(v2, v0, q)
    has_neg = d0 < 0 or d1 < 0 or d2 < 0
    has_pos = d0 > 0 or d1 > 0 or d2 > 0
    return not (has_neg and has_pos)


class HomotheticFamily:
    """参考三角形 + 其规约映射。负责原始空间与标准空间之间的换算。"""

    def __init__(self, reference: ReferenceTriangle | None = None):
        self.reference = reference or ReferenceTriangle.canonical()
        self.map = canonicalizing_map(self.reference)
        self.inverse_map = self.map.inverse()

    @property
    def is_canonical(self) -> bool:
        return self.map == AffineMap.identity()

    def canonical(self, id: int, anchor: Point, scale: RationalLike) -> CanonicalTriangle:
        """锚点（参考 v0 的像）+ 比例 → 标准三角形。"""
        image = self.map.apply(anchor)
        return CanonicalTriangle(id, image.x, image.y, to_rational(scale))

    def from_vertices(self, id: int, v0: Point, v1: Point, v2: Point) -> CanonicalTriangle:
        anchor, scale = validate_homothet(self.reference, v0, v1, v2, triangle_id=id)
        return self.canonical(id, anchor, scale)

    def to_canonical(self, q: Point) -> Point:
        return self.map.apply(q)

    def anchor_of(self, t: CanonicalTriangle) -> Point:
        return self.inverse_map.apply(Point(t.a, t.b))

    def vertices(self, t: CanonicalTriangle) -> tuple[Point, Point, Point]:
        """标准三角形映回原始空间的三个顶点。"""
        v0, v1, v2 = t.vertices
        return self.inverse_map.apply(v0), self.inverse_map.apply(v1), self.inverse_map.apply(v2)
