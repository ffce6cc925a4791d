"""文本格式读写。有理数写作 `p/q` 或整数，格式中不出现浮点；`#` 之后为注释。

三角形文件：可选首行 `ref x0 y0 x1 y1 x2 y2`，之后每行 `id ax ay s` 或
`id v0x v0y v1x v1y v2x v2y`（顶点形式会做同形校验）。
多边形文件：首行 `poly x0 y0 x1 y1 ...`，之后每行 `id ax ay s`。
查询文件：每行 `qx qy`。
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from homothet_enclosure.core.errors import EnclosureError, NonPositiveScaleError, ParseError
from homothet_enclosure.core.geometry import CanonicalTriangle, HomotheticFamily, Point, ReferenceTriangle
from homothet_enclosure.core.polygon import PolygonInstance, ReferencePolygon

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")
_INTEGER = re.compile(r"[+-]?\d+")
_TOKEN = re.compile(r"\S+")

Token = tuple[str, int]


def format_rational(value: Fraction) -> str:
    return str(value)


def _lines(text: str) -> Iterator[tuple[int, list[Token]]]:
    """(行号, [(词, 列号)])，跳过空行与注释。"""
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(match.group(), match.start() + 1) for match in _TOKEN.finditer(body)]
        if tokens:
            yield number, tokens


def parse_rational(token: str, path: str | Path | None = None, line: int = 0, column: int = 0) -> Fraction:
    if not _RATIONAL.fullmatch(token):
        raise ParseError(f"不是有理数: {token!r}", path, line, column)
    numerator, _, denominator = token.partition("/")
    if denominator and int(denominator) == 0:
        raise ParseError(f"分母为零: {token!r}", path, line, column)
    return Fraction(int(numerator), int(denominator or 1))


def _parse_id(token: Token, path, line: int) -> int:
    text, column = token
    if not _INTEGER.fullmatch(text):
        raise ParseError(f"id 必须是整数: {text!r}", path, line, column)
    return int(text)


def _rationals(tokens: Sequence[Token], path, line: int) -> list[Fraction]:
    return [parse_rational(text, path, line, column) for text, column in tokens]


def _points(values: Sequence[Fraction]) -> list[Point]:
    return [Point(values[i], values[i + 1]) for i in range(0, len(values), 2)]


def parse_triangles(text: str, path: str | Path | None = None) -> tuple[HomotheticFamily, list[CanonicalTriangle]]:
    """返回 (族, 标准三角形列表)。同形/比例错误以领域异常抛出并带三角形 id。"""
    family = HomotheticFamily()
    triangles: list[CanonicalTriangle] = []
    first = True
    for line, tokens in _lines(text):
        head, column = tokens[0]
        if head == "ref":
            if not first:
                raise ParseError("ref 头只能出现在第一行", path, line, column)
            if len(tokens) != 7:
                raise ParseError(f"ref 需要 6 个坐标，实际 {len(tokens) - 1}", path, line, column)
            vertices = _points(_rationals(tokens[1:], path, line))
            try:
                family = HomotheticFamily(ReferenceTriangle(*vertices))
            except EnclosureError as exc:
                raise ParseError(str(exc), path, line, column) from exc
            first = False
            continue
        first = False
        triangle_id = _parse_id(tokens[0], path, line)
        values = _rationals(tokens[1:], path, line)
        if len(values) == 3:
            anchor = Point(values[0], values[1])
            if values[2] <= 0:
                raise NonPositiveScaleError(f"三角形 {triangle_id} 的比例必须为正: {values[2]}", triangle_id)
            triangles.append(family.canonical(triangle_id, anchor, values[2]))
        elif len(values) == 6:
            triangles.append(family.from_vertices(triangle_id, *_points(values)))
        else:
            raise ParseError(
                f"三角形行需要 `id ax ay s` 或 `id` + 6 个顶点坐标，实际 {len(tokens)} 项",
                path,
                line,
                column,
            )
    return family, triangles


def parse_polygons(text: str, path: str | Path | None = None) -> tuple[ReferencePolygon, list[PolygonInstance]]:
    reference: ReferencePolygon | None = None
    instances: list[PolygonInstance] = []
    for line, tokens in _lines(text):
        head, column = tokens[0]
        if head == "poly":
            if reference is not None or instances:
                raise ParseError("poly 头只能出现在第一行", path, line, column)
            values = _rationals(tokens[1:], path, line)
            if len(values) < 6 or len(values) % 2:
                raise ParseError("poly 需要至少 3 个顶点（偶数个坐标）", path, line, column)
            try:
                reference = ReferencePolygon(tuple(_points(values)))
            except EnclosureError as exc:
                raise ParseError(str(exc), path, line, column) from exc
            continue
        if reference is None:
            raise ParseError("多边形文件缺少 poly 头", path, line, column)
        if len(tokens) != 4:
            raise ParseError(f"多边形行需要 `id ax ay s`，实际 {len(tokens)} 项", path, line, column)
        poly_id = _parse_id(tokens[0], path, line)
        ax, ay, scale = _rationals(tokens[1:], path, line)
        instances.append((poly_id, Point(ax, ay), scale))
    if reference is None:
        raise ParseError("多边形文件缺少 poly 头", path, 1, 1)
    return reference, instances


def parse_queries(text: str, path: str | Path | None = None) -> list[Point]:
    points = []
    for line, tokens in _lines(text):
        if len(tokens) != 2:
            raise ParseError(f"查询行需要 `qx qy`，实际 {len(tokens)} 项", path, line, tokens[0][1])
        qx, qy = _rationals(tokens, path, line)
        points.append(Point(qx, qy))
    return points


def _read(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def load_triangles(path: str | Path) -> tuple[HomotheticFamily, list[CanonicalTriangle]]:
    return parse_triangles(_read(path), path)


def load_polygons(path: str | Path) -> tuple[ReferencePolygon, list[PolygonInstance]]:
    return parse_polygons(_read(path), path)


def load_queries(path: str | Path) -> list[Point]:
    return parse_queries(_read(path), path)


def _join(values: Iterable[Fraction]) -> str:
    return " ".join(format_rational(v) for v in values)


def dump_triangles(reference: ReferenceTriangle, triangles: Iterable[CanonicalTriangle]) -> str:
    """写成 `id ax ay s`，锚点换回 reference 所在的原始空间。"""
    family = HomotheticFamily(reference)
    lines = ["ref " + _join(c for v in reference.vertices for c in (v.x, v.y))]
    for t in triangles:
        anchor = family.anchor_of(t)
        lines.append(f"{t.id} {_join((anchor.x, anchor.y, t.s))}")
    return "\n".join(lines) + "\n"


def dump_polygons(reference: ReferencePolygon, instances: Iterable[PolygonInstance]) -> str:
    lines = ["poly " + _join(c for v in reference.vertices for c in (v.x, v.y))]
    for poly_id, anchor, scale in instances:
        lines.append(f"{poly_id} {_join((anchor.x, anchor.y, scale))}")
    return "\n".join(lines) + "\n"


def dump_queries(points: Iterable[Point]) -> str:
    return "".join(f"{_join((q.x, q.y))}\n" for q in points)


def format_answer(q: Point, ids: Sequence[int]) -> str:
    """`qx qy : id1 id2 ...`，空结果写 `-`。"""
    listed = " ".join(str(i) for i in ids) if ids else "-"
    return f"{_join((q.x, q.y))} : {listed}"
