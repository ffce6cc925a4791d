"""领域异常。全部继承 ValueError，CLI 统一映射为退出码 1。"""
from __future__ import annotations

from pathlib import Path


class EnclosureError(ValueError):
    """本库所有可预期错误的基类。"""


class DegenerateTriangleError(EnclosureError):
    """参考三角形面积为零或非逆时针。"""


class NotHomotheticError(EnclosureError):
    """三角形与参考形状不同形。"""

    def __init__(self, message: str, triangle_id: int | None = None):
        super().__init__(message)
        self.triangle_id = triangle_id


class NonPositiveScaleError(EnclosureError):
    """缩放比例 ≤ 0（镜像或退化为点）。"""

    def __init__(self, message: str, triangle_id: int | None = None):
        super().__init__(message)
        self.triangle_id = triangle_id


class DuplicateIdError(EnclosureError):
    def __init__(self, triangle_id: int):
        super().__init__(f"重复的三角形 id: {triangle_id}")
        self.triangle_id = triangle_id


class SlabError(EnclosureError):
    """trim 的 slab 无界或不在三角形 x 区间内。"""


class PolygonError(EnclosureError):
    """参考多边形不简单、退化或非逆时针。"""


class ParseError(EnclosureError):
    """输入文件语法错误，带 1 起始的行列号。"""

    def __init__(self, message: str, path: str | Path | None = None, line: int = 0, column: int = 0):
        self.path = str(path) if path is not None else "<input>"
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"{self.path}:{line}:{column}: {message}")
