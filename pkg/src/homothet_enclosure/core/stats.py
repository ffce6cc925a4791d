"""查询计数记录。每次查询新建一份，随结果返回，不做全局累加。"""
from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass
class QueryStats:
    nodes_visited: int = 0
    # 与 L(v) / M(v) 中 y 键的比较：定位 + 左扫
    key_comparisons: int = 0
    candidates_examined: int = 0
    reported: int = 0
    # I(v) 区间树内的比较，单独统计
    rect_comparisons: int = 0

    def merge(self, other: "QueryStats") -> "QueryStats":
        return QueryStats(**{key: value + getattr(other, key) for key, value in asdict(self).items()})

    def as_dict(self) -> dict[str, int]:
        return asdict(self)
