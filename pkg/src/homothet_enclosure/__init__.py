"""homothet-enclosure：同形三角形 / 多边形的输出敏感点包含索引。"""

__version__ = "1.0.0"
