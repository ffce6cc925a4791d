"""无 CLI 依赖的领域核心。"""

from homothet_enclosure.core.geometry import (
    AffineMap,
    CanonicalTriangle,
    HomotheticFamily,
    Point,
    Rational,
    ReferenceTriangle,
    apply_map,
    canonicalizing_map,
    contains_point,
    point_in_canonical,
    validate_homothet,
)
from homothet_enclosure.core.index import (
    EnclosureIndex,
    SearchMode,
    Slab,
    build_index,
    node_query_rectangles,
    node_query_triangles,
    query,
    trim,
)
from homothet_enclosure.core.stab import IntervalStab, stab_build
from homothet_enclosure.core.stats import QueryStats

__all__ = [
    "AffineMap",
    "CanonicalTriangle",
    "CascadeIndex",
    "EnclosureIndex",
    "HomotheticFamily",
    "Instance",
    "IntervalStab",
    "Point",
    "PolygonIndex",
    "QueryStats",
    "Rational",
    "ReferencePolygon",
    "ReferenceTriangle",
    "SearchMode",
    "Slab",
    "apply_map",
    "build_cascade",
    "build_index",
    "build_polygon_index",
    "canonicalizing_map",
    "contains_point",
    "gen_instance",
    "locate_path",
    "node_query_rectangles",
    "node_query_triangles",
    "oracle_query",
    "point_in_canonical",
    "query",
    "query_polygons",
    "stab_build",
    "triangulate_reference",
    "trim",
    "validate_homothet",
]

_LAZY_EXPORTS = {
    "CascadeIndex": ("homothet_enclosure.core.cascade", "CascadeIndex"),
    "build_cascade": ("homothet_enclosure.core.cascade", "build_cascade"),
    "locate_path": ("homothet_enclosure.core.cascade", "locate_path"),
    "Instance": ("homothet_enclosure.core.oracle", "Instance"),
    "gen_instance": ("homothet_enclosure.core.oracle", "gen_instance"),
    "oracle_query": ("homothet_enclosure.core.oracle", "oracle_query"),
    "PolygonIndex": ("homothet_enclosure.core.polygon", "PolygonIndex"),
    "ReferencePolygon": ("homothet_enclosure.core.polygon", "ReferencePolygon"),
    "build_polygon_index": ("homothet_enclosure.core.polygon", "build_polygon_index"),
    "query_polygons": ("homothet_enclosure.core.polygon", "query_polygons"),
    "triangulate_reference": ("homothet_enclosure.core.polygon", "triangulate_reference"),
}


def __getattr__(name: str):
    target = _LAZY_EXPORTS.get(name)
    if target is None:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
    module_name, attr = target
    from importlib import import_module

    value = getattr(import_module(module_name), attr)
    globals()[name] = value
    return value
