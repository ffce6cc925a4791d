from fractions import Fraction

import pytest

from homothet_enclosure.core.errors import NonPositiveScaleError, NotHomotheticError, ParseError
from homothet_enclosure.core.fileformat import (
    dump_polygons,
    dump_queries,
    dump_triangles,
    format_answer,
    load_triangles,
    parse_polygons,
    parse_queries,
    parse_rational,
    parse_triangles,
)
from homothet_enclosure.core.geometry import CanonicalTriangle, Point, ReferenceTriangle


def test_parse_rational_accepts_integers_and_fractions():
    assert parse_rational("3") == 3
    assert parse_rational("-7/4") == Fraction(-7, 4)
    assert parse_rational("+6/8") == Fraction(3, 4)


@pytest.mark.parametrize("token", ["3/0", "1.5", "1e3", "a/b", "3//4"])
def test_parse_rational_rejects_malformed_tokens(token):
    with pytest.raises(ParseError):
        parse_rational(token)


def test_parse_triangles_with_comments_and_anchor_form():
    family, triangles = parse_triangles(
        "# three triangles\n"
        "1 0 0 4\n"
        "\n"
        "2 2 2 4   # overlapping\n"
        "3 5 0 2\n"
    )
    assert family.is_canonical
    assert triangles == [
        CanonicalTriangle.of(1, 0, 0, 4),
        CanonicalTriangle.of(2, 2, 2, 4),
        CanonicalTriangle.of(3, 5, 0, 2),
    ]


def test_parse_triangles_vertex_form_under_reference():
    family, triangles = parse_triangles("ref 0 0 2 0 0 2\n9 1 1 5 1 1 5\n")
    assert not family.is_canonical
    (t,) = triangles
    assert (t.id, t.s) == (9, 2)
    assert family.anchor_of(t) == Point.of(1, 1)


def test_parse_errors_carry_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_triangles("1 0 0 4\n2 0 3/0 1\n", "tri.txt")
    assert (info.value.line, info.value.column) == (2, 5)
    assert str(info.value).startswith("tri.txt:2:5:")

    with pytest.raises(ParseError) as info:
        parse_triangles("1 0 0\n")
    assert info.value.line == 1

    with pytest.raises(ParseError) as info:
        parse_triangles("1 0 0 4\nref 0 0 1 0 0 1\n")
    assert info.value.line == 2

    with pytest.raises(ParseError):
        parse_triangles("x 0 0 4\n")


def test_domain_errors_name_the_triangle():
    with pytest.raises(NotHomotheticError) as info:
        parse_triangles("4 2 3 5 3 2 7\n")
    assert info.value.triangle_id == 4
    with pytest.raises(NonPositiveScaleError) as info:
        parse_triangles("5 0 0 -1\n")
    assert info.value.triangle_id == 5


def test_degenerate_reference_header_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_triangles("ref 0 0 1 1 2 2\n")


def test_parse_queries_and_polygons():
    assert parse_queries("5/2 5/2\n# c\n-1 0\n") == [Point.of("5/2", "5/2"), Point.of(-1, 0)]
    with pytest.raises(ParseError):
        parse_queries("1 2 3\n")

    reference, instances = parse_polygons("poly 0 0 1 0 1 1 0 1\n7 0 0 4\n")
    assert len(reference.vertices) == 4
    assert instances == [(7, Point.of(0, 0), Fraction(4))]
    with pytest.raises(ParseError):
        parse_polygons("7 0 0 4\n")
    with pytest.raises(ParseError):
        parse_polygons("")
    with pytest.raises(ParseError):
        parse_polygons("poly 0 0 1 1 1 0 0 1\n")


def test_dump_and_load_triangles_keep_original_space(tmp_path):
    reference = ReferenceTriangle.of(0, 0, 2, 1, 1, 3)
    family, triangles = parse_triangles("ref 0 0 2 1 1 3\n1 1 1 2\n2 -1/2 3 1/3\n")
    path = tmp_path / "inst.triangles"
    path.write_text(dump_triangles(reference, triangles), encoding="utf-8")
    loaded_family, loaded = load_triangles(path)
    assert loaded == triangles
    assert loaded_family.reference == family.reference
    assert "2 -1/2 3 1/3" in path.read_text(encoding="utf-8")


def test_dump_polygons_and_queries():
    reference, instances = parse_polygons("poly 0 0 4 0 1 1 0 4\n3 1/2 0 2\n")
    assert dump_polygons(reference, instances) == "poly 0 0 4 0 1 1 0 4\n3 1/2 0 2\n"
    assert dump_queries([Point.of("5/2", -1)]) == "5/2 -1\n"


def test_format_answer():
    assert format_answer(Point.of("5/2", "5/2"), [2]) == "5/2 5/2 : 2"
    assert format_answer(Point.of(0, 0), [1, 3]) == "0 0 : 1 3"
    assert format_answer(Point.of(1, 1), []) == "1 1 : -"
