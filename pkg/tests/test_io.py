import pytest
from hypothesis import given, settings

from gdcst import (
    CCST,
    FCST,
    MDST,
    FmDST,
    MinDegree,
    ParseError,
    parse_instance,
    parse_source,
    render_instance,
    render_source,
    to_dot,
)

from helpers import FIXTURES, tri1
from strategies import instances


@settings(max_examples=200)
@given(instances(max_n=6, max_m=9))
def test_render_parse_round_trip(inst):
    text = render_instance(inst)
    back = parse_instance(text)
    assert back.graph == inst.graph
    assert back.deps == inst.deps
    assert back.bounds == inst.bounds
    # with no edges the text cannot tell weighted from unweighted
    assert back.weights == (inst.weights if inst.m else None)
    assert render_instance(back) == text


@settings(max_examples=50)
@given(instances(max_n=5, max_m=7, weighted=False))
def test_unweighted_round_trip(inst):
    back = parse_instance(render_instance(inst))
    assert back.weights is None and back.bounds == inst.bounds


def test_tri1_text():
    text = render_instance(tri1())
    assert text == "# name: TRI1\np gdcst 3 3\ne 1 2 5\ne 2 3 1\ne 1 3 2\nd 1 2\nb 2 1 1\n"
    assert parse_instance(text).name == "TRI1"


def test_comments_and_blank_lines():
    text = "# a comment\n\np gdcst 2 1\n# another\ne 1 2\n"
    inst = parse_instance(text)
    assert inst.m == 1 and inst.name == ""


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 1 2\n", 1),
        ("p gdcst 2 1\ne 1 3\n", 2),
        ("p gdcst 2 1\ne 1 1\n", 2),
        ("p gdcst 3 2\ne 1 2\ne 2 1\n", 3),
        ("p gdcst 3 2\ne 1 2 4\ne 2 3\n", 3),
        ("p gdcst 2 1\ne 1 2\nd 1 1\n", 3),
        ("p gdcst 3 2\ne 1 2\ne 2 3\nd 1 2\nd 1 2\n", 5),
        ("p gdcst 3 2\ne 1 2\ne 2 3\nd 1 2\nb 2 2 2\n", 5),
        ("p gdcst 3 2\ne 1 2\ne 2 3\nb 2 1 0\n", 4),
        ("p gdcst 3 2\ne 1 2\ne 2 3\nd 1 9\n", 4),
        ("p gdcst 3 2\ne 1 2\ne 2 3\nx 1\n", 4),
        ("p gdcst 2 1\ne 1 two\n", 2),
        ("p gdcst 2 1\np gdcst 2 1\n", 2),
        ("p gdcst 2 1\ne 1 2\ne 1 2\n", 3),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_edge_count_mismatch():
    with pytest.raises(ParseError):
        parse_instance("p gdcst 3 2\ne 1 2\n")


class TestSource:
    def test_kinds(self):
        text = "p src 3 3\ne 1 2 4\ne 2 3 1\ne 1 3 2\nr 1 2\n"
        ccst = parse_source(text, "ccst")
        assert isinstance(ccst, CCST) and ccst.conflict == ((0, 1),) and ccst.weights == (4, 1, 2)
        assert isinstance(parse_source(text, "fcst"), FCST)

    def test_vertex_defaults(self):
        text = "p src 3 2\ne 1 2\ne 2 3\nv 2 1\n"
        mdst = parse_source(text, "mdst")
        assert isinstance(mdst, MDST) and mdst.dstar == (2, 1, 2)
        mind = parse_source(text, "mindeg", k=2)
        assert isinstance(mind, MinDegree) and mind.lower == (2, 1, 2) and mind.upper == (1, 2, 1)
        fm = parse_source(text, "fmdst")
        assert isinstance(fm, FmDST) and fm.c_set == frozenset({1}) and fm.lower[1] == 1

    def test_errors(self):
        with pytest.raises(ValueError):
            parse_source("p src 2 1\ne 1 2\n", "lift")
        with pytest.raises(ParseError):
            parse_source("p src 2 1\ne 1 2\nr 1 1\n", "ccst")
        with pytest.raises(ParseError):
            parse_source("p src 2 1\ne 1 2\nv 3 1\n", "mdst")
        with pytest.raises(ParseError):
            parse_source("p gdcst 2 1\ne 1 2\n", "mdst")

    @pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.src")), ids=lambda p: p.name)
    def test_fixture_round_trip(self, path):
        text = path.read_text()
        assert render_source(parse_source(text, path.stem)) == text


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.gdcst")), ids=lambda p: p.name)
def test_instance_fixture_round_trip(path):
    text = path.read_text()
    assert render_instance(parse_instance(text)) == text


def test_dot_output():
    dot = to_dot(tri1())
    assert dot.startswith("graph G {") and '1 -- 2 [label="e1 w=5"];' in dot
    assert "digraph" not in dot
    with_deps = to_dot(tri1(), deps=True)
    assert "digraph D {" in with_deps and "e1 -> e2;" in with_deps
