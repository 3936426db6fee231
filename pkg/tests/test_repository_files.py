import json
from fractions import Fraction

import pytest

from src.repository.files import (format_ieq, format_labellings, format_poi, graph_from_labels, parse_graph_text,
                                  parse_ieq, parse_labellings, parse_poi, read_distributions, read_graph,
                                  read_states, read_weighting)
from src.services.classicality import enumerate_classical_labellings
from src.services.errors import FileFormatError
from src.services.event_graph import complete_graph, cycle_graph
from src.services.polytope import LinearEquality, LinearInequality


def test_graph_text_with_comments_and_isolated_vertex():
    graph = parse_graph_text("# square plus one\n5\n1 2\n2 3  # side\n3 4\n4 1\n")
    assert graph.n == 5
    assert graph.edges == cycle_graph(4).edges


def test_graph_text_errors():
    with pytest.raises(FileFormatError) as err:
        parse_graph_text("1 2\n2 x\n", "g.txt")
    assert (err.value.file, err.value.line) == ("g.txt", 2)
    with pytest.raises(FileFormatError) as err:
        parse_graph_text("1 2 3\n", "g.txt")
    assert err.value.line == 1
    with pytest.raises(FileFormatError):
        parse_graph_text("2 2\n", "g.txt")


def test_read_graph_json(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps({"n": 3, "edges": [[2, 1], [3, 1], [2, 3]]}), encoding="utf-8")
    assert read_graph(path) == complete_graph(3)


def test_read_graph_rejects_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3,\n"edges": [[1, 2]\n', encoding="utf-8")
    with pytest.raises(FileFormatError) as err:
        read_graph(path)
    assert err.value.file == "bad.json"
    assert err.value.line >= 2
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"edges": []}), encoding="utf-8")
    with pytest.raises(FileFormatError):
        read_graph(missing)


def test_read_graph_names_the_bad_field(tmp_path):
    path = tmp_path / "typed.json"
    path.write_text('{\n  "n": "x",\n  "edges": []\n}\n', encoding="utf-8")
    with pytest.raises(FileFormatError) as err:
        read_graph(path)
    assert err.value.line == 2
    assert err.value.detail.startswith("n: ")
    assert "valid integer" in err.value.detail
    assert "errors.pydantic.dev" not in str(err.value)


def test_read_graph_unknown_extension(tmp_path):
    path = tmp_path / "graph.xml"
    path.write_text("<graph/>", encoding="utf-8")
    with pytest.raises(FileFormatError):
        read_graph(path)


def test_graph_from_labels():
    assert graph_from_labels(((1, 2), (1, 4), (2, 3), (3, 4))) == cycle_graph(4)


def test_read_weighting(tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"values": ["1/3", 0.5, 1]}), encoding="utf-8")
    assert read_weighting(path, complete_graph(3)).values == (Fraction(1, 3), Fraction(1, 2), 1)
    path.write_text(json.dumps({"values": ["3/2", 0, 0]}), encoding="utf-8")
    with pytest.raises(FileFormatError):
        read_weighting(path, complete_graph(3))


def test_read_states(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"dim": 2, "states": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}), encoding="utf-8")
    states = read_states(path)
    assert states.dim == 2
    assert states.states[1][1] == 1j


def test_read_distributions(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"ontic_size": 2, "mus": [["1/2", "1/2"], [1, 0], [0, 1]]}), encoding="utf-8")
    assert read_distributions(path).mus[0] == (Fraction(1, 2), Fraction(1, 2))
    path.write_text(json.dumps({"ontic_size": 3, "mus": [["1/2", "1/2"]]}), encoding="utf-8")
    with pytest.raises(FileFormatError):
        read_distributions(path)


def test_ieq_text():
    edges = complete_graph(3).edges
    text = format_ieq(edges, [LinearInequality((1, 1, -1), 1)], [LinearEquality((1, -1, 0), 0)],
                      comments={"seed": 7})
    assert text.splitlines() == [
        "# eventgraph-polytopes 0.1.0",
        "# seed=7",
        "DIM 3",
        "EDGES (1,2) (1,3) (2,3)",
        "1 1 -1 <= 1",
        "EQ 1 -1 0 == 0",
    ]
    stored = parse_ieq(text)
    assert stored.coord_labels == edges
    assert stored.facets == (LinearInequality((1, 1, -1), 1),)
    assert stored.equalities == (LinearEquality((1, -1, 0), 0),)


def test_ieq_over_vertices():
    stored = parse_ieq("DIM 2\nVERTICES 1 2\n1 1 <= 1\n")
    assert stored.coord_labels == (1, 2)


def test_ieq_without_coordinate_line():
    assert parse_ieq("DIM 2\n-1 0 <= 0\n").coord_labels == (1, 2)


@pytest.mark.parametrize("text, line", [
    ("1 1 <= 1\n", 1),
    ("DIM 3\n1 1 <= 1\n", 2),
    ("DIM 2\n# note\n1 1 1\n", 3),
    ("DIM 2\n1 a <= 1\n", 2),
    ("DIM 2\n0 0 <= 1\n", 2),
    ("DIM 2\nEDGES (1,2) 3\n", 2),
    ("", 0),
])
def test_ieq_errors_name_the_line(text, line):
    with pytest.raises(FileFormatError) as err:
        parse_ieq(text, "x.ieq")
    assert err.value.line == line
    assert str(err.value).startswith(f"x.ieq:{line}:")


def test_poi_text():
    edges = cycle_graph(4).edges
    vertices = [(Fraction(0),) * 4, (Fraction(1, 2),) * 4]
    stored = parse_poi(format_poi(edges, vertices))
    assert stored.coord_labels == edges
    assert stored.vertices == tuple(vertices)
    with pytest.raises(FileFormatError) as err:
        parse_poi("DIM 2\n0 0\n1\n", "x.poi")
    assert err.value.line == 3


def test_labelling_bits():
    k3 = complete_graph(3)
    labellings = enumerate_classical_labellings(k3)
    assert set(parse_labellings(format_labellings(labellings), k3)) == labellings
    with pytest.raises(FileFormatError) as err:
        parse_labellings("111\n1x0\n", k3, "bits.txt")
    assert err.value.line == 2
