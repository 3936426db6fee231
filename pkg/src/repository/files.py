"""
Readers and writers for the files exchanged on the command line: graphs,
weightings, states and distributions (JSON), inequality (.ieq) and vertex
(.poi) text files, and labelling bit strings.

Malformed input raises :class:`~src.services.errors.FileFormatError` naming the
file and, where it is known, the line.
"""
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from pydantic import BaseModel, ValidationError

from src.conf import messages
from src.conf.config import VERSION
from src.schemas import (DistributionsModel, GraphModel, InequalityModel, StatesModel, WeightingModel,
                         to_fraction)
from src.services.errors import EventGraphError, FileFormatError
from src.services.event_graph import EdgeLabelling, EdgeWeighting, EventGraph, build_graph
from src.services.polytope import LinearEquality, LinearInequality, Point, render_inequality
from src.services.prep_nc import DistributionSet
from src.services.quantum import PureStateSet

_EDGE = re.compile(r"\((\d+)\s*,\s*(\d+)\)")


class IeqFile(NamedTuple):
    coord_labels: tuple[Hashable, ...]
    facets: tuple[LinearInequality, ...]
    equalities: tuple[LinearEquality, ...]


class PoiFile(NamedTuple):
    coord_labels: tuple[Hashable, ...]
    vertices: tuple[Point, ...]


def _load_model(path: Path, model: type[BaseModel]) -> BaseModel:
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise FileFormatError(path.name, err.lineno, err.msg) from None
    try:
        return model.model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise FileFormatError(path.name, _key_line(text, first["loc"]), f"{field}: {first['msg']}") from None


def _key_line(text: str, loc: tuple) -> int:
    """1-based line of the first mention of the offending top-level key, 0 when there is none."""
    if not loc or not isinstance(loc[0], str):
        return 0
    needle = json.dumps(loc[0])
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return 0


def graph_from_model(body: GraphModel) -> EventGraph:
    return build_graph(body.n, body.edges)


def graph_to_model(graph: EventGraph) -> GraphModel:
    return GraphModel(n=graph.n, edges=list(graph.edges))


def parse_graph_text(text: str, name: str = "<text>") -> EventGraph:
    """
    Reads one ``i j`` edge per line; ``#`` starts a comment.

    A line holding a single integer sets the number of vertices, otherwise it
    is the largest vertex mentioned.
    """
    edges, n = [], 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            numbers = [int(f) for f in fields]
        except ValueError:
            raise FileFormatError(name, lineno, f"expected integers, got {line!r}") from None
        if len(numbers) == 1:
            n = max(n, numbers[0])
        elif len(numbers) == 2:
            edges.append(numbers)
            n = max(n, *numbers)
        else:
            raise FileFormatError(name, lineno, f"expected 'i j', got {line!r}")
    try:
        return build_graph(n, edges)
    except EventGraphError as err:
        raise FileFormatError(name, 0, str(err)) from None


def read_graph(path: Path | str) -> EventGraph:
    """
    Reads a graph from ``.json`` (``{"n": .., "edges": [[i, j], ..]}``) or ``.txt``.

    :param path: The file.
    :type path: Path | str
    :return: The canonical graph.
    :rtype: EventGraph
    :raises FileFormatError: on malformed content or an unknown extension.
    """
    path = Path(path)
    if path.suffix == ".txt":
        return parse_graph_text(path.read_text(encoding="utf-8"), path.name)
    if path.suffix != ".json":
        raise FileFormatError(path.name, 0, messages.UNKNOWN_EXTENSION.format(file=path.name))
    body = _load_model(path, GraphModel)
    try:
        return graph_from_model(body)
    except EventGraphError as err:
        raise FileFormatError(path.name, 0, str(err)) from None


def graph_to_json(graph: EventGraph) -> str:
    return json.dumps({"n": graph.n, "edges": [list(e) for e in graph.edges]}) + "\n"


def graph_from_labels(labels: Sequence[Hashable]) -> EventGraph:
    """Smallest graph whose edge list is ``labels``."""
    return build_graph(max((max(e) for e in labels), default=0), labels)


def weighting_from_model(body: WeightingModel, graph: EventGraph) -> EdgeWeighting:
    return EdgeWeighting.of(graph, [to_fraction(v) for v in body.values])


def read_weighting(path: Path | str, graph: EventGraph) -> EdgeWeighting:
    """Reads ``{"values": [..]}`` with one rational per edge in canonical edge order."""
    path = Path(path)
    body = _load_model(path, WeightingModel)
    try:
        return weighting_from_model(body, graph)
    except EventGraphError as err:
        raise FileFormatError(path.name, 0, str(err)) from None


def states_from_model(body: StatesModel) -> PureStateSet:
    return PureStateSet.of(body.dim, [[complex(re, im) for re, im in state] for state in body.states])


def states_to_model(states: PureStateSet) -> StatesModel:
    return StatesModel(dim=states.dim,
                       states=[[(float(a.real), float(a.imag)) for a in state] for state in states.states])


def read_states(path: Path | str) -> PureStateSet:
    """Reads ``{"dim": d, "states": [[[re, im], ..], ..]}``."""
    path = Path(path)
    body = _load_model(path, StatesModel)
    try:
        return states_from_model(body)
    except EventGraphError as err:
        raise FileFormatError(path.name, 0, str(err)) from None


def states_to_json(states: PureStateSet) -> str:
    return states_to_model(states).model_dump_json() + "\n"


def distributions_from_model(body: DistributionsModel) -> DistributionSet:
    return DistributionSet.of([[to_fraction(p) for p in mu] for mu in body.mus], body.ontic_size)


def read_distributions(path: Path | str) -> DistributionSet:
    """Reads ``{"ontic_size": k, "mus": [[p1, .., pk], ..]}``; entries may be ``"a/b"`` strings."""
    path = Path(path)
    body = _load_model(path, DistributionsModel)
    try:
        return distributions_from_model(body)
    except EventGraphError as err:
        raise FileFormatError(path.name, 0, str(err)) from None


def inequality_to_model(ineq: LinearInequality | LinearEquality,
                        labels: Sequence[Hashable] | None = None) -> InequalityModel:
    text = render_inequality(ineq, labels) if labels is not None else ineq.to_text()
    return InequalityModel(coeffs=list(ineq.coeffs), rhs=ineq.rhs, text=text)


def inequality_from_model(body: InequalityModel) -> LinearInequality:
    return LinearInequality.canonical(body.coeffs, body.rhs)


def _header(comments: Mapping[str, object] | None) -> list[str]:
    lines = [f"# eventgraph-polytopes {VERSION}"]
    lines += [f"# {key}={value}" for key, value in (comments or {}).items()]
    return lines


def _coords_line(labels: Sequence[Hashable]) -> str:
    if all(isinstance(label, tuple) for label in labels):
        return "EDGES " + " ".join(f"({i},{j})" for i, j in labels)
    return "VERTICES " + " ".join(str(label) for label in labels)


def format_ieq(labels: Sequence[Hashable], facets: Iterable[LinearInequality],
               equalities: Iterable[LinearEquality] = (), comments: Mapping[str, object] | None = None) -> str:
    """
    The .ieq text: comment header, ``DIM m``, the coordinate line, one
    inequality per line, then ``EQ`` lines for equalities.

    :param labels: Coordinate labels, edges or vertices.
    :type labels: Sequence[Hashable]
    :param facets: Inequalities, written in the given order.
    :type facets: Iterable[LinearInequality]
    :param equalities: Equalities of the affine hull.
    :type equalities: Iterable[LinearEquality]
    :param comments: ``key=value`` pairs written as header comments, such as the seed.
    :type comments: Mapping[str, object] | None
    :return: The file content.
    :rtype: str
    """
    lines = _header(comments)
    lines.append(f"DIM {len(labels)}")
    lines.append(_coords_line(labels))
    lines += [f.to_text() for f in facets]
    lines += [f"EQ {e.to_text()}" for e in equalities]
    return "\n".join(lines) + "\n"


def _parse_coords(line: str, name: str, lineno: int) -> tuple[Hashable, ...]:
    keyword, _, rest = line.partition(" ")
    if keyword == "EDGES":
        labels = tuple((int(i), int(j)) for i, j in _EDGE.findall(rest))
        if len(labels) != len(rest.split()):
            raise FileFormatError(name, lineno, "edges must be written as (i,j)")
        return labels
    try:
        return tuple(int(v) for v in rest.split())
    except ValueError:
        raise FileFormatError(name, lineno, f"bad vertex list {rest!r}") from None


def _parse_row(text: str, dim: int, name: str, lineno: int) -> tuple[list[int], int]:
    lhs, _, rhs = text.rpartition("<=") if "<=" in text else text.rpartition("==")
    try:
        coeffs = [int(c) for c in lhs.split()]
        bound = int(rhs)
    except ValueError:
        raise FileFormatError(name, lineno, f"bad inequality {text!r}") from None
    if len(coeffs) != dim:
        raise FileFormatError(name, lineno, messages.DIMENSION_MISMATCH.format(expected=dim, size=len(coeffs)))
    return coeffs, bound


def parse_ieq(text: str, name: str = "<text>") -> IeqFile:
    """
    Reads the .ieq text written by :func:`format_ieq`.

    :raises FileFormatError: naming the offending line.
    """
    dim, labels = None, None
    facets, equalities = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("DIM"):
            try:
                dim = int(line.split()[1])
            except (IndexError, ValueError):
                raise FileFormatError(name, lineno, f"bad DIM line {line!r}") from None
            continue
        if line.startswith(("EDGES", "VERTICES")):
            labels = _parse_coords(line, name, lineno)
            continue
        if dim is None:
            raise FileFormatError(name, lineno, "DIM line missing before the first inequality")
        try:
            if line.startswith("EQ"):
                coeffs, bound = _parse_row(line[2:], dim, name, lineno)
                equalities.append(LinearEquality.canonical(coeffs, bound))
            elif "<=" in line:
                coeffs, bound = _parse_row(line, dim, name, lineno)
                facets.append(LinearInequality.canonical(coeffs, bound))
            else:
                raise FileFormatError(name, lineno, f"expected '<=' or 'EQ', got {line!r}")
        except FileFormatError:
            raise
        except EventGraphError as err:
            raise FileFormatError(name, lineno, str(err)) from None
    if dim is None:
        raise FileFormatError(name, 0, "no DIM line")
    if labels is None:
        labels = tuple(range(1, dim + 1))
    if len(labels) != dim:
        raise FileFormatError(name, 0, messages.DIMENSION_MISMATCH.format(expected=dim, size=len(labels)))
    return IeqFile(labels, tuple(facets), tuple(equalities))


def read_ieq(path: Path | str) -> IeqFile:
    path = Path(path)
    return parse_ieq(path.read_text(encoding="utf-8"), path.name)


def format_poi(labels: Sequence[Hashable], vertices: Iterable[Sequence[Fraction]],
               comments: Mapping[str, object] | None = None) -> str:
    """The .poi text: header, ``DIM m``, the coordinate line, then one row per vertex."""
    lines = _header(comments)
    lines.append(f"DIM {len(labels)}")
    lines.append(_coords_line(labels))
    lines += [" ".join(str(x) for x in vertex) for vertex in vertices]
    return "\n".join(lines) + "\n"


def parse_poi(text: str, name: str = "<text>") -> PoiFile:
    dim, labels = None, None
    vertices = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("DIM"):
            dim = int(line.split()[1])
        elif line.startswith(("EDGES", "VERTICES")):
            labels = _parse_coords(line, name, lineno)
        else:
            try:
                row = tuple(Fraction(x) for x in line.split())
            except (ValueError, ZeroDivisionError):
                raise FileFormatError(name, lineno, f"bad point {line!r}") from None
            if dim is not None and len(row) != dim:
                raise FileFormatError(name, lineno, messages.DIMENSION_MISMATCH.format(expected=dim, size=len(row)))
            vertices.append(row)
    if dim is None:
        raise FileFormatError(name, 0, "no DIM line")
    return PoiFile(labels if labels is not None else tuple(range(1, dim + 1)), tuple(vertices))


def format_labellings(labellings: Iterable[EdgeLabelling]) -> str:
    """One bit string per line in canonical edge order, e.g. ``110`` for K3."""
    return "".join(f"{labelling}\n" for labelling in labellings)


def parse_labellings(text: str, graph: EventGraph, name: str = "<text>") -> list[EdgeLabelling]:
    labellings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            labellings.append(EdgeLabelling.parse(graph, line))
        except EventGraphError as err:
            raise FileFormatError(name, lineno, str(err)) from None
    return labellings
