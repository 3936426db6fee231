"""
Event graphs, their edge labellings and weightings, graph constructors and combinators,
and the automorphism group used to classify inequalities.

Vertices are labelled ``1..n``. The edge list is sorted lexicographically and that
order is the coordinate order of every labelling, weighting, polytope and inequality.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Real
from typing import Iterable, Mapping, NamedTuple, Sequence

from src.conf import messages
from src.conf.config import settings
from src.services.errors import GraphError, LabellingError, LimitExceededError

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
Permutation = tuple[int, ...]


@dataclass(frozen=True)
class EventGraph:
    """
    Simple undirected graph on vertices ``1..n`` with a canonical (sorted) edge list.

    Build instances through :func:`build_graph` or the constructors below, which
    validate and canonicalise the edges.
    """
    n: int
    edges: tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {edge: k for k, edge in enumerate(self.edges)}

    @cached_property
    def neighbours(self) -> dict[int, tuple[int, ...]]:
        adjacent: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            adjacent[i].append(j)
            adjacent[j].append(i)
        return {v: tuple(sorted(ws)) for v, ws in adjacent.items()}

    def degree(self, v: int) -> int:
        return len(self.neighbours[v])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_index

    def index_of(self, i: int, j: int) -> int:
        """
        Coordinate index of the edge ``{i, j}``.

        :raises GraphError: if the edge is not in the graph.
        """
        edge = (min(i, j), max(i, j))
        try:
            return self.edge_index[edge]
        except KeyError:
            raise GraphError(messages.EDGE_NOT_IN_GRAPH.format(edge=edge)) from None

    def to_text(self) -> str:
        return "".join(f"{i} {j}\n" for i, j in self.edges)

    def key(self) -> str:
        return f"{self.n}:" + ",".join(f"{i}-{j}" for i, j in self.edges)


@dataclass(frozen=True)
class EdgeLabelling:
    """{0,1}-values on the edges, in canonical edge order."""
    values: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(str(v) for v in self.values)

    @classmethod
    def from_mapping(cls, graph: EventGraph, mapping: Mapping[Edge, int]) -> "EdgeLabelling":
        """
        Build a labelling from an edge → value mapping whose domain must equal E(G).

        :param graph: The graph the labelling lives on.
        :type graph: EventGraph
        :param mapping: Value per edge, edges given as ``(i, j)`` in either order.
        :type mapping: Mapping[Edge, int]
        :return: The labelling in canonical edge order.
        :rtype: EdgeLabelling
        """
        normalised = {(min(e), max(e)): v for e, v in mapping.items()}
        if set(normalised) != set(graph.edges):
            raise LabellingError(messages.PARTIAL_LABELLING.format(size=len(normalised), expected=graph.m))
        return cls.of(graph, [normalised[e] for e in graph.edges])

    @classmethod
    def of(cls, graph: EventGraph, values: Sequence[int]) -> "EdgeLabelling":
        if len(values) != graph.m:
            raise LabellingError(messages.PARTIAL_LABELLING.format(size=len(values), expected=graph.m))
        for value in values:
            if value not in (0, 1):
                raise LabellingError(messages.NOT_BINARY.format(value=value))
        return cls(tuple(int(v) for v in values))

    @classmethod
    def parse(cls, graph: EventGraph, bits: str) -> "EdgeLabelling":
        return cls.of(graph, [int(b) if b in "01" else b for b in bits.strip()])


@dataclass(frozen=True)
class EdgeWeighting:
    """
    Values in [0, 1] on the edges, in canonical edge order.

    Values are exact :class:`~fractions.Fraction` for classical constructions and
    floats for quantum overlaps.
    """
    values: tuple[Real, ...]

    @classmethod
    def of(cls, graph: EventGraph, values: Sequence[Real], tolerance: float = 0.0) -> "EdgeWeighting":
        if len(values) != graph.m:
            raise LabellingError(messages.PARTIAL_LABELLING.format(size=len(values), expected=graph.m))
        for value in values:
            if value < -tolerance or value > 1 + tolerance:
                raise LabellingError(messages.WEIGHT_OUT_OF_RANGE.format(value=value))
        return cls(tuple(values))

    @classmethod
    def from_mapping(cls, graph: EventGraph, mapping: Mapping[Edge, Real]) -> "EdgeWeighting":
        normalised = {(min(e), max(e)): v for e, v in mapping.items()}
        if set(normalised) != set(graph.edges):
            raise LabellingError(messages.PARTIAL_LABELLING.format(size=len(normalised), expected=graph.m))
        return cls.of(graph, [normalised[e] for e in graph.edges])

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.values)

    def to_exact(self, max_denominator: int | None = None) -> "EdgeWeighting":
        """
        Rational approximation (continued fractions) of a float-valued weighting.

        :param max_denominator: Largest denominator allowed, defaults to the configured one.
        :type max_denominator: int | None
        :return: Weighting with :class:`~fractions.Fraction` values.
        :rtype: EdgeWeighting
        """
        bound = max_denominator or settings.max_denominator
        return EdgeWeighting(tuple(Fraction(v).limit_denominator(bound) for v in self.values))


@dataclass(frozen=True)
class VertexLabelling:
    """Label (small integer) per vertex ``1..n``; ``labels[v - 1]`` is the label of ``v``."""
    labels: tuple[int, ...]


class StarExtension(NamedTuple):
    graph: EventGraph
    handle: int
    old_edges: tuple[Edge, ...]
    handle_edges: tuple[Edge, ...]


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> EventGraph:
    """
    Validates and canonicalises an edge list.

    :param n: Number of vertices, labelled ``1..n``.
    :type n: int
    :param edges: Pairs of vertices in any order; duplicates collapse.
    :type edges: Iterable[Sequence[int]]
    :return: The canonical graph.
    :rtype: EventGraph
    :raises GraphError: on loops or vertices out of range.
    """
    if n < 0:
        raise GraphError(messages.BELOW_MINIMUM.format(name="graph", minimum=0, n=n))
    canonical = set()
    for pair in edges:
        i, j = (int(x) for x in pair)
        if i == j:
            raise GraphError(messages.LOOP_EDGE.format(edge=(i, j)))
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphError(messages.VERTEX_OUT_OF_RANGE.format(edge=(i, j), n=n))
        canonical.add((min(i, j), max(i, j)))
    return EventGraph(n, tuple(sorted(canonical)))


def complete_graph(n: int) -> EventGraph:
    if n < 1:
        raise GraphError(messages.BELOW_MINIMUM.format(name="complete_graph", minimum=1, n=n))
    return EventGraph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def cycle_graph(n: int) -> EventGraph:
    if n < 3:
        raise GraphError(messages.BELOW_MINIMUM.format(name="cycle_graph", minimum=3, n=n))
    return build_graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> EventGraph:
    if n < 1:
        raise GraphError(messages.BELOW_MINIMUM.format(name="path_graph", minimum=1, n=n))
    return build_graph(n, [(i, i + 1) for i in range(1, n)])


def empty_graph(n: int) -> EventGraph:
    return build_graph(n, [])


def star_graph(n: int) -> EventGraph:
    if n < 1:
        raise GraphError(messages.BELOW_MINIMUM.format(name="star_graph", minimum=1, n=n))
    return build_graph(n, [(1, i) for i in range(2, n + 1)])


def wheel_graph(n: int) -> EventGraph:
    """Wheel on ``n`` vertices: a cycle on ``1..n-1`` with hub ``n``."""
    if n < 4:
        raise GraphError(messages.BELOW_MINIMUM.format(name="wheel_graph", minimum=4, n=n))
    return star_extension(cycle_graph(n - 1)).graph


def disjoint_union(first: EventGraph, second: EventGraph) -> EventGraph:
    shift = first.n
    return build_graph(first.n + second.n, list(first.edges) + [(i + shift, j + shift) for i, j in second.edges])


def glue(first: EventGraph, second: EventGraph, pairs: Sequence[tuple[int, int]]) -> EventGraph:
    """
    Glues two graphs by identifying ``v2`` of ``second`` with ``v1`` of ``first``
    for every pair ``(v1, v2)``.

    The vertices of ``first`` keep their labels; the remaining vertices of
    ``second`` follow in increasing order. Parallel edges created by the
    identification collapse into one.

    :param first: The graph whose labels are kept.
    :type first: EventGraph
    :param second: The graph glued onto it.
    :type second: EventGraph
    :param pairs: Identified vertex pairs ``(v1, v2)``.
    :type pairs: Sequence[tuple[int, int]]
    :return: The glued graph.
    :rtype: EventGraph
    :raises GraphError: when a vertex repeats within one side or lies out of range.
    """
    left = [v1 for v1, _ in pairs]
    right = [v2 for _, v2 in pairs]
    for side, graph, chosen in (("1", first, left), ("2", second, right)):
        seen = set()
        for v in chosen:
            if v in seen:
                raise GraphError(messages.REPEATED_GLUE_VERTEX.format(vertex=v, side=side))
            if not 1 <= v <= graph.n:
                raise GraphError(messages.VERTEX_OUT_OF_RANGE.format(edge=(v, v), n=graph.n))
            seen.add(v)
    relabel = dict(zip(right, left))
    next_label = first.n
    for v in second.vertices:
        if v not in relabel:
            next_label += 1
            relabel[v] = next_label
    edges = list(first.edges) + [(relabel[i], relabel[j]) for i, j in second.edges]
    return build_graph(next_label, edges)


def star_extension(graph: EventGraph) -> StarExtension:
    """
    Adjoins a handle vertex ``n + 1`` adjacent to every vertex of ``graph``.

    :param graph: The exclusivity graph H.
    :type graph: EventGraph
    :return: H★ together with the handle and the partition of its edges into
        edges of H and handle edges.
    :rtype: StarExtension
    """
    handle = graph.n + 1
    handle_edges = tuple((v, handle) for v in graph.vertices)
    extended = build_graph(handle, list(graph.edges) + list(handle_edges))
    return StarExtension(extended, handle, graph.edges, handle_edges)


def subgraph(graph: EventGraph, edges: Iterable[Sequence[int]]) -> EventGraph:
    chosen = build_graph(graph.n, edges)
    for edge in chosen.edges:
        if edge not in graph.edge_index:
            raise GraphError(messages.EDGE_NOT_IN_GRAPH.format(edge=edge))
    return chosen


def is_tree(graph: EventGraph) -> bool:
    if graph.n == 0 or graph.m != graph.n - 1:
        return False
    seen = {1}
    stack = [1]
    while stack:
        for w in graph.neighbours[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == graph.n


def automorphisms(graph: EventGraph, limit: int | None = None) -> list[Permutation]:
    """
    Full automorphism group by backtracking over degree-compatible images.

    A permutation ``p`` is returned as a tuple with ``p[v - 1]`` the image of ``v``.
    The list is sorted, so the identity comes first.

    :param graph: The graph.
    :type graph: EventGraph
    :param limit: Largest accepted vertex count, defaults to the configured limit.
    :type limit: int | None
    :return: All automorphisms.
    :rtype: list[Permutation]
    :raises LimitExceededError: when ``graph.n`` exceeds the limit.
    """
    limit = settings.automorphism_limit if limit is None else limit
    if graph.n > limit:
        raise LimitExceededError(messages.LIMIT_EXCEEDED.format(what="automorphisms", limit=limit, size=graph.n))
    n = graph.n
    adjacency = [[False] * (n + 1) for _ in range(n + 1)]
    for i, j in graph.edges:
        adjacency[i][j] = adjacency[j][i] = True
    degree = [0] + [graph.degree(v) for v in graph.vertices]
    image = [0] * (n + 1)
    used = [False] * (n + 1)
    found: list[Permutation] = []

    def extend(v: int) -> None:
        if v > n:
            found.append(tuple(image[1:]))
            return
        for w in range(1, n + 1):
            if used[w] or degree[w] != degree[v]:
                continue
            if any(adjacency[u][v] != adjacency[image[u]][w] for u in range(1, v)):
                continue
            image[v], used[w] = w, True
            extend(v + 1)
            used[w] = False

    extend(1)
    logger.debug("graph %s has %d automorphisms", graph.key(), len(found))
    return sorted(found)


def edge_permutation(graph: EventGraph, perm: Permutation) -> tuple[int, ...]:
    """
    Coordinate action of a vertex permutation: entry ``k`` is the index of the
    image of edge ``k``.

    :raises GraphError: if ``perm`` does not map E(G) onto itself.
    """
    images = []
    for i, j in graph.edges:
        a, b = perm[i - 1], perm[j - 1]
        edge = (min(a, b), max(a, b))
        if edge not in graph.edge_index:
            raise GraphError(messages.NOT_AN_AUTOMORPHISM.format(perm=perm))
        images.append(graph.edge_index[edge])
    return tuple(images)
