"""
Classical (realizable) edge labellings of an event graph: the vertices of its
classical polytope.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Iterable, Sequence

from src.conf import messages
from src.conf.config import settings
from src.services.errors import LabellingError, LimitExceededError
from src.services.event_graph import EdgeLabelling, EventGraph, VertexLabelling

logger = logging.getLogger(__name__)

# prefix length used to split the partition search across worker processes
_SPLIT_DEPTH = 4


def equality_labelling(graph: EventGraph, labelling: VertexLabelling | Sequence[int]) -> EdgeLabelling:
    """
    Edge ``{i, j}`` is labelled 1 iff ``i`` and ``j`` carry the same vertex label.

    :param graph: The event graph.
    :type graph: EventGraph
    :param labelling: One label per vertex.
    :type labelling: VertexLabelling | Sequence[int]
    :return: The equality labelling.
    :rtype: EdgeLabelling
    :raises LabellingError: if a vertex has no label.
    """
    labels = labelling.labels if isinstance(labelling, VertexLabelling) else tuple(labelling)
    if len(labels) != graph.n:
        raise LabellingError(messages.MISSING_VERTEX_LABEL.format(size=len(labels), expected=graph.n))
    return EdgeLabelling(tuple(int(labels[i - 1] == labels[j - 1]) for i, j in graph.edges))


def _check_total(graph: EventGraph, labelling: EdgeLabelling) -> None:
    if len(labelling.values) != graph.m:
        raise LabellingError(messages.PARTIAL_LABELLING.format(size=len(labelling.values), expected=graph.m))


def is_realizable(graph: EventGraph, labelling: EdgeLabelling) -> bool:
    """
    Decides whether a {0,1}-labelling is the equality labelling of some vertex labelling.

    Depth-first search over the edges labelled 1; on visiting a vertex, its edges
    labelled 0 are checked against the vertices already reached in the current
    component. Runs in O(n + m).

    :param graph: The event graph.
    :type graph: EventGraph
    :param labelling: Total {0,1}-labelling.
    :type labelling: EdgeLabelling
    :return: True iff no 0-edge joins two vertices connected by a path of 1-edges.
    :rtype: bool
    """
    _check_total(graph, labelling)
    values = labelling.values
    index = graph.edge_index
    done = [False] * (graph.n + 1)
    for root in graph.vertices:
        if done[root]:
            continue
        in_component = set()
        stack = [root]
        done[root] = True
        while stack:
            v = stack.pop()
            in_component.add(v)
            for w in graph.neighbours[v]:
                value = values[index[(min(v, w), max(v, w))]]
                if value == 0 and w in in_component:
                    return False
                if value == 1 and not done[w]:
                    done[w] = True
                    stack.append(w)
    return True


def _back_edges(graph: EventGraph) -> list[list[tuple[int, int]]]:
    back: list[list[tuple[int, int]]] = [[] for _ in range(graph.n + 1)]
    for k, (i, j) in enumerate(graph.edges):
        back[j].append((i, 1 << k))
    return back


def _generate(graph: EventGraph, prefix: tuple[int, ...]) -> set[int]:
    """Bit masks of the equality labellings of every restricted growth string extending ``prefix``."""
    n = graph.n
    back = _back_edges(graph)
    labels = [0] * (n + 1)
    found: set[int] = set()

    mask = 0
    top = 0
    for v, x in enumerate(prefix, start=1):
        labels[v] = x
        mask |= sum(bit for u, bit in back[v] if labels[u] == x)
        top = max(top, x + 1)

    def generate(v: int, next_label: int, bits: int) -> None:
        if v > n:
            found.add(bits)
            return
        for x in range(next_label + 1):
            labels[v] = x
            extra = 0
            for u, bit in back[v]:
                if labels[u] == x:
                    extra |= bit
            generate(v + 1, next_label + (x == next_label), bits | extra)

    generate(len(prefix) + 1, top, mask)
    return found


def _prefixes(depth: int) -> list[tuple[int, ...]]:
    prefixes = [()]
    for _ in range(depth):
        prefixes = [p + (x,) for p in prefixes for x in range((max(p) + 2) if p else 1)]
    return prefixes


def _unpack(graph: EventGraph, mask: int) -> EdgeLabelling:
    return EdgeLabelling(tuple((mask >> k) & 1 for k in range(graph.m)))


def enumerate_classical_labellings(graph: EventGraph, limit: int | None = None,
                                   threads: int | None = None) -> frozenset[EdgeLabelling]:
    """
    Generates the classical labellings from vertex partitions.

    Partitions are enumerated as restricted growth strings (vertex ``i`` takes a
    label from ``0..next``); labellings produced by several partitions are
    deduplicated through their packed bit masks.

    :param graph: The event graph.
    :type graph: EventGraph
    :param limit: Largest accepted vertex count, defaults to the configured limit.
    :type limit: int | None
    :param threads: Worker processes; ``None`` uses the configured value, ``0`` all cores.
    :type threads: int | None
    :return: The set Eq(G) of classical labellings.
    :rtype: frozenset[EdgeLabelling]
    :raises LimitExceededError: when the graph has too many vertices.
    """
    limit = settings.enumeration_limit if limit is None else limit
    if graph.n > limit:
        raise LimitExceededError(messages.LIMIT_EXCEEDED.format(what="enumeration", limit=limit, size=graph.n))
    workers = settings.threads if threads is None else threads
    workers = workers or os.cpu_count() or 1
    if workers > 1 and graph.n > _SPLIT_DEPTH + 4:
        prefixes = _prefixes(_SPLIT_DEPTH)
        masks: set[int] = set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_generate, [graph] * len(prefixes), prefixes):
                masks |= part
    else:
        masks = _generate(graph, ())
    logger.info("graph %s: %d classical labellings", graph.key(), len(masks))
    return frozenset(_unpack(graph, mask) for mask in masks)


def brute_force_labellings(graph: EventGraph, max_edges: int | None = None) -> frozenset[EdgeLabelling]:
    """
    Filters all 2^m labellings through :func:`is_realizable`.

    :raises LimitExceededError: when the graph has more than ``max_edges`` edges.
    """
    max_edges = settings.brute_force_max_edges if max_edges is None else max_edges
    if graph.m > max_edges:
        raise LimitExceededError(messages.LIMIT_EXCEEDED.format(what="brute force", limit=max_edges, size=graph.m))
    candidates = (EdgeLabelling(values) for values in product((0, 1), repeat=graph.m))
    return frozenset(labelling for labelling in candidates if is_realizable(graph, labelling))


def is_k_realizable(graph: EventGraph, labelling: EdgeLabelling, k: int, limit: int | None = None) -> bool:
    """
    Whether the labelling is the equality labelling of a vertex labelling using at most ``k`` labels.

    Brute force over all ``k^n`` vertex labellings; the general problem is NP-complete.
    """
    limit = settings.k_realizability_limit if limit is None else limit
    if graph.n > limit:
        raise LimitExceededError(messages.LIMIT_EXCEEDED.format(what="k-realizability", limit=limit, size=graph.n))
    _check_total(graph, labelling)
    if graph.n == 0:
        return True
    for labels in product(range(k), repeat=graph.n):
        if equality_labelling(graph, labels) == labelling:
            return True
    return False


def labellings_as_points(labellings: Iterable[EdgeLabelling]) -> list[tuple[int, ...]]:
    """0/1 points sorted by number of ones, then lexicographically."""
    return sorted((lab.values for lab in labellings), key=lambda p: (sum(p), p))
