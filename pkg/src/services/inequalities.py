"""
Closed-form inequality families for classical polytopes, their evaluation on
edge weightings, and the catalogue of facet classes of C_{K5}.
"""
from dataclasses import dataclass
from numbers import Real
from typing import NamedTuple, Sequence

from src.conf import messages
from src.services.errors import DimensionError, GraphError
from src.services.event_graph import (EdgeWeighting, EventGraph, automorphisms, complete_graph, cycle_graph,
                                      edge_permutation, wheel_graph)
from src.services.polytope import LinearInequality, Tie


@dataclass(frozen=True)
class Evaluation:
    value: Real
    violation: Real


class TableEntry(NamedTuple):
    inequality: LinearInequality
    class_size: int
    violation: str
    hilbert_dimension: int


def cycle_inequalities(n: int) -> list[LinearInequality]:
    """
    The n facets ``-r_e + sum_{e' != e} r_e' <= n - 2`` of the cycle polytope.

    :param n: Cycle length, at least 3.
    :type n: int
    :return: One inequality per edge, in edge order, over the coordinates of ``cycle_graph(n)``.
    :rtype: list[LinearInequality]
    """
    if n < 3:
        raise GraphError(messages.BELOW_MINIMUM.format(name="cycle_inequalities", minimum=3, n=n))
    return [LinearInequality(tuple(-1 if k == e else 1 for k in range(n)), n - 2) for e in range(n)]


def hn_inequality(n: int) -> LinearInequality:
    """
    Star-minus-clique inequality on K_n: +1 on the star edges ``{1, i}``, -1 on
    every other edge, bound 1.
    """
    if n < 2:
        raise GraphError(messages.BELOW_MINIMUM.format(name="hn_inequality", minimum=2, n=n))
    graph = complete_graph(n)
    return LinearInequality(tuple(1 if i == 1 else -1 for i, _ in graph.edges), 1)


def hn_saturating_family(n: int) -> list[tuple[int, ...]]:
    """
    Classical labellings of K_n saturating h_n that certify it as a facet:
    one star edge ``{1, i}``, then the triangles ``{1, i}, {1, j}, {i, j}``.
    """
    graph = complete_graph(n)
    family = []
    for i in range(2, n + 1):
        point = [0] * graph.m
        point[graph.index_of(1, i)] = 1
        family.append(tuple(point))
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            point = [0] * graph.m
            for a, b in ((1, i), (1, j), (i, j)):
                point[graph.index_of(a, b)] = 1
            family.append(tuple(point))
    return family


def evaluate(ineq: LinearInequality, weighting: EdgeWeighting | Sequence[Real]) -> Evaluation:
    """
    Left-hand side of ``ineq`` at ``weighting`` and the amount by which it exceeds the bound.

    Exact for rational weightings, floating point otherwise.

    :param ineq: The inequality.
    :type ineq: LinearInequality
    :param weighting: Values in the inequality's coordinate order.
    :type weighting: EdgeWeighting | Sequence[Real]
    :return: Value and violation ``max(0, value - rhs)``.
    :rtype: Evaluation
    """
    values = weighting.values if isinstance(weighting, EdgeWeighting) else tuple(weighting)
    if len(values) != ineq.dim:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=ineq.dim, size=len(values)))
    value = ineq.value(values)
    return Evaluation(value, max(value - ineq.rhs, 0))


def orbit(ineq: LinearInequality, graph: EventGraph) -> frozenset[LinearInequality]:
    """
    Distinct images of ``ineq`` under Aut(G) acting on the edge coordinates.

    :param ineq: Inequality over the edge coordinates of ``graph``.
    :type ineq: LinearInequality
    :param graph: The event graph.
    :type graph: EventGraph
    :return: The orbit, ``ineq`` included.
    :rtype: frozenset[LinearInequality]
    """
    if ineq.dim != graph.m:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=graph.m, size=ineq.dim))
    return frozenset(ineq.permuted(edge_permutation(graph, p)) for p in automorphisms(graph))


def from_terms(graph: EventGraph, terms: dict[tuple[int, int], int], rhs: int) -> LinearInequality:
    coeffs = [0] * graph.m
    for (i, j), c in terms.items():
        coeffs[graph.index_of(i, j)] = c
    return LinearInequality(tuple(coeffs), rhs)


def _k5(positive: dict[int, list[str]], negative: dict[int, list[str]], rhs: int) -> LinearInequality:
    terms = {}
    for sign, groups in ((1, positive), (-1, negative)):
        for weight, edges in groups.items():
            for edge in edges:
                terms[(int(edge[0]), int(edge[1]))] = sign * weight
    return from_terms(complete_graph(5), terms, rhs)


def table_k5_representatives() -> dict[str, TableEntry]:
    """
    One representative per class of non-trivial facets of C_{K5}, with the class
    size, the reported quantum violation and the Hilbert space dimension in
    which it was found.
    """
    return {
        "k5_c1": TableEntry(_k5({1: ["15", "25"]}, {1: ["12"]}, 1), 30, "1/4", 2),
        "k5_c2": TableEntry(_k5({1: ["15", "25", "35"]}, {1: ["12", "13", "23"]}, 1), 20, "1/3", 3),
        "k5_c3": TableEntry(_k5({1: ["12", "13", "14", "15"]},
                                {1: ["23", "24", "25", "34", "35", "45"]}, 1), 5, "0.243", 4),
        "k5_c4": TableEntry(_k5({1: ["12", "14", "15", "23", "34", "35"]},
                                {1: ["13", "24", "25", "45"]}, 2), 10, "0.312", 3),
        "k5_c5": TableEntry(_k5({1: ["12", "15", "23", "34", "45"]},
                                {1: ["13", "14", "24", "25", "35"]}, 2), 12, "0.795", 2),
        "k5_c6": TableEntry(_k5({2: ["12", "23", "24", "25"]},
                                {1: ["13", "14", "15", "34", "35", "45"]}, 3), 5, "0.344", 4),
        "k5_c7": TableEntry(_k5({1: ["13", "14", "34"], 2: ["24", "45"]},
                                {2: ["12", "25", "35"]}, 3), 60, "0.688", 3),
        "k5_c8": TableEntry(_k5({2: ["12", "14", "15"], 1: ["23", "35"]},
                                {2: ["13", "24", "45"], 1: ["25"]}, 3), 60, "0.7306", 2),
        "k5_c9": TableEntry(_k5({2: ["13", "14", "23", "24"], 3: ["35", "45"]},
                                {2: ["12"], 4: ["15", "25"], 1: ["34"]}, 5), 30, "0.855", 3),
    }


def chsh_inequality() -> LinearInequality:
    """``r12 + r23 + r34 - r14 <= 2`` over the 4-cycle."""
    return from_terms(cycle_graph(4), {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 4): -1}, 2)


def chsh_wheel_constraints() -> tuple[EventGraph, list[Tie]]:
    """The 5-vertex wheel with opposite rim edges tied: ``r12 = r34`` and ``r23 = r14``."""
    return wheel_graph(5), [Tie((1, 2), (3, 4)), Tie((2, 3), (1, 4))]


FAMILIES = {
    "cycle": lambda n: (cycle_graph(n), cycle_inequalities(n)),
    "hn": lambda n: (complete_graph(n), [hn_inequality(n)]),
}
