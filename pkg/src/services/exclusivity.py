"""
Exclusivity graphs: stable sets, the stable set polytope STAB(H), and the
noncontextuality inequalities obtained from the classical polytope of the
star extension of H.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from src.conf import messages
from src.conf.config import settings
from src.services.errors import DimensionError, LimitExceededError
from src.services.event_graph import EventGraph, StarExtension, star_extension
from src.services.polytope import (Fix, LinearInequality, Polytope, classical_polytope, facet_enumeration,
                                   section)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class StableSet:
    """Vertices of H, pairwise non-adjacent, in increasing order."""
    members: tuple[int, ...]

    def characteristic(self, n: int) -> tuple[int, ...]:
        return tuple(int(v in self.members) for v in range(1, n + 1))


def stable_sets(graph: EventGraph, limit: int | None = None) -> list[StableSet]:
    """
    All stable sets of ``graph``, the empty set included, by backtracking.

    :param graph: The exclusivity graph H.
    :type graph: EventGraph
    :param limit: Largest accepted vertex count, defaults to the configured limit.
    :type limit: int | None
    :return: Stable sets sorted by size, then lexicographically.
    :rtype: list[StableSet]
    :raises LimitExceededError: when H has too many vertices.
    """
    limit = settings.stable_set_limit if limit is None else limit
    if graph.n > limit:
        raise LimitExceededError(messages.LIMIT_EXCEEDED.format(what="stable sets", limit=limit, size=graph.n))
    found: list[StableSet] = []
    chosen: list[int] = []

    def extend(v: int) -> None:
        if v > graph.n:
            found.append(StableSet(tuple(chosen)))
            return
        extend(v + 1)
        if not any(graph.has_edge(u, v) for u in chosen):
            chosen.append(v)
            extend(v + 1)
            chosen.pop()

    extend(1)
    found.sort(key=lambda s: (len(s.members), s.members))
    return found


def stab_polytope(graph: EventGraph, progress: bool = False) -> Polytope:
    """
    STAB(H): convex hull of the characteristic vectors of the stable sets.

    Coordinates are labelled by the vertices of H.
    """
    points = [s.characteristic(graph.n) for s in stable_sets(graph)]
    facets, equalities = facet_enumeration(points, progress=progress)
    return Polytope(tuple(graph.vertices), tuple(tuple(Fraction(x) for x in p) for p in points),
                    facets, equalities)


def exclusivity_section(graph: EventGraph) -> tuple[StarExtension, Polytope]:
    """
    The face of C_{H★} where every edge of H is labelled 0, over the handle edge coordinates.

    Only the vertices of C_{H★} are enumerated; the face is cut out of them directly.
    """
    star = star_extension(graph)
    whole = classical_polytope(star.graph, facets=False)
    face = section(whole, [Fix(edge, 0) for edge in star.old_edges])
    if face.facets is None:
        facets, equalities = facet_enumeration(face.vertices)
        face = Polytope(face.coord_labels, face.vertices, facets, equalities)
    return star, face


def noncontextuality_inequalities(graph: EventGraph) -> Polytope:
    """
    Noncontextuality inequalities of the exclusivity graph ``graph``.

    The section of C_{H★} at ``r_e = 0`` for every edge ``e`` of H, with the
    handle edge ``{v, ψ}`` relabelled as ``v``, so that the facets read as
    ``sum(γ(v) P(v)) <= α``.

    :param graph: The exclusivity graph H.
    :type graph: EventGraph
    :return: The section over the vertex coordinates of H with its facets.
    :rtype: Polytope
    """
    star, face = exclusivity_section(graph)
    labels = tuple(i for i, _ in face.coord_labels)
    logger.info("exclusivity graph %s: %d noncontextuality inequalities", graph.key(), len(face.facets))
    return Polytope(labels, face.vertices, face.facets, face.equalities)


def verify_stab_isomorphism(graph: EventGraph) -> bool:
    """
    Compares STAB(H) with the exclusivity section of C_{H★}.

    :param graph: The exclusivity graph H.
    :type graph: EventGraph
    :return: True iff both have the same vertices and the same canonical facets.
    :rtype: bool
    """
    stab = stab_polytope(graph)
    derived = noncontextuality_inequalities(graph)
    same = (set(stab.vertices) == set(derived.vertices)
            and set(stab.facets) == set(derived.facets)
            and set(stab.equalities) == set(derived.equalities))
    logger.info("exclusivity graph %s: STAB isomorphism %s", graph.key(), "holds" if same else "FAILS")
    return same


def derive_from_facet(ineq: LinearInequality, star: StarExtension) -> LinearInequality:
    """
    Sets the coefficients of the edges of H to zero in an inequality of C_{H★}.

    The W6 facet ``-r12-r23-r34-r45-r15+r16+r26+r36+r46+r56 <= 2`` gives the
    KCBS inequality ``x1+x2+x3+x4+x5 <= 2``.

    :param ineq: Inequality over the edge coordinates of ``star.graph``.
    :type ineq: LinearInequality
    :param star: The star extension of H.
    :type star: StarExtension
    :return: Inequality over the vertex coordinates of H.
    :rtype: LinearInequality
    """
    if ineq.dim != star.graph.m:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=star.graph.m, size=ineq.dim))
    coeffs = [ineq.coeffs[star.graph.index_of(v, star.handle)] for v, _ in star.handle_edges]
    return LinearInequality.canonical(coeffs, ineq.rhs)


def weighted_independence_number(graph: EventGraph, gamma: Sequence[Rational]) -> Rational:
    """Largest total weight ``sum(gamma[v - 1])`` of a stable set."""
    if len(gamma) != graph.n:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=graph.n, size=len(gamma)))
    return max(sum((gamma[v - 1] for v in s.members), Fraction(0)) for s in stable_sets(graph))
