"""
Exact convex geometry for classical polytopes: facet enumeration by the double
description method in integer arithmetic, sections by linear constraints,
membership with certificates, facet verification and symmetry classification.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational, Real
from typing import Hashable, Iterable, Mapping, Sequence

from tqdm import tqdm

from src.conf import messages
from src.conf.config import settings
from src.services.classicality import enumerate_classical_labellings, labellings_as_points
from src.services.errors import DimensionError, EventGraphError, GraphError, LimitExceededError
from src.services.event_graph import EdgeWeighting, EventGraph, automorphisms, edge_permutation

logger = logging.getLogger(__name__)

Point = tuple[Rational, ...]


def _integral(values: Sequence[Rational]) -> list[int]:
    """Smallest positive multiple of a rational vector with integer entries."""
    scale = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    ints = [int(Fraction(v) * scale) for v in values]
    divisor = gcd(*ints)
    return [x // divisor for x in ints] if divisor > 1 else ints


@dataclass(frozen=True, order=True)
class LinearInequality:
    """``sum(coeffs[k] * r_k) <= rhs`` with integer data whose gcd is 1."""
    coeffs: tuple[int, ...]
    rhs: int

    @classmethod
    def canonical(cls, coeffs: Sequence[Rational], rhs: Rational) -> "LinearInequality":
        """
        Scales to coprime integers without changing the sense of the inequality.

        :raises EventGraphError: if every coefficient is zero.
        """
        if not any(coeffs):
            raise EventGraphError(messages.ZERO_INEQUALITY)
        ints = _integral(list(coeffs) + [rhs])
        return cls(tuple(ints[:-1]), ints[-1])

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.coeffs) if c)

    @property
    def is_trivial(self) -> bool:
        return len(self.support) == 1

    def value(self, point: Sequence[Real]) -> Real:
        if len(point) != self.dim:
            raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=self.dim, size=len(point)))
        return sum(c * x for c, x in zip(self.coeffs, point) if c)

    def slack(self, point: Sequence[Real]) -> Real:
        return self.rhs - self.value(point)

    def permuted(self, images: Sequence[int]) -> "LinearInequality":
        coeffs = [0] * self.dim
        for k, c in enumerate(self.coeffs):
            coeffs[images[k]] = c
        return LinearInequality(tuple(coeffs), self.rhs)

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs) + f" <= {self.rhs}"


@dataclass(frozen=True, order=True)
class LinearEquality:
    """``sum(coeffs[k] * r_k) == rhs``; first nonzero coefficient positive."""
    coeffs: tuple[int, ...]
    rhs: int

    @classmethod
    def canonical(cls, coeffs: Sequence[Rational], rhs: Rational) -> "LinearEquality":
        if not any(coeffs):
            raise EventGraphError(messages.ZERO_INEQUALITY)
        ints = _integral(list(coeffs) + [rhs])
        if next(c for c in ints if c) < 0:
            ints = [-c for c in ints]
        return cls(tuple(ints[:-1]), ints[-1])

    def value(self, point: Sequence[Real]) -> Real:
        return sum(c * x for c, x in zip(self.coeffs, point) if c)

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs) + f" == {self.rhs}"


@dataclass(frozen=True)
class Polytope:
    """
    Paired V- and H-representation over labelled coordinates.

    ``facets`` is ``None`` when only the vertices were computed. An empty
    ``vertices`` tuple denotes the empty polytope.
    """
    coord_labels: tuple[Hashable, ...]
    vertices: tuple[Point, ...]
    facets: tuple[LinearInequality, ...] | None = None
    equalities: tuple[LinearEquality, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.coord_labels)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def index_of(self, label: Hashable) -> int:
        if isinstance(label, list):
            label = tuple(label)
        try:
            return self.coord_labels.index(label)
        except ValueError:
            raise GraphError(messages.UNKNOWN_COORDINATE.format(coord=label)) from None


@dataclass(frozen=True)
class Fix:
    """Section constraint ``coord = value``."""
    coord: Hashable
    value: Rational


@dataclass(frozen=True)
class Tie:
    """Section constraint ``first = second``."""
    first: Hashable
    second: Hashable


@dataclass(frozen=True)
class Membership:
    member: bool
    violated: LinearInequality | LinearEquality | None = None
    excess: Rational = 0


@dataclass(frozen=True)
class FacetCheck:
    valid: bool
    facet: bool
    face_dimension: int
    saturating: tuple[Point, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class OrbitClass:
    representative: LinearInequality
    members: tuple[LinearInequality, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def trivial(self) -> bool:
        return self.representative.is_trivial


def _rref(matrix: Sequence[Sequence[Rational]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [[Fraction(x) for x in row] for row in matrix]
    pivots: list[int] = []
    width = len(rows[0]) if rows else 0
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence[Rational]]) -> int:
    return len(_rref(matrix)[1]) if matrix else 0


def affine_rank(points: Sequence[Sequence[Rational]]) -> int:
    """Number of affinely independent points among ``points`` (rank of the homogenised matrix)."""
    return rank([(1, *p) for p in points])


def _independent_rows(rows: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a maximal linearly independent set of rows, chosen greedily in order."""
    echelon: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for index, row in enumerate(rows):
        vector = [Fraction(x) for x in row]
        for col, basis in echelon:
            if vector[col]:
                factor = vector[col] / basis[col]
                vector = [x - factor * y for x, y in zip(vector, basis)]
        lead = next((c for c, x in enumerate(vector) if x), None)
        if lead is not None:
            echelon.append((lead, vector))
            chosen.append(index)
    return chosen


def _inverse(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    size = len(matrix)
    augmented = [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(matrix)]
    reduced, _ = _rref(augmented)
    return [row[size:] for row in reduced]


def _has_superset(common: int, p: int, q: int, zeros: list[int], tight: dict[int, list[int]]) -> bool:
    smallest = None
    bits = common
    while bits:
        low = bits & -bits
        candidates = tight[low.bit_length() - 1]
        if smallest is None or len(candidates) < len(smallest):
            smallest = candidates
        bits ^= low
    return any(k != p and k != q and zeros[k] & common == common for k in smallest or ())


def extreme_rays(rows: Sequence[Sequence[int]], progress: bool = False) -> list[tuple[int, ...]]:
    """
    Extreme rays of the pointed cone ``{y : row . y >= 0 for every row}``.

    Incremental double description: start from the simplicial cone of a
    maximal independent set of rows, then insert the remaining rows in order,
    pairing positive and negative rays that are adjacent by the combinatorial
    test. All arithmetic is on Python integers.

    :param rows: Integer constraint rows of common width; they must span the space.
    :type rows: Sequence[Sequence[int]]
    :param progress: Show a progress bar over the insertions.
    :type progress: bool
    :return: Primitive integer extreme rays.
    :rtype: list[tuple[int, ...]]
    :raises DimensionError: if the rows do not span the space.
    """
    width = len(rows[0])
    basis = _independent_rows(rows)
    if len(basis) < width:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=width, size=len(basis)))
    chosen = set(basis)
    ordered = [list(rows[i]) for i in basis] + [list(row) for i, row in enumerate(rows) if i not in chosen]
    inverse = _inverse(ordered[:width])
    full = (1 << width) - 1
    rays = [tuple(_integral([inverse[i][j] for i in range(width)])) for j in range(width)]
    zeros = [full & ~(1 << j) for j in range(width)]

    steps = range(width, len(ordered))
    for t in tqdm(steps, desc="double description", disable=not progress):
        row = ordered[t]
        bit = 1 << t
        values = [sum(a * y for a, y in zip(row, ray) if a) for ray in rays]
        negative = [k for k, s in enumerate(values) if s < 0]
        if not negative:
            zeros = [z | bit if s == 0 else z for z, s in zip(zeros, values)]
            continue
        positive = [k for k, s in enumerate(values) if s > 0]
        tight: dict[int, list[int]] = defaultdict(list)
        for k, z in enumerate(zeros):
            bits = z
            while bits:
                low = bits & -bits
                tight[low.bit_length() - 1].append(k)
                bits ^= low
        born_rays, born_zeros = [], []
        for p in positive:
            for q in negative:
                common = zeros[p] & zeros[q]
                if common.bit_count() < width - 2 or _has_superset(common, p, q, zeros, tight):
                    continue
                sp, sq = values[p], values[q]
                combined = [sp * b - sq * a for a, b in zip(rays[p], rays[q])]
                divisor = gcd(*combined)
                if not divisor:
                    continue
                born_rays.append(tuple(x // divisor for x in combined))
                born_zeros.append(common | bit)
        kept = [k for k, s in enumerate(values) if s >= 0]
        rays = [rays[k] for k in kept] + born_rays
        zeros = [zeros[k] | bit if values[k] == 0 else zeros[k] for k in kept] + born_zeros
        logger.debug("insertion %d/%d: %d rays", t + 1, len(ordered), len(rays))
    return rays


def _sorted_points(points: Iterable[Sequence[Rational]]) -> list[Point]:
    unique = {tuple(Fraction(x) for x in p) for p in points}
    return sorted(unique, key=lambda p: (sum(p), p))


def facet_enumeration(points: Sequence[Sequence[Rational]],
                      progress: bool = False) -> tuple[tuple[LinearInequality, ...], tuple[LinearEquality, ...]]:
    """
    Complete irredundant H-representation of the convex hull of ``points``.

    Points are inserted by weight then lexicographically. When the hull is not
    full-dimensional it is projected onto a set of coordinates that determines
    it, the facets are computed there, and the affine hull is returned as
    equalities.

    :param points: Rational points of common dimension.
    :type points: Sequence[Sequence[Rational]]
    :param progress: Show a progress bar during the double description run.
    :type progress: bool
    :return: Facets sorted lexicographically, and equalities of the affine hull.
    :rtype: tuple[tuple[LinearInequality, ...], tuple[LinearEquality, ...]]
    :raises DimensionError: on an empty list or mixed dimensions.
    """
    if not points:
        raise DimensionError(messages.EMPTY_POINT_LIST)
    dim = len(points[0])
    for p in points:
        if len(p) != dim:
            raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=dim, size=len(p)))
    ordered = _sorted_points(points)
    homogenised = [(Fraction(1), *p) for p in ordered]
    reduced, pivots = _rref(homogenised)

    equalities = []
    for col in range(1, dim + 1):
        if col in pivots:
            continue
        # null vector z with z_col = 1 and z_pivot = -reduced[row][col]
        z = [Fraction(0)] * (dim + 1)
        z[col] = Fraction(1)
        for r, pivot in enumerate(pivots):
            z[pivot] = -reduced[r][col]
        equalities.append(LinearEquality.canonical(z[1:], -z[0]))

    facets = set()
    if len(pivots) > 1:
        rows = [_integral([row[c] for c in pivots]) for row in homogenised]
        for ray in extreme_rays(rows, progress=progress):
            coeffs = [0] * dim
            for c, h in zip(pivots[1:], ray[1:]):
                coeffs[c - 1] = -h
            if any(coeffs):
                facets.add(LinearInequality.canonical(coeffs, ray[0]))
    logger.info("%d points in dimension %d: %d facets, %d equalities", len(ordered), dim, len(facets), len(equalities))
    return tuple(sorted(facets)), tuple(sorted(equalities))


def vertex_enumeration(facets: Sequence[LinearInequality], dim: int,
                       equalities: Sequence[LinearEquality] = ()) -> list[Point]:
    """
    Vertices of the bounded polytope ``{x : facets, equalities}`` by the same
    double description run on the homogenised constraint rows.

    :return: The vertices, empty when the constraints are infeasible.
    :rtype: list[Point]
    """
    rows = [[1] + [0] * dim]
    rows += [[f.rhs] + [-c for c in f.coeffs] for f in facets]
    for e in equalities:
        rows.append([e.rhs] + [-c for c in e.coeffs])
        rows.append([-e.rhs] + list(e.coeffs))
    points = []
    for ray in extreme_rays(rows):
        if ray[0] > 0:
            points.append(tuple(Fraction(y, ray[0]) for y in ray[1:]))
        else:
            logger.warning("unbounded direction %s ignored", ray[1:])
    return _sorted_points(points)


def classical_polytope(graph: EventGraph, facets: bool = True, progress: bool = False,
                       limit: int | None = None, threads: int | None = None,
                       allow_large: bool | None = None) -> Polytope:
    """
    The classical polytope C_G: the convex hull of the classical labellings.

    :param graph: The event graph.
    :type graph: EventGraph
    :param facets: Also compute the H-representation.
    :type facets: bool
    :param progress: Show double description progress.
    :type progress: bool
    :param limit: Enumeration vertex limit override.
    :type limit: int | None
    :param threads: Worker processes for the enumeration.
    :type threads: int | None
    :param allow_large: Permit facet runs on graphs with more edges than the configured limit.
    :type allow_large: bool | None
    :return: The polytope over the edge coordinates of ``graph``.
    :rtype: Polytope
    :raises LimitExceededError: for a facet run on too many edges without ``allow_large``.
    """
    allow_large = settings.allow_large if allow_large is None else allow_large
    if facets and graph.m > settings.facet_edge_limit and not allow_large:
        raise LimitExceededError(messages.LIMIT_EXCEEDED.format(what="facet enumeration edges",
                                                                limit=settings.facet_edge_limit, size=graph.m))
    points = labellings_as_points(enumerate_classical_labellings(graph, limit=limit, threads=threads))
    if not facets:
        return Polytope(graph.edges, tuple(points))
    if graph.m == 0:
        return Polytope(graph.edges, tuple(points), (), ())
    hrep, equalities = facet_enumeration(points, progress=progress)
    return Polytope(graph.edges, tuple(points), hrep, equalities)


def _is_face(polytope: Polytope, index: int, value: Rational) -> bool:
    column = [v[index] for v in polytope.vertices]
    return bool(column) and (value == min(column) or value == max(column))


def section(polytope: Polytope, constraints: Sequence[Fix | Tie]) -> Polytope:
    """
    Points of ``polytope`` satisfying the constraints, over the free coordinates.

    Tied coordinates are represented by the first of them. When every constraint
    fixes a coordinate at its minimum or maximum over the polytope, the section
    is a face and its vertices are filtered directly; otherwise the
    H-representation is intersected with the constraints and its vertices are
    enumerated. Facets are recomputed in the reduced coordinates. Infeasible
    constraints give the empty polytope.

    :param polytope: The polytope to cut.
    :type polytope: Polytope
    :param constraints: :class:`Fix` and :class:`Tie` constraints.
    :type constraints: Sequence[Fix | Tie]
    :return: The section.
    :rtype: Polytope
    """
    parent = list(range(polytope.dim))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    fixed_raw: list[tuple[int, Fraction]] = []
    for constraint in constraints:
        if isinstance(constraint, Tie):
            a, b = find(polytope.index_of(constraint.first)), find(polytope.index_of(constraint.second))
            if a != b:
                parent[max(a, b)] = min(a, b)
        else:
            fixed_raw.append((polytope.index_of(constraint.coord), Fraction(constraint.value)))
    if not fixed_raw and all(find(k) == k for k in range(polytope.dim)):
        return polytope

    empty = False
    fixed: dict[int, Fraction] = {}
    for k, value in fixed_raw:
        root = find(k)
        if fixed.setdefault(root, value) != value:
            empty = True
    classes: dict[int, list[int]] = defaultdict(list)
    for k in range(polytope.dim):
        classes[find(k)].append(k)
    free = sorted(root for root in classes if root not in fixed)
    labels = tuple(polytope.coord_labels[k] for k in free)
    value_of = {k: fixed[find(k)] for k in range(polytope.dim) if find(k) in fixed}

    if empty:
        return Polytope(labels, (), (), ())
    is_face = all(not isinstance(c, Tie) for c in constraints) and all(
        _is_face(polytope, k, v) for k, v in fixed_raw)
    if is_face:
        points = [tuple(v[k] for k in free) for v in polytope.vertices
                  if all(v[k] == value for k, value in value_of.items())]
    else:
        if polytope.facets is None:
            raise EventGraphError(messages.MISSING_HREP)
        points = _substituted_vertices(polytope, [find(k) for k in range(polytope.dim)], free, value_of)
    if not points:
        return Polytope(labels, (), (), ())
    if not free:
        return Polytope(labels, tuple(_sorted_points(points)), (), ())
    hrep, equalities = facet_enumeration(points)
    return Polytope(labels, tuple(_sorted_points(points)), hrep, equalities)


def _substituted_vertices(polytope: Polytope, root_of: Sequence[int], free: list[int],
                          value_of: Mapping[int, Fraction]) -> list[Point]:
    position = {root: i for i, root in enumerate(free)}
    reduced_ineqs, reduced_eqs = [], []
    infeasible = False
    for constraint in list(polytope.facets) + list(polytope.equalities):
        coeffs = [Fraction(0)] * len(free)
        rhs = Fraction(constraint.rhs)
        for k, c in enumerate(constraint.coeffs):
            if not c:
                continue
            if k in value_of:
                rhs -= c * value_of[k]
            else:
                coeffs[position[root_of[k]]] += c
        is_equality = isinstance(constraint, LinearEquality)
        if not any(coeffs):
            infeasible |= rhs != 0 if is_equality else rhs < 0
        elif is_equality:
            reduced_eqs.append(LinearEquality.canonical(coeffs, rhs))
        else:
            reduced_ineqs.append(LinearInequality.canonical(coeffs, rhs))
    if infeasible:
        return []
    if not free:
        return [()]
    return vertex_enumeration(reduced_ineqs, len(free), reduced_eqs)


def _coerce(polytope: Polytope, weighting: EdgeWeighting | Sequence[Real]) -> tuple[Rational, ...]:
    if not isinstance(weighting, EdgeWeighting):
        weighting = EdgeWeighting(tuple(weighting))
    if len(weighting.values) != polytope.dim:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=polytope.dim, size=len(weighting.values)))
    if not weighting.is_exact:
        weighting = weighting.to_exact()
    return tuple(Fraction(v) for v in weighting.values)


def membership(polytope: Polytope, weighting: EdgeWeighting | Sequence[Real]) -> Membership:
    """
    Exact membership test; on failure the most violated constraint is the certificate.

    Float-valued weightings are first approximated by rationals.

    :param polytope: A polytope with its H-representation.
    :type polytope: Polytope
    :param weighting: The point to test.
    :type weighting: EdgeWeighting | Sequence[Real]
    :return: Verdict, violated constraint and its excess.
    :rtype: Membership
    """
    if polytope.facets is None:
        raise EventGraphError(messages.MISSING_HREP)
    point = _coerce(polytope, weighting)
    if polytope.is_empty:
        return Membership(False)
    worst, excess = None, Fraction(0)
    for facet in polytope.facets:
        over = facet.value(point) - facet.rhs
        if over > excess:
            worst, excess = facet, over
    for equality in polytope.equalities:
        off = abs(equality.value(point) - equality.rhs)
        if off > excess:
            worst, excess = equality, off
    return Membership(worst is None, worst, excess)


def check_inequality(points: Sequence[Point], ineq: LinearInequality, dim: int) -> FacetCheck:
    """Validity and facet property of ``ineq`` for the hull of ``points`` (assumed full-dimensional)."""
    if ineq.dim != dim:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=dim, size=ineq.dim))
    slacks = [ineq.slack(p) for p in points]
    valid = all(s >= 0 for s in slacks)
    saturating = tuple(p for p, s in zip(points, slacks) if s == 0)
    face_dimension = affine_rank(saturating) - 1 if saturating else -1
    return FacetCheck(valid, valid and face_dimension == dim - 1, face_dimension, saturating)


def verify_facet(graph: EventGraph, ineq: LinearInequality) -> FacetCheck:
    """
    Checks an inequality against the classical labellings of ``graph``.

    :param graph: The event graph.
    :type graph: EventGraph
    :param ineq: Inequality over the edge coordinates.
    :type ineq: LinearInequality
    :return: ``valid`` when every classical labelling satisfies it; ``facet`` when
        moreover the saturating labellings span an affine space of dimension m - 1.
    :rtype: FacetCheck
    """
    points = labellings_as_points(enumerate_classical_labellings(graph))
    return check_inequality(points, ineq, graph.m)


def classify_facets(graph: EventGraph, facets: Sequence[LinearInequality]) -> list[OrbitClass]:
    """
    Partitions ``facets`` into orbits of Aut(G).

    :param graph: The event graph.
    :type graph: EventGraph
    :param facets: Inequalities over its edge coordinates.
    :type facets: Sequence[LinearInequality]
    :return: Classes sorted by size, then by their lexicographically least member.
    :rtype: list[OrbitClass]
    """
    images = [edge_permutation(graph, p) for p in automorphisms(graph)]
    remaining = set(facets)
    classes = []
    for facet in sorted(remaining):
        if facet not in remaining:
            continue
        members = {facet.permuted(image) for image in images} & remaining
        remaining -= members
        ordered = tuple(sorted(members))
        classes.append(OrbitClass(ordered[0], ordered))
    classes.sort(key=lambda c: (c.size, c.representative))
    logger.info("graph %s: %d facets in %d classes", graph.key(), len(facets), len(classes))
    return classes


def embed_inequality(ineq: LinearInequality, source: EventGraph, target: EventGraph,
                     vertex_map: Mapping[int, int] | None = None) -> LinearInequality:
    """
    Moves an inequality of ``source`` onto the coordinates of ``target``.

    :param vertex_map: Image in ``target`` of every vertex of ``source``; identity by default.
    :type vertex_map: Mapping[int, int] | None
    """
    vertex_map = vertex_map or {v: v for v in source.vertices}
    coeffs = [0] * target.m
    for (i, j), c in zip(source.edges, ineq.coeffs):
        coeffs[target.index_of(vertex_map[i], vertex_map[j])] += c
    return LinearInequality.canonical(coeffs, ineq.rhs)


def satisfies_all(points: Iterable[Sequence[Rational]], facets: Iterable[LinearInequality]) -> bool:
    facets = list(facets)
    return all(f.slack(p) >= 0 for p in points for f in facets)


def same_polytope(first: Polytope, second: Polytope) -> bool:
    """Equality of two polytopes over the same coordinates, checked through vertices and facets."""
    if first.coord_labels != second.coord_labels:
        return False
    if first.is_empty or second.is_empty:
        return first.is_empty and second.is_empty
    return satisfies_all(first.vertices, second.facets) and satisfies_all(second.vertices, first.facets)


def coordinate_name(label: Hashable) -> str:
    if isinstance(label, tuple):
        i, j = label
        return f"r{i}{j}" if i < 10 and j < 10 else f"r{i}_{j}"
    return f"p{label}"


def render_inequality(ineq: LinearInequality | LinearEquality, labels: Sequence[Hashable]) -> str:
    """Human form such as ``r12+r13-r23 <= 1``."""
    terms = []
    for c, label in zip(ineq.coeffs, labels):
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if terms else "")
        size = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{size}{coordinate_name(label)}")
    sense = "==" if isinstance(ineq, LinearEquality) else "<="
    return f"{''.join(terms) or '0'} {sense} {ineq.rhs}"
