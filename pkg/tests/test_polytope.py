from fractions import Fraction
from itertools import product

import networkx as nx
import numpy as np
import pytest

from src.services.classicality import enumerate_classical_labellings
from src.services.errors import DimensionError, EventGraphError, LimitExceededError
from src.services.event_graph import (build_graph, complete_graph, cycle_graph, disjoint_union, glue, path_graph, star_graph,
                                      subgraph)
from src.services.inequalities import chsh_inequality, cycle_inequalities, hn_inequality, orbit
from src.services.polytope import (Fix, LinearEquality, LinearInequality, Polytope, Tie, affine_rank,
                                   classical_polytope, classify_facets, coordinate_name, embed_inequality,
                                   facet_enumeration, membership, render_inequality, same_polytope, section,
                                   vertex_enumeration, verify_facet)

UNIT_SQUARE = [(0, 0), (0, 1), (1, 0), (1, 1)]


def nontrivial(polytope: Polytope) -> set[LinearInequality]:
    return {f for f in polytope.facets if not f.is_trivial}


def test_canonical_inequality():
    assert LinearInequality.canonical([2, 4, -2], 2) == LinearInequality((1, 2, -1), 1)
    assert LinearInequality.canonical([Fraction(1, 2), Fraction(1, 3)], 1) == LinearInequality((3, 2), 6)
    assert LinearInequality.canonical([-3, 0], 0) == LinearInequality((-1, 0), 0)
    with pytest.raises(EventGraphError):
        LinearInequality.canonical([0, 0], 1)


def test_canonical_equality_has_positive_lead():
    assert LinearEquality.canonical([-2, 2], 0) == LinearEquality((1, -1), 0)


def test_facets_of_k3_vertices(k3):
    points = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]
    facets, equalities = facet_enumeration(points)
    assert equalities == ()
    assert set(facets) == {
        LinearInequality((-1, 0, 0), 0),
        LinearInequality((0, -1, 0), 0),
        LinearInequality((0, 0, -1), 0),
        LinearInequality((1, 1, -1), 1),
        LinearInequality((1, -1, 1), 1),
        LinearInequality((-1, 1, 1), 1),
    }
    assert list(facets) == sorted(facets)


def test_facets_of_unit_square():
    facets, equalities = facet_enumeration(UNIT_SQUARE)
    assert len(facets) == 4
    assert equalities == ()


def test_collinear_points_give_affine_hull():
    facets, equalities = facet_enumeration([(0, 0), (1, 1), (2, 2)])
    assert len(facets) == 2
    assert equalities == (LinearEquality((1, -1), 0),)
    assert all(f.slack(p) >= 0 for f in facets for p in [(0, 0), (1, 1), (2, 2)])


def test_facet_enumeration_errors():
    with pytest.raises(DimensionError):
        facet_enumeration([])
    with pytest.raises(DimensionError):
        facet_enumeration([(0, 0), (1, 0, 1)])


def test_vertex_enumeration_of_unit_square():
    facets, _ = facet_enumeration(UNIT_SQUARE)
    assert vertex_enumeration(facets, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_affine_rank(k3):
    assert affine_rank(classical_polytope(k3, facets=False).vertices) == 4
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 2


def test_chsh_facets(c4):
    polytope = classical_polytope(c4)
    assert len(polytope.vertices) == 12
    assert polytope.equalities == ()
    assert nontrivial(polytope) == set(cycle_inequalities(4))
    assert chsh_inequality() in polytope.facets


@pytest.mark.parametrize("n", range(3, 8))
def test_cycle_facets_are_the_cycle_family(n):
    polytope = classical_polytope(cycle_graph(n))
    assert nontrivial(polytope) == set(cycle_inequalities(n))


def test_classical_polytope_is_full_dimensional():
    for graph in (complete_graph(4), star_graph(4), glue(complete_graph(3), cycle_graph(4), [(1, 1)])):
        assert classical_polytope(graph).equalities == ()


def test_facet_guard():
    with pytest.raises(LimitExceededError):
        classical_polytope(complete_graph(6))
    assert len(classical_polytope(complete_graph(6), facets=False).vertices) == 203


def test_k5_facets_and_classes(k5):
    polytope = classical_polytope(k5)
    assert len(polytope.vertices) == 52
    assert len(polytope.facets) == 242
    classes = classify_facets(k5, polytope.facets)
    trivial = [c for c in classes if c.trivial]
    assert len(classes) - len(trivial) == 9
    assert sum(c.size for c in trivial) == 10
    assert sorted(c.size for c in classes if not c.trivial) == [5, 5, 10, 12, 20, 30, 30, 60, 60]


@pytest.mark.slow
def test_k6_facet_count():
    polytope = classical_polytope(complete_graph(6), allow_large=True)
    assert len(polytope.facets) == 50652


def test_section_fixing_r14_recovers_triangle(c4):
    cut = section(classical_polytope(c4), [Fix((1, 4), 1)])
    assert cut.coord_labels == ((1, 2), (2, 3), (3, 4))
    assert nontrivial(cut) == {
        LinearInequality((1, 1, -1), 1),
        LinearInequality((1, -1, 1), 1),
        LinearInequality((-1, 1, 1), 1),
    }


def test_reflexive_tie_leaves_polytope_unchanged(k3):
    polytope = classical_polytope(k3)
    assert section(polytope, [Tie((1, 2), (1, 2))]) is polytope


def test_conflicting_fixes_give_empty_section(k3):
    polytope = classical_polytope(k3)
    assert section(polytope, [Fix((1, 2), 0), Fix((1, 2), 1)]).is_empty
    assert section(polytope, [Fix((1, 2), 2)]).is_empty


def test_section_through_the_interior(k3):
    cut = section(classical_polytope(k3), [Fix((1, 2), Fraction(1, 2))])
    assert cut.coord_labels == ((1, 3), (2, 3))
    assert not cut.is_empty
    assert membership(cut, (Fraction(1, 2), Fraction(1, 2))).member
    # r12 + r13 - r23 <= 1 becomes r13 - r23 <= 1/2
    assert not membership(cut, (1, 0)).member


def test_membership_with_certificate(k3):
    polytope = classical_polytope(k3)
    result = membership(polytope, (1, 1, 0))
    assert not result.member
    assert result.violated == LinearInequality((1, 1, -1), 1)
    assert result.excess == 1
    assert render_inequality(result.violated, k3.edges) == "r12+r13-r23 <= 1"
    assert membership(polytope, (Fraction(1, 2),) * 3).member


def test_membership_of_float_weighting(k3):
    result = membership(classical_polytope(k3), (0.9045, 0.9045, 0.6545))
    assert not result.member
    assert result.violated == LinearInequality((1, 1, -1), 1)


def test_membership_errors(k3):
    with pytest.raises(EventGraphError):
        membership(classical_polytope(k3, facets=False), (0, 0, 0))
    with pytest.raises(DimensionError):
        membership(classical_polytope(k3), (0, 0))


def test_hull_round_trip():
    graph = complete_graph(4)
    polytope = classical_polytope(graph)
    rng = np.random.default_rng(11)
    for _ in range(50):
        weights = [Fraction(int(w)) for w in rng.integers(0, 5, size=len(polytope.vertices))]
        total = sum(weights) or Fraction(1)
        point = [sum(w * v[k] for w, v in zip(weights, polytope.vertices)) / total for k in range(graph.m)]
        assert membership(polytope, point).member
    for facet in polytope.facets:
        tight = [v for v in polytope.vertices if facet.slack(v) == 0]
        centre = [sum(v[k] for v in tight) / len(tight) for k in range(graph.m)]
        outside = [x + Fraction(1, 100) * c for x, c in zip(centre, facet.coeffs)]
        assert not membership(polytope, outside).member


def test_every_facet_is_saturated_by_enough_vertices():
    polytope = classical_polytope(complete_graph(4))
    for facet in polytope.facets:
        tight = [v for v in polytope.vertices if facet.slack(v) == 0]
        assert affine_rank(tight) == polytope.dim


def test_verify_facet():
    k4 = complete_graph(4)
    assert verify_facet(k4, hn_inequality(4)).facet
    loose = verify_facet(k4, LinearInequality((1, 0, 0, 0, 0, 0), 2))
    assert loose.valid
    assert not loose.facet
    wrong = verify_facet(k4, LinearInequality((1, 1, 0, 0, 0, 0), 1))
    assert not wrong.valid


def test_classify_k4():
    k4 = complete_graph(4)
    classes = classify_facets(k4, classical_polytope(k4).facets)
    by_member = {f: c for c in classes for f in c.members}
    hn_class = by_member[hn_inequality(4)]
    assert set(hn_class.members) == orbit(hn_inequality(4), k4)
    assert hn_class.size == 4
    assert by_member[LinearInequality((1, 1, 0, -1, 0, 0), 1)].size == 12
    assert by_member[LinearInequality((-1, 0, 0, 0, 0, 0), 0)].size == 6
    assert [c.size for c in classes] == sorted(c.size for c in classes)


def test_classify_cycle():
    five = cycle_graph(5)
    classes = classify_facets(five, classical_polytope(five).facets)
    assert all(c.size == 5 for c in classes)
    assert [set(c.members) for c in classes if not c.trivial] == [set(cycle_inequalities(5))]


def test_disjoint_union_facets_are_the_product():
    first, second = complete_graph(3), cycle_graph(4)
    union = disjoint_union(first, second)
    shift = {v: v + first.n for v in second.vertices}
    expected = {embed_inequality(f, first, union) for f in classical_polytope(first).facets}
    expected |= {embed_inequality(f, second, union, shift) for f in classical_polytope(second).facets}
    assert set(classical_polytope(union).facets) == expected


def test_vertex_gluing_facets_are_the_product():
    first, second = complete_graph(3), complete_graph(3)
    bowtie = glue(first, second, [(1, 1)])
    onto = {1: 1, 2: 4, 3: 5}
    expected = {embed_inequality(f, first, bowtie) for f in classical_polytope(first).facets}
    expected |= {embed_inequality(f, second, bowtie, onto) for f in classical_polytope(second).facets}
    assert set(classical_polytope(bowtie).facets) == expected


def test_edge_gluing_is_cut_out_by_the_components():
    first, second = complete_graph(3), complete_graph(3)
    diamond = glue(first, second, [(1, 1), (2, 2)])
    onto = {1: 1, 2: 2, 3: 4}
    components = [embed_inequality(f, first, diamond) for f in classical_polytope(first).facets]
    components += [embed_inequality(f, second, diamond, onto) for f in classical_polytope(second).facets]
    polytope = classical_polytope(diamond)
    grid = [Fraction(0), Fraction(1, 2), Fraction(1)]
    for point in product(grid, repeat=diamond.m):
        inside = all(f.slack(point) >= 0 for f in components)
        assert membership(polytope, point).member == inside


@pytest.mark.parametrize("tree", [path_graph(5), star_graph(6), glue(path_graph(4), star_graph(5), [(4, 1)])])
def test_tree_polytope_is_the_cube(tree):
    polytope = classical_polytope(tree)
    cube = {LinearInequality(tuple(-int(j == k) for j in range(tree.m)), 0) for k in range(tree.m)}
    cube |= {LinearInequality(tuple(int(j == k) for j in range(tree.m)), 1) for k in range(tree.m)}
    assert set(polytope.facets) == cube


def _cube(m: int) -> set[LinearInequality]:
    cube = {LinearInequality(tuple(-int(j == k) for j in range(m)), 0) for k in range(m)}
    return cube | {LinearInequality(tuple(int(j == k) for j in range(m)), 1) for k in range(m)}


def _trees(max_edges: int):
    for order in range(2, max_edges + 2):
        for tree in nx.nonisomorphic_trees(order):
            yield build_graph(order, [(i + 1, j + 1) for i, j in tree.edges])


@pytest.mark.slow
def test_every_small_tree_polytope_is_the_cube():
    trees = list(_trees(8))
    assert len(trees) == 94
    for tree in trees:
        assert set(classical_polytope(tree).facets) == _cube(tree.m), tree.key()


def test_trees_up_to_five_edges_give_the_cube():
    for tree in _trees(5):
        assert set(classical_polytope(tree).facets) == _cube(tree.m), tree.key()


def _small_graph(rng: np.random.Generator):
    n = int(rng.integers(2, 5))
    m = int(rng.integers(1, min(5, n * (n - 1) // 2) + 1))
    oracle = nx.gnm_random_graph(n, m, seed=int(rng.integers(2 ** 31)))
    return build_graph(n, [(i + 1, j + 1) for i, j in oracle.edges])


@pytest.mark.parametrize("count", [pytest.param(50, marks=pytest.mark.slow), 3])
def test_random_disjoint_unions_are_products(count):
    rng = np.random.default_rng(count)
    for _ in range(count):
        first, second = _small_graph(rng), _small_graph(rng)
        union = disjoint_union(first, second)
        shift = {v: v + first.n for v in second.vertices}
        expected = {embed_inequality(f, first, union) for f in classical_polytope(first).facets}
        expected |= {embed_inequality(f, second, union, shift) for f in classical_polytope(second).facets}
        assert set(classical_polytope(union).facets) == expected, union.key()


@pytest.mark.parametrize("count", [pytest.param(50, marks=pytest.mark.slow), 3])
def test_random_vertex_gluings_are_products(count):
    rng = np.random.default_rng(count + 1)
    for _ in range(count):
        first, second = _small_graph(rng), _small_graph(rng)
        v1, v2 = int(rng.integers(1, first.n + 1)), int(rng.integers(1, second.n + 1))
        glued = glue(first, second, [(v1, v2)])
        rest = [v for v in second.vertices if v != v2]
        onto = {v: first.n + k for k, v in enumerate(rest, start=1)} | {v2: v1}
        expected = {embed_inequality(f, first, glued) for f in classical_polytope(first).facets}
        expected |= {embed_inequality(f, second, glued, onto) for f in classical_polytope(second).facets}
        assert set(classical_polytope(glued).facets) == expected, glued.key()


def test_subgraph_restriction_stays_classical():
    k4 = complete_graph(4)
    square = subgraph(k4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    keep = [k4.index_of(i, j) for i, j in square.edges]
    restricted = {tuple(lab.values[k] for k in keep) for lab in enumerate_classical_labellings(k4)}
    assert restricted <= {lab.values for lab in enumerate_classical_labellings(square)}


def test_same_polytope(k3):
    polytope = classical_polytope(k3)
    rebuilt = Polytope(k3.edges, polytope.vertices, *facet_enumeration(polytope.vertices))
    assert same_polytope(polytope, rebuilt)
    assert not same_polytope(polytope, classical_polytope(path_graph(3)))


def test_coordinate_names():
    assert coordinate_name((1, 2)) == "r12"
    assert coordinate_name((3, 12)) == "r3_12"
    assert coordinate_name(4) == "p4"
    assert render_inequality(LinearEquality((1, -1), 0), [(1, 2), (2, 3)]) == "r12-r23 == 0"
