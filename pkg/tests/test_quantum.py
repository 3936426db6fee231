from fractions import Fraction
from itertools import product
from math import cos, pi, sqrt

import numpy as np
import pytest
import sympy

from src.services.classicality import equality_labelling
from src.services.errors import DimensionError, StateError
from src.services.event_graph import complete_graph, cycle_graph, path_graph
from src.services.inequalities import cycle_inequalities, evaluate, hn_inequality, table_k5_representatives
from src.services.polytope import classical_polytope, membership
from src.services.prep_nc import random_distribution_set
from src.services.quantum import (PureStateSet, analytic_witnesses, commuting_overlap_weighting, evaluate_states,
                                  exact_witness_values, overlap_weighting, sample_state, search_violation,
                                  seeded_rng, witness_targets)

PLUS = [1 / sqrt(2), 1 / sqrt(2)]


def test_overlap_of_zero_and_plus():
    states = PureStateSet.of(2, [[1, 0], PLUS])
    assert overlap_weighting(states, path_graph(2)).values == pytest.approx((0.5,))


def test_identical_states_overlap_fully():
    states = PureStateSet.of(2, [PLUS, PLUS, PLUS])
    assert overlap_weighting(states, complete_graph(3)).values == pytest.approx((1.0, 1.0, 1.0))


def test_equatorial_overlaps(k5):
    weighting = overlap_weighting(analytic_witnesses()["equatorial5"], k5)
    near, far = cos(pi / 5) ** 2, cos(2 * pi / 5) ** 2
    expected = [near if (j - i) in (1, 4) else far for i, j in k5.edges]
    assert weighting.values == pytest.approx(expected, abs=1e-12)


def test_overlaps_are_symmetric_and_bounded(k5):
    rng = np.random.default_rng(3)
    states = PureStateSet(3, np.array([sample_state(3, rng) for _ in range(5)]))
    forward = overlap_weighting(states, k5).values
    backward = overlap_weighting(PureStateSet(3, states.states[::-1]), k5).values
    flipped = {(6 - j, 6 - i): r for (i, j), r in zip(k5.edges, backward)}
    assert all(0 <= r <= 1 for r in forward)
    assert forward == pytest.approx([flipped[e] for e in k5.edges])


def test_state_validation():
    with pytest.raises(StateError):
        PureStateSet.of(2, [[1, 1]])
    with pytest.raises(StateError):
        PureStateSet.of(2, [[1, 0, 0]])
    with pytest.raises(StateError):
        PureStateSet.of(0, [])
    with pytest.raises(StateError):
        overlap_weighting(PureStateSet.of(2, [[1, 0]]), path_graph(2))


@pytest.mark.parametrize("name, expected", [
    ("equatorial5", 5 * sqrt(5) / 4),
    ("triangle-poles", 9 / 4),
    ("qutrit-k4", 4 / 3),
])
def test_witness_values(name, expected):
    graph, ineq = witness_targets()[name]
    result = evaluate_states(ineq, graph, analytic_witnesses()[name])
    assert result.value == pytest.approx(expected, abs=1e-9)
    assert result.violation == pytest.approx(expected - ineq.rhs, abs=1e-9)


def test_exact_witness_values():
    values = exact_witness_values()
    assert values["equatorial5"].equals(5 * sympy.sqrt(5) / 4)
    assert values["triangle-poles"].equals(sympy.Rational(9, 4))
    assert values["qutrit-k4"].equals(sympy.Rational(4, 3))


def test_witness_dimensions():
    witnesses = analytic_witnesses()
    assert (witnesses["equatorial5"].dim, len(witnesses["equatorial5"])) == (2, 5)
    assert (witnesses["triangle-poles"].dim, len(witnesses["triangle-poles"])) == (2, 5)
    assert (witnesses["qutrit-k4"].dim, len(witnesses["qutrit-k4"])) == (3, 4)


def test_sample_state_in_dimension_one():
    state = sample_state(1, np.random.default_rng(0))
    assert state.shape == (1,)
    assert state[0] == 1
    with pytest.raises(StateError):
        sample_state(0, np.random.default_rng(0))


def test_sample_state_is_reproducible():
    first = sample_state(2, np.random.default_rng(42))
    second = sample_state(2, np.random.default_rng(42))
    assert np.array_equal(first, second)
    assert np.linalg.norm(first) == pytest.approx(1.0)


def test_sample_state_from_an_integer_seed():
    assert np.array_equal(sample_state(2, 5), sample_state(2, np.random.default_rng([5])))
    assert np.array_equal(sample_state(3, 5), sample_state(3, seeded_rng(5)))
    with pytest.raises(StateError):
        sample_state(2, -1)
    with pytest.raises(StateError):
        seeded_rng(4, -2)


def test_haar_mean_overlap():
    rng = np.random.default_rng(5)
    overlaps = [abs(sample_state(2, rng)[0]) ** 2 for _ in range(10_000)]
    assert np.mean(overlaps) == pytest.approx(0.5, abs=0.02)


def test_search_three_cycle(k3):
    ineq = cycle_inequalities(3)[0]
    result = search_violation(ineq, k3, 2, budget=10_000, restarts=8, seed=7, threads=1)
    assert result.violation >= 0.24
    assert result.value <= 1.25 + 1e-9
    assert result.evaluations == 10_000
    assert evaluate_states(ineq, k3, result.states).value == pytest.approx(result.value)


def test_search_is_deterministic(k3):
    ineq = cycle_inequalities(3)[1]
    first = search_violation(ineq, k3, 2, budget=2_000, restarts=4, seed=11, threads=1)
    second = search_violation(ineq, k3, 2, budget=2_000, restarts=4, seed=11, threads=1)
    assert first.value == second.value
    assert first.restart == second.restart
    assert np.array_equal(first.states.states, second.states.states)


def test_search_does_not_depend_on_workers(k3):
    ineq = cycle_inequalities(3)[2]
    serial = search_violation(ineq, k3, 2, budget=2_000, restarts=4, seed=3, threads=1)
    parallel = search_violation(ineq, k3, 2, budget=2_000, restarts=4, seed=3, threads=2)
    assert serial.value == parallel.value
    assert np.array_equal(serial.states.states, parallel.states.states)


def test_search_errors(k3):
    ineq = cycle_inequalities(3)[0]
    with pytest.raises(StateError):
        search_violation(ineq, k3, 2, budget=0)
    with pytest.raises(StateError):
        search_violation(ineq, k3, 1, budget=10)
    with pytest.raises(DimensionError):
        search_violation(hn_inequality(4), k3, 2, budget=10)
    with pytest.raises(StateError):
        search_violation(ineq, k3, 2, budget=10, seed=-1)


@pytest.mark.parametrize("graph", [complete_graph(4), cycle_graph(5)])
def test_commuting_states_are_classical(graph):
    polytope = classical_polytope(graph)
    rng = np.random.default_rng(17)
    for _ in range(20):
        spectra = random_distribution_set(graph.n, 3, rng).mus
        assert membership(polytope, commuting_overlap_weighting(spectra, graph)).member


def test_commuting_overlaps_match_joint_distribution(k3):
    spectra = [(Fraction(1, 2), Fraction(1, 2), 0),
               (Fraction(1, 3), 0, Fraction(2, 3)),
               (0, Fraction(1, 4), Fraction(3, 4))]
    expected = [Fraction(0)] * k3.m
    for outcome in product(range(3), repeat=k3.n):
        weight = Fraction(1)
        for v, k in enumerate(outcome):
            weight *= spectra[v][k]
        for e, bit in enumerate(equality_labelling(k3, outcome).values):
            expected[e] += weight * bit
    assert list(commuting_overlap_weighting(spectra, k3).values) == expected


@pytest.mark.slow
@pytest.mark.parametrize("row, dim, reported", [
    ("k5_c1", 2, 0.25),
    ("k5_c2", 3, 1 / 3),
    ("k5_c4", 2, 0.25),
    ("k5_c5", 2, 0.795),
    ("k5_c3", 4, 0.243),
])
def test_search_reaches_reported_violations(k5, row, dim, reported):
    ineq = table_k5_representatives()[row].inequality
    result = search_violation(ineq, k5, dim, budget=100_000, restarts=8, seed=7)
    assert result.violation >= reported - 0.05
    assert evaluate(ineq, overlap_weighting(result.states, k5)).value == pytest.approx(result.value)
