"""
Quantum edge weightings: overlaps of pure states, Haar sampling, a seeded
stochastic search for violations of polytope inequalities, and the analytic
witness state sets.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import numpy as np
import sympy

from src.conf import messages
from src.conf.config import settings
from src.services.errors import DimensionError, StateError
from src.services.event_graph import EdgeWeighting, EventGraph, complete_graph
from src.services.inequalities import Evaluation, evaluate, hn_inequality, table_k5_representatives
from src.services.polytope import LinearInequality
from src.services.prep_nc import DistributionSet

logger = logging.getLogger(__name__)

# perturbation scale of the local search, annealed geometrically from start to end
_START_SCALE = 0.5
_END_SCALE = 0.005
# chance that a step draws a fresh Haar state instead of perturbing
_RESAMPLE = 0.05


@dataclass(frozen=True, eq=False)
class PureStateSet:
    """
    One unit vector of ``C^dim`` per graph vertex; ``states[v - 1]`` belongs to vertex ``v``.

    Build instances through :meth:`of`, which checks the norms.
    """
    dim: int
    states: np.ndarray

    def __len__(self) -> int:
        return len(self.states)

    @classmethod
    def of(cls, dim: int, vectors: Sequence[Sequence[complex]], tolerance: float | None = None) -> "PureStateSet":
        """
        Validates and stacks state vectors.

        :param dim: Hilbert space dimension.
        :type dim: int
        :param vectors: Complex amplitudes, one sequence per state.
        :type vectors: Sequence[Sequence[complex]]
        :param tolerance: Allowed deviation of each norm from 1, defaults to the configured one.
        :type tolerance: float | None
        :return: The state set.
        :rtype: PureStateSet
        :raises StateError: on a wrong dimension or a state that is not normalised.
        """
        tolerance = settings.state_tolerance if tolerance is None else tolerance
        if dim < 1:
            raise StateError(messages.BAD_DIMENSION.format(minimum=1, dim=dim))
        for index, vector in enumerate(vectors):
            if len(vector) != dim:
                raise StateError(messages.STATE_DIMENSION.format(index=index, size=len(vector), expected=dim))
        states = np.array([[complex(a) for a in vector] for vector in vectors], dtype=complex).reshape(-1, dim)
        for index, vector in enumerate(states):
            norm = float(np.linalg.norm(vector))
            if abs(norm - 1) > tolerance:
                raise StateError(messages.STATE_NOT_NORMALIZED.format(index=index, norm=norm))
        return cls(dim, states)


@dataclass(frozen=True, eq=False)
class SearchResult:
    states: PureStateSet
    value: float
    violation: float
    restart: int
    evaluations: int


def _check_count(states: PureStateSet, graph: EventGraph) -> None:
    if len(states) != graph.n:
        raise StateError(messages.STATE_COUNT_MISMATCH.format(size=len(states), expected=graph.n))


def overlap_weighting(states: PureStateSet, graph: EventGraph) -> EdgeWeighting:
    """
    Edge weighting ``r_ij = |<φ_i|φ_j>|^2``.

    :param states: One state per vertex.
    :type states: PureStateSet
    :param graph: The event graph.
    :type graph: EventGraph
    :return: Float-valued weighting in canonical edge order.
    :rtype: EdgeWeighting
    :raises StateError: when the number of states differs from the number of vertices.
    """
    _check_count(states, graph)
    if not graph.m:
        return EdgeWeighting(())
    rows = np.array([i - 1 for i, _ in graph.edges])
    cols = np.array([j - 1 for _, j in graph.edges])
    inner = np.einsum("ij,ij->i", states.states[rows].conj(), states.states[cols])
    overlaps = np.clip(np.abs(inner) ** 2, 0.0, 1.0)
    return EdgeWeighting(tuple(float(r) for r in overlaps))


def evaluate_states(ineq: LinearInequality, graph: EventGraph, states: PureStateSet) -> Evaluation:
    """Evaluates ``ineq`` on the overlap weighting of ``states``."""
    return evaluate(ineq, overlap_weighting(states, graph))


def commuting_overlap_weighting(spectra: Sequence[Sequence[Rational]], graph: EventGraph) -> EdgeWeighting:
    """
    Exact overlaps ``Tr(ρ_i ρ_j) = sum_k p_i(k) p_j(k)`` of states diagonal in one basis.

    :param spectra: Rational eigenvalues of each ``ρ_i`` in the common eigenbasis.
    :type spectra: Sequence[Sequence[Rational]]
    :param graph: The event graph.
    :type graph: EventGraph
    :return: Weighting with :class:`~fractions.Fraction` values.
    :rtype: EdgeWeighting
    """
    diagonal = DistributionSet.of(spectra)
    if len(diagonal.mus) != graph.n:
        raise StateError(messages.STATE_COUNT_MISMATCH.format(size=len(diagonal.mus), expected=graph.n))
    values = []
    for i, j in graph.edges:
        values.append(sum((p * q for p, q in zip(diagonal.mus[i - 1], diagonal.mus[j - 1])), Fraction(0)))
    return EdgeWeighting(tuple(values))


def _equatorial(phase: sympy.Expr) -> list[sympy.Expr]:
    return [1 / sympy.sqrt(2), sympy.exp(sympy.I * phase) / sympy.sqrt(2)]


def _witness_amplitudes() -> dict[str, list[list[sympy.Expr]]]:
    third = sympy.sqrt(sympy.Rational(1, 3))
    five_ninths = sympy.sqrt(sympy.Rational(5, 9))
    return {
        "equatorial5": [_equatorial(2 * sympy.pi * k / 5) for k in range(5)],
        # |0> and |1> at vertices 1 and 3, equatorial states 2pi/3 apart at 2, 4, 5
        "triangle-poles": [[sympy.Integer(1), sympy.Integer(0)],
                           _equatorial(sympy.Integer(0)),
                           [sympy.Integer(0), sympy.Integer(1)],
                           _equatorial(2 * sympy.pi / 3),
                           _equatorial(4 * sympy.pi / 3)],
        "qutrit-k4": [[sympy.Integer(1), sympy.Integer(0), sympy.Integer(0)],
                      [five_ninths, sympy.sqrt(sympy.Rational(4, 9)), sympy.Integer(0)],
                      [five_ninths, -sympy.sqrt(sympy.Rational(1, 9)), sympy.I * third],
                      [five_ninths, -sympy.sqrt(sympy.Rational(1, 9)), -sympy.I * third]],
    }


def witness_targets() -> dict[str, tuple[EventGraph, LinearInequality]]:
    """The graph and inequality each analytic witness is evaluated on."""
    table = table_k5_representatives()
    return {
        "equatorial5": (complete_graph(5), table["k5_c5"].inequality),
        "triangle-poles": (complete_graph(5), table["k5_c4"].inequality),
        "qutrit-k4": (complete_graph(4), hn_inequality(4)),
    }


def analytic_witnesses() -> dict[str, PureStateSet]:
    """
    Named state sets with known violations.

    ``equatorial5``: the qubit states ``(|0> + e^{2πik/5}|1>)/√2``; ``triangle-poles``:
    the two poles and three equatorial states of the Bloch sphere; ``qutrit-k4``:
    four qutrit states violating h_4.

    :return: Catalogue of witnesses by name.
    :rtype: dict[str, PureStateSet]
    """
    catalogue = {}
    for name, amplitudes in _witness_amplitudes().items():
        vectors = [[complex(sympy.N(a, 30)) for a in state] for state in amplitudes]
        catalogue[name] = PureStateSet.of(len(vectors[0]), vectors)
    return catalogue


def exact_witness_values() -> dict[str, sympy.Expr]:
    """
    Symbolic value of each witness on its target inequality: ``5√5/4``, ``9/4`` and ``4/3``.

    :return: Simplified sympy expressions by witness name.
    :rtype: dict[str, sympy.Expr]
    """
    targets = witness_targets()
    values = {}
    for name, amplitudes in _witness_amplitudes().items():
        graph, ineq = targets[name]
        total = sympy.Integer(0)
        for c, (i, j) in zip(ineq.coeffs, graph.edges):
            if not c:
                continue
            inner = sum(sympy.conjugate(a) * b for a, b in zip(amplitudes[i - 1], amplitudes[j - 1]))
            total += c * sympy.expand_complex(inner * sympy.conjugate(inner))
        values[name] = sympy.simplify(total)
    return values


def seeded_rng(*seed: int) -> np.random.Generator:
    """Generator seeded with the given non-negative integers."""
    for part in seed:
        if part < 0:
            raise StateError(messages.NEGATIVE_SEED.format(seed=part))
    return np.random.default_rng(list(seed))


def sample_state(dim: int, rng: np.random.Generator | int) -> np.ndarray:
    """
    Haar-random unit vector: independent standard complex Gaussian amplitudes, normalised.
    In dimension 1 the only state up to phase is ``(1,)``, returned as is.

    :param dim: Hilbert space dimension, at least 1.
    :type dim: int
    :param rng: Source of randomness, or a seed for one.
    :type rng: np.random.Generator | int
    :return: The state.
    :rtype: np.ndarray
    :raises StateError: when ``dim`` is below 1 or the seed is negative.
    """
    if dim < 1:
        raise StateError(messages.BAD_DIMENSION.format(minimum=1, dim=dim))
    if not isinstance(rng, np.random.Generator):
        rng = seeded_rng(rng)
    if dim == 1:
        return np.ones(1, dtype=complex)
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vector / np.linalg.norm(vector)


def _objective(ineq: LinearInequality, graph: EventGraph) -> Callable[[np.ndarray], float]:
    support = ineq.support
    rows = np.array([graph.edges[k][0] - 1 for k in support], dtype=int)
    cols = np.array([graph.edges[k][1] - 1 for k in support], dtype=int)
    coeffs = np.array([ineq.coeffs[k] for k in support], dtype=float)

    def value(states: np.ndarray) -> float:
        inner = np.einsum("ij,ij->i", states[rows].conj(), states[cols])
        return float(coeffs @ (np.abs(inner) ** 2))

    return value


def _climb(ineq: LinearInequality, graph: EventGraph, dim: int, steps: int, seed: int,
           restart: int) -> tuple[float, np.ndarray]:
    rng = seeded_rng(seed, restart)
    value = _objective(ineq, graph)
    states = np.array([sample_state(dim, rng) for _ in graph.vertices]).reshape(graph.n, dim)
    best = value(states)
    for step in range(1, steps):
        k = step % graph.n
        candidate = states.copy()
        if rng.random() < _RESAMPLE:
            candidate[k] = sample_state(dim, rng)
        else:
            scale = _START_SCALE * (_END_SCALE / _START_SCALE) ** (step / steps)
            moved = states[k] + scale * (rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
            candidate[k] = moved / np.linalg.norm(moved)
        current = value(candidate)
        if current >= best:
            states, best = candidate, current
    return best, states


def search_violation(ineq: LinearInequality, graph: EventGraph, dim: int, budget: int | None = None,
                     restarts: int | None = None, seed: int | None = None,
                     threads: int | None = None) -> SearchResult:
    """
    Looks for pure states whose overlaps violate ``ineq``.

    Each restart draws Haar-random states and then improves them one state
    at a time, perturbing (or occasionally re-sampling) it and keeping the
    change when the value does not drop; the perturbation scale shrinks over
    the run. Restart ``k`` uses the generator seeded with ``(seed, k)``, so the
    result does not depend on how restarts are scheduled.

    :param ineq: Inequality over the edge coordinates of ``graph``.
    :type ineq: LinearInequality
    :param graph: The event graph.
    :type graph: EventGraph
    :param dim: Hilbert space dimension, at least 2.
    :type dim: int
    :param budget: Total number of evaluated state sets.
    :type budget: int | None
    :param restarts: Number of independent starts sharing the budget.
    :type restarts: int | None
    :param seed: Base seed.
    :type seed: int | None
    :param threads: Worker processes; ``None`` uses the configured value, ``0`` all cores.
    :type threads: int | None
    :return: The best state set, its value and its violation ``max(0, value - rhs)``.
    :rtype: SearchResult
    :raises StateError: when ``dim`` is below 2, the budget is not positive or the seed is negative.
    """
    budget = settings.search_budget if budget is None else budget
    restarts = settings.search_restarts if restarts is None else restarts
    seed = settings.seed if seed is None else seed
    if ineq.dim != graph.m:
        raise DimensionError(messages.DIMENSION_MISMATCH.format(expected=graph.m, size=ineq.dim))
    if dim < 2:
        raise StateError(messages.BAD_DIMENSION.format(minimum=2, dim=dim))
    if budget < 1:
        raise StateError(messages.ZERO_BUDGET)
    if seed < 0:
        raise StateError(messages.NEGATIVE_SEED.format(seed=seed))
    restarts = max(1, min(restarts, budget))
    steps = budget // restarts
    workers = settings.threads if threads is None else threads
    workers = workers or os.cpu_count() or 1
    indices = list(range(restarts))
    jobs = ([ineq] * restarts, [graph] * restarts, [dim] * restarts, [steps] * restarts, [seed] * restarts, indices)
    if workers > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=min(workers, restarts)) as pool:
            outcomes = list(pool.map(_climb, *jobs))
    else:
        outcomes = list(map(_climb, *jobs))
    restart = max(indices, key=lambda k: (outcomes[k][0], -k))
    value, states = outcomes[restart]
    violation = value - ineq.rhs
    violation = violation if violation > settings.violation_tolerance else 0.0
    logger.info("search dim %d, %d x %d samples: best value %.10f (restart %d)", dim, restarts, steps, value, restart)
    return SearchResult(PureStateSet(dim, states), value, violation, restart, restarts * steps)
