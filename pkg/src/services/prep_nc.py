"""
Preparation noncontextual edge weightings: ``r_ij = 1 - TV(μ_i, μ_j)`` for
distributions over a finite ontic space, and checks against the cycle
inequalities.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from src.conf import messages
from src.services.errors import DistributionError
from src.services.event_graph import EdgeWeighting, EventGraph, cycle_graph
from src.services.inequalities import Evaluation, cycle_inequalities, evaluate
from src.services.polytope import LinearInequality

logger = logging.getLogger(__name__)


def _check_distribution(index: int, mu: Sequence[Rational], size: int) -> tuple[Fraction, ...]:
    if len(mu) != size:
        raise DistributionError(messages.DISTRIBUTION_LENGTH.format(index=index, size=len(mu), expected=size))
    exact = tuple(Fraction(p) for p in mu)
    if any(p < 0 for p in exact):
        raise DistributionError(messages.DISTRIBUTION_NEGATIVE.format(index=index))
    total = sum(exact, Fraction(0))
    if total != 1:
        raise DistributionError(messages.DISTRIBUTION_SUM.format(index=index, total=total))
    return exact


@dataclass(frozen=True)
class DistributionSet:
    """Probability vectors over the ontic space ``{0, ..., ontic_size - 1}``, one per graph vertex."""
    ontic_size: int
    mus: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, mus: Sequence[Sequence[Rational]], ontic_size: int | None = None) -> "DistributionSet":
        """
        Validates the vectors: common length, nonnegative rational entries summing to exactly 1.

        :param mus: The distributions; entries may be ints, Fractions or "a/b" strings.
        :type mus: Sequence[Sequence[Rational]]
        :param ontic_size: Expected length, defaults to the length of the first vector.
        :type ontic_size: int | None
        :return: The distribution set.
        :rtype: DistributionSet
        :raises DistributionError: on an invalid vector.
        """
        if ontic_size is None:
            ontic_size = len(mus[0]) if mus else 0
        return cls(ontic_size, tuple(_check_distribution(k, mu, ontic_size) for k, mu in enumerate(mus)))


@dataclass(frozen=True)
class CycleReport:
    n: int
    values: tuple[Fraction, ...]

    @property
    def bound(self) -> int:
        return self.n - 2

    @property
    def compliant(self) -> bool:
        return all(value <= self.bound for value in self.values)


def tv_distance(mu: Sequence[Rational], nu: Sequence[Rational]) -> Fraction:
    """
    Total variation distance ``sum(|μ - ν|) / 2``, exact.

    :raises DistributionError: on vectors of different length or invalid distributions.
    """
    first = _check_distribution(0, mu, len(mu))
    second = _check_distribution(1, nu, len(mu))
    return sum((abs(p - q) for p, q in zip(first, second)), Fraction(0)) / 2


def confusability_weighting(distributions: DistributionSet, graph: EventGraph) -> EdgeWeighting:
    """
    The weighting ``r_ij = 1 - TV(μ_i, μ_j)`` a preparation noncontextual model assigns to each edge.

    :param distributions: One distribution per vertex.
    :type distributions: DistributionSet
    :param graph: The event graph.
    :type graph: EventGraph
    :return: Exact weighting.
    :rtype: EdgeWeighting
    :raises DistributionError: when the number of distributions differs from the number of vertices.
    """
    if len(distributions.mus) != graph.n:
        raise DistributionError(messages.DISTRIBUTION_COUNT.format(size=len(distributions.mus), expected=graph.n))
    mus = distributions.mus
    return EdgeWeighting(tuple(1 - tv_distance(mus[i - 1], mus[j - 1]) for i, j in graph.edges))


def check_cycle_compliance(distributions: DistributionSet, n: int) -> CycleReport:
    """
    Evaluates the ``n`` cycle inequalities of C_n on the confusability weighting.

    :param distributions: ``n`` distributions placed around the cycle.
    :type distributions: DistributionSet
    :param n: Cycle length.
    :type n: int
    :return: Value of each inequality; compliant when none exceeds ``n - 2``.
    :rtype: CycleReport
    """
    weighting = confusability_weighting(distributions, cycle_graph(n))
    report = CycleReport(n, tuple(evaluate(ineq, weighting).value for ineq in cycle_inequalities(n)))
    if not report.compliant:
        logger.warning("cycle C%d: confusability weighting exceeds %d: %s", n, report.bound, report.values)
    return report


def random_distribution_set(n: int, ontic_size: int, rng: np.random.Generator,
                            max_weight: int = 6) -> DistributionSet:
    """
    ``n`` random rational distributions: integer weights in ``0..max_weight``, normalised.

    A vector of all-zero weights is replaced by a point mass.
    """
    mus = []
    for _ in range(n):
        weights = [int(w) for w in rng.integers(0, max_weight + 1, size=ontic_size)]
        if not any(weights):
            weights[int(rng.integers(ontic_size))] = 1
        total = sum(weights)
        mus.append(tuple(Fraction(w, total) for w in weights))
    return DistributionSet(ontic_size, tuple(mus))


def evaluate_on_confusability(distributions: DistributionSet, graph: EventGraph,
                              inequalities: Sequence[LinearInequality]) -> list[Evaluation]:
    """Values of arbitrary inequalities on the confusability weighting; no bound is asserted."""
    weighting = confusability_weighting(distributions, graph)
    return [evaluate(ineq, weighting) for ineq in inequalities]
