"""Dominance between scored communities and Pareto-frontier selection.

Each criterion carries its own "more radical" direction, so criteria on
incomparable scales combine without weights. Dominance is strict: as-or-more
radical everywhere and strictly more radical somewhere, so exactly tied
points never dominate each other and are all retained on the frontier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import EmptyInputError, SchemaMismatchError


class Direction(Enum):
    HIGHER_IS_MORE_RADICAL = "HIGHER_IS_MORE_RADICAL"
    LOWER_IS_MORE_RADICAL = "LOWER_IS_MORE_RADICAL"


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    direction: Direction


@dataclass(frozen=True)
class ParetoPoint:
    """A community's position on the multidimensional relevance scale."""

    label: str
    values: tuple[float, ...]

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError(f"point {self.label!r} has non-finite values")


def _check_schema(point: ParetoPoint, criteria: Sequence[CriterionSpec]) -> None:
    if len(point.values) != len(criteria):
        raise SchemaMismatchError(
            f"point {point.label!r} has {len(point.values)} values "
            f"for {len(criteria)} criteria"
        )


def _adjusted(point: ParetoPoint, criteria: Sequence[CriterionSpec]) -> tuple[float, ...]:
    """Values flipped so that greater always means more radical."""
    return tuple(
        v if c.direction is Direction.HIGHER_IS_MORE_RADICAL else -v
        for v, c in zip(point.values, criteria)
    )


def _dominates_adjusted(b: tuple[float, ...], a: tuple[float, ...]) -> bool:
    return all(x >= y for x, y in zip(b, a)) and any(x > y for x, y in zip(b, a))


def dominates(b: ParetoPoint, a: ParetoPoint, criteria: Sequence[CriterionSpec]) -> bool:
    """True iff *b* is as-or-more radical than *a* on every criterion and
    strictly more radical on at least one. Equal points do not dominate."""
    _check_schema(b, criteria)
    _check_schema(a, criteria)
    return _dominates_adjusted(_adjusted(b, criteria), _adjusted(a, criteria))


def pareto_frontier(
    points: Sequence[ParetoPoint],
    criteria: Sequence[CriterionSpec],
) -> set[str]:
    """Labels of the points not dominated by any other point.

    Sorted-sweep implementation: in descending lexicographic order of the
    direction-adjusted values, any dominator precedes its victims and is
    itself non-dominated once kept, so each point only needs checking
    against the frontier built so far. Duplicate-valued points are all
    retained.
    """
    if not points:
        raise EmptyInputError("frontier of an empty point set is undefined")
    adjusted = []
    for point in points:
        _check_schema(point, criteria)
        adjusted.append(_adjusted(point, criteria))
    order = sorted(range(len(points)), key=lambda i: adjusted[i], reverse=True)
    frontier: list[int] = []
    labels: set[str] = set()
    for i in order:
        if not any(_dominates_adjusted(adjusted[j], adjusted[i]) for j in frontier):
            frontier.append(i)
            labels.add(points[i].label)
    return labels
