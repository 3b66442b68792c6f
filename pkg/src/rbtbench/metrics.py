"""Evaluation metrics: action-set IoU, value margin, return aggregation.

The value margin compares the two policies on the mixture value scale (the
best computable stand-in for the true belief value, which is intractable):
margin = mixture value of the mixture policy's choice minus the expected
mixture value of a uniform choice from the max-belief policy's action set.
It is nonnegative up to tie tolerance by construction.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .belief import Belief
from .policy import ActionSet, alt_values, argmax_set, mean_value, mixture_values
from .solver import QTable


class InsufficientSamplesError(ValueError):
    """Confidence interval needs at least two samples."""


@dataclass(frozen=True)
class SweepRow:
    """One benchmark cell: mean return of one policy on one window size."""

    window: str
    policy: str
    episodes: int
    mean_return: float
    ci95: float


@dataclass(frozen=True)
class TimestepAggregate:
    t: int
    mean_iou: float
    mean_margin: float
    samples: int


def iou(a: ActionSet, b: ActionSet) -> float:
    """Jaccard index |a & b| / |a | b| of two non-empty action sets."""
    return len(a & b) / len(a | b)


def value_margin(belief: Belief, q: QTable) -> float:
    """Mixture-value advantage of the mixture policy over the max-belief one."""
    values = mixture_values(belief, q)
    a_max = argmax_set(alt_values(belief, q))
    return max(values) - mean_value(values, a_max)


def mean_ci95(returns: Sequence[float]) -> tuple[float, float]:
    """Sample mean and normal-approximation 95% half-width (1.96 * sd / sqrt(n))."""
    n = len(returns)
    if n < 2:
        raise InsufficientSamplesError(f"need at least 2 samples, got {n}")
    mean = statistics.fmean(returns)
    return mean, 1.96 * statistics.stdev(returns, xbar=mean) / n**0.5


def aggregate_by_timestep(results: Iterable) -> list[TimestepAggregate]:
    """Per-timestep means of IoU and margin over the episodes that reached each t.

    Episodes that ended before t simply contribute nothing at t.
    """
    iou_sums: dict[int, float] = {}
    margin_sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for result in results:
        for step in result.steps:
            iou_sums[step.t] = iou_sums.get(step.t, 0.0) + step.iou
            margin_sums[step.t] = margin_sums.get(step.t, 0.0) + step.margin
            counts[step.t] = counts.get(step.t, 0) + 1
    return [
        TimestepAggregate(
            t=t,
            mean_iou=iou_sums[t] / counts[t],
            mean_margin=margin_sums[t] / counts[t],
            samples=counts[t],
        )
        for t in sorted(counts)
    ]
