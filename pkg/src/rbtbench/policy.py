"""Belief-weighted action values and the two policies built on them.

The mixture policy scores each action by the belief-weighted average of the
solved fully-observable Q-values and acts greedily.  The max-belief policy
first throws away everything but the most probable states, averages Q over
those uniformly, and acts greedily on that instead; it is the baseline the
benchmark compares against.

Argmax over floats is ill-posed, so both policies use a set-valued argmax with
a small absolute tolerance and break ties uniformly at random from the set.
"""

from __future__ import annotations

from math import fsum
from random import Random
from typing import Sequence

from .belief import Belief
from .game import Action
from .solver import QTable

ARGMAX_TOL = 1e-9

ActionValues = list[float]
ActionSet = frozenset[int]


class MissingQEntryError(KeyError):
    """Belief support contains a state the Q-table does not cover."""


def mixture_values(belief: Belief, q: QTable) -> ActionValues:
    """Belief-weighted Q-values: value[a] = sum_s belief(s) * Q(s, a)."""
    values = [0.0] * 9
    entries = q.entries
    for state, p in belief.items():
        row = entries.get(state)
        if row is None:
            raise MissingQEntryError(state)
        for a in range(9):
            values[a] += p * row[a]
    return values


def argmax_set(values: Sequence[float], tol: float = ARGMAX_TOL) -> ActionSet:
    """All actions whose value is within `tol` of the maximum."""
    cutoff = max(values) - tol
    return frozenset(a for a, v in enumerate(values) if v >= cutoff)


def max_belief_states(belief: Belief, tol: float = ARGMAX_TOL) -> frozenset[int]:
    """States carrying (within `tol`) the maximal belief mass."""
    cutoff = max(belief.values()) - tol
    return frozenset(s for s, p in belief.items() if p >= cutoff)


def alt_values(belief: Belief, q: QTable) -> ActionValues:
    """Q averaged uniformly over the maximal-belief states only.

    This is the decision rule of the max-belief baseline: the belief outside
    the modal states is discarded, not renormalized.
    """
    top = max_belief_states(belief)
    weight = 1.0 / len(top)
    values = [0.0] * 9
    entries = q.entries
    for state in top:
        row = entries.get(state)
        if row is None:
            raise MissingQEntryError(state)
        for a in range(9):
            values[a] += weight * row[a]
    return values


def act_mixture(belief: Belief, q: QTable, rng: Random) -> tuple[Action, ActionSet, ActionValues]:
    """Greedy mixture action, its argmax set, and the values behind it."""
    values = mixture_values(belief, q)
    best = argmax_set(values)
    return rng.choice(sorted(best)), best, values


def act_alt(belief: Belief, q: QTable, rng: Random) -> tuple[Action, ActionSet]:
    """Greedy max-belief action and its argmax set."""
    best = argmax_set(alt_values(belief, q))
    return rng.choice(sorted(best)), best


def mean_value(values: ActionValues, actions: ActionSet) -> float:
    """Average value over an action set (uniform choice among its members)."""
    return fsum(values[a] for a in actions) / len(actions)
