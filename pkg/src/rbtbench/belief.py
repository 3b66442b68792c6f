"""Exact Bayesian filtering over hidden boards.

A belief is a plain ``dict`` mapping canonical board indices to strictly
positive probabilities summing to one.  Because the observation model is a
deterministic window read and the sensing window placement is drawn
independently of the state, the posterior update is multiplication by a 0/1
match indicator followed by renormalization.

The transition push-forward (``predict``) conditions on everything the agent
provably knows when it is asked to move again:

1. its last move was valid (episodes end on invalid moves),
2. that move did not end the game,
3. the opponent's reply did not end the game.

States failing any of these are pruned before renormalization, so the filter
stays exact: the true board always keeps positive mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import fsum

from .game import Action, BoardState, CellMark, GameStatus, POW3, cell_mark, index_status
from .opponents import OpponentModel, reply_distribution

Belief = dict[int, float]


class EmptySupportError(ValueError):
    """Conditioning removed every state: the history is impossible under the model."""


class ZeroEvidenceError(ValueError):
    """Observation matches no state in the belief support."""


@dataclass(frozen=True)
class WindowShape:
    height: int
    width: int

    def __post_init__(self):
        if not (1 <= self.height <= 3 and 1 <= self.width <= 3):
            raise ValueError(f"window shape must be within 1..3, got {self.height}x{self.width}")

    @property
    def label(self) -> str:
        return f"{self.height}x{self.width}"

    @classmethod
    def from_label(cls, label: str) -> "WindowShape":
        try:
            h, w = label.lower().split("x")
            return cls(height=int(h), width=int(w))
        except (ValueError, TypeError):
            raise ValueError(f"expected HxW with H,W in 1..3, got {label!r}") from None

    def placements(self) -> tuple["WindowPlacement", ...]:
        """All (4-h)*(4-w) positions where the window fits, row-major."""
        return tuple(
            WindowPlacement(top=t, left=l, shape=self)
            for t in range(4 - self.height)
            for l in range(4 - self.width)
        )


@dataclass(frozen=True)
class WindowPlacement:
    top: int
    left: int
    shape: WindowShape

    def __post_init__(self):
        if not (0 <= self.top <= 3 - self.shape.height and 0 <= self.left <= 3 - self.shape.width):
            raise ValueError(f"window {self.shape.label} does not fit at ({self.top}, {self.left})")

    def cells(self) -> tuple[int, ...]:
        return window_cells(self)


@lru_cache(maxsize=None)
def window_cells(placement: WindowPlacement) -> tuple[int, ...]:
    """Board cells covered by a placed window, in row-major window order."""
    return tuple(
        (placement.top + r) * 3 + (placement.left + c)
        for r in range(placement.shape.height)
        for c in range(placement.shape.width)
    )


@dataclass(frozen=True)
class Observation:
    placement: WindowPlacement
    contents: tuple[CellMark, ...]

    def __post_init__(self):
        expected = self.placement.shape.height * self.placement.shape.width
        if len(self.contents) != expected:
            raise ValueError(f"expected {expected} cells of contents, got {len(self.contents)}")
        object.__setattr__(self, "contents", tuple(CellMark(c) for c in self.contents))


def initial_belief() -> Belief:
    """Point mass on the empty board: the only possible state before any move."""
    return {0: 1.0}


def observation_likelihood(obs: Observation, state: BoardState) -> int:
    """1 if the window read off `state` would equal `obs`, else 0."""
    return _matches(obs, sum(int(c) * p for c, p in zip(state.cells, POW3)))


def _matches(obs: Observation, index: int) -> bool:
    return all(
        index // POW3[cell] % 3 == mark
        for cell, mark in zip(window_cells(obs.placement), obs.contents)
    )


def _normalized(mass: dict[int, float]) -> Belief:
    total = fsum(mass.values())
    return {s: p / total for s, p in sorted(mass.items()) if p > 0.0}


def predict(belief: Belief, agent_action: Action, opponent: OpponentModel) -> Belief:
    """Push a belief through our move and the opponent's reply, given the episode continued."""
    mass: dict[int, float] = {}
    for index, p in belief.items():
        if cell_mark(index, agent_action) != 0:
            continue  # our move was valid, so this state was not the real one
        after_x = index + POW3[agent_action]
        if index_status(after_x) is not GameStatus.IN_PROGRESS:
            continue  # we did not win or fill the board
        for reply, rp in reply_distribution(opponent, after_x):
            after_o = after_x + 2 * POW3[reply]
            if index_status(after_o) is GameStatus.IN_PROGRESS:
                mass[after_o] = mass.get(after_o, 0.0) + p * rp
    if not mass:
        raise EmptySupportError(
            f"no state survives action {agent_action}; environment and filter disagree"
        )
    return _normalized(mass)


def update(belief: Belief, obs: Observation) -> Belief:
    """Condition a belief on a window observation (0/1 likelihood, renormalized)."""
    mass = {index: p for index, p in belief.items() if _matches(obs, index)}
    if not mass:
        raise ZeroEvidenceError(f"observation {obs} matches no state in the support")
    return _normalized(mass)


def observation_distribution(
    belief: Belief,
    agent_action: Action,
    opponent: OpponentModel,
    shape: WindowShape,
) -> dict[Observation, float]:
    """Distribution of the next observation given a belief and our action.

    Placements are uniform and state-independent, so each contributes its
    1/#placements share of the predicted state mass.
    """
    predicted = predict(belief, agent_action, opponent)
    placements = shape.placements()
    weight = 1.0 / len(placements)
    dist: dict[Observation, float] = {}
    for placement in placements:
        covered = window_cells(placement)
        for index, p in predicted.items():
            contents = tuple(CellMark(index // POW3[c] % 3) for c in covered)
            obs = Observation(placement=placement, contents=contents)
            dist[obs] = dist.get(obs, 0.0) + weight * p
    return dist
