"""Opponent move models.

The opponent sees the whole board, so each model maps an O-to-move board to a
probability distribution over its legal replies.  Three models are provided:

* ``UniformRandomOpponent`` -- every legal reply equally likely.
* ``MinimaxOpponent`` -- game-theoretic best replies from a full-depth search,
  ties split uniformly.
* ``EpsilonMinimaxOpponent(eps)`` -- plays uniformly with probability eps and
  minimax otherwise, interpolating between the two above.

Models are frozen values so they can double as cache keys and be shared across
episode workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .game import (
    BoardState,
    CellMark,
    GameStatus,
    empty_cells,
    encode_state,
    index_status,
    index_to_move,
    place_mark,
)


class TerminalStateError(ValueError):
    """Opponent asked to move on a finished board."""


@lru_cache(maxsize=None)
def game_value(index: int) -> int:
    """Minimax value of a board from X's perspective: +1, 0, or -1.

    X maximizes, O minimizes; terminal boards score win/loss/draw directly.
    """
    st = index_status(index)
    if st is GameStatus.X_WINS:
        return 1
    if st is GameStatus.O_WINS:
        return -1
    if st is GameStatus.DRAW:
        return 0
    mover = index_to_move(index)
    child_values = [game_value(place_mark(index, c, mover)) for c in empty_cells(index)]
    return max(child_values) if mover == 1 else min(child_values)


@dataclass(frozen=True)
class UniformRandomOpponent:
    def reply_probs(self, index: int) -> tuple[tuple[int, float], ...]:
        cells = empty_cells(index)
        p = 1.0 / len(cells)
        return tuple((c, p) for c in cells)


@dataclass(frozen=True)
class MinimaxOpponent:
    def reply_probs(self, index: int) -> tuple[tuple[int, float], ...]:
        cells = empty_cells(index)
        values = [game_value(place_mark(index, c, 2)) for c in cells]
        best = min(values)  # O minimizes X's value
        winners = [c for c, v in zip(cells, values) if v == best]
        p = 1.0 / len(winners)
        return tuple((c, p) for c in winners)


@dataclass(frozen=True)
class EpsilonMinimaxOpponent:
    eps: float

    def __post_init__(self):
        if not 0.0 <= self.eps <= 1.0:
            raise ValueError(f"eps must be in [0, 1], got {self.eps}")

    def reply_probs(self, index: int) -> tuple[tuple[int, float], ...]:
        cells = empty_cells(index)
        base = self.eps / len(cells)
        probs = {c: base for c in cells}
        for c, p in MinimaxOpponent().reply_probs(index):
            probs[c] += (1.0 - self.eps) * p
        return tuple((c, p) for c, p in sorted(probs.items()) if p > 0.0)


OpponentModel = Union[UniformRandomOpponent, MinimaxOpponent, EpsilonMinimaxOpponent]


@lru_cache(maxsize=None)
def reply_distribution(model: OpponentModel, index: int) -> tuple[tuple[int, float], ...]:
    """Cached (cell, probability) pairs for an O-to-move, non-terminal board index."""
    if index_status(index) is not GameStatus.IN_PROGRESS:
        raise TerminalStateError(f"board {index} is terminal")
    return model.reply_probs(index)


def opponent_distribution(model: OpponentModel, board: BoardState) -> dict[int, float]:
    """Probability of each legal O reply on `board`.

    Raises TerminalStateError if the board is finished.
    """
    if board.to_move() is not CellMark.O:
        raise ValueError("opponent_distribution requires O to move")
    return dict(reply_distribution(model, encode_state(board)))


def descriptor(model: OpponentModel):
    """JSON-compatible tag identifying a model (used in Q-table headers)."""
    if isinstance(model, UniformRandomOpponent):
        return "uniform"
    if isinstance(model, MinimaxOpponent):
        return "minimax"
    if isinstance(model, EpsilonMinimaxOpponent):
        return {"eps_minimax": model.eps}
    raise TypeError(f"unknown opponent model {model!r}")


def from_descriptor(desc) -> OpponentModel:
    if desc == "uniform":
        return UniformRandomOpponent()
    if desc == "minimax":
        return MinimaxOpponent()
    if isinstance(desc, dict) and set(desc) == {"eps_minimax"}:
        return EpsilonMinimaxOpponent(eps=float(desc["eps_minimax"]))
    raise ValueError(f"unknown opponent descriptor {desc!r}")
