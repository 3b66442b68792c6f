"""Exact Q-values for the fully observed game, by memoized expectimax.

For every reachable, non-terminal board with X to move, ``solve_q`` computes
Q(s, a) for all nine actions against a fixed opponent model:

* occupied cell: -1 (the environment ends the episode with reward -1),
* move that wins or fills the board: +1 / 0,
* otherwise: expectation over opponent replies of -1 (loss), 0 (draw), or the
  max-action value of the next X-to-move board.

Rewards are undiscounted and purely terminal, so values always land in [-1, 1].
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .game import (
    GameStatus,
    POW3,
    cell_mark,
    enumerate_reachable_states,
    index_status,
    index_to_move,
    place_mark,
)
from .opponents import OpponentModel, descriptor, from_descriptor, reply_distribution

FORMAT_VERSION = 1


class FormatVersionMismatchError(ValueError):
    """Q-table file declares an unsupported format version."""


class CorruptEntryError(ValueError):
    """Q-table entry has the wrong shape or out-of-range values."""


@dataclass
class QTable:
    """Finite map state-index -> nine action values, plus provenance header."""

    opponent: object  # descriptor: "uniform" | "minimax" | {"eps_minimax": p}
    entries: dict[int, list[float]] = field(default_factory=dict)
    gamma: float = 1.0

    def values(self, state_index: int) -> list[float]:
        return self.entries[state_index]

    def state_value(self, state_index: int) -> float:
        return max(self.entries[state_index])

    def opponent_model(self) -> OpponentModel:
        return from_descriptor(self.opponent)


def solve_q(opponent: OpponentModel) -> QTable:
    """Solve Q(s, a) exactly for every X-to-move, non-terminal reachable board."""
    entries: dict[int, list[float]] = {}
    values: dict[int, float] = {}

    def state_value(index: int) -> float:
        v = values.get(index)
        if v is None:
            v = max(q_row(index))
            values[index] = v
        return v

    def q_row(index: int) -> list[float]:
        row = entries.get(index)
        if row is not None:
            return row
        row = []
        for action in range(9):
            if cell_mark(index, action) != 0:
                row.append(-1.0)
                continue
            after_x = index + POW3[action]  # X mark = digit 1
            st = index_status(after_x)
            if st is GameStatus.X_WINS:
                row.append(1.0)
            elif st is GameStatus.DRAW:
                row.append(0.0)
            else:
                total = 0.0
                for reply, p in reply_distribution(opponent, after_x):
                    after_o = place_mark(after_x, reply, 2)
                    st2 = index_status(after_o)
                    if st2 is GameStatus.O_WINS:
                        total -= p
                    elif st2 is not GameStatus.DRAW:
                        total += p * state_value(after_o)
                row.append(total)
        entries[index] = row
        return row

    for index in sorted(enumerate_reachable_states()):
        if index_status(index) is GameStatus.IN_PROGRESS and index_to_move(index) == 1:
            q_row(index)
    return QTable(opponent=descriptor(opponent), entries=entries)


def save_qtable(q: QTable, path) -> None:
    """Write a Q-table as versioned JSON; float repr round-trips exactly."""
    payload = {
        "version": FORMAT_VERSION,
        "opponent": q.opponent,
        "gamma": q.gamma,
        "entries": {str(i): row for i, row in sorted(q.entries.items())},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, separators=(",", ":"), sort_keys=True)
        fh.write("\n")


def load_qtable(path) -> QTable:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("version")
    if version != FORMAT_VERSION:
        raise FormatVersionMismatchError(
            f"expected version {FORMAT_VERSION}, file has {version!r}"
        )
    from_descriptor(payload["opponent"])  # validates the header tag
    entries: dict[int, list[float]] = {}
    for key, row in payload["entries"].items():
        if not isinstance(row, list) or len(row) != 9:
            raise CorruptEntryError(f"state {key}: expected 9 action values")
        row = [float(v) for v in row]
        if any(not -1.0 <= v <= 1.0 for v in row):
            raise CorruptEntryError(f"state {key}: value outside [-1, 1]")
        entries[int(key)] = row
    return QTable(opponent=payload["opponent"], entries=entries, gamma=float(payload["gamma"]))


def qtable_digest(path) -> str:
    """SHA-256 of a Q-table file, recorded in run manifests."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
