"""Reconnaissance Blind TicTacToe: hidden state, windowed sensing, episode loop.

Protocol per agent decision: a window placement is drawn uniformly, the true
board is read through it, the agent folds the observation into its belief
(predicting through its own previous move first), picks an action, and the
environment resolves it against the true board.  Playing an occupied cell ends
the episode with reward -1; wins, losses, and draws score +1, -1, 0.  The
opponent sees the full board and never plays an invalid move.

All randomness in an episode comes from one generator seeded by the config, so
identical configs replay bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Optional

from .belief import (
    Belief,
    Observation,
    WindowPlacement,
    WindowShape,
    initial_belief,
    predict,
    update,
    window_cells,
)
from .game import Action, BoardState, CellMark, GameStatus, POW3, cell_mark, index_status, place_mark
from .metrics import iou
from .opponents import OpponentModel, reply_distribution
from .policy import ActionSet, alt_values, argmax_set, mean_value, mixture_values
from .solver import QTable

MIXTURE = "mixture"
MAXBELIEF = "maxbelief"
RANDOM = "random"
POLICIES = (MIXTURE, MAXBELIEF, RANDOM)


class Outcome(Enum):
    WIN = "win"
    LOSS = "loss"
    DRAW = "draw"
    INVALID_MOVE = "invalid_move"


@dataclass(frozen=True)
class EpisodeConfig:
    shape: WindowShape
    opponent: OpponentModel
    policy: str = MIXTURE
    seed: int = 0
    # model the belief filter assumes for the opponent; None = the true one
    belief_opponent: Optional[OpponentModel] = None

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}, got {self.policy!r}")


@dataclass
class StepRecord:
    """Everything observed and decided at one agent decision point."""

    t: int
    observation: Observation
    belief: Belief
    belief_support_size: int
    a_mix: ActionSet
    a_max: ActionSet
    iou: float
    margin: float
    chosen_action: Action
    reward: float


@dataclass
class EpisodeResult:
    steps: list[StepRecord]
    total_return: float
    outcome: Outcome
    # true board index at each decision point (diagnostics; not part of traces)
    true_states: list[int] = field(default_factory=list)


def sample_window(shape: WindowShape, rng: Random) -> WindowPlacement:
    """Placement drawn uniformly from all positions where the window fits."""
    placements = shape.placements()
    return placements[rng.randrange(len(placements))]


def make_observation(state: BoardState, placement: WindowPlacement) -> Observation:
    """Read the true board through a placed window."""
    return Observation(placement=placement, contents=tuple(state.cells[c] for c in placement.cells()))


def _observe(index: int, placement: WindowPlacement) -> Observation:
    contents = tuple(CellMark(index // POW3[c] % 3) for c in window_cells(placement))
    return Observation(placement=placement, contents=contents)


def _sample_reply(model: OpponentModel, index: int, rng: Random) -> int:
    pairs = reply_distribution(model, index)
    r = rng.random()
    acc = 0.0
    for cell, p in pairs:
        acc += p
        if r < acc:
            return cell
    return pairs[-1][0]


def run_episode(config: EpisodeConfig, q: QTable) -> EpisodeResult:
    rng = Random(config.seed)
    belief_opponent = config.belief_opponent or config.opponent
    board = 0
    belief = initial_belief()
    last_action: Optional[Action] = None
    steps: list[StepRecord] = []
    true_states: list[int] = []

    for t in range(5):  # X can place at most five marks
        placement = sample_window(config.shape, rng)
        obs = _observe(board, placement)
        if last_action is not None:
            belief = predict(belief, last_action, belief_opponent)
        belief = update(belief, obs)
        true_states.append(board)

        mix_vals = mixture_values(belief, q)
        a_mix = argmax_set(mix_vals)
        a_max = argmax_set(alt_values(belief, q))
        step_iou = iou(a_mix, a_max)
        step_margin = max(mix_vals) - mean_value(mix_vals, a_max)

        if config.policy == MIXTURE:
            action = rng.choice(sorted(a_mix))
        elif config.policy == MAXBELIEF:
            action = rng.choice(sorted(a_max))
        else:
            action = rng.randrange(9)

        reward = 0.0
        outcome: Optional[Outcome] = None
        if cell_mark(board, action) != 0:
            reward, outcome = -1.0, Outcome.INVALID_MOVE
        else:
            board = place_mark(board, action, 1)
            st = index_status(board)
            if st is GameStatus.X_WINS:
                reward, outcome = 1.0, Outcome.WIN
            elif st is GameStatus.DRAW:
                reward, outcome = 0.0, Outcome.DRAW
            else:
                board = place_mark(board, _sample_reply(config.opponent, board, rng), 2)
                st = index_status(board)
                if st is GameStatus.O_WINS:
                    reward, outcome = -1.0, Outcome.LOSS
                elif st is GameStatus.DRAW:
                    reward, outcome = 0.0, Outcome.DRAW

        steps.append(
            StepRecord(
                t=t,
                observation=obs,
                belief=belief,
                belief_support_size=len(belief),
                a_mix=a_mix,
                a_max=a_max,
                iou=step_iou,
                margin=step_margin,
                chosen_action=action,
                reward=reward,
            )
        )
        if outcome is not None:
            return EpisodeResult(steps=steps, total_return=reward, outcome=outcome, true_states=true_states)
        last_action = action

    raise AssertionError("episode failed to terminate within five agent moves")


def run_episodes(config: EpisodeConfig, q: QTable, episodes: int) -> list[EpisodeResult]:
    """Run `episodes` independent episodes, seeding episode i with config.seed + i.

    The per-episode seed derivation means a batch can be sharded across
    workers and still reproduce the single-process results exactly.
    """
    from dataclasses import replace

    return [run_episode(replace(config, seed=config.seed + i), q) for i in range(episodes)]
