"""Benchmark command line.

Four subcommands cover the full workflow:

* ``solve``  -- solve the fully observed game against an opponent model and
  cache the Q-table as versioned JSON.
* ``run``    -- run one (window, policy) benchmark cell, append its summary
  row to a CSV, optionally dump a per-step JSONL trace.
* ``sweep``  -- run both policies over a list of window sizes and emit
  ``returns.csv``, ``timestep_metrics.csv``, ``returns.svg`` and a manifest.
* ``replay`` -- play a single episode and pretty-print the observation
  window, the belief (every support state with its probability), both argmax
  action sets, the mixture values, and the chosen action at every step.

Every command is a deterministic function of its flags and input files, so
rerunning a command reproduces its outputs byte for byte.  ``RBT_QTABLE`` may
supply the default ``--q`` path.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence, TextIO

from . import __version__
from .belief import Observation, WindowPlacement, WindowShape
from .env import (
    MAXBELIEF,
    MIXTURE,
    POLICIES,
    EpisodeConfig,
    EpisodeResult,
    StepRecord,
    run_episodes,
)
from .game import CellMark, cell_mark
from .metrics import SweepRow, aggregate_by_timestep, mean_ci95
from .opponents import (
    EpsilonMinimaxOpponent,
    MinimaxOpponent,
    OpponentModel,
    UniformRandomOpponent,
)
from .policy import mixture_values
from .solver import QTable, load_qtable, qtable_digest, save_qtable, solve_q

DEFAULT_WINDOWS = "1x1,2x1,2x2,3x1,3x2"
RETURNS_HEADER = "window,policy,episodes,mean_return,ci95"
TIMESTEP_HEADER = "window,policy_pair,t,mean_iou,mean_margin,samples"
POLICY_PAIR = "mixture_vs_maxbelief"

MARK_CHARS = {CellMark.EMPTY: ".", CellMark.X: "X", CellMark.O: "O"}


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a sweep bit for bit."""

    tool: str
    version: int
    tool_version: str
    qtable: str
    qtable_sha256: str
    opponent: object
    windows: tuple[str, ...]
    policies: tuple[str, ...]
    episodes: int
    seed: int


def parse_opponent(text: str) -> OpponentModel:
    if text == "uniform":
        return UniformRandomOpponent()
    if text == "minimax":
        return MinimaxOpponent()
    if text.startswith("eps:"):
        return EpsilonMinimaxOpponent(eps=float(text[4:]))
    raise ValueError(f"unknown opponent {text!r} (expected uniform, minimax, or eps:<p>)")


def _fmt(value: float) -> str:
    return format(value, ".6g")


def sweep_row_line(row: SweepRow) -> str:
    return ",".join(
        (row.window, row.policy, str(row.episodes), _fmt(row.mean_return), _fmt(row.ci95))
    )


def append_sweep_row(path: str, row: SweepRow) -> None:
    fresh = not os.path.exists(path)
    with open(path, "a", encoding="utf-8") as fh:
        if fresh:
            fh.write(RETURNS_HEADER + "\n")
        fh.write(sweep_row_line(row) + "\n")


def write_returns_csv(path: str, rows: Sequence[SweepRow]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(RETURNS_HEADER + "\n")
        for row in rows:
            fh.write(sweep_row_line(row) + "\n")


def write_timestep_csv(path: str, rows: Sequence[tuple]) -> None:
    """Rows are (window_label, policy_pair, TimestepAggregate)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(TIMESTEP_HEADER + "\n")
        for window, pair, agg in rows:
            fh.write(
                f"{window},{pair},{agg.t},{_fmt(agg.mean_iou)},{_fmt(agg.mean_margin)},{agg.samples}\n"
            )


# --- step-trace JSONL -------------------------------------------------------

def step_to_json(episode: int, step: StepRecord) -> dict:
    return {
        "episode": episode,
        "t": step.t,
        "observation": {
            "top": step.observation.placement.top,
            "left": step.observation.placement.left,
            "height": step.observation.placement.shape.height,
            "width": step.observation.placement.shape.width,
            "contents": [int(c) for c in step.observation.contents],
        },
        "belief": {str(s): p for s, p in step.belief.items()},
        "belief_support_size": step.belief_support_size,
        "a_mix": sorted(step.a_mix),
        "a_max": sorted(step.a_max),
        "iou": step.iou,
        "margin": step.margin,
        "chosen_action": step.chosen_action,
        "reward": step.reward,
    }


def step_from_json(obj: dict) -> tuple[int, StepRecord]:
    o = obj["observation"]
    placement = WindowPlacement(
        top=o["top"], left=o["left"], shape=WindowShape(height=o["height"], width=o["width"])
    )
    observation = Observation(placement=placement, contents=tuple(CellMark(c) for c in o["contents"]))
    step = StepRecord(
        t=obj["t"],
        observation=observation,
        belief={int(s): p for s, p in obj["belief"].items()},
        belief_support_size=obj["belief_support_size"],
        a_mix=frozenset(obj["a_mix"]),
        a_max=frozenset(obj["a_max"]),
        iou=obj["iou"],
        margin=obj["margin"],
        chosen_action=obj["chosen_action"],
        reward=obj["reward"],
    )
    return obj["episode"], step


def write_trace(fh: TextIO, results: Sequence[EpisodeResult]) -> None:
    for episode, result in enumerate(results):
        for step in result.steps:
            fh.write(json.dumps(step_to_json(episode, step), sort_keys=True) + "\n")


# --- SVG chart --------------------------------------------------------------

BAR_COLORS = {MIXTURE: "#4878a8", MAXBELIEF: "#e1812c", "random": "#6aa84f"}


def render_returns_svg(rows: Sequence[SweepRow]) -> str:
    """Grouped bar chart of mean returns with 95% CI whiskers, one group per window."""
    windows = list(dict.fromkeys(r.window for r in rows))
    policies = list(dict.fromkeys(r.policy for r in rows))
    by_cell = {(r.window, r.policy): r for r in rows}

    width, height = 640, 400
    left, right, top, bottom = 64, 20, 40, 52
    plot_w, plot_h = width - left - right, height - top - bottom
    y_min, y_max = -1.0, 1.0

    def y(v: float) -> float:
        return top + (y_max - v) / (y_max - y_min) * plot_h

    group_w = plot_w / len(windows)
    bar_w = group_w / (len(policies) + 1)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">Average return by sensing window</text>',
    ]
    for tick in (-1.0, -0.5, 0.0, 0.5, 1.0):
        yy = y(tick)
        stroke = "#888888" if tick == 0.0 else "#dddddd"
        out.append(
            f'<line x1="{left}" y1="{yy:.2f}" x2="{left + plot_w}" y2="{yy:.2f}" '
            f'stroke="{stroke}" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{left - 8}" y="{yy + 4:.2f}" text-anchor="end" font-family="sans-serif" '
            f'font-size="12">{tick:g}</text>'
        )
    for wi, window in enumerate(windows):
        group_x = left + wi * group_w
        for pi, pol in enumerate(policies):
            row = by_cell.get((window, pol))
            if row is None:
                continue
            x = group_x + (pi + 0.5) * bar_w
            y0, y1 = y(0.0), y(row.mean_return)
            bar_top, bar_h = min(y0, y1), abs(y0 - y1)
            color = BAR_COLORS.get(pol, "#999999")
            out.append(
                f'<rect x="{x:.2f}" y="{bar_top:.2f}" width="{bar_w:.2f}" height="{bar_h:.2f}" '
                f'fill="{color}"><title>{window} {pol}: {_fmt(row.mean_return)} '
                f'&#177; {_fmt(row.ci95)}</title></rect>'
            )
            cx = x + bar_w / 2
            lo, hi = y(row.mean_return - row.ci95), y(row.mean_return + row.ci95)
            out.append(
                f'<line x1="{cx:.2f}" y1="{lo:.2f}" x2="{cx:.2f}" y2="{hi:.2f}" '
                f'stroke="#333333" stroke-width="1.5"/>'
            )
            for yy in (lo, hi):
                out.append(
                    f'<line x1="{cx - 4:.2f}" y1="{yy:.2f}" x2="{cx + 4:.2f}" y2="{yy:.2f}" '
                    f'stroke="#333333" stroke-width="1.5"/>'
                )
        out.append(
            f'<text x="{group_x + group_w / 2:.2f}" y="{height - bottom + 20}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="13">{window}</text>'
        )
    for pi, pol in enumerate(policies):
        lx = left + plot_w - 130
        ly = top + 8 + pi * 18
        out.append(
            f'<rect x="{lx}" y="{ly}" width="12" height="12" '
            f'fill="{BAR_COLORS.get(pol, "#999999")}"/>'
        )
        out.append(
            f'<text x="{lx + 18}" y="{ly + 10}" font-family="sans-serif" font-size="12">{pol}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --- replay rendering -------------------------------------------------------

def board_rows(index: int) -> list[str]:
    return [
        "".join(MARK_CHARS[CellMark(cell_mark(index, r * 3 + c))] for c in range(3))
        for r in range(3)
    ]


def observation_rows(obs: Observation) -> list[str]:
    """3x3 grid of the observation; cells outside the window are blanked."""
    grid = [[" "] * 3 for _ in range(3)]
    for cell, mark in zip(obs.placement.cells(), obs.contents):
        grid[cell // 3][cell % 3] = MARK_CHARS[mark]
    return ["".join(r) for r in grid]


def _columns(blocks: list[list[str]], per_row: int = 8, col_w: int = 10) -> list[str]:
    lines: list[str] = []
    for start in range(0, len(blocks), per_row):
        chunk = blocks[start:start + per_row]
        for line_i in range(max(len(b) for b in chunk)):
            lines.append("  " + "".join(b[line_i].ljust(col_w) for b in chunk).rstrip())
        lines.append("")
    return lines


def render_step(step: StepRecord, values: Sequence[float], true_state: Optional[int] = None) -> str:
    pl = step.observation.placement
    lines = [
        f"t={step.t}  window {pl.shape.label} at (row {pl.top}, col {pl.left})",
        "  observed:",
    ]
    lines.extend("    |" + row + "|" for row in observation_rows(step.observation))
    n = step.belief_support_size
    lines.append(f"  belief ({n} state{'s' if n != 1 else ''}):")
    ranked = sorted(step.belief.items(), key=lambda kv: (-kv[1], kv[0]))
    blocks = []
    for state, p in ranked:
        tag = "*" if state == true_state else ""
        blocks.append(board_rows(state) + [f"p={p:.4f}{tag}"])
    lines.extend(_columns(blocks))
    lines.append("  Q~ per action: " + " ".join(f"{a}:{v:+.4f}" for a, v in enumerate(values)))
    lines.append(
        "  A_mix={" + ",".join(map(str, sorted(step.a_mix))) + "}"
        + "  A_max={" + ",".join(map(str, sorted(step.a_max))) + "}"
        + f"  iou={step.iou:.3f}  margin={step.margin:.4f}"
    )
    lines.append(
        f"  chosen action: {step.chosen_action} "
        f"(row {step.chosen_action // 3}, col {step.chosen_action % 3})"
    )
    return "\n".join(lines)


# --- subcommands ------------------------------------------------------------

def cmd_solve(args: argparse.Namespace) -> int:
    opponent = parse_opponent(args.opponent)
    q = solve_q(opponent)
    save_qtable(q, args.out)
    print(f"solved {len(q.entries)} states against opponent {args.opponent}")
    print(f"empty-board value: {_fmt(q.state_value(0))}")
    print(f"wrote {args.out}")
    return 0


def _load_q(args: argparse.Namespace) -> tuple[QTable, str]:
    path = args.q or os.environ.get("RBT_QTABLE")
    if not path:
        raise ValueError("no Q-table: pass --q PATH or set RBT_QTABLE")
    return load_qtable(path), path


def _run_cell(
    q: QTable, window: str, policy: str, episodes: int, seed: int
) -> tuple[SweepRow, list[EpisodeResult]]:
    config = EpisodeConfig(
        shape=WindowShape.from_label(window),
        opponent=q.opponent_model(),
        policy=policy,
        seed=seed,
    )
    results = run_episodes(config, q, episodes)
    mean, ci = mean_ci95([r.total_return for r in results])
    return SweepRow(window=window, policy=policy, episodes=episodes, mean_return=mean, ci95=ci), results


def cmd_run(args: argparse.Namespace) -> int:
    q, _ = _load_q(args)
    row, results = _run_cell(q, args.window.lower(), args.policy, args.episodes, args.seed)
    print(RETURNS_HEADER)
    print(sweep_row_line(row))
    if args.out:
        append_sweep_row(args.out, row)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            write_trace(fh, results)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    q, q_path = _load_q(args)
    windows = [w.strip().lower() for w in args.windows.split(",") if w.strip()]
    os.makedirs(args.out_dir, exist_ok=True)
    rows: list[SweepRow] = []
    timestep_rows: list[tuple] = []
    for window in windows:
        for policy in (MIXTURE, MAXBELIEF):
            row, results = _run_cell(q, window, policy, args.episodes, args.seed)
            rows.append(row)
            if policy == MIXTURE:
                for agg in aggregate_by_timestep(results):
                    timestep_rows.append((window, POLICY_PAIR, agg))
            print(sweep_row_line(row))
    write_returns_csv(os.path.join(args.out_dir, "returns.csv"), rows)
    write_timestep_csv(os.path.join(args.out_dir, "timestep_metrics.csv"), timestep_rows)
    with open(os.path.join(args.out_dir, "returns.svg"), "w", encoding="utf-8") as fh:
        fh.write(render_returns_svg(rows))
    manifest = RunManifest(
        tool="rbt-bench",
        version=1,
        tool_version=__version__,
        qtable=q_path,
        qtable_sha256=qtable_digest(q_path),
        opponent=q.opponent,
        windows=tuple(windows),
        policies=(MIXTURE, MAXBELIEF),
        episodes=args.episodes,
        seed=args.seed,
    )
    with open(os.path.join(args.out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(asdict(manifest), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote returns.csv, timestep_metrics.csv, returns.svg, manifest.json to {args.out_dir}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    q, _ = _load_q(args)
    config = EpisodeConfig(
        shape=WindowShape.from_label(args.window.lower()),
        opponent=q.opponent_model(),
        policy=MIXTURE,
        seed=args.seed,
    )
    [result] = run_episodes(config, q, 1)
    for step, true_state in zip(result.steps, result.true_states):
        values = mixture_values(step.belief, q)
        print(render_step(step, values, true_state=true_state if args.verbose else None))
        print()
    print(f"outcome: {result.outcome.value}  return: {result.total_return:+g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbt-bench",
        description="Reconnaissance Blind TicTacToe benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the fully observed game and cache the Q-table")
    p.add_argument("--opponent", default="uniform", help="uniform | minimax | eps:<p>")
    p.add_argument("--out", required=True, help="output Q-table JSON path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("run", help="run one (window, policy) benchmark cell")
    p.add_argument("--q", default=None, help="Q-table path (default: $RBT_QTABLE)")
    p.add_argument("--window", required=True, help="window size HxW, e.g. 2x1")
    p.add_argument("--policy", choices=POLICIES, default=MIXTURE)
    p.add_argument("--episodes", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", default=None, help="write per-step JSONL trace here")
    p.add_argument("--out", default=None, help="append the summary row to this CSV")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run both policies across window sizes")
    p.add_argument("--q", default=None, help="Q-table path (default: $RBT_QTABLE)")
    p.add_argument("--windows", default=DEFAULT_WINDOWS)
    p.add_argument("--episodes", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("replay", help="replay one episode with belief rendering")
    p.add_argument("--q", default=None, help="Q-table path (default: $RBT_QTABLE)")
    p.add_argument("--window", required=True, help="window size HxW")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verbose", action="store_true", help="also mark the true state and print per-action values")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
