"""Independent brute-force oracles the library is checked against.

Everything here works from first principles on plain tuples of 0/1/2 (empty,
X, O), with its own win detection and no shared code with the library, so
agreement between the two is meaningful.  The expectimax oracle is naive
recursion without memoization; the posterior oracle enumerates whole
opponent-reply paths instead of filtering incrementally.
"""

from functools import lru_cache

WIN_TRIPLES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (2, 4, 6),
)

EMPTY_BOARD = (0,) * 9


def winner(cells):
    for a, b, c in WIN_TRIPLES:
        if cells[a] != 0 and cells[a] == cells[b] == cells[c]:
            return cells[a]
    return 0


def is_full(cells):
    return all(cells)


def empties(cells):
    return [i for i, c in enumerate(cells) if c == 0]


def put(cells, i, mark):
    return cells[:i] + (mark,) + cells[i + 1:]


def board_index(cells):
    return sum(c * 3**i for i, c in enumerate(cells))


def all_reachable_boards():
    """Distinct boards reachable by alternating play from the empty board (X first)."""
    seen = set()

    def walk(cells, mover):
        if cells in seen:
            return
        seen.add(cells)
        if winner(cells) or is_full(cells):
            return
        for i in empties(cells):
            walk(put(cells, i, mover), 3 - mover)

    walk(EMPTY_BOARD, 1)
    return seen


@lru_cache(maxsize=None)
def minimax_value(cells):
    """Game-theoretic value from X's perspective with both sides optimal."""
    w = winner(cells)
    if w == 1:
        return 1
    if w == 2:
        return -1
    if is_full(cells):
        return 0
    mover = 1 if cells.count(1) == cells.count(2) else 2
    values = [minimax_value(put(cells, i, mover)) for i in empties(cells)]
    return max(values) if mover == 1 else min(values)


def reply_probs(cells, kind):
    """Opponent reply distribution on an O-to-move board.

    kind is "uniform", "minimax", or ("eps", p).
    """
    cells_open = empties(cells)
    if kind == "uniform":
        p = 1.0 / len(cells_open)
        return [(i, p) for i in cells_open]
    if kind == "minimax":
        values = [minimax_value(put(cells, i, 2)) for i in cells_open]
        best = min(values)
        picks = [i for i, v in zip(cells_open, values) if v == best]
        p = 1.0 / len(picks)
        return [(i, p) for i in picks]
    _, eps = kind
    base = eps / len(cells_open)
    probs = dict.fromkeys(cells_open, base)
    for i, p in reply_probs(cells, "minimax"):
        probs[i] += (1.0 - eps) * p
    return sorted(probs.items())


def expectimax_q(cells, action, kind):
    """Naive (memoless) Q(s, a) for X on a non-terminal X-to-move board."""
    if cells[action] != 0:
        return -1.0
    after_x = put(cells, action, 1)
    if winner(after_x) == 1:
        return 1.0
    if is_full(after_x):
        return 0.0
    total = 0.0
    for reply, p in reply_probs(after_x, kind):
        after_o = put(after_x, reply, 2)
        if winner(after_o) == 2:
            total -= p
        elif not is_full(after_o):
            total += p * max(expectimax_q(after_o, a, kind) for a in empties(after_o))
    return total


def expectimax_value(cells, kind):
    return max(expectimax_q(cells, a, kind) for a in empties(cells))


def posterior(actions, observations, kind):
    """Posterior over boards after the last observation of a history.

    `actions` are the agent's moves a_0..a_{k-1}; `observations` are
    (covered_cells, contents) pairs o_0..o_k read before each decision.
    Enumerates every opponent-reply path, weighting by reply probabilities and
    dropping paths inconsistent with an observation or with the episode having
    continued (invalid move, win, loss, or draw along the way).
    """
    out = {}

    def walk(cells, step, weight):
        covered, contents = observations[step]
        if any(cells[c] != m for c, m in zip(covered, contents)):
            return
        if step == len(actions):
            out[cells] = out.get(cells, 0.0) + weight
            return
        a = actions[step]
        if cells[a] != 0:
            return
        after_x = put(cells, a, 1)
        if winner(after_x) or is_full(after_x):
            return
        for reply, p in reply_probs(after_x, kind):
            after_o = put(after_x, reply, 2)
            if winner(after_o) or is_full(after_o):
                continue
            walk(after_o, step + 1, weight * p)

    walk(EMPTY_BOARD, 0, 1.0)
    total = sum(out.values())
    return {board_index(cells): w / total for cells, w in out.items() if w > 0.0}


def textbook_mean_ci95(xs):
    """Mean and 1.96 * sqrt(sum((x-m)^2)/(n-1)) / sqrt(n), spelled out."""
    n = len(xs)
    m = sum(xs) / n
    var = sum((x - m) ** 2 for x in xs) / (n - 1)
    return m, 1.96 * var**0.5 / n**0.5
