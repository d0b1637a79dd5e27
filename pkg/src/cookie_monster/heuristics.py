"""Greedy strategies: Empty the Most Jars (EMJA), Take the Most Cookies (TCA)
and the Binary Algorithm (BA).

Ties are not defined by the strategies themselves; the conventions used here
are:

* EMJA: most distinct jars discarded, then most cookies removed, then the
  largest amount, then the lexicographically smallest target tuple.
* TCA: most cookies removed, then the largest amount.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import JarSet, Move, MovePlan, apply_move
from .errors import DomainError

__all__ = [
    "ALGORITHMS",
    "EMJA_MAX_JARS",
    "HeuristicRun",
    "emja_step",
    "tca_step",
    "ba_step",
    "run_heuristic",
    "distinct_reduction",
]

ALGORITHMS = ("emja", "tca", "ba")
EMJA_MAX_JARS = 20


@dataclass(frozen=True)
class HeuristicRun:
    algorithm: str
    plan: MovePlan
    move_count: int
    cookies_removed_per_move: tuple[int, ...]


def _require_jars(s: JarSet):
    if not s.k:
        raise DomainError("no jars left to move on")


def distinct_reduction(s: JarSet, m: Move) -> int:
    return s.k - apply_move(s, m).k


def emja_step(s: JarSet, max_jars: int = EMJA_MAX_JARS) -> Move:
    _require_jars(s)
    if s.k > max_jars:
        raise DomainError(f"EMJA enumerates 2^k subsets; k={s.k} exceeds max_jars={max_jars}")
    values = set(s.jars) | {0}
    best_key, best = None, None
    for r in range(1, s.k + 1):
        for sub in combinations(s.jars, r):
            lo = sub[0]
            # collisions happen only at these amounts; any other amount discards nothing
            for a in {t - w for t in sub for w in values if 0 < t - w <= lo}:
                move = Move(sub, a)
                key = (distinct_reduction(s, move), a * r, a, tuple(-v for v in sub))
                if best_key is None or key > best_key:
                    best_key, best = key, move
    return best


def tca_step(s: JarSet) -> Move:
    _require_jars(s)
    k = s.k
    # amount s_i taken from the k - i largest jars; the total is maximal at a jar value
    total, amount, i = max((v * (k - i), v, i) for i, v in enumerate(s.jars))
    return Move(s.jars[i:], amount)


def ba_step(s: JarSet) -> Move:
    _require_jars(s)
    p = 1 << (s.max.bit_length() - 1)
    return Move([v for v in s.jars if v >= p], p)


_STEPS = {"emja": emja_step, "tca": tca_step, "ba": ba_step}


def run_heuristic(s: JarSet, algorithm: str) -> HeuristicRun:
    algorithm = algorithm.lower()
    try:
        step = _STEPS[algorithm]
    except KeyError:
        raise DomainError(f"unknown algorithm {algorithm!r}; pick one of {ALGORITHMS}") from None
    moves = []
    state = s
    while state.k:
        move = step(state)
        moves.append(move)
        state = apply_move(state, move)
    return HeuristicRun(algorithm, MovePlan(tuple(moves)), len(moves), tuple(m.removed for m in moves))
