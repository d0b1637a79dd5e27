"""Exact Cookie Monster numbers.

Two independent routes:

* ``cm_exact`` searches for the smallest multiset of move amounts such that
  every jar is a sub-multiset sum (moves commute, so any such multiset can be
  played in any order). Iterative deepening on the multiset size, amounts
  chosen in nonincreasing order, reachable sums tracked as an integer bitmask.
* ``cm_bfs`` plays the game directly: breadth-first search over canonical
  jar states. Slow, but shares nothing with the cover formulation, which is
  why the tests use it as the oracle.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import (
    Certificate,
    JarSet,
    Move,
    MovePlan,
    lower_bound,
    upper_bound_binary,
    upper_bound_diameter,
    upper_bound_trivial,
    verify_plan,
)
from .errors import DomainError, ResourceError

__all__ = [
    "BUDGET_ENV",
    "DEFAULT_NODE_BUDGET",
    "DEFAULT_BFS_STATES",
    "ExactResult",
    "cm_exact",
    "cm_bfs",
    "representable",
    "decompose",
    "plan_from_certificate",
    "best_upper_bound",
]

BUDGET_ENV = "COOKIE_MONSTER_BUDGET"
DEFAULT_NODE_BUDGET = 10**7
DEFAULT_BFS_STATES = 10**6
DEFAULT_BFS_MAX_JARS = 6
DEFAULT_BFS_MAX_VALUE = 40


@dataclass(frozen=True)
class ExactResult:
    cm: int
    certificate: Certificate
    nodes_explored: int = 0


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise DomainError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_NODE_BUDGET


def representable(value: int, amounts: Iterable[int]) -> bool:
    """True iff some sub-multiset of ``amounts`` sums to ``value``."""
    if value < 0:
        return False
    reach = 1
    for a in amounts:
        reach |= reach << a
    return bool(reach >> value & 1)


def decompose(value: int, amounts: Iterable[int]) -> tuple[int, ...] | None:
    """A sub-multiset of ``amounts`` summing to ``value``, or None.

    Deterministic: amounts are scanned largest first and the last (smallest)
    ones are left out whenever possible.
    """
    amounts = sorted(amounts, reverse=True)
    prefixes = [1]
    for a in amounts:
        prefixes.append(prefixes[-1] | prefixes[-1] << a)
    if not prefixes[-1] >> value & 1:
        return None
    picked = []
    for i in range(len(amounts), 0, -1):
        if prefixes[i - 1] >> value & 1:
            continue
        picked.append(amounts[i - 1])
        value -= amounts[i - 1]
    return tuple(sorted(picked, reverse=True))


def best_upper_bound(s: JarSet) -> int:
    if s.k == 0:
        return 0
    ub = min(upper_bound_trivial(s), upper_bound_binary(s))
    if s.k >= 2:
        ub = min(ub, upper_bound_diameter(s))
    return ub


class _Search:
    """Depth-limited search for a cover of ``jars`` by ``depth`` amounts."""

    def __init__(self, jars: tuple[int, ...], depth: int, budget: int):
        self.jars = jars
        self.top = jars[-1]
        self.depth = depth
        self.budget = budget
        self.nodes = 0

    def run(self, first: int | None = None) -> tuple[int, ...] | None:
        if first is None:
            return self._extend((), 1, 0, self.top)
        return self._try(first, (), 1, 0)

    def _extend(self, prefix, reach, total, cap):
        left = self.depth - len(prefix)
        # the largest jar must be reachable: total + left * a >= top
        lo = max(1, -(-(self.top - total) // left))
        for a in range(lo, cap + 1):
            found = self._try(a, prefix, reach, total)
            if found is not None:
                return found
        return None

    def _try(self, a, prefix, reach, total):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted(self.nodes)
        reach |= reach << a
        total += a
        prefix = prefix + (a,)
        left = self.depth - len(prefix)
        slack = left * a
        for v in self.jars:
            if v > total + slack:
                return None
            # some reachable x with v - slack <= x <= v must exist
            lo = v - slack
            if lo <= 0:
                continue
            if not (reach >> lo) & ((1 << (slack + 1)) - 1):
                return None
        if left == 0:
            return prefix
        return self._extend(prefix, reach, total, a)


class _BudgetExhausted(Exception):
    def __init__(self, nodes):
        super().__init__(nodes)
        self.nodes = nodes


def _branch(jars, depth, budget, first):
    search = _Search(jars, depth, budget)
    try:
        found = search.run(first)
    except _BudgetExhausted as exc:
        return None, exc.nodes, True
    return found, search.nodes, False


def _certificate(s: JarSet, amounts: tuple[int, ...]) -> Certificate:
    return Certificate(amounts, {v: decompose(v, amounts) for v in s.jars})


def cm_exact(s: JarSet, budget: int | None = None, workers: int = 1) -> ExactResult:
    """Minimum number of moves for ``s`` with a witnessing certificate.

    Among optimal amount multisets the lexicographically smallest one (read
    in nonincreasing order) is returned, whatever ``workers`` is. With
    ``workers > 1`` the first amount's branches run in separate processes.
    """
    if budget is None:
        budget = default_budget()
    if s.k == 0:
        return ExactResult(0, Certificate((), {}), 0)
    jars = s.jars
    upper = best_upper_bound(s)
    nodes = 0
    for depth in range(lower_bound(s), upper + 1):
        if workers > 1:
            found, used = _parallel_depth(jars, depth, budget - nodes, workers)
        else:
            found, used, exhausted = _branch(jars, depth, budget - nodes, None)
            if exhausted:
                found = _EXHAUSTED
        nodes += used
        if found is _EXHAUSTED:
            raise ResourceError(
                f"node budget {budget} exhausted searching depth {depth} for {s}",
                lower=depth,
                upper=upper,
            )
        if found is not None:
            return ExactResult(depth, _certificate(s, found), nodes)
    raise AssertionError(f"no cover of {s} within the upper bound {upper}")


_EXHAUSTED = object()


def _parallel_depth(jars, depth, budget, workers):
    top = jars[-1]
    firsts = range(max(1, -(-top // depth)), top + 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_branch, *zip(*((jars, depth, budget, a) for a in firsts))))
    used = 0
    for found, nodes, exhausted in results:
        used += nodes
        if exhausted or used > budget:
            return _EXHAUSTED, used
        if found is not None:
            return found, used
    return None, used


def plan_from_certificate(s: JarSet, c: Certificate) -> MovePlan:
    """Turn a certificate into a concrete plan, largest amounts first.

    Each move targets every jar that still needs one more copy of its
    amount. Jars that collide keep one remaining assignment between them.
    """
    if not c.is_valid_for(s):
        raise DomainError(f"certificate {c.to_dict()} is not valid for {s}")
    groups = {v: Counter(c.assignments[v]) for v in s.jars}
    moves = []
    for a in c.amounts:
        targets = [v for v, need in groups.items() if need[a] > 0]
        if not targets:
            continue
        moves.append(Move(targets, a))
        hit = set(targets)
        new_groups = {v: need for v, need in groups.items() if v not in hit}
        for v in sorted(targets):
            need = groups[v]
            need[a] -= 1
            if v - a > 0 and v - a not in new_groups:
                new_groups[v - a] = need
        groups = new_groups
    plan = MovePlan(tuple(moves))
    assert verify_plan(s, plan).ok
    return plan


def _finish_moves(state: tuple[int, ...]) -> int | None:
    """Exact moves to clear ``state`` if at most two, else None.

    One move maps j distinct values to at least ceil((j - 1) / 2) distinct
    values, so only states of three or fewer values can end within two.
    """
    j = len(state)
    if j <= 2:
        return j
    if j > 3:
        return None
    # three values: is there one move leaving at most one distinct value?
    values = set(state) | {0}
    for r in (2, 3):
        for sub in combinations(state, r):
            lo = sub[0]
            for a in {t - w for t in sub for w in values if 0 < t - w <= lo}:
                after = {v - a if v in sub else v for v in state}
                after.discard(0)
                if len(after) <= 1:
                    return 2
    return None


def _children(state: tuple[int, ...]):
    j = len(state)
    for mask in range(1, 1 << j):
        sub = [state[i] for i in range(j) if mask >> i & 1]
        rest = [state[i] for i in range(j) if not mask >> i & 1]
        for a in range(1, sub[0] + 1):
            out = set(rest)
            out.update(v - a for v in sub)
            out.discard(0)
            yield tuple(sorted(out))


def cm_bfs(
    s: JarSet,
    max_jars: int = DEFAULT_BFS_MAX_JARS,
    max_value: int = DEFAULT_BFS_MAX_VALUE,
    max_states: int = DEFAULT_BFS_STATES,
) -> int:
    """Cookie Monster number by breadth-first search over jar states.

    Every move (any nonempty subset of distinct values, any amount up to the
    subset minimum) is expanded. Levels are scanned for states that can be
    cleared within two moves, which saves expanding the last two levels.
    """
    if s.k > max_jars or s.max > max_value:
        raise ResourceError(
            f"{s} exceeds BFS caps (k <= {max_jars}, max <= {max_value})",
            lower=lower_bound(s),
            upper=best_upper_bound(s),
        )
    frontier = [s.jars]
    seen = {s.jars}
    depth = 0
    while True:
        tails = [t for t in map(_finish_moves, frontier) if t is not None]
        if tails:
            return depth + min(tails)
        nxt = []
        for state in frontier:
            for child in _children(state):
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
            if len(seen) > max_states:
                raise ResourceError(
                    f"BFS state cap {max_states} exceeded on {s}",
                    lower=depth + 3,
                    upper=best_upper_bound(s),
                )
        frontier = nxt
        depth += 1
