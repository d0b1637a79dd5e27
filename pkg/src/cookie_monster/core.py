"""Jar sets, moves, plan verification and the closed-form bounds.

A jar set is stored by value: jars holding the same number of cookies are
the same jar, so a ``JarSet`` is a strictly increasing tuple of positive
integers. Moves name their targets by value for the same reason.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InvalidMoveError

__all__ = [
    "JarSet",
    "Move",
    "MovePlan",
    "Certificate",
    "PlanCheck",
    "make_jarset",
    "apply_move",
    "verify_plan",
    "lower_bound",
    "upper_bound_trivial",
    "upper_bound_binary",
    "upper_bound_diameter",
    "is_superincreasing",
    "is_two_powerful",
    "cm_two_powerful",
    "scale",
]


@dataclass(frozen=True)
class JarSet:
    jars: tuple[int, ...] = ()

    def __post_init__(self):
        jars = tuple(self.jars)
        object.__setattr__(self, "jars", jars)
        for a, b in zip(jars, jars[1:]):
            if a >= b:
                raise DomainError(f"jar values must be strictly increasing: {jars}")
        if jars and jars[0] <= 0:
            raise DomainError(f"jar values must be positive: {jars}")

    @property
    def k(self) -> int:
        return len(self.jars)

    @property
    def max(self) -> int:
        return self.jars[-1] if self.jars else 0

    def __len__(self) -> int:
        return len(self.jars)

    def __iter__(self) -> Iterator[int]:
        return iter(self.jars)

    def __contains__(self, value) -> bool:
        return value in self.jars

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.jars)) + "}"


@dataclass(frozen=True)
class Move:
    """Take ``amount`` cookies from every jar whose value is in ``targets``."""

    targets: frozenset[int]
    amount: int

    def __init__(self, targets: Iterable[int], amount: int):
        object.__setattr__(self, "targets", frozenset(targets))
        object.__setattr__(self, "amount", int(amount))

    @property
    def removed(self) -> int:
        return self.amount * len(self.targets)

    def to_dict(self) -> dict:
        return {"amount": self.amount, "targets": sorted(self.targets)}

    @classmethod
    def from_dict(cls, d: dict) -> "Move":
        return cls(d["targets"], d["amount"])


@dataclass(frozen=True)
class MovePlan:
    moves: tuple[Move, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def to_list(self) -> list[dict]:
        return [m.to_dict() for m in self.moves]

    @classmethod
    def from_list(cls, items: Sequence[dict]) -> "MovePlan":
        return cls(tuple(Move.from_dict(d) for d in items))


@dataclass(frozen=True)
class Certificate:
    """A multiset of move amounts and, per jar value, the amounts summing to it.

    ``amounts`` is kept in nonincreasing order; each assignment is a
    sub-multiset of ``amounts``, also nonincreasing.
    """

    amounts: tuple[int, ...]
    assignments: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "amounts", tuple(sorted(self.amounts, reverse=True)))
        object.__setattr__(
            self,
            "assignments",
            {int(v): tuple(sorted(a, reverse=True)) for v, a in sorted(self.assignments.items())},
        )

    def __len__(self) -> int:
        return len(self.amounts)

    def is_valid_for(self, s: JarSet) -> bool:
        if set(self.assignments) != set(s.jars):
            return False
        pool = Counter(self.amounts)
        for value, parts in self.assignments.items():
            if sum(parts) != value or Counter(parts) - pool:
                return False
        return all(a > 0 for a in self.amounts)

    def to_dict(self) -> dict:
        return {
            "amounts": list(self.amounts),
            "assignments": {str(v): list(a) for v, a in self.assignments.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(tuple(d["amounts"]), {int(v): tuple(a) for v, a in d["assignments"].items()})


@dataclass(frozen=True)
class PlanCheck:
    ok: bool
    certificate: Certificate | None = None
    failed_at: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def make_jarset(values: Iterable[int]) -> JarSet:
    """Canonicalize raw jar contents: sort and collapse equal jars."""
    values = [int(v) for v in values]
    bad = [v for v in values if v <= 0]
    if bad:
        raise DomainError(f"jar values must be positive, got {bad}")
    return JarSet(tuple(sorted(set(values))))


def apply_move(s: JarSet, m: Move) -> JarSet:
    if not m.targets:
        raise InvalidMoveError("move has no targets")
    if m.amount < 1:
        raise InvalidMoveError(f"move amount must be positive, got {m.amount}")
    missing = m.targets.difference(s.jars)
    if missing:
        raise InvalidMoveError(f"targets {sorted(missing)} are not jars of {s}")
    if m.amount > min(m.targets):
        raise InvalidMoveError(f"amount {m.amount} overdraws jar {min(m.targets)}")
    out = {v - m.amount if v in m.targets else v for v in s.jars}
    out.discard(0)
    return JarSet(tuple(sorted(out)))


def verify_plan(s: JarSet, plan: MovePlan | Iterable[Move]) -> PlanCheck:
    """Replay ``plan`` on ``s``; succeed iff every jar ends empty.

    On success the certificate records, for each original jar, the amounts
    of the moves that touched it. Jars that collide share every later move.
    """
    if not isinstance(plan, MovePlan):
        plan = MovePlan(tuple(plan))
    current = {v: v for v in s.jars}  # original value -> current value
    touched: dict[int, list[int]] = {v: [] for v in s.jars}
    state = s
    for i, move in enumerate(plan):
        try:
            state = apply_move(state, move)
        except InvalidMoveError as exc:
            return PlanCheck(False, failed_at=i, reason=str(exc))
        for orig, cur in current.items():
            if cur in move.targets:
                current[orig] = cur - move.amount
                touched[orig].append(move.amount)
    if state.k:
        return PlanCheck(False, failed_at=len(plan), reason=f"jars {state} remain after the last move")
    cert = Certificate(tuple(m.amount for m in plan), {v: tuple(a) for v, a in touched.items()})
    return PlanCheck(True, certificate=cert)


def lower_bound(s: JarSet) -> int:
    return s.k.bit_length()


def upper_bound_trivial(s: JarSet) -> int:
    return s.k


def upper_bound_binary(s: JarSet) -> int:
    if not s.k:
        raise DomainError("binary bound needs at least one jar")
    return s.max.bit_length()


def upper_bound_diameter(s: JarSet) -> int:
    if s.k < 2:
        raise DomainError("diameter bound needs at least two jars")
    return 1 + (s.max - s.jars[0]).bit_length()


def is_superincreasing(s: JarSet) -> bool:
    total = 0
    for v in s.jars:
        if total and v <= total:
            return False
        total += v
    return True


def is_two_powerful(s: JarSet) -> bool:
    if not s.k:
        return True
    return all((1 << e) in s for e in range(s.max.bit_length()))


def cm_two_powerful(s: JarSet) -> int:
    if not is_two_powerful(s):
        raise DomainError(f"{s} is not two-powerful")
    return s.max.bit_length()


def scale(s: JarSet, d: int) -> JarSet:
    if d <= 0:
        raise DomainError(f"scale factor must be positive, got {d}")
    return JarSet(tuple(v * d for v in s.jars))
