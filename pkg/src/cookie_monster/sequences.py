"""Jar families with known Cookie Monster numbers.

n-nacci sequences use the offsets N_i = 0 for i < n - 1, N_{n-1} = N_n = 1,
and the jar set of size k is {N_n, ..., N_{n+k-1}}, which starts
1, 2, 4, ..., 2^(n-1). For n = 2 this is {F_2, ..., F_{k+1}}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import JarSet, make_jarset
from .errors import DomainError, ResourceError

__all__ = [
    "MAX_JAR_VALUE",
    "FLOAT_RATIO_SLACK",
    "NacciFamily",
    "RatioTrajectory",
    "nacci_terms",
    "nacci_set",
    "closed_form_cm",
    "fibonacci_identity_holds",
    "nacci_inequality_violations",
    "check_nacci_inequalities",
    "is_super_nacci",
    "super_nacci_lower_bound",
    "construct_set_with_cm",
    "parse_ratio",
    "build_ratio_sequence",
]

MAX_JAR_VALUE = 2**63 - 1
FLOAT_RATIO_SLACK = 1e-12

Ratio = Union[Fraction, float, int, str]


@dataclass(frozen=True)
class NacciFamily:
    n: int
    terms: tuple[int, ...]

    def jar_set(self, k: int) -> JarSet:
        return nacci_set(self.n, k)


def _check_order(n: int):
    if n < 2:
        raise DomainError(f"nacci order must be at least 2, got {n}")


def nacci_terms(n: int, count: int) -> list[int]:
    """N_0, ..., N_{count-1} of the order-n sequence, checked against 64 bits."""
    _check_order(n)
    terms = [0] * (n - 1) + [1, 1]
    window = sum(terms[-n:])
    while len(terms) < count:
        nxt = window
        if nxt > MAX_JAR_VALUE:
            raise ResourceError(f"{n}-nacci term {len(terms)} exceeds 64-bit jar width")
        window += nxt - terms[-n]
        terms.append(nxt)
    return terms[:count]


def nacci_set(n: int, k: int) -> JarSet:
    if k < 1:
        raise DomainError(f"need at least one jar, got k={k}")
    return JarSet(tuple(nacci_terms(n, n + k)[n:]))


def closed_form_cm(n: int, k: int) -> int:
    _check_order(n)
    if k < 1:
        raise DomainError(f"need at least one jar, got k={k}")
    return (n - 1) * k // n + 1


def fibonacci_identity_holds(k_max: int) -> bool:
    """F_{k+1} - 1 == F_1 + ... + F_{k-1} for every 1 <= k <= k_max."""
    f = nacci_terms(2, k_max + 2)
    return all(f[k + 1] - 1 == sum(f[1:k]) for k in range(1, k_max + 1))


def nacci_inequality_violations(n: int, k_max: int) -> list[tuple[str, int, int]]:
    """Failures of the strict n-nacci inequalities, as (family, k, j).

    For 1 <= j <= n - 1 the checked inequality is

        N_{k+j} - (N_{k+1} + ... + N_{k+j-1}) > N_1 + ... + N_{k-1}

    where j = 1 is the plain growth inequality N_{k+1} > N_1 + ... + N_{k-1}
    and j = n - 1 the widest one. Indices run over n - 1 <= k <= k_max;
    below that the sequence is still in its run of zeros and the strict
    forms degenerate to 0 > 0.
    """
    terms = nacci_terms(n, k_max + n + 1)
    prefix = [0]
    for t in terms:
        prefix.append(prefix[-1] + t)

    def span(lo, hi):  # N_lo + ... + N_hi, empty when hi < lo
        return prefix[hi + 1] - prefix[lo] if hi >= lo else 0

    bad = []
    for k in range(max(1, n - 1), k_max + 1):
        below = span(1, k - 1)
        for j in range(1, n):
            if not terms[k + j] - span(k + 1, k + j - 1) > below:
                family = "growth" if j == 1 else ("widest" if j == n - 1 else "intermediate")
                bad.append((family, k, j))
    return bad


def check_nacci_inequalities(n: int, k_max: int) -> bool:
    if n == 2 and not fibonacci_identity_holds(k_max):
        return False
    return not nacci_inequality_violations(n, k_max)


def is_super_nacci(s: JarSet, n: int) -> bool:
    """Super-n-nacci test.

    Each term with n predecessors must be at least their sum; the first
    min(n, k) terms must be strictly superincreasing, as 1, 2, ..., 2^(n-1)
    are in an n-nacci set. Without that prefix condition the lower bound is
    false: {5, 6, 7, 18} meets the window condition for n = 4, yet
    7 + 6 + 5 = 18 empties it in three moves.
    """
    _check_order(n)
    jars = s.jars
    total = 0
    for i, v in enumerate(jars[:n]):
        if i and v <= total:
            return False
        total += v
    return all(jars[i] >= sum(jars[i - n:i]) for i in range(n, len(jars)))


def super_nacci_lower_bound(s: JarSet, n: int) -> int:
    if not is_super_nacci(s, n):
        raise DomainError(f"{s} is not super-{n}-nacci")
    if not s.k:
        return 0
    return closed_form_cm(n, s.k)


def construct_set_with_cm(k: int, m: int) -> JarSet:
    """A two-powerful set of k jars whose Cookie Monster number is m.

    Powers 1, 2, ..., 2^(m-1) plus the k - m smallest non-powers below 2^m.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if k < m:
        raise DomainError(f"need m <= k, got m={m} > k={k}")
    if k >= 1 << m:
        raise DomainError(f"need k < 2^m, got k={k} >= 2^{m}={1 << m}")
    powers = [1 << e for e in range(m)]
    fillers = []
    c = 3
    while len(fillers) < k - m:
        if c & (c - 1):
            fillers.append(c)
        c += 1
    return make_jarset(powers + fillers)


@dataclass(frozen=True)
class RatioTrajectory:
    """Prefixes of the ratio-r sequence.

    ``ratios[i]`` is CM(S_{i+1}) / (i + 1) as an exact fraction and
    ``power_indices[e]`` the 1-based position of 2^e.
    """

    target_ratio: Fraction | float
    terms: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    power_indices: dict[int, int] = field(default_factory=dict)

    @property
    def cms(self) -> tuple[int, ...]:
        return tuple(int(r * (i + 1)) for i, r in enumerate(self.ratios))

    def rows(self):
        """(k, s_k, cm, ratio) per prefix."""
        for i, (s, r) in enumerate(zip(self.terms, self.ratios)):
            yield i + 1, s, int(r * (i + 1)), r


def parse_ratio(r: Ratio) -> Fraction | float:
    """'p/q' strings and Fractions stay exact; anything else becomes a float."""
    if isinstance(r, Fraction):
        value = r
    elif isinstance(r, int):
        value = Fraction(r)
    elif isinstance(r, str):
        r = r.strip()
        try:
            value = Fraction(r) if "/" in r else float(r)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"cannot parse ratio {r!r}") from None
    else:
        value = float(r)
    if not 0 <= value <= 1:
        raise DomainError(f"ratio must lie in [0, 1], got {r}")
    return value


def build_ratio_sequence(r: Ratio, k_max: int) -> RatioTrajectory:
    """The first ``k_max`` terms of the ratio-r sequence.

    Naturals are visited in order. Powers of two are always admitted; a
    non-power c is admitted when the prefix ratio stays >= r, the prefix CM
    being bit_length(c) because every prefix is two-powerful. Float targets
    admit with a slack of FLOAT_RATIO_SLACK.

    Once a non-power is refused, every non-power up to the next power is
    refused too (same CM, same length), so the scan jumps straight there.
    """
    target = parse_ratio(r)
    exact = isinstance(target, Fraction)
    terms, ratios, power_indices = [], [], {}
    c = 1
    while len(terms) < k_max:
        k = len(terms)
        is_power = not c & (c - 1)
        m = c.bit_length()
        if is_power:
            admit = True
        elif exact:
            admit = Fraction(m, k + 1) >= target
        else:
            admit = m / (k + 1) >= target - FLOAT_RATIO_SLACK
        if admit:
            terms.append(c)
            ratios.append(Fraction(m, k + 1))
            if is_power:
                power_indices[m - 1] = k + 1
            c += 1
        else:
            c = 1 << m
    return RatioTrajectory(target, tuple(terms), tuple(ratios), power_indices)
