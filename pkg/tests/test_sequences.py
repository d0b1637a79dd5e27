import random
from fractions import Fraction

import pytest

from cookie_monster.core import cm_two_powerful, is_two_powerful, make_jarset
from cookie_monster.errors import DomainError, ResourceError
from cookie_monster.exact import cm_bfs, cm_exact
from cookie_monster.sequences import (
    build_ratio_sequence,
    check_nacci_inequalities,
    closed_form_cm,
    construct_set_with_cm,
    fibonacci_identity_holds,
    is_super_nacci,
    nacci_inequality_violations,
    nacci_set,
    nacci_terms,
    parse_ratio,
    super_nacci_lower_bound,
)


def test_tribonacci_terms():
    assert nacci_terms(3, 11) == [0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81]


def test_fibonacci_terms():
    assert nacci_terms(2, 10) == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]


@pytest.mark.parametrize(
    "n, k, jars",
    [(2, 5, (1, 2, 3, 5, 8)), (3, 6, (1, 2, 4, 7, 13, 24)), (4, 4, (1, 2, 4, 8)), (4, 6, (1, 2, 4, 8, 15, 29))],
)
def test_nacci_set(n, k, jars):
    assert nacci_set(n, k).jars == jars


@pytest.mark.parametrize("n", range(2, 9))
def test_nacci_recurrence(n):
    terms = nacci_terms(n, 40)
    assert terms[n : 2 * n] == [1 << e for e in range(n)]
    for i in range(n, 40):
        assert terms[i] == sum(terms[i - n : i])


def test_nacci_overflow_is_checked():
    with pytest.raises(ResourceError):
        nacci_terms(2, 100)
    assert nacci_terms(2, 93)[-1] < 2**63


def test_nacci_order_checked():
    with pytest.raises(DomainError):
        nacci_set(1, 3)
    with pytest.raises(DomainError):
        nacci_set(2, 0)


@pytest.mark.parametrize("n, k, cm", [(2, 5, 3), (3, 4, 3), (4, 4, 4), (2, 1, 1), (5, 10, 9)])
def test_closed_form(n, k, cm):
    assert closed_form_cm(n, k) == cm


@pytest.mark.parametrize("n, kmax", [(2, 8), (3, 7), (4, 6), (5, 6)])
def test_closed_form_matches_solver(n, kmax):
    for k in range(1, kmax + 1):
        assert cm_exact(nacci_set(n, k)).cm == closed_form_cm(n, k), (n, k)


@pytest.mark.parametrize("n, k_max", [(3, 15), (2, 20), (5, 12)])
def test_inequalities(n, k_max):
    assert check_nacci_inequalities(n, k_max)


def test_fibonacci_identity():
    assert fibonacci_identity_holds(30)


def test_inequalities_degenerate_inside_the_zero_run():
    # k = 1 for Tribonacci: T_3 - T_2 = 0, not > 0; those k are skipped
    terms = nacci_terms(3, 5)
    assert not terms[3] - terms[2] > 0
    assert nacci_inequality_violations(3, 20) == []


@pytest.mark.parametrize(
    "jars, n, expected",
    [
        ([1, 2, 4, 8, 16], 2, True),
        ([1, 2, 3, 5, 8], 2, True),
        ([1, 2, 3, 4], 2, False),
        ([1, 2, 4, 7, 13], 3, True),
        ([5, 6, 7, 18], 4, False),
        ([7], 2, True),
    ],
)
def test_is_super_nacci(jars, n, expected):
    assert is_super_nacci(make_jarset(jars), n) is expected


def test_super_nacci_bound():
    assert super_nacci_lower_bound(make_jarset([1, 2, 4, 8, 16]), 2) == 3
    assert cm_bfs(make_jarset([1, 2, 4, 8, 16])) == 5
    assert super_nacci_lower_bound(make_jarset([6]), 2) == 1
    for n, k in [(2, 7), (3, 6), (4, 5)]:
        assert super_nacci_lower_bound(nacci_set(n, k), n) == closed_form_cm(n, k)
    with pytest.raises(DomainError):
        super_nacci_lower_bound(make_jarset([1, 2, 3, 4]), 2)


def test_window_only_definition_would_break_the_bound():
    s = make_jarset([5, 6, 7, 18])
    assert cm_bfs(s) == 3 < closed_form_cm(4, 4)


@pytest.mark.parametrize(
    "k, m, jars",
    [(5, 4, (1, 2, 3, 4, 8)), (3, 3, (1, 2, 4)), (6, 3, (1, 2, 3, 4, 5, 6)), (7, 3, (1, 2, 3, 4, 5, 6, 7))],
)
def test_construct_set_with_cm(k, m, jars):
    s = construct_set_with_cm(k, m)
    assert s.jars == jars
    assert cm_two_powerful(s) == m


def test_construct_set_with_cm_bfs():
    assert cm_bfs(construct_set_with_cm(6, 3)) == 3


@pytest.mark.parametrize("k, m", [(2, 3), (8, 3), (1, 0)])
def test_construct_set_with_cm_rejects(k, m):
    with pytest.raises(DomainError):
        construct_set_with_cm(k, m)


@pytest.mark.parametrize("m", range(1, 5))
def test_construct_all_valid_pairs(m):
    for k in range(m, 1 << m):
        s = construct_set_with_cm(k, m)
        assert s.k == k and s.max < 1 << m and is_two_powerful(s)
        assert cm_exact(s).cm == m


def test_ratio_half():
    traj = build_ratio_sequence("1/2", 10)
    assert traj.terms == (1, 2, 3, 4, 5, 6, 8, 9, 16, 17)
    assert traj.cms == (1, 2, 2, 3, 3, 3, 4, 4, 5, 5)
    assert traj.power_indices == {0: 1, 1: 2, 2: 4, 3: 7, 4: 9}


def test_ratio_extremes():
    assert build_ratio_sequence(1, 12).terms == tuple(1 << e for e in range(12))
    assert build_ratio_sequence(0, 50).terms == tuple(range(1, 51))
    assert all(r == 1 for r in build_ratio_sequence("1/1", 20).ratios)


def test_ratio_boundary_admits_equality():
    # 6 enters with CM 3 at k = 6: ratio exactly 1/2
    assert 6 in build_ratio_sequence(Fraction(1, 2), 10).terms
    assert 6 in build_ratio_sequence(0.5, 10).terms


@pytest.mark.parametrize("r", ["3/10", "1/2", "3/4", "2/7", 0.6])
def test_ratio_invariants(r):
    traj = build_ratio_sequence(r, 300)
    target = parse_ratio(r)
    slack = 0 if isinstance(target, Fraction) else 1e-12
    assert all(x >= target - slack for x in traj.ratios)
    top = traj.terms[-1].bit_length()
    assert all(1 << e in traj.terms for e in range(top))
    assert len(traj.terms) == 300 and traj.terms == tuple(sorted(set(traj.terms)))
    # skips happen: the last term is larger than its index
    assert traj.terms[49] > 50


def test_ratio_prefix_cm_is_exact():
    traj = build_ratio_sequence("3/5", 12)
    for i in range(1, 7):
        assert cm_exact(make_jarset(traj.terms[:i])).cm == traj.cms[i - 1]


@pytest.mark.parametrize("bad", ["3/2", "-1", "abc", 1.5, "1/0"])
def test_parse_ratio_rejects(bad):
    with pytest.raises(DomainError):
        parse_ratio(bad)


def test_random_super_nacci_bound_small():
    rng = random.Random(5)
    hits = 0
    while hits < 10:
        s = make_jarset(rng.sample(range(1, 30), rng.randint(2, 5)))
        if is_super_nacci(s, 2):
            hits += 1
            assert super_nacci_lower_bound(s, 2) <= cm_exact(s).cm
