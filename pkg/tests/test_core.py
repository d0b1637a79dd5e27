import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cookie_monster.core import (
    Certificate,
    JarSet,
    Move,
    MovePlan,
    apply_move,
    cm_two_powerful,
    is_superincreasing,
    is_two_powerful,
    lower_bound,
    make_jarset,
    scale,
    upper_bound_binary,
    upper_bound_diameter,
    upper_bound_trivial,
    verify_plan,
)
from cookie_monster.errors import DomainError, InvalidMoveError

jar_lists = st.lists(st.integers(1, 40), min_size=1, max_size=6)


@pytest.mark.parametrize(
    "values, expected",
    [([7, 4, 3, 1], (1, 3, 4, 7)), ([5, 5, 5], (5,)), ([], ())],
)
def test_make_jarset(values, expected):
    assert make_jarset(values).jars == expected


@pytest.mark.parametrize("values", [[0], [3, -1], [-5]])
def test_make_jarset_rejects_nonpositive(values):
    with pytest.raises(DomainError):
        make_jarset(values)


def test_jarset_rejects_unsorted_tuple():
    with pytest.raises(DomainError):
        JarSet((3, 1))


@pytest.mark.parametrize(
    "jars, targets, amount, expected",
    [
        ([1, 3, 4, 7], {4, 7}, 4, (1, 3)),
        ([5], {5}, 5, ()),
        ([1, 2, 4, 8], {8}, 3, (1, 2, 4, 5)),
    ],
)
def test_apply_move(jars, targets, amount, expected):
    assert apply_move(make_jarset(jars), Move(targets, amount)).jars == expected


@pytest.mark.parametrize(
    "targets, amount",
    [({4, 7}, 5), (set(), 1), ({2}, 1), ({4}, 0)],
    ids=["overdraw", "empty", "not-a-jar", "zero-amount"],
)
def test_apply_move_invalid(targets, amount):
    with pytest.raises(InvalidMoveError):
        apply_move(make_jarset([1, 3, 4, 7]), Move(targets, amount))


@given(jar_lists, st.data())
def test_apply_move_output_is_canonical(values, data):
    s = make_jarset(values)
    targets = data.draw(st.sets(st.sampled_from(s.jars), min_size=1))
    amount = data.draw(st.integers(1, min(targets)))
    out = apply_move(s, Move(targets, amount))
    assert 0 not in out.jars
    assert list(out.jars) == sorted(set(out.jars))


def test_verify_plan_success_recovers_certificate():
    s = make_jarset([1, 2])
    check = verify_plan(s, [Move({1, 2}, 1), Move({1}, 1)])
    assert check.ok
    assert check.certificate.amounts == (1, 1)
    assert check.certificate.assignments == {1: (1,), 2: (1, 1)}


def test_verify_plan_incomplete():
    check = verify_plan(make_jarset([3]), MovePlan((Move({3}, 2),)))
    assert not check.ok
    assert check.failed_at == 1


def test_verify_plan_reports_offending_move():
    check = verify_plan(make_jarset([1, 3]), [Move({3}, 2), Move({3}, 1)])
    assert not check.ok and check.failed_at == 1


@given(jar_lists, st.data())
@settings(max_examples=60)
def test_verified_certificate_sums_to_jars(values, data):
    s = make_jarset(values)
    moves, state = [], s
    while state.k:
        targets = data.draw(st.sets(st.sampled_from(state.jars), min_size=1))
        amount = data.draw(st.integers(1, min(targets)))
        moves.append(Move(targets, amount))
        state = apply_move(state, moves[-1])
    check = verify_plan(s, moves)
    assert check.ok
    assert check.certificate.is_valid_for(s)
    assert len(check.certificate) == len(moves)


def test_certificate_roundtrip():
    c = Certificate((1, 2, 1), {3: (1, 2), 1: (1,)})
    assert c.amounts == (2, 1, 1)
    assert Certificate.from_dict(c.to_dict()) == c


@pytest.mark.parametrize("k, expected", [(5, 3), (1, 1), (8, 4), (0, 0)])
def test_lower_bound(k, expected):
    assert lower_bound(make_jarset(range(1, k + 1))) == expected


@pytest.mark.parametrize("values, expected", [([1, 2, 3, 5, 8], 5), ([], 0), ([4], 1)])
def test_upper_bound_trivial(values, expected):
    assert upper_bound_trivial(make_jarset(values)) == expected


@pytest.mark.parametrize("top, expected", [(20, 5), (1, 1), (16, 5)])
def test_upper_bound_binary(top, expected):
    assert upper_bound_binary(make_jarset([top])) == expected


def test_upper_bound_binary_empty():
    with pytest.raises(DomainError):
        upper_bound_binary(make_jarset([]))


@pytest.mark.parametrize("values, expected", [([100, 101, 103], 3), ([5, 6], 2)])
def test_upper_bound_diameter(values, expected):
    assert upper_bound_diameter(make_jarset(values)) == expected


@pytest.mark.parametrize("k", range(2, 20))
@pytest.mark.parametrize("start", [1, 7, 100])
def test_diameter_bound_on_progressions(k, start):
    s = make_jarset(range(start, start + k))
    assert upper_bound_diameter(s) == 1 + (k - 1).bit_length()


@pytest.mark.parametrize("values", [[], [5]])
def test_upper_bound_diameter_small(values):
    with pytest.raises(DomainError):
        upper_bound_diameter(make_jarset(values))


@pytest.mark.parametrize(
    "values, expected",
    [([1, 2, 4, 8], True), ([1, 2, 3], False), ([], True), ([9], True), ([3, 4, 8], True), ([3, 4, 7], False)],
)
def test_is_superincreasing(values, expected):
    assert is_superincreasing(make_jarset(values)) is expected


@pytest.mark.parametrize(
    "values, expected",
    [([1, 2, 3, 4, 8, 12], True), ([1, 2, 8], False), ([1], True), ([2, 3], False), ([], True)],
)
def test_is_two_powerful(values, expected):
    assert is_two_powerful(make_jarset(values)) is expected


@pytest.mark.parametrize(
    "values, expected",
    [([1, 2, 3, 4, 8, 12], 4), ([1, 2, 4, 8, 16, 32], 6), ([1], 1)],
)
def test_cm_two_powerful(values, expected):
    assert cm_two_powerful(make_jarset(values)) == expected


def test_cm_two_powerful_rejects():
    with pytest.raises(DomainError):
        cm_two_powerful(make_jarset([1, 2, 8]))


def test_scale():
    assert scale(make_jarset([1, 2, 3]), 2).jars == (2, 4, 6)
    assert scale(make_jarset([1, 2, 3]), 1).jars == (1, 2, 3)
    with pytest.raises(DomainError):
        scale(make_jarset([1]), 0)
