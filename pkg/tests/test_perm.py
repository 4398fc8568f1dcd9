import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from propelinear import Codeword, Isometry, Permutation, apply, compose


def perms(n):
    return st.permutations(range(n)).map(lambda p: Permutation(tuple(p)))


def isometries(n):
    return st.tuples(st.integers(0, (1 << n) - 1), perms(n)).map(lambda t: Isometry(*t))


def test_action_convention():
    # y_i = x_{pi(i)}
    p = Permutation.from_one_line([2, 3, 1])
    x = Codeword.from_str("100")
    assert str(apply(Isometry(0, p), x)) == "001"
    assert p(1) == 2


def test_cycles_and_parse():
    p = Permutation.from_cycles(4, [(1, 2, 3)])
    assert p.one_line() == "2 3 1 4"
    assert p.cycles() == [(1, 2, 3)]
    assert str(p) == "(1 2 3)"
    assert Permutation.parse(p.one_line()) == p
    assert Permutation.identity(4).is_identity


def test_invalid_permutation():
    with pytest.raises(ValueError):
        Permutation.from_one_line([1, 1, 2])


def test_degree_mismatch():
    with pytest.raises(ValueError):
        apply(Isometry(0, Permutation.identity(3)), Codeword.from_str("0000"))


@settings(max_examples=1000, deadline=None)
@given(isometries(15), isometries(15), st.integers(0, (1 << 15) - 1))
def test_compose_is_action(a, b, x):
    assert apply(compose(a, b), x) == apply(a, apply(b, x))


@settings(max_examples=200, deadline=None)
@given(isometries(9), st.integers(0, (1 << 9) - 1))
def test_inverse(a, x):
    assert apply(a.inverse(), apply(a, x)) == x
    assert compose(a, a.inverse()) == Isometry.identity(9)


@settings(max_examples=100, deadline=None)
@given(perms(10), perms(10), st.lists(st.integers(0, 1023), min_size=1, max_size=20))
def test_array_action_matches_scalar(p, q, xs):
    arr = np.array(xs, dtype=np.uint64)
    assert p.act_array(arr).tolist() == [p.act(x) for x in xs]
    assert (p * q).act_array(arr).tolist() == p.act_array(q.act_array(arr)).tolist()


def test_isometry_preserves_distance():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = Isometry(int(rng.integers(0, 1 << 12)), Permutation(tuple(rng.permutation(12).tolist())))
        x, y = (int(v) for v in rng.integers(0, 1 << 12, 2))
        assert (apply(a, x) ^ apply(a, y)).bit_count() == (x ^ y).bit_count()
