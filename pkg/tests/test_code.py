import pytest
from hypothesis import given, settings, strategies as st

from propelinear import (
    CapacityError,
    Code,
    Codeword,
    hamming_code,
    int_to_str,
    is_linear,
    is_perfect,
    kernel,
    kernel_dim,
    min_distance,
    rank,
    str_to_int,
    weight_distribution,
)
from propelinear.code import kernel_coset_reps
from propelinear.gf2 import span_words

from conftest import brute_perfect, brute_rank


def test_bit_order_leftmost_is_coordinate_one():
    assert str_to_int("1000") == 1
    assert int_to_str(1, 4) == "1000"
    assert Codeword.from_str("0011").bits == 0b1100


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_str_roundtrip(pair):
    n, x = pair
    assert str_to_int(int_to_str(x, n)) == x


def test_codeword_arithmetic():
    a, b = Codeword.from_str("1100"), Codeword.from_str("1010")
    assert str(a + b) == "0110"
    assert a.weight == 2
    assert Codeword.zero(4).weight == 0


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_hamming_against_brute_force(m):
    c = hamming_code(m)
    n = (1 << m) - 1
    assert c.length == n and c.size == (1 << n) // (n + 1)
    assert is_perfect(c) == brute_perfect(c.words.tolist(), n) is True
    assert rank(c) == brute_rank(c.words.tolist(), n) == n - m
    assert kernel_dim(c) == n - m
    assert is_linear(c)


def test_hamming_capacity():
    with pytest.raises(CapacityError):
        hamming_code(6)
    with pytest.raises(CapacityError):
        hamming_code(0)


def test_code_requires_zero_with_hint():
    with pytest.raises(ValueError, match="0\\^n|all-zero|translat"):
        Code(3, [1, 2])


def test_code_dedup_and_membership(h7):
    c = Code(7, list(h7.words.tolist()) * 2)
    assert c == h7 and c.size == 16
    w = int(h7.words[5])
    assert w in c and Codeword(7, w) in c
    assert c.index_of(w) == 5


def test_not_perfect():
    rep = Code.from_strings(["0000000", "1111111"])
    assert not is_perfect(rep)
    assert not is_perfect(Code(3, [0, 1]))  # distance 1
    assert min_distance(Code(3, list(range(8)))) == 1


def test_min_distance(h7, h15):
    assert min_distance(h7) == 3
    assert min_distance(h15) == 3
    assert min_distance(Code.from_strings(["00000", "11111"])) == 5
    with pytest.raises(ValueError):
        min_distance(Code(3, [0]))


def test_weight_distribution_h7(h7):
    assert weight_distribution(h7) == [1, 0, 0, 7, 7, 0, 0, 1]


def _kernel_oracle(words):
    s = set(words)
    return [k for k in words if all(k ^ c in s for c in words)]


def test_kernel_nonlinear(twisted8):
    words = twisted8.words.tolist()
    assert sorted(span_words([k.bits for k in kernel(twisted8)])) == sorted(_kernel_oracle(words))
    assert kernel_dim(twisted8) == 1
    assert rank(twisted8) == brute_rank(words, 8) == 8
    reps = kernel_coset_reps(twisted8)
    assert len(reps) == twisted8.size // 2


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=40))
def test_rank_and_kernel_random_sets(ws):
    c = Code(8, [0] + ws)
    words = c.words.tolist()
    assert rank(c) == brute_rank(words, 8)
    assert sorted(span_words([k.bits for k in kernel(c)])) == sorted(_kernel_oracle(words))


def test_translate(h7):
    c = h7.translate(1)
    assert c.size == h7.size and 0 not in c.words.tolist()
