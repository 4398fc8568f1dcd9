import numpy as np
import pytest

from propelinear import Code, Permutation, apply, is_transitive, symmetry_group
from propelinear.symmetry import find_equivalence

from conftest import all_perms


def naive_sym_order(c):
    words = c.words
    target = set(words.tolist())
    return sum(1 for p in all_perms(c.length) if set(p.act_array(words).tolist()) == target)


def test_h7_matches_naive_filter(h7):
    g = symmetry_group(h7)
    assert g.order == naive_sym_order(h7) == 168
    ws = set(h7.words.tolist())
    for p in g.generators:
        assert set(p.act_array(h7.words).tolist()) == ws


@pytest.mark.parametrize(
    "words, n",
    [
        ([0, 0b111], 3),
        ([0, 0b0011, 0b1100], 4),
        ([0, 0b00111, 0b11001, 0b01010], 5),
        ([0, 0b000111, 0b111000, 0b101101, 0b010011], 6),
    ],
)
def test_small_codes_match_naive(words, n):
    c = Code(n, words)
    assert symmetry_group(c).order == naive_sym_order(c)


def test_random_small_codes_match_naive():
    rng = np.random.default_rng(11)
    for _ in range(15):
        n = int(rng.integers(3, 7))
        ws = [0] + rng.integers(1, 1 << n, int(rng.integers(1, 6))).tolist()
        c = Code(n, ws)
        assert symmetry_group(c).order == naive_sym_order(c)


def test_h15_order(h15):
    assert symmetry_group(h15).order == 20160


def test_twisted_code_trivial(twisted8):
    assert symmetry_group(twisted8).trivial
    assert symmetry_group(twisted8).order == naive_sym_order(twisted8) == 1


def test_find_equivalence(h7):
    p = Permutation.from_one_line([3, 1, 2, 7, 6, 5, 4])
    img = np.sort(p.act_array(h7.words))
    q = find_equivalence(h7, img)
    assert q is not None
    assert np.array_equal(np.sort(q.act_array(h7.words)), img)
    # a weight-1 pair cannot map onto a weight-3 pair
    assert find_equivalence(Code(7, [0, 1]), np.sort(h7.words[:2])) is None


def test_transitivity_witnesses(h7, twisted8):
    for c in (h7, twisted8):
        tr = is_transitive(c)
        assert tr
        ws = set(c.words.tolist())
        for r, iso in tr.witnesses.items():
            img = {apply(iso, int(w)) for w in c.words.tolist()}
            assert img == ws
            assert apply(iso, 0) == r and r in ws


def test_not_transitive():
    # {0, e1, e1+e2}: 0 has a neighbour at distance 1 and 2, e1 has two at distance 1
    c = Code(3, [0, 0b001, 0b011])
    assert not is_transitive(c)
