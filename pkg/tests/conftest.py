import itertools
import sys

import numpy as np
import pytest

from propelinear import Code, Isometry, Permutation, apply, hamming_code


def brute_rank(words, n):
    """Rank by plain Gaussian elimination over lists of ints."""
    rows = [int(w) for w in words if w]
    r = 0
    for bit in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i] >> bit & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] >> bit & 1:
                rows[i] ^= rows[r]
        r += 1
    return r


def brute_perfect(words, n):
    seen = set()
    for w in words:
        for v in [w] + [w ^ (1 << i) for i in range(n)]:
            if v in seen:
                return False
            seen.add(v)
    return len(seen) == 1 << n


def orbit_code(n, translation, one_line):
    """Orbit of 0^n under the cyclic group generated by one isometry."""
    g = Isometry(translation, Permutation.from_one_line(one_line))
    words, x = set(), 0
    while x not in words:
        words.add(x)
        x = apply(g, x)
    return Code(n, sorted(words))


@pytest.fixture(scope="session")
def h7():
    return hamming_code(3)


@pytest.fixture(scope="session")
def h15():
    return hamming_code(4)


@pytest.fixture(scope="session")
def twisted8():
    # nonlinear, transitive, trivial symmetry group
    return orbit_code(8, 161, [5, 7, 2, 8, 4, 1, 6, 3])


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20261017)


def all_perms(n):
    return (Permutation(p) for p in itertools.permutations(range(n)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
