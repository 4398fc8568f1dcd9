"""Backtracking search for coordinate permutations between codes.

The search assigns images coordinate by coordinate in increasing order, with
candidates in increasing order, so the first permutation found is the
lexicographically smallest one.  Two prunings are used: a per-coordinate
weight profile (how many codewords of each weight contain the coordinate)
and consistency of the weight-3 codewords, which for a perfect code through
0^n form a Steiner triple system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .code import Code, kernel_coset_reps
from .errors import CapacityError
from .gf2 import WORD
from .perm import Isometry, Permutation

MAX_SEARCH_LENGTH = 15


def _profiles(words: np.ndarray, n: int) -> list[tuple[int, ...]]:
    weights = np.bitwise_count(words).astype(np.int64)
    out = []
    for i in range(n):
        has = ((words >> WORD(i)) & WORD(1)).astype(bool)
        out.append(tuple(np.bincount(weights[has], minlength=n + 1).tolist()))
    return out


def _triples(words: np.ndarray) -> frozenset[int]:
    return frozenset(int(w) for w in words[np.bitwise_count(words) == 3].tolist())


class _Matcher:
    """Finds permutations pi with pi(src) = dst (as sets of words)."""

    def __init__(self, src: np.ndarray, dst: np.ndarray, n: int):
        self.n = n
        self.src = src
        self.dst = np.sort(dst)
        self.prof_src = _profiles(src, n)
        self.prof_dst = _profiles(self.dst, n)
        self.tri_src = _triples(src)
        self.tri_dst = _triples(self.dst)
        self.leaves = 0

    def possible(self) -> bool:
        return (
            self.src.size == self.dst.size
            and sorted(self.prof_src) == sorted(self.prof_dst)
            and len(self.tri_src) == len(self.tri_dst)
        )

    def _consistent(self, img: list[int], i: int, j: int) -> bool:
        if self.prof_dst[i] != self.prof_src[j]:
            return False
        bi, bj = 1 << i, 1 << j
        for b in range(i):
            mb, jb = 1 << b, 1 << img[b]
            for a in range(b):
                if ((1 << a | mb | bi) in self.tri_dst) != ((1 << img[a] | jb | bj) in self.tri_src):
                    return False
        return True

    def _leaf_ok(self, img: list[int]) -> bool:
        self.leaves += 1
        got = np.sort(Permutation(tuple(img)).act_array(self.src))
        return bool(np.array_equal(got, self.dst))

    def find(self, prefix: tuple[int, ...] = ()) -> Optional[Permutation]:
        """Lexicographically smallest pi extending the forced ``prefix`` images."""
        if not self.possible():
            return None
        n = self.n
        img: list[int] = []
        used = [False] * n

        def rec(i: int) -> bool:
            if i == n:
                return self._leaf_ok(img)
            cands = (prefix[i],) if i < len(prefix) else range(n)
            for j in cands:
                if used[j] or not self._consistent(img, i, j):
                    continue
                img.append(j)
                used[j] = True
                if rec(i + 1):
                    return True
                img.pop()
                used[j] = False
            return False

        return Permutation(tuple(img)) if rec(0) else None


def _check_length(c: Code) -> None:
    if c.length > MAX_SEARCH_LENGTH:
        raise CapacityError(f"permutation search limited to n <= {MAX_SEARCH_LENGTH}, got {c.length}")


@dataclass(frozen=True)
class SymmetryGroup:
    generators: tuple[Permutation, ...]
    order: int
    degree: int

    @property
    def trivial(self) -> bool:
        return self.order == 1


def _orbit(point: int, gens: list[Permutation]) -> set[int]:
    orbit, todo = {point}, [point]
    while todo:
        p = todo.pop()
        for g in gens:
            q = g.images[p]
            if q not in orbit:
                orbit.add(q)
                todo.append(q)
    return orbit


def symmetry_group(c: Code) -> SymmetryGroup:
    """Generators and exact order of Sym(C).

    Works down the point-stabilizer chain of 1, 2, ..., n: at each level the
    orbit of the next point under its stabilizer is grown by searching for
    one coset representative per new orbit point.  The order is the product
    of the orbit lengths and the representatives form a strong generating set.
    """
    _check_length(c)
    n = c.length
    if "sym" in c._cache:
        return c._cache["sym"]
    m = _Matcher(c.words, c.words, n)
    gens: list[Permutation] = []
    order = 1
    for k in range(n - 1, -1, -1):
        level = [g for g in gens if all(g.images[i] == i for i in range(k))]
        orbit = _orbit(k, level)
        fixed = tuple(range(k))
        for j in range(k + 1, n):
            if j in orbit:
                continue
            g = m.find(fixed + (j,))
            if g is not None:
                gens.append(g)
                level.append(g)
                orbit = _orbit(k, level)
        order *= len(orbit)
    res = SymmetryGroup(tuple(sorted(gens)), order, n)
    c._cache["sym"] = res
    return res


def find_equivalence(src: Code, dst_words: np.ndarray) -> Optional[Permutation]:
    """Smallest permutation pi with pi(src) equal to the word set ``dst_words``."""
    _check_length(src)
    return _Matcher(src.words, np.asarray(dst_words, dtype=WORD), src.length).find()


@dataclass(frozen=True)
class Transitivity:
    transitive: bool
    witnesses: dict = field(default_factory=dict)  # coset representative -> Isometry
    failed_at: Optional[int] = None

    def __bool__(self) -> bool:
        return self.transitive


def is_transitive(c: Code) -> Transitivity:
    """Decide transitivity, returning an isometry (r, pi) of C per kernel coset representative r."""
    _check_length(c)
    if "transitive" in c._cache:
        return c._cache["transitive"]
    witnesses = {}
    res = None
    for r in kernel_coset_reps(c):
        if r == 0:
            witnesses[0] = Isometry.identity(c.length)
            continue
        pi = find_equivalence(c, c.words ^ WORD(r))
        if pi is None:
            res = Transitivity(False, witnesses, failed_at=r)
            break
        witnesses[r] = Isometry(r, pi)
    if res is None:
        res = Transitivity(True, witnesses)
    c._cache["transitive"] = res
    return res
