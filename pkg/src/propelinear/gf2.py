"""GF(2) row reduction over int / uint64 bitsets.

Bit ``i`` of a word is coordinate ``i + 1``.  Rows are kept in echelon form
keyed by their leading (highest) bit.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

WORD = np.uint64


class Gf2Basis:
    """Incrementally grown echelon basis of a subspace of F^length."""

    def __init__(self, length: int):
        if length > 64:
            raise ValueError("bitset words hold at most 64 coordinates")
        self.length = length
        self.rows: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.length

    def reduce(self, v: int) -> int:
        """Return the canonical representative of ``v`` modulo the span."""
        for p in sorted(self.rows, reverse=True):
            if (v >> p) & 1:
                v ^= self.rows[p]
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if the rank grew."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def reduce_array(self, arr: np.ndarray) -> np.ndarray:
        arr = np.array(arr, dtype=WORD, copy=True)
        for p in sorted(self.rows, reverse=True):
            sel = ((arr >> WORD(p)) & WORD(1)).astype(bool)
            arr[sel] ^= WORD(self.rows[p])
        return arr

    def absorb(self, arr: np.ndarray) -> None:
        """Add every vector of ``arr`` to the span (vectorized)."""
        if self.full:
            return
        arr = self.reduce_array(arr)
        arr = arr[arr != 0]
        while arr.size:
            v = int(arr[0])
            p = v.bit_length() - 1
            self.rows[p] = v
            if self.full:
                return
            sel = ((arr >> WORD(p)) & WORD(1)).astype(bool)
            arr[sel] ^= WORD(v)
            arr = arr[arr != 0]

    def basis(self) -> list[int]:
        """Rows sorted by leading bit, ascending."""
        return [self.rows[p] for p in sorted(self.rows)]


def span_rank(vectors: Iterable[int] | np.ndarray, length: int) -> int:
    """Rank of an arbitrary finite set of equal-length vectors."""
    b = Gf2Basis(length)
    if isinstance(vectors, np.ndarray):
        b.absorb(vectors)
    else:
        for v in vectors:
            b.add(int(v))
            if b.full:
                break
    return b.rank


def span_words(generators: Iterable[int]) -> np.ndarray:
    """All 2^k elements of the span of k independent generators, unsorted."""
    words = np.zeros(1, dtype=WORD)
    for g in generators:
        words = np.concatenate([words, words ^ WORD(g)])
    return words


def parity(arr: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(arr) & 1).astype(WORD)
