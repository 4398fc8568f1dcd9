"""Coordinate permutations and isometries of F^n.

Convention: a permutation pi acts on a vector x by y_i = x_{pi(i)}.  The
product ``pi * tau`` is defined so that (pi * tau)(x) = pi(tau(x)) for every
vector, which makes (u, pi) o (v, tau) = (u + pi(v), pi * tau) an honest
composition of maps.  On indices this means (pi * tau)(i) = tau(pi(i)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .code import Codeword
from .gf2 import WORD


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1..n}; ``images`` holds pi(i)-1 at position i-1."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "Permutation":
        """From 1-based one-line notation, e.g. [2, 3, 1]."""
        return cls(tuple(int(i) - 1 for i in images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """From 1-based cycles: (1 2 3) sends 1 to 2, 2 to 3 and 3 to 1."""
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls.from_one_line(text.replace(",", " ").split())

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """pi(i) for a 1-based point i."""
        return self.images[i - 1] + 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[j] for j in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def act(self, x: int) -> int:
        """Act on an int bitset: bit i of the result is bit pi(i) of x."""
        y = 0
        for i, j in enumerate(self.images):
            y |= ((x >> j) & 1) << i
        return y

    def act_array(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=WORD)
        out = np.zeros_like(arr)
        for i, j in enumerate(self.images):
            if i == j:
                out |= arr & WORD(1 << i)
            else:
                out |= ((arr >> WORD(j)) & WORD(1)) << WORD(i)
        return out

    def one_line(self) -> str:
        return " ".join(str(i + 1) for i in self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


@dataclass(frozen=True)
class Isometry:
    """The map x -> translation + perm(x) on F^n."""

    translation: int
    perm: Permutation

    @property
    def degree(self) -> int:
        return self.perm.degree

    @classmethod
    def identity(cls, n: int) -> "Isometry":
        return cls(0, Permutation.identity(n))

    def __call__(self, x):
        return apply(self, x)

    def inverse(self) -> "Isometry":
        inv = self.perm.inverse()
        return Isometry(inv.act(self.translation), inv)


def compose(a: Isometry, b: Isometry) -> Isometry:
    """(u, pi) o (v, tau) = (u + pi(v), pi * tau)."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return Isometry(a.translation ^ a.perm.act(b.translation), a.perm * b.perm)


def apply(a: Isometry, x):
    """a(x) = v + pi(x); accepts a Codeword, an int bitset or a uint64 array."""
    if isinstance(x, Codeword):
        if x.length != a.degree:
            raise ValueError(f"degree mismatch: isometry on F^{a.degree}, word of length {x.length}")
        return Codeword(x.length, a.translation ^ a.perm.act(x.bits))
    if isinstance(x, np.ndarray):
        return a.perm.act_array(x) ^ WORD(a.translation)
    return a.translation ^ a.perm.act(int(x))
