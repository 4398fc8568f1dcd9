"""Codewords, materialized and streamed codes, and their basic invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Union

import numpy as np

from .errors import CapacityError, CodeFormatError
from .gf2 import WORD, Gf2Basis, span_words

MAX_LENGTH = 63
MAX_PERFECT_CHECK = 31
MAX_KERNEL_SIZE = 1 << 20
CHUNK = 1 << 16


@dataclass(frozen=True, order=True)
class Codeword:
    """A length-``length`` binary vector; coordinate i lives in bit i-1."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("codeword length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in {self.length} coordinates")

    @classmethod
    def from_str(cls, s: str) -> "Codeword":
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise CodeFormatError(f"not a 0/1 string: {s!r}")
        return cls(len(s), str_to_int(s))

    @classmethod
    def zero(cls, length: int) -> "Codeword":
        return cls(length, 0)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __add__(self, other: "Codeword") -> "Codeword":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return Codeword(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return int_to_str(self.bits, self.length)

    def __int__(self) -> int:
        return self.bits


def int_to_str(bits: int, length: int) -> str:
    # coordinate 1 leftmost
    return format(bits, f"0{length}b")[::-1] if length else ""


def str_to_int(s: str) -> int:
    return int(s[::-1], 2)


def _as_int(w, length: int) -> int:
    if isinstance(w, Codeword):
        if w.length != length:
            raise ValueError(f"codeword of length {w.length} in a length-{length} context")
        return w.bits
    if isinstance(w, str):
        return _as_int(Codeword.from_str(w), length)
    return int(w)


class Code:
    """An immutable set of codewords of one length, stored as a sorted uint64 array.

    Analysis results (rank, kernel basis) are cached on first computation.
    """

    def __init__(self, length: int, words, name: str = "", require_zero: bool = True):
        if not 1 <= length <= MAX_LENGTH:
            raise CapacityError(f"materialized codes need 1 <= length <= {MAX_LENGTH}, got {length}")
        arr = np.unique(np.asarray(list(words) if not isinstance(words, np.ndarray) else words, dtype=WORD))
        if arr.size and int(arr[-1]) >> length:
            raise ValueError(f"a word does not fit in {length} coordinates")
        if require_zero and (arr.size == 0 or arr[0] != 0):
            raise ValueError(
                "code does not contain the all-zero word; translate it by one of its "
                "codewords (x + C) before use"
            )
        arr.setflags(write=False)
        self.length = length
        self.words = arr
        self.name = name
        self._cache: dict = {}

    @classmethod
    def from_strings(cls, lines: Iterable[str], name: str = "") -> "Code":
        ws = [Codeword.from_str(s) for s in lines]
        if not ws:
            raise CodeFormatError("empty code")
        n = ws[0].length
        if any(w.length != n for w in ws):
            raise CodeFormatError("codewords of different lengths")
        return cls(n, [w.bits for w in ws], name=name)

    @property
    def size(self) -> int:
        return int(self.words.size)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.words.tolist())

    def codewords(self) -> list[Codeword]:
        return [Codeword(self.length, w) for w in self.words.tolist()]

    def __contains__(self, w) -> bool:
        v = _as_int(w, self.length)
        i = int(np.searchsorted(self.words, WORD(v)))
        return i < self.words.size and int(self.words[i]) == v

    def index_of(self, arr: np.ndarray) -> np.ndarray:
        """Positions of ``arr`` entries in ``words``; -1 where absent."""
        arr = np.asarray(arr, dtype=WORD)
        idx = np.atleast_1d(np.searchsorted(self.words, arr))
        idx[idx >= self.words.size] = 0
        idx = idx.reshape(arr.shape)
        hit = self.words[idx] == arr
        return np.where(hit, idx, -1)

    def contains(self, arr: np.ndarray) -> np.ndarray:
        return self.index_of(arr) >= 0

    def chunks(self, size: int = CHUNK) -> Iterator[np.ndarray]:
        for i in range(0, self.words.size, size):
            yield self.words[i : i + size]

    def translate(self, v: int) -> "Code":
        """The set v + C (may lack the zero word, so no zero check)."""
        return Code(self.length, self.words ^ WORD(v), require_zero=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Code)
            and other.length == self.length
            and np.array_equal(other.words, self.words)
        )

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Code{label} n={self.length} size={self.size}>"


@dataclass(frozen=True)
class CodeStream:
    """A code enumerated in chunks by a replayable source, never held in memory.

    ``source()`` must return a fresh iterator of uint64 arrays on every call.
    ``member`` optionally answers vectorized membership without enumeration;
    ``sampler(rng, k)`` optionally draws k random codewords.
    """

    length: int
    declared_size: int
    source: Callable[[], Iterable[np.ndarray]] = field(repr=False)
    member: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    sampler: Optional[Callable[[np.random.Generator, int], np.ndarray]] = field(default=None, repr=False)
    name: str = ""

    @property
    def size(self) -> int:
        return self.declared_size

    def chunks(self) -> Iterator[np.ndarray]:
        for chunk in self.source():
            yield np.asarray(chunk, dtype=WORD)

    def contains(self, arr: np.ndarray) -> np.ndarray:
        if self.member is None:
            raise NotImplementedError("this stream has no membership oracle")
        return self.member(np.asarray(arr, dtype=WORD))

    def count(self) -> int:
        return sum(int(c.size) for c in self.chunks())

    def materialize(self, max_size: int = 1 << 22) -> Code:
        if self.declared_size > max_size:
            raise CapacityError(f"refusing to materialize {self.declared_size} codewords (limit {max_size})")
        return Code(self.length, np.concatenate(list(self.chunks())), name=self.name)


AnyCode = Union[Code, CodeStream]


def _chunks(c: AnyCode) -> Iterator[np.ndarray]:
    return c.chunks()


def hamming_code(m: int) -> Code:
    """The length 2^m - 1 Hamming code: null space of the matrix whose column i is i in binary."""
    if not 1 <= m <= 5:
        raise CapacityError(f"hamming_code materializes 1 <= m <= 5 only, got m={m}")
    n = (1 << m) - 1
    gens = []
    for i in range(1, n + 1):
        if i & (i - 1):  # not a power of two: an information coordinate
            g = 1 << (i - 1)
            for b in range(m):
                if (i >> b) & 1:
                    g |= 1 << ((1 << b) - 1)
            gens.append(g)
    return Code(n, span_words(gens), name=f"hamming-{n}")


def is_perfect(c: AnyCode) -> bool:
    """Whether the radius-1 balls around the codewords partition F^n.

    Size is checked against 2^n/(n+1) first; then a coverage bitmap over F^n
    is filled ball by ball and any second hit returns False.  Disjoint balls
    also force minimum distance >= 3.
    """
    n = c.length
    if n > MAX_PERFECT_CHECK:
        raise CapacityError(f"exhaustive perfectness check needs n <= {MAX_PERFECT_CHECK}, got {n}")
    total = 1 << n
    if total % (n + 1) or c.size != total // (n + 1):
        return False
    bitmap = np.zeros(max(1, total >> 3), dtype=np.uint8)
    seen = 0
    for chunk in _chunks(c):
        seen += chunk.size
        if seen > c.size:
            return False
        for shift in range(-1, n):
            t = chunk if shift < 0 else chunk ^ WORD(1 << shift)
            idx = (t >> WORD(3)).astype(np.int64)
            bit = np.left_shift(np.uint8(1), (t & WORD(7)).astype(np.uint8))
            if np.any(bitmap[idx] & bit):
                return False
            np.bitwise_or.at(bitmap, idx, bit)
    if seen != c.size:
        return False
    covered = int(np.bitwise_count(bitmap).sum())
    if total < 8:
        covered = int(np.bitwise_count(bitmap[0] & np.uint8((1 << total) - 1)))
    return covered == total


def rank(c: AnyCode) -> int:
    """Dimension of the GF(2) span; stops early once the span is all of F^n."""
    if isinstance(c, Code) and "rank" in c._cache:
        return c._cache["rank"]
    b = Gf2Basis(c.length)
    for chunk in _chunks(c):
        b.absorb(chunk)
        if b.full:
            break
    if isinstance(c, Code):
        c._cache["rank"] = b.rank
    return b.rank


def kernel(c: Code) -> list[Codeword]:
    """A basis of {k in C : k + C = C}.

    Each candidate is first reduced modulo the kernel found so far; a
    representative already known to lie outside the kernel rejects its whole
    coset.  A short probe of translates rejects most candidates before the
    full membership sweep.
    """
    if not isinstance(c, Code):
        raise TypeError("kernel needs a materialized Code")
    if c.size > MAX_KERNEL_SIZE:
        raise CapacityError(f"kernel computation limited to {MAX_KERNEL_SIZE} codewords, got {c.size}")
    if "kernel" not in c._cache:
        words = c.words
        basis = Gf2Basis(c.length)
        rejected: set[int] = set()
        probe = words[: min(64, words.size)]
        for w in words.tolist():
            r = basis.reduce(w)
            if r == 0 or r in rejected:
                continue
            extra = np.fromiter(basis.rows.values(), dtype=WORD, count=basis.rank)
            if not c.contains(np.concatenate([probe, extra]) ^ WORD(w)).all():
                rejected.add(r)
                continue
            if c.contains(words ^ WORD(w)).all():
                basis.add(w)
            else:
                rejected.add(r)
        c._cache["kernel"] = basis.basis()
    return [Codeword(c.length, k) for k in c._cache["kernel"]]


def kernel_dim(c: Code) -> int:
    return len(kernel(c))


def kernel_coset_reps(c: Code) -> list[int]:
    """One codeword per kernel coset inside C: the canonical reduced form."""
    b = Gf2Basis(c.length)
    for k in kernel(c):
        b.add(k.bits)
    return sorted({int(v) for v in b.reduce_array(c.words).tolist()})


def min_distance(c: Code) -> int:
    """Exact minimum pairwise distance (no linearity assumed)."""
    if not isinstance(c, Code):
        raise TypeError("min_distance needs a materialized Code")
    if c.size < 2:
        raise ValueError("minimum distance is undefined for a code with fewer than two words")
    words = c.words
    best = c.length + 1
    block = 256
    for i in range(0, words.size, block):
        a = words[i : i + block]
        rest = words[i:]
        d = np.bitwise_count(a[:, None] ^ rest[None, :]).astype(np.int64)
        # mask the diagonal and the pairs already seen (j <= i)
        rows = np.arange(a.size)[:, None]
        cols = np.arange(rest.size)[None, :]
        d[cols <= rows] = c.length + 1
        best = min(best, int(d.min()))
        if best == 1:
            break
    return best


def is_linear(c: Code) -> bool:
    return kernel_dim(c) == rank(c)


def weight_distribution(c: Code) -> list[int]:
    counts = np.bincount(np.bitwise_count(c.words).astype(np.int64), minlength=c.length + 1)
    return counts.tolist()
