"""Propelinear structures: assignments x -> pi_x making x * y = x + pi_x(y) a group."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .code import Code, CodeStream, Codeword, kernel, kernel_coset_reps
from .errors import AmbiguousStructureError, NoStructureError, StructureError
from .gf2 import WORD, Gf2Basis
from .perm import Permutation
from .symmetry import is_transitive, symmetry_group


@dataclass(frozen=True)
class PropelinearStructure:
    """A code with one assigned permutation per codeword.

    ``perms`` lists the distinct assigned permutations.  ``ids`` maps a
    uint64 array of codewords to indices into ``perms``; for materialized
    codes it is a table lookup, for constructed streams a closed formula.
    """

    code: Union[Code, CodeStream]
    perms: tuple[Permutation, ...]
    ids: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    label: str = ""

    @classmethod
    def from_table(cls, code: Code, perms, index, label: str = "") -> "PropelinearStructure":
        index = np.asarray(index, dtype=np.int64)
        if index.shape != code.words.shape:
            raise ValueError("one permutation index per codeword required")
        index.setflags(write=False)

        def ids(arr, _code=code, _index=index):
            pos = _code.index_of(arr)
            if (pos < 0).any():
                raise ValueError("not a codeword")
            return _index[pos]

        return cls(code, tuple(perms), ids, label)

    @classmethod
    def from_assignment(cls, code: Code, mapping: dict) -> "PropelinearStructure":
        perms: list[Permutation] = []
        where: dict[Permutation, int] = {}
        index = np.empty(code.size, dtype=np.int64)
        for i, w in enumerate(code.words.tolist()):
            p = mapping[w]
            if p not in where:
                where[p] = len(perms)
                perms.append(p)
            index[i] = where[p]
        return cls.from_table(code, perms, index)

    @classmethod
    def identity(cls, code: Code) -> "PropelinearStructure":
        """The linear structure x * y = x + y (valid only for linear codes)."""
        return cls.from_table(code, [Permutation.identity(code.length)], np.zeros(code.size, dtype=np.int64))

    @property
    def length(self) -> int:
        return self.code.length

    @property
    def index(self) -> np.ndarray:
        if not isinstance(self.code, Code):
            raise TypeError("per-codeword table only exists for materialized codes")
        return self.ids(self.code.words)

    def perm_of(self, x) -> Permutation:
        v = x.bits if isinstance(x, Codeword) else int(x)
        return self.perms[int(self.ids(np.array([v], dtype=WORD))[0])]

    def assignment(self) -> dict[int, Permutation]:
        return {w: self.perms[i] for w, i in zip(self.code.words.tolist(), self.index.tolist())}


@dataclass(frozen=True)
class Verdict:
    ok: bool
    counterexample: Optional[tuple[int, int]] = None
    reason: str = ""
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _product_table(perms: tuple[Permutation, ...]) -> np.ndarray:
    where = {p: i for i, p in enumerate(perms)}
    k = len(perms)
    table = np.full((k, k), -1, dtype=np.int64)
    for a in range(k):
        for b in range(k):
            table[a, b] = where.get(perms[a] * perms[b], -1)
    return table


def _check_rows(s, xs, ys, table, contains, ids_of) -> Verdict:
    """Check the axiom for all pairs (x, y) with x in ``xs`` and y in ``ys``."""
    ys = np.asarray(ys, dtype=WORD)
    y_ids = ids_of(ys)
    x_ids = ids_of(np.asarray(xs, dtype=WORD))
    checked = 0
    for a in np.unique(x_ids).tolist():
        moved = s.perms[a].act_array(ys)
        expect = table[a, y_ids]
        for x in np.asarray(xs, dtype=WORD)[x_ids == a].tolist():
            z = moved ^ WORD(x)
            inside = contains(z)
            if not inside.all():
                j = int(np.flatnonzero(~inside)[0])
                return Verdict(False, (x, int(ys[j])), "x * y is not a codeword", checked)
            bad = np.flatnonzero(ids_of(z) != expect)
            if bad.size:
                j = int(bad[0])
                return Verdict(False, (x, int(ys[j])), "pi_(x*y) differs from pi_x pi_y", checked)
            checked += ys.size
    return Verdict(True, None, "", checked)


def verify_propelinear(s: PropelinearStructure, sample: Optional[int] = None, seed: int = 0) -> Verdict:
    """Check x + pi_x(C) = C and pi_{x*y} = pi_x pi_y.

    Exhaustive over all |C|^2 pairs for materialized codes.  With ``sample``
    (required for streams), that many random pairs are checked instead.
    A False verdict carries a counterexample pair.
    """
    table = _product_table(s.perms)
    code = s.code
    if sample is None:
        if not isinstance(code, Code):
            raise TypeError("exhaustive verification needs a materialized code; pass sample=")
        words = code.words
        return _check_rows(s, words, words, table, code.contains, s.ids)
    rng = np.random.default_rng(seed)
    xs, ys = _random_words(code, rng, sample), _random_words(code, rng, sample)
    checked = 0
    for x, y in zip(xs.tolist(), ys.tolist()):
        v = _check_rows(s, [x], [y], table, code.contains, s.ids)
        if not v:
            return Verdict(False, v.counterexample, v.reason, checked)
        checked += 1
    return Verdict(True, None, "", checked)


def _random_words(code, rng, k: int) -> np.ndarray:
    if isinstance(code, Code):
        return code.words[rng.integers(0, code.size, size=k)]
    sampler = getattr(code, "sampler", None)
    if sampler is None:
        raise TypeError("stream has no sampler; cannot draw random codewords")
    return sampler(rng, k)


def star(s: PropelinearStructure, x, y):
    """x * y = x + pi_x(y)."""
    as_word = isinstance(x, Codeword)
    xv = x.bits if isinstance(x, Codeword) else int(x)
    yv = y.bits if isinstance(y, Codeword) else int(y)
    chk = s.code.contains(np.array([xv, yv], dtype=WORD))
    if not chk.all():
        raise ValueError("star is only defined on codewords")
    z = xv ^ s.perm_of(xv).act(yv)
    return Codeword(s.length, z) if as_word else z


def star_inverse(s: PropelinearStructure, x) -> int:
    """The z with x * z = 0^n, i.e. pi_x(z) = x."""
    xv = x.bits if isinstance(x, Codeword) else int(x)
    z = s.perm_of(xv).inverse().act(xv)
    if not s.code.contains(np.array([z], dtype=WORD))[0]:
        raise StructureError(f"codeword {xv:#x} has no inverse in the code")
    return z


def check_group_laws(s: PropelinearStructure, triples: int = 10_000, seed: int = 0) -> Verdict:
    """Identity 0^n, an inverse for every codeword, and sampled associativity."""
    code = s.code
    if not isinstance(code, Code):
        raise TypeError("group-law check needs a materialized code")
    if not s.perm_of(0).is_identity():
        return Verdict(False, (0, 0), "pi at 0^n is not the identity")
    for x in code.words.tolist():
        try:
            z = star_inverse(s, x)
        except StructureError:
            return Verdict(False, (x, x), "no inverse")
        if star(s, z, x) != 0:
            return Verdict(False, (z, x), "left and right inverses differ")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, code.size, size=(triples, 3))
    w = code.words
    for a, b, c in idx.tolist():
        x, y, z = int(w[a]), int(w[b]), int(w[c])
        if star(s, star(s, x, y), z) != star(s, x, star(s, y, z)):
            return Verdict(False, (x, y), "associativity fails", triples)
    return Verdict(True, None, "", triples)


def pi_group(s: PropelinearStructure) -> list[Permutation]:
    """The set of assigned permutations, after confirming it is closed under products."""
    perms = set(s.perms)
    for a in s.perms:
        for b in s.perms:
            if a * b not in perms:
                raise StructureError(f"assigned permutations not closed: {a} * {b}")
    return sorted(perms)


def build_normalized_propelinear(c: Code) -> PropelinearStructure:
    """The forced structure on a transitive code with trivial symmetry group.

    Each codeword x = r + k (r a kernel coset representative, k in the
    kernel) gets the permutation of the transitivity witness for r.  The
    assignment is then verified; a failure means the isometry group does not
    act regularly, which is reported as a data error.
    """
    sym = symmetry_group(c)
    if not sym.trivial:
        raise AmbiguousStructureError(
            f"symmetry group has order {sym.order}; the assignment is not forced"
        )
    tr = is_transitive(c)
    if not tr:
        raise NoStructureError("code is not transitive")
    kb = Gf2Basis(c.length)
    for k in kernel_basis_ints(c):
        kb.add(k)
    reps = kb.reduce_array(c.words)
    rep_perm = {r: iso.perm for r, iso in tr.witnesses.items()}
    mapping = {w: rep_perm[int(r)] for w, r in zip(c.words.tolist(), reps.tolist())}
    s = PropelinearStructure.from_assignment(c, mapping)
    v = verify_propelinear(s)
    if not v:
        raise StructureError(
            f"forced assignment is not propelinear ({v.reason} at {v.counterexample}); "
            "isometry group does not act regularly"
        )
    return s


def kernel_basis_ints(c: Code) -> list[int]:
    return [k.bits for k in kernel(c)]


def is_normalized(s: PropelinearStructure) -> bool:
    """Whether codewords in one kernel coset share their permutation."""
    c = s.code
    reps = {}
    for w, p in s.assignment().items():
        r = _reduce_by_kernel(c, w)
        if reps.setdefault(r, p) != p:
            return False
    return True


def _reduce_by_kernel(c: Code, w: int) -> int:
    if "kernel_basis_obj" not in c._cache:
        b = Gf2Basis(c.length)
        for k in kernel_basis_ints(c):
            b.add(k)
        c._cache["kernel_basis_obj"] = b
    return c._cache["kernel_basis_obj"].reduce(w)


__all__ = [
    "PropelinearStructure",
    "Verdict",
    "verify_propelinear",
    "star",
    "star_inverse",
    "check_group_laws",
    "pi_group",
    "build_normalized_propelinear",
    "is_normalized",
    "kernel_coset_reps",
]
