"""Vasil'ev and Mollard constructions, their propelinear liftings and rank predictors.

Coordinate layouts (coordinate 1 = bit 0):

* Vasil'ev, base length L: ``[x + y (L bits) | |x| + lambda(y) (1 bit) | x (L bits)]``.
* Mollard, component lengths t and m: ``[x (tm bits, row-major x_11..x_1m, ..., x_t1..x_tm)
  | y + p1(x) (t bits) | z + p2(x) (m bits)]`` with p1 the row parities and p2 the
  column parities of x, and f fixed to 0.

Outputs of length at most 15 are materialized, longer ones are streamed with
x ascending, then y, then z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .code import Code, CodeStream, is_perfect, rank
from .errors import NotPerfectError, StructureError
from .gf2 import WORD, parity, span_rank
from .perm import Permutation
from .structure import PropelinearStructure, verify_propelinear

MATERIALIZE_MAX = 15
STREAM_CHUNK = 1 << 18

AnyCode = Union[Code, CodeStream]


class NotHomomorphismError(StructureError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"lambda is not a propelinear homomorphism: fails on pair {pair}")


@dataclass(frozen=True)
class LambdaFn:
    """A {0,1}-valued table on the codewords of ``base_code`` (aligned with its words)."""

    base_code: Code
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.uint8)
        if t.shape != self.base_code.words.shape or (t > 1).any():
            raise ValueError("lambda table must hold one bit per base codeword")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def zero(cls, code: Code) -> "LambdaFn":
        return cls(code, np.zeros(code.size, dtype=np.uint8))

    @classmethod
    def from_mapping(cls, code: Code, mapping: dict) -> "LambdaFn":
        return cls(code, np.array([mapping[w] & 1 for w in code.words.tolist()], dtype=np.uint8))

    @classmethod
    def random(cls, code: Code, rng: np.random.Generator) -> "LambdaFn":
        """Uniform random table with lambda(0^n) = 0."""
        t = rng.integers(0, 2, size=code.size).astype(np.uint8)
        t[0] = 0  # words are sorted, so words[0] is 0^n
        return cls(code, t)

    def values(self, arr: np.ndarray) -> np.ndarray:
        pos = self.base_code.index_of(arr)
        if (pos < 0).any():
            raise ValueError("lambda evaluated off the base code")
        return self.table[pos].astype(WORD)

    def __call__(self, y) -> int:
        return int(self.values(np.array([int(y)], dtype=WORD))[0])

    def is_zero(self) -> bool:
        return not self.table.any()


def _require_perfect(c: Code, what: str) -> None:
    if not is_perfect(c):
        raise NotPerfectError(f"{what} is not a perfect code; construction refused")


def _materialize(c: AnyCode) -> Code:
    return c if isinstance(c, Code) else c.materialize()


def _finish(n: int, size: int, source, member, sampler, name: str, emit_stream: Optional[bool]) -> AnyCode:
    stream = CodeStream(n, size, source, member, sampler, name)
    if emit_stream is None:
        emit_stream = n > MATERIALIZE_MAX
    return stream if emit_stream else stream.materialize()


def vasiliev(c: AnyCode, lam: Optional[LambdaFn] = None, emit_stream: Optional[bool] = None) -> AnyCode:
    """{(x + y, |x| + lambda(y), x) : x in F^L, y in C}, of length 2L + 1."""
    c = _materialize(c)
    lam = LambdaFn.zero(c) if lam is None else lam
    if lam.base_code != c:
        raise ValueError("lambda is defined on a different code")
    _require_perfect(c, "base code")
    if lam(0):
        raise ValueError("lambda(0^n) must be 0 so that the result contains 0^n")
    L = c.length
    n = 2 * L + 1
    ys = c.words
    lam_y = lam.table.astype(WORD)
    low = WORD((1 << L) - 1)

    def encode(x, y, ly):
        return (x ^ y) | ((parity(x) ^ ly) << WORD(L)) | (x << WORD(L + 1))

    def source():
        step = max(1, STREAM_CHUNK // ys.size)
        for start in range(0, 1 << L, step):
            x = np.arange(start, min(start + step, 1 << L), dtype=WORD)
            yield encode(x[:, None], ys[None, :], lam_y[None, :]).ravel()

    def member(w):
        x = w >> WORD(L + 1)
        y = (w & low) ^ x
        pos = c.index_of(y)
        ok = pos >= 0
        par = (w >> WORD(L)) & WORD(1)
        expect = parity(x) ^ lam.table[np.where(ok, pos, 0)].astype(WORD)
        return ok & (par == expect)

    def sampler(rng, k):
        x = rng.integers(0, 1 << L, size=k).astype(WORD)
        j = rng.integers(0, ys.size, size=k)
        return encode(x, ys[j], lam_y[j])

    return _finish(n, ys.size << L, source, member, sampler, f"vasiliev({c.name or c.length})", emit_stream)


def lambda_rank_bump(lam: LambdaFn) -> int:
    """rank({(y, lambda(y)) : y in C}) - rank(C), which is 0 or 1."""
    c = lam.base_code
    ext = c.words | (lam.table.astype(WORD) << WORD(c.length))
    return span_rank(ext, c.length + 1) - rank(c)


def predict_rank_vasiliev(base_rank: int, length: int, lambda_rank_bump: int) -> int:
    """Rank of the Vasil'ev code over a base of length ``length``."""
    if lambda_rank_bump not in (0, 1):
        raise ValueError("rank bump is 0 or 1")
    return base_rank + length + lambda_rank_bump


def predict_rank_mollard(t: int, m: int, rt: int, rm: int) -> int:
    return t * m + rt + rm


@dataclass(frozen=True)
class MollardSpec:
    ct: AnyCode
    cm: AnyCode

    @property
    def t(self) -> int:
        return self.ct.length

    @property
    def m(self) -> int:
        return self.cm.length

    @property
    def length(self) -> int:
        return self.t * self.m + self.t + self.m


class _MollardLayout:
    def __init__(self, t: int, m: int):
        self.t, self.m, self.tm = t, m, t * m
        self.row = WORD((1 << m) - 1)
        col = 0
        for i in range(t):
            col |= 1 << (i * m)
        self.col = WORD(col)
        self.xmask = WORD((1 << self.tm) - 1)
        self.tmask = WORD((1 << t) - 1)
        self.mmask = WORD((1 << m) - 1)

    def p1(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for i in range(self.t):
            out |= parity((x >> WORD(i * self.m)) & self.row) << WORD(i)
        return out

    def p2(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for j in range(self.m):
            out |= parity((x >> WORD(j)) & self.col) << WORD(j)
        return out

    def encode(self, x, y, z):
        return x | ((y ^ self.p1(x)) << WORD(self.tm)) | ((z ^ self.p2(x)) << WORD(self.tm + self.t))

    def decode(self, w):
        """Split a word into (x, y, z) with y, z the would-be component codewords."""
        x = w & self.xmask
        y = ((w >> WORD(self.tm)) & self.tmask) ^ self.p1(x)
        z = ((w >> WORD(self.tm + self.t)) & self.mmask) ^ self.p2(x)
        return x, y, z


def mollard(spec: MollardSpec, emit_stream: Optional[bool] = None) -> AnyCode:
    """{(x, y + p1(x), z + p2(x)) : x in F^{tm}, y in C^t, z in C^m} with f = 0."""
    ct, cm = _materialize(spec.ct), _materialize(spec.cm)
    _require_perfect(ct, "first component")
    _require_perfect(cm, "second component")
    t, m = ct.length, cm.length
    lay = _MollardLayout(t, m)
    n = spec.length
    if n > 63:
        raise ValueError(f"Mollard length {n} exceeds 63-bit words")
    yz_y = np.repeat(ct.words, cm.size)
    yz_z = np.tile(cm.words, ct.size)

    def source():
        step = max(1, STREAM_CHUNK // yz_y.size)
        for start in range(0, 1 << lay.tm, step):
            x = np.arange(start, min(start + step, 1 << lay.tm), dtype=WORD)
            xx = np.repeat(x, yz_y.size)
            yield lay.encode(xx, np.tile(yz_y, x.size), np.tile(yz_z, x.size))

    def member(w):
        _, y, z = lay.decode(w)
        return ct.contains(y) & cm.contains(z)

    def sampler(rng, k):
        x = rng.integers(0, 1 << lay.tm, size=k, dtype=np.uint64).astype(WORD)
        return lay.encode(x, ct.words[rng.integers(0, ct.size, size=k)], cm.words[rng.integers(0, cm.size, size=k)])

    size = (ct.size * cm.size) << lay.tm
    return _finish(n, size, source, member, sampler, f"mollard({t},{m})", emit_stream)


def mollard_parts(w: int, t: int, m: int) -> tuple[int, int, int]:
    """Decompose a Mollard word into (x, y', z') with y' = y-block + p1(x), z' = z-block + p2(x)."""
    x, y, z = _MollardLayout(t, m).decode(np.array([w], dtype=WORD))
    return int(x[0]), int(y[0]), int(z[0])


def is_propelinear_homomorphism(s: PropelinearStructure, lam: LambdaFn):
    """None if lambda(x * y) = lambda(x) + lambda(y) on all pairs, else a violating pair."""
    code = s.code
    if not isinstance(code, Code) or lam.base_code != code:
        raise ValueError("lambda and structure must live on the same materialized code")
    words = code.words
    lam_all = lam.table.astype(np.uint8)
    ids = s.index
    for a in np.unique(ids).tolist():
        moved = s.perms[a].act_array(words)
        for i in np.flatnonzero(ids == a).tolist():
            prod = moved ^ words[i]
            lhs = lam_all[code.index_of(prod)]
            bad = np.flatnonzero(lhs != (lam_all[i] ^ lam_all))
            if bad.size:
                return int(words[i]), int(words[bad[0]])
    return None


def _lift_vasiliev(p: Permutation, L: int) -> Permutation:
    img = list(p.images) + [L] + [L + 1 + j for j in p.images]
    return Permutation(tuple(img))


def vasiliev_propelinear(
    s: PropelinearStructure, lam: Optional[LambdaFn] = None, verify_sample: int = 4096
) -> PropelinearStructure:
    """Propelinear structure on the Vasil'ev code of a propelinear base.

    The codeword (x + y, |x| + lambda(y), x) is assigned pi_y acting on both
    L-blocks at once, with the middle coordinate fixed.  The result is
    verified (exhaustively when materialized, on ``verify_sample`` random
    pairs otherwise) before it is returned.
    """
    base = s.code
    if not isinstance(base, Code):
        raise TypeError("base structure must be on a materialized code")
    lam = LambdaFn.zero(base) if lam is None else lam
    bad = is_propelinear_homomorphism(s, lam)
    if bad is not None:
        raise NotHomomorphismError(bad)
    out = vasiliev(base, lam)
    L = base.length
    low = WORD((1 << L) - 1)
    perms = tuple(_lift_vasiliev(p, L) for p in s.perms)

    def ids(w, _base_ids=s.ids):
        w = np.asarray(w, dtype=WORD)
        return _base_ids((w & low) ^ (w >> WORD(L + 1)))

    lifted = PropelinearStructure(out, perms, ids, label=f"vasiliev-lift({s.label})")
    return _verified(lifted, verify_sample)


def _lift_mollard(a: Permutation, b: Permutation) -> Permutation:
    t, m = a.degree, b.degree
    tm = t * m
    img = [a.images[i] * m + b.images[j] for i in range(t) for j in range(m)]
    img += [tm + a.images[i] for i in range(t)]
    img += [tm + t + b.images[j] for j in range(m)]
    return Permutation(tuple(img))


def mollard_propelinear(
    st: PropelinearStructure, sm: PropelinearStructure, verify_sample: int = 4096
) -> PropelinearStructure:
    """Propelinear structure on M(C^t, C^m) with f = 0.

    The word built from (x, y, z) is assigned the permutation that moves the
    rows of the x-matrix and the y-block by pi_y and the columns of x and the
    z-block by pi_z.  Component structures must verify; the output is
    verified before it is returned.
    """
    for label, comp in (("first", st), ("second", sm)):
        if not isinstance(comp.code, Code):
            raise TypeError(f"{label} component structure must be on a materialized code")
        v = verify_propelinear(comp)
        if not v:
            raise StructureError(f"{label} component structure does not verify: {v.reason} at {v.counterexample}")
    out = mollard(MollardSpec(st.code, sm.code))
    t, m = st.length, sm.length
    lay = _MollardLayout(t, m)
    k = len(sm.perms)
    perms = tuple(_lift_mollard(a, b) for a in st.perms for b in sm.perms)

    def ids(w, _st=st.ids, _sm=sm.ids):
        _, y, z = lay.decode(np.asarray(w, dtype=WORD))
        return _st(y) * k + _sm(z)

    lifted = PropelinearStructure(out, perms, ids, label=f"mollard-lift({st.label},{sm.label})")
    return _verified(lifted, verify_sample)


def _verified(s: PropelinearStructure, sample: int) -> PropelinearStructure:
    v = verify_propelinear(s) if isinstance(s.code, Code) else verify_propelinear(s, sample=sample)
    if not v:
        raise StructureError(f"lifted structure fails verification: {v.reason} at {v.counterexample}")
    return s
