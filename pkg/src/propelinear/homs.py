"""Homomorphisms of a permutation group into Z2 and their pull-back to codes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constructions import LambdaFn
from .errors import CapacityError, StructureError
from .perm import Permutation
from .structure import PropelinearStructure, pi_group

MAX_GROUP_ORDER = 1 << 16

Elem = tuple  # permutation images, see Permutation


def _mul(a: Elem, b: Elem) -> Elem:
    # matches Permutation.__mul__
    return tuple(b[j] for j in a)


def enumerate_group(gens: Sequence[Permutation], limit: int = MAX_GROUP_ORDER) -> list[Elem]:
    """All elements of the generated group, breadth first from the identity."""
    if not gens:
        return []
    degree = gens[0].degree
    g_imgs = [g.images for g in gens]
    e = tuple(range(degree))
    seen = {e}
    order = [e]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for g in g_imgs:
            y = _mul(x, g)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > limit:
                    raise CapacityError(f"group order exceeds {limit}")
    return order


def _closure(elems: set, gens: list[Elem]) -> set:
    todo = list(elems)
    while todo:
        x = todo.pop()
        for g in gens:
            y = _mul(x, g)
            if y not in elems:
                elems.add(y)
                todo.append(y)
    return elems


@dataclass(frozen=True)
class Hom2:
    """A homomorphism into Z2, given by its signs on the generators."""

    generators: tuple[Permutation, ...]
    signs: tuple[int, ...]
    values: dict = field(repr=False, compare=False, default_factory=dict)

    def __call__(self, p: Permutation) -> int:
        if p.is_identity:
            return 0
        try:
            return self.values[p.images]
        except KeyError:
            raise KeyError(f"{p} is not in the group this homomorphism is defined on") from None

    @property
    def trivial(self) -> bool:
        return not any(self.values.values())


def homs_to_z2(gens: Sequence[Permutation]) -> list[Hom2]:
    """All homomorphisms of the group generated by ``gens`` into Z2.

    The group is enumerated, N = <g^2 : g in G> is formed (it contains the
    commutator subgroup), and G/N is split into a GF(2) basis by adding the
    generators one at a time.  Each of the 2^d linear functionals on G/N is
    one homomorphism; index 0 is the trivial one.
    """
    gens = tuple(gens)
    if not gens:
        return [Hom2((), (), {})]
    elems = enumerate_group(gens)
    squares = {_mul(g, g) for g in elems}
    e = elems[0]
    normal: set = {e}
    ngens: list[Elem] = []
    for sq in sorted(squares):
        if sq not in normal:
            ngens.append(sq)
            normal = _closure(normal, ngens)
    # coordinates of each element in G/N as a bitmask over the chosen basis
    coord = {x: 0 for x in normal}
    d = 0
    for g in gens:
        if g.images in coord:
            continue
        bit = 1 << d
        d += 1
        for x, c in list(coord.items()):
            coord[_mul(g.images, x)] = c | bit
    if len(coord) != len(elems):
        raise StructureError("failed to split G/N into cosets; group enumeration inconsistent")
    gen_coord = [coord[g.images] for g in gens]
    out = []
    for a in range(1 << d):
        values = {x: (c & a).bit_count() & 1 for x, c in coord.items()}
        signs = tuple((gc & a).bit_count() & 1 for gc in gen_coord)
        out.append(Hom2(gens, signs, values))
    return out


def extend_hom(s: PropelinearStructure, h: Hom2) -> LambdaFn:
    """lambda(x) = h(pi_x) as a table on the code."""
    code = s.code
    per_perm = np.array([h(p) for p in s.perms], dtype=np.uint8)
    return LambdaFn(code, per_perm[s.index])


def small_generating_set(perms: Sequence[Permutation]) -> list[Permutation]:
    """Greedy generators: keep a permutation only if the ones kept so far miss it."""
    kept: list[Permutation] = []
    if not perms:
        return kept
    closure = {tuple(range(perms[0].degree))}
    for p in sorted(perms):
        if p.images in closure:
            continue
        kept.append(p)
        closure = _closure(closure, [g.images for g in kept])
    return kept


def structure_homs(s: PropelinearStructure) -> list[Hom2]:
    """homs_to_z2 on Pi(C) of a structure, in the order the CLI numbers them."""
    return homs_to_z2(small_generating_set(pi_group(s)))
