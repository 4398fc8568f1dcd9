"""Ingestion of external code collections through a line-oriented manifest.

Manifest lines are ``id<TAB>path<TAB>key=value,...``; paths are relative to
the manifest.  Recognized keys: ``rank``, ``kernel_dim`` (alias ``kernel``),
``sym_order`` (alias ``sym``), ``transitive`` and ``perfect``.  Declared
values are recomputed on load and a mismatch aborts ingestion.

A converter from any native database layout only has to emit one code file
per code plus this manifest.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .code import Code, is_perfect, kernel_dim, rank
from .constructions import lambda_rank_bump
from .errors import CodeFormatError, PropelinearError
from .fileio import read_code
from .homs import extend_hom, structure_homs
from .structure import build_normalized_propelinear
from .symmetry import is_transitive, symmetry_group

ALIASES = {"kernel": "kernel_dim", "sym": "sym_order"}
CHEAP = ("perfect", "rank", "kernel_dim")
COSTLY = ("sym_order", "transitive")


class IngestError(PropelinearError):
    def __init__(self, code_id: str, key: str, declared, actual):
        self.code_id, self.key, self.declared, self.actual = code_id, key, declared, actual
        super().__init__(f"code {code_id}: declared {key}={declared} but recomputed {actual}")


def _parse_value(key: str, raw: str):
    if key in ("transitive", "perfect"):
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "t", "y"):
            return True
        if low in ("0", "false", "no", "f", "n"):
            return False
        raise ValueError(raw)
    return int(raw)


@dataclass(frozen=True)
class ManifestEntry:
    code_id: str
    path: str
    declared: dict = field(default_factory=dict)


def read_manifest(path: str) -> list[ManifestEntry]:
    base = os.path.dirname(os.path.abspath(path))
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise CodeFormatError(f"manifest line {lineno}: expected id<TAB>path<TAB>key=value,...")
            declared = {}
            if len(parts) == 3 and parts[2].strip():
                for item in parts[2].split(","):
                    key, sep, value = item.partition("=")
                    key = ALIASES.get(key.strip(), key.strip())
                    if not sep or key not in CHEAP + COSTLY:
                        raise CodeFormatError(f"manifest line {lineno}: bad invariant {item!r}")
                    try:
                        declared[key] = _parse_value(key, value)
                    except ValueError:
                        raise CodeFormatError(f"manifest line {lineno}: bad value in {item!r}") from None
            p = parts[1].strip()
            out.append(ManifestEntry(parts[0].strip(), p if os.path.isabs(p) else os.path.join(base, p), declared))
    ids = [e.code_id for e in out]
    if len(set(ids)) != len(ids):
        raise CodeFormatError("manifest has duplicate code ids")
    return out


def _compute(code: Code, key: str):
    if key == "perfect":
        return is_perfect(code)
    if key == "rank":
        return rank(code)
    if key == "kernel_dim":
        return kernel_dim(code)
    if key == "sym_order":
        return symmetry_group(code).order
    if key == "transitive":
        return bool(is_transitive(code))
    raise KeyError(key)


@dataclass
class IngestedCode:
    code_id: str
    code: Code
    declared: dict
    verified: dict  # key -> recomputed value, for every key actually checked


def ingest(manifest: str, verify: str = "full", seed: int = 0, sample_fraction: float = 0.1) -> list[IngestedCode]:
    """Load every code of a manifest and re-verify its declared invariants.

    ``verify="full"`` recomputes every declared invariant.  ``"sample"``
    recomputes the cheap ones (perfectness, rank, kernel dimension) for all
    codes and the search-based ones (symmetry order, transitivity) for a
    seeded random subset.
    """
    if verify not in ("full", "sample"):
        raise ValueError("verify must be 'full' or 'sample'")
    entries = read_manifest(manifest)
    costly_ids = {e.code_id for e in entries}
    if verify == "sample" and entries:
        k = max(1, math.ceil(sample_fraction * len(entries)))
        pick = np.random.default_rng(seed).choice(len(entries), size=min(k, len(entries)), replace=False)
        costly_ids = {entries[i].code_id for i in sorted(pick.tolist())}
    out = []
    for e in entries:
        try:
            code = read_code(e.path)
        except CodeFormatError as exc:
            raise CodeFormatError(f"code {e.code_id}: {exc}") from None
        verified = {}
        for key, value in e.declared.items():
            if key in COSTLY and e.code_id not in costly_ids:
                continue
            actual = _compute(code, key)
            verified[key] = actual
            if actual != value:
                raise IngestError(e.code_id, key, value, actual)
        out.append(IngestedCode(e.code_id, code, dict(e.declared), verified))
    return out


def full_rank_lift_homs(code: Code) -> list[int]:
    """Indices of the Z2-homomorphisms of Pi(C) whose pulled-back lambda gives a full-rank Vasil'ev code.

    Requires a transitive code with trivial symmetry group.
    """
    s = build_normalized_propelinear(code)
    homs = structure_homs(s)
    L = code.length
    base = rank(code)
    hits = []
    for i, h in enumerate(homs):
        if base + L + lambda_rank_bump(extend_hom(s, h)) == 2 * L + 1:
            hits.append(i)
    return hits


@dataclass
class Survey:
    total: int
    transitive_trivial_sym: list[str]
    rank_counts: dict
    full_rank: list[str]
    full_rank_lifts: dict  # code id -> hom indices giving a full-rank Vasil'ev code

    def lines(self) -> list[str]:
        ranks = " ".join(f"{r}:{c}" for r, c in sorted(self.rank_counts.items()))
        return [
            f"codes: {self.total}",
            f"transitive with trivial symmetry group: {len(self.transitive_trivial_sym)}",
            f"  by rank: {ranks}",
            f"  full rank: {len(self.full_rank)}",
            f"  full-rank Vasil'ev lift exists: {len(self.full_rank_lifts)}"
            + (f" ({', '.join(sorted(self.full_rank_lifts))})" if self.full_rank_lifts else ""),
        ]


def survey(db: list[IngestedCode], lifts: bool = True, only: Optional[set] = None) -> Survey:
    """Count transitive trivial-symmetry codes, their ranks, and full-rank Vasil'ev lifts."""
    chosen, ranks, full, lifted = [], {}, [], {}
    for item in db:
        if only is not None and item.code_id not in only:
            continue
        c = item.code
        if c.length > 15 or symmetry_group(c).order != 1 or not is_transitive(c):
            continue
        chosen.append(item.code_id)
        r = rank(c)
        ranks[r] = ranks.get(r, 0) + 1
        if r == c.length:
            full.append(item.code_id)
            if lifts:
                hits = full_rank_lift_homs(c)
                if hits:
                    lifted[item.code_id] = hits
    return Survey(len(db), chosen, ranks, full, lifted)
