"""Reachability of (length, rank) pairs under the Vasil'ev and Mollard constructions.

Nodes are pairs (n, r) with n = 2^m - 1 and n - m <= r <= n.  Edges:

* Vasil'ev with lambda = 0:  (L, r) -> (2L + 1, r + L)
* Vasil'ev with a certified rank-raising lambda:  (L, r) -> (2L + 1, r + L + 1)
* Mollard with f = 0:  (t, rt) x (m, rm) -> (tm + t + m, tm + rt + rm)

Every reachable node keeps one canonical recipe: minimal depth, then
Vasil'ev before Mollard, then the smaller left length.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .code import Code, CodeStream, hamming_code, rank
from .constructions import (
    LambdaFn,
    MollardSpec,
    lambda_rank_bump,
    mollard,
    predict_rank_mollard,
    predict_rank_vasiliev,
    vasiliev,
)
from .errors import MissingBaseError, PropelinearError

MAX_PLAN_M = 24
EXPECTED_EXCLUSIONS = frozenset({(63, 63), (127, 126), (127, 127), (2047, 2047)})
CONSTRUCTIVE_TAGS = frozenset({"hamming"})


class RecipeError(PropelinearError, ValueError):
    pass


def log2_len(n: int) -> int:
    m = (n + 1).bit_length() - 1
    if n < 1 or (1 << m) != n + 1:
        raise ValueError(f"{n} is not of the form 2^m - 1")
    return m


@dataclass(frozen=True, order=True)
class NodeNR:
    n: int
    r: int

    def __post_init__(self):
        m = log2_len(self.n)
        if not self.n - m <= self.r <= self.n:
            raise ValueError(f"rank {self.r} outside the admissible range [{self.n - m}, {self.n}] for n={self.n}")

    @property
    def m(self) -> int:
        return log2_len(self.n)

    def __str__(self) -> str:
        return f"({self.n},{self.r})"


@dataclass(frozen=True)
class Recipe:
    target: NodeNR
    step: str  # "base" | "vasiliev" | "mollard"
    tag: str = ""
    bump: int = 0
    children: tuple["Recipe", ...] = ()
    depth: int = field(default=0, compare=False)

    @classmethod
    def base(cls, node: NodeNR, tag: str) -> "Recipe":
        return cls(node, "base", tag=tag)

    @classmethod
    def vasiliev(cls, child: "Recipe", bump: int = 0) -> "Recipe":
        L, r = child.target.n, child.target.r
        node = NodeNR(2 * L + 1, predict_rank_vasiliev(r, L, bump))
        return cls(node, "vasiliev", bump=bump, children=(child,), depth=child.depth + 1)

    @classmethod
    def mollard(cls, left: "Recipe", right: "Recipe") -> "Recipe":
        t, m = left.target.n, right.target.n
        node = NodeNR(t * m + t + m, predict_rank_mollard(t, m, left.target.r, right.target.r))
        return cls(node, "mollard", children=(left, right), depth=max(left.depth, right.depth) + 1)

    def leaves(self) -> list["Recipe"]:
        if self.step == "base":
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def expression(self) -> str:
        if self.step == "base":
            return f"base({self.target.n},{self.target.r},{self.tag})"
        if self.step == "vasiliev":
            return f"vas{self.bump}({self.children[0].expression()})"
        return f"mol({self.children[0].expression()},{self.children[1].expression()})"

    def to_dict(self) -> dict:
        d: dict = {"n": self.target.n, "r": self.target.r, "step": self.step}
        if self.step == "base":
            d["tag"] = self.tag
        elif self.step == "vasiliev":
            d["bump"] = self.bump
            d["child"] = self.children[0].to_dict()
        else:
            d["left"] = self.children[0].to_dict()
            d["right"] = self.children[1].to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Recipe":
        """Rebuild a recipe; the declared n and r must match the recomputed ones."""
        try:
            return cls._from_dict(d)
        except (KeyError, TypeError) as exc:
            raise RecipeError(f"malformed recipe: missing or bad field {exc}") from None

    @classmethod
    def _from_dict(cls, d: dict) -> "Recipe":
        step = d.get("step")
        if step == "base":
            rec = cls.base(NodeNR(int(d["n"]), int(d["r"])), str(d["tag"]))
        elif step == "vasiliev":
            rec = cls.vasiliev(cls._from_dict(d["child"]), int(d.get("bump", 0)))
        elif step == "mollard":
            rec = cls.mollard(cls._from_dict(d["left"]), cls._from_dict(d["right"]))
        else:
            raise RecipeError(f"unknown recipe step {step!r}")
        declared = (int(d["n"]), int(d["r"]))
        if declared != (rec.target.n, rec.target.r):
            raise RecipeError(f"recipe declares {declared} but its steps produce {rec.target}")
        return rec


_TOKEN = re.compile(r"\s*([A-Za-z0-9_.:\-]+|\(|\)|,)")


def parse_expression(text: str) -> Recipe:
    """Inverse of Recipe.expression()."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise RecipeError(f"cannot tokenize recipe {text!r}")
    pos = 0

    def take(expect=None):
        nonlocal pos
        if pos >= len(tokens):
            raise RecipeError("unexpected end of recipe")
        tok = tokens[pos]
        if expect is not None and tok != expect:
            raise RecipeError(f"expected {expect!r}, got {tok!r}")
        pos += 1
        return tok

    def node() -> Recipe:
        head = take()
        take("(")
        if head == "base":
            n = int(take())
            take(",")
            r = int(take())
            take(",")
            tag = take()
            take(")")
            return Recipe.base(NodeNR(n, r), tag)
        if head in ("vas0", "vas1"):
            child = node()
            take(")")
            return Recipe.vasiliev(child, int(head[-1]))
        if head == "mol":
            left = node()
            take(",")
            right = node()
            take(")")
            return Recipe.mollard(left, right)
        raise RecipeError(f"unknown recipe head {head!r}")

    rec = node()
    if pos != len(tokens):
        raise RecipeError("trailing input after recipe")
    return rec


@dataclass(frozen=True)
class Inventory:
    """Base nodes with provenance tags."""

    bases: tuple[tuple[NodeNR, str], ...]
    bump_nodes: frozenset = frozenset()  # nodes with a certified rank-raising lambda

    def with_base(self, node: NodeNR, tag: str) -> "Inventory":
        return Inventory(self.bases + ((node, tag),), self.bump_nodes)

    def constructive_only(self) -> "Inventory":
        return Inventory(tuple((n, t) for n, t in self.bases if t in CONSTRUCTIVE_TAGS), frozenset())

    def tag_of(self, node: NodeNR) -> Optional[str]:
        for n, t in self.bases:
            if n == node:
                return t
        return None


def paper_inventory() -> Inventory:
    """Hamming codes of lengths 1, 3, 7; all ranks at 15; the full-rank code at 31."""
    bases = [
        (NodeNR(1, 0), "hamming"),
        (NodeNR(3, 1), "hamming"),
        (NodeNR(7, 4), "hamming"),
        (NodeNR(15, 12), "literature-15"),
        (NodeNR(15, 13), "literature-15"),
        (NodeNR(15, 14), "literature-15"),
        (NodeNR(15, 15), "database-15-full-rank"),
        (NodeNR(31, 31), "database-31-full-rank"),
    ]
    return Inventory(tuple(bases))


def _key(rec: Recipe) -> tuple:
    kind = {"base": 0, "vasiliev": 1, "mollard": 2}[rec.step]
    if rec.step == "base":
        return (rec.depth, kind, 0, 0, 0, rec.tag)
    if rec.step == "vasiliev":
        return (rec.depth, kind, rec.bump, 0, 0, "")
    left, right = rec.children
    return (rec.depth, kind, left.target.n, left.target.r, right.target.r, "")


def reachable(inv: Inventory, max_m: int) -> dict[NodeNR, Recipe]:
    """Closure of the inventory under the construction edges, lengths up to 2^max_m - 1."""
    if not 1 <= max_m <= MAX_PLAN_M:
        raise ValueError(f"max_m must be in 1..{MAX_PLAN_M}")
    by_len: dict[int, dict[int, Recipe]] = {}
    for M in range(1, max_m + 1):
        n = (1 << M) - 1
        best: dict[int, Recipe] = {}

        def offer(rec: Recipe):
            cur = best.get(rec.target.r)
            if cur is None or _key(rec) < _key(cur):
                best[rec.target.r] = rec

        for node, tag in inv.bases:
            if node.n == n:
                offer(Recipe.base(node, tag))
        L = (1 << (M - 1)) - 1
        for child in by_len.get(L, {}).values():
            offer(Recipe.vasiliev(child, 0))
            if child.target in inv.bump_nodes:
                offer(Recipe.vasiliev(child, 1))
        for a in range(1, M):
            t, m = (1 << a) - 1, (1 << (M - a)) - 1
            lefts, rights = by_len.get(t, {}), by_len.get(m, {})
            for left in lefts.values():
                for right in rights.values():
                    offer(Recipe.mollard(left, right))
        by_len[n] = best
    return {rec.target: rec for level in by_len.values() for rec in level.values()}


def admissible(m: int) -> list[NodeNR]:
    n = (1 << m) - 1
    return [NodeNR(n, r) for r in range(n - m, n + 1)]


@dataclass
class CoverageRow:
    node: NodeNR
    status: str  # "reachable" | "excluded" | "unreachable"
    constructive: bool
    recipe: Optional[Recipe]

    def line(self) -> str:
        kind = "constructive" if self.constructive else "external"
        expr = self.recipe.expression() if self.recipe else "-"
        status = self.status if self.status != "reachable" else f"reachable/{kind}"
        return f"{self.node.n} {self.node.r} {status} {expr}"


@dataclass
class CoverageReport:
    max_m: int
    rows: list[CoverageRow]
    exclusions: list[tuple[int, int]]
    discrepancies: list[str]

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_text(self) -> str:
        lines = [row.line() for row in self.rows]
        lines.append(f"# exclusions: {' '.join(f'({n},{r})' for n, r in self.exclusions) or 'none'}")
        lines.append(f"# discrepancies: {len(self.discrepancies)}")
        lines.extend(f"# {d}" for d in self.discrepancies)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "max_m": self.max_m,
            "ok": self.ok,
            "exclusions": [list(e) for e in self.exclusions],
            "discrepancies": self.discrepancies,
            "nodes": [
                {
                    "n": row.node.n,
                    "r": row.node.r,
                    "status": row.status,
                    "constructive": row.constructive,
                    "recipe": row.recipe.to_dict() if row.recipe else None,
                }
                for row in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


def theorem_coverage_check(
    max_m: int, inv: Optional[Inventory] = None, expected: Iterable[tuple[int, int]] = EXPECTED_EXCLUSIONS
) -> CoverageReport:
    """Check every admissible (n, r) with 4 <= m <= max_m against the expected exclusions."""
    inv = paper_inventory() if inv is None else inv
    expected = {e for e in expected if log2_len(e[0]) <= max_m}
    reach = reachable(inv, max_m)
    built = reachable(inv.constructive_only(), max_m)
    rows, exclusions, problems = [], [], []
    for m in range(4, max_m + 1):
        for node in admissible(m):
            rec = reach.get(node)
            key = (node.n, node.r)
            if rec is None:
                exclusions.append(key)
                status = "excluded" if key in expected else "unreachable"
                if key not in expected:
                    problems.append(f"{node} unreachable but not an expected exclusion")
            else:
                status = "reachable"
                if key in expected:
                    problems.append(f"{node} expected excluded but reachable via {rec.expression()}")
            rows.append(CoverageRow(node, status, node in built, rec))
    return CoverageReport(max_m, rows, exclusions, problems)


@dataclass(frozen=True)
class Deferred:
    """Stand-in for a code too long to build; carries the planned rank."""

    target: NodeNR
    predicted_rank: int
    expression: str


def realize(
    recipe: Recipe,
    bases: Optional[dict] = None,
    lambdas: Optional[dict] = None,
    stream_max: int = 31,
) -> Union[Code, CodeStream, Deferred]:
    """Build the code a recipe describes and check its rank against the plan.

    ``bases`` maps NodeNR (or (n, r)) to ingested Codes for non-Hamming base
    tags; ``lambdas`` maps a child NodeNR to the LambdaFn used by a bump-1
    Vasil'ev step.  Targets longer than ``stream_max`` come back as Deferred.
    """
    bases = {(k.n, k.r) if isinstance(k, NodeNR) else tuple(k): v for k, v in (bases or {}).items()}
    lambdas = {(k.n, k.r) if isinstance(k, NodeNR) else tuple(k): v for k, v in (lambdas or {}).items()}
    return _realize(recipe, bases, lambdas, stream_max)


def _realize(rec: Recipe, bases, lambdas, stream_max):
    node = rec.target
    if node.n > stream_max:
        return Deferred(node, node.r, rec.expression())
    if rec.step == "base":
        if rec.tag == "hamming":
            out = hamming_code(node.m)
        elif (node.n, node.r) in bases:
            out = bases[(node.n, node.r)]
        else:
            raise MissingBaseError(rec.tag, str(node))
    else:
        kids = [_realize(c, bases, lambdas, stream_max) for c in rec.children]
        if not all(isinstance(k, Code) for k in kids):
            return Deferred(node, node.r, rec.expression())
        if rec.step == "vasiliev":
            child = kids[0]
            if rec.bump:
                lam = lambdas.get((rec.children[0].target.n, rec.children[0].target.r))
                if lam is None:
                    raise RecipeError(f"no certified lambda for the rank-raising step at {rec.children[0].target}")
                if lambda_rank_bump(lam) != 1:
                    raise RecipeError("supplied lambda does not raise the rank")
            else:
                lam = LambdaFn.zero(child)
            out = vasiliev(child, lam)
        else:
            out = mollard(MollardSpec(kids[0], kids[1]))
    got = rank(out)
    if got != node.r:
        raise RecipeError(f"realized {rec.expression()} has rank {got}, planned {node.r}")
    return out


def validate(recipe: Recipe) -> list[str]:
    """Re-derive lengths and ranks of every step; return a list of problems."""
    problems = []

    def walk(rec: Recipe):
        for c in rec.children:
            walk(c)
        if rec.step == "vasiliev":
            (c,) = rec.children
            if rec.target.n != 2 * c.target.n + 1:
                problems.append(f"{rec.expression()}: length is not 2L+1")
            if rec.target.r != predict_rank_vasiliev(c.target.r, c.target.n, rec.bump):
                problems.append(f"{rec.expression()}: rank arithmetic fails")
        elif rec.step == "mollard":
            a, b = rec.children
            if rec.target.n != a.target.n * b.target.n + a.target.n + b.target.n:
                problems.append(f"{rec.expression()}: length is not tm+t+m")
            if rec.target.r != predict_rank_mollard(a.target.n, b.target.n, a.target.r, b.target.r):
                problems.append(f"{rec.expression()}: rank arithmetic fails")

    walk(recipe)
    return problems
