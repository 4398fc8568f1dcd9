import json
import time

import pytest

from propelinear import MissingBaseError, NodeNR, Recipe, hamming_code, paper_inventory, rank, realize, reachable
from propelinear.constructions import LambdaFn
from propelinear.plan import (
    EXPECTED_EXCLUSIONS,
    Deferred,
    Inventory,
    RecipeError,
    parse_expression,
    theorem_coverage_check,
    validate,
)

BASES = {(1, 0), (3, 1), (7, 4), (15, 12), (15, 13), (15, 14), (15, 15), (31, 31)}


def closure(bases, max_m, banned_inputs=()):
    """Plain fixpoint over (n, r) pairs, no recipes."""
    limit = (1 << max_m) - 1
    seen = set(bases)
    changed = True
    while changed:
        changed = False
        new = set()
        usable = {x for x in seen if x[0] not in banned_inputs}
        for n, r in usable:
            if 2 * n + 1 <= limit:
                new.add((2 * n + 1, r + n))
            for t, rt in usable:
                if n * t + n + t <= limit:
                    new.add((n * t + n + t, n * t + r + rt))
        if not new <= seen:
            seen |= new
            changed = True
    return seen


def admissible_pairs(max_m):
    return {((1 << m) - 1, r) for m in range(4, max_m + 1) for r in range((1 << m) - 1 - m, 1 << m)}


@pytest.mark.parametrize("max_m", [6, 11, 16])
def test_reachable_matches_fixpoint(max_m):
    got = {(k.n, k.r) for k in reachable(paper_inventory(), max_m)}
    assert got == closure(BASES, max_m)


def test_coverage_16():
    t0 = time.perf_counter()
    rep = theorem_coverage_check(16)
    assert time.perf_counter() - t0 < 1
    assert rep.ok
    assert set(rep.exclusions) == set(EXPECTED_EXCLUSIONS)
    assert admissible_pairs(16) - closure(BASES, 16) == set(EXPECTED_EXCLUSIONS)


@pytest.mark.parametrize("extra", [(63, 63), (127, 127)])
def test_extra_base_unlocks_2047(extra):
    inv = paper_inventory().with_base(NodeNR(*extra), "hypothetical")
    rec = reachable(inv, 11)
    assert NodeNR(2047, 2047) in rec
    assert not validate(rec[NodeNR(2047, 2047)])


def test_report_formats():
    rep = theorem_coverage_check(6)
    lines = rep.to_text().splitlines()
    assert any(line.startswith("63 63 excluded") for line in lines)
    assert json.loads(rep.to_json())["ok"] is True


def test_expression_roundtrip():
    for rec in reachable(paper_inventory(), 11).values():
        again = parse_expression(rec.expression())
        assert again == rec
        assert Recipe.from_dict(json.loads(json.dumps(rec.to_dict()))) == rec
        assert validate(rec) == []


def test_validate_catches_bad_rank():
    bad = {"n": 15, "r": 12, "step": "vasiliev", "bump": 0, "child": {"n": 7, "r": 4, "step": "base", "tag": "hamming"}}
    with pytest.raises(RecipeError):
        Recipe.from_dict(bad)
    with pytest.raises(RecipeError):
        Recipe.from_dict({"n": 15, "r": 11, "step": "vasiliev"})


def test_parse_rejects_garbage():
    with pytest.raises(RecipeError):
        parse_expression("vas0(base(7,4,hamming)")
    with pytest.raises((RecipeError, ValueError)):
        parse_expression("base(8,4,hamming)")


def test_realize_constructive():
    rec = parse_expression("vas0(base(7,4,hamming))")
    c = realize(rec)
    assert c.length == 15 and rank(c) == 11
    rec = parse_expression("mol(base(3,1,hamming),base(3,1,hamming))")
    assert rank(realize(rec)) == 11


def test_realize_bump_needs_lambda():
    h7 = hamming_code(3)
    rec = Recipe.vasiliev(Recipe.base(NodeNR(7, 4), "hamming"), 1)
    with pytest.raises(RecipeError):
        realize(rec)
    lam = LambdaFn.from_mapping(h7, {w: int(w == int(h7.words[1])) for w in h7.words.tolist()})
    assert rank(realize(rec, lambdas={(7, 4): lam})) == 12


def test_realize_missing_base_and_deferred():
    rec = reachable(paper_inventory(), 8)
    with pytest.raises(MissingBaseError, match="literature-15"):
        realize(rec[NodeNR(15, 12)])
    out = realize(rec[NodeNR(255, 255)])
    assert isinstance(out, Deferred) and out.predicted_rank == 255


def test_bump_nodes_add_edges():
    inv = Inventory(paper_inventory().constructive_only().bases, frozenset({NodeNR(7, 4)}))
    rec = reachable(inv, 4)
    assert rec[NodeNR(15, 12)].expression() == "vas1(base(7,4,hamming))"


def test_lengths_7_11_15_never_needed_as_inputs():
    banned = {(1 << m) - 1 for m in (7, 11, 15)}
    assert closure(BASES, 16, banned) & admissible_pairs(16) == closure(BASES, 16) & admissible_pairs(16)
