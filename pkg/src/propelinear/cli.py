"""Command-line interface.

Exit status: 0 on success or a true verdict, 1 on a false verdict, 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import descriptor as desc
from .code import hamming_code, int_to_str, is_perfect, kernel, min_distance, rank
from .constructions import (
    LambdaFn,
    MollardSpec,
    lambda_rank_bump,
    mollard,
    mollard_propelinear,
    vasiliev,
    vasiliev_propelinear,
)
from .database import ingest, survey
from .errors import PropelinearError
from .fileio import read_code, read_lambda, structure_for, write_code, write_structure
from .homs import extend_hom, structure_homs
from .plan import (
    Inventory,
    NodeNR,
    Recipe,
    RecipeError,
    parse_expression,
    paper_inventory,
    realize,
    theorem_coverage_check,
    validate,
)
from .structure import check_group_laws, verify_propelinear
from .symmetry import is_transitive, symmetry_group

TRUE, FALSE, ERROR = 0, 1, 2


def _out(args):
    return open(args.output, "w", encoding="ascii") if getattr(args, "output", None) else sys.stdout


def _verdict(flag: bool) -> int:
    print("true" if flag else "false")
    return TRUE if flag else FALSE


def _component(path: Optional[str], m: Optional[int], what: str):
    if path and m:
        raise PropelinearError(f"give either a file or --{what}-hamming, not both")
    if path:
        code = read_code(path)
        return code, desc.file_descriptor(path, code)
    if m:
        return hamming_code(m), {"construction": "hamming", "m": m}
    raise PropelinearError(f"missing {what} component (file or hamming order)")


def _lambda(spec: str, base, structure_path):
    if spec == "zero":
        return LambdaFn.zero(base), desc.lambda_descriptor(None)
    kind, _, arg = spec.partition(":")
    if kind == "table" and arg:
        lam = read_lambda(arg, base)
        return lam, desc.lambda_descriptor(lam)
    if kind == "hom" and arg:
        s = structure_for(base, structure_path)
        homs = structure_homs(s)
        i = int(arg)
        if not 0 <= i < len(homs):
            raise PropelinearError(f"hom index {i} out of range; the structure has {len(homs)} homomorphisms")
        return extend_hom(s, homs[i]), desc.lambda_descriptor(None, i, structure_path)
    raise PropelinearError(f"bad --lambda {spec!r}; use zero, table:<path> or hom:<index>")


def _emit(args, code, doc) -> int:
    fh = _out(args)
    try:
        write_code(code, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    if args.descriptor_out:
        with open(args.descriptor_out, "w", encoding="utf-8") as f:
            f.write(desc.dumps(doc))
    return TRUE


def cmd_construct(args) -> int:
    stream = True if args.emit_stream else None
    if args.kind == "hamming":
        if args.m is None:
            raise PropelinearError("construct hamming needs --m")
        return _emit(args, hamming_code(args.m), {"construction": "hamming", "m": args.m})
    if args.kind == "replay":
        if not args.descriptor:
            raise PropelinearError("construct replay needs --descriptor")
        with open(args.descriptor, encoding="utf-8") as f:
            doc = json.load(f)
        return _emit(args, desc.build(doc, emit_stream=stream), doc)
    if args.kind == "vasiliev":
        base, base_doc = _component(args.base, args.hamming, "base")
        lam, lam_doc = _lambda(args.lambda_spec, base, args.base_structure)
        doc = {"construction": "vasiliev", "base": base_doc, "lambda": lam_doc}
        code = vasiliev(base, lam, emit_stream=stream)
        if args.structure_out:
            s = vasiliev_propelinear(structure_for(base, args.base_structure), lam)
            write_structure(s, args.structure_out)
        return _emit(args, code, doc)
    ct, t_doc = _component(args.t_file, args.t_hamming, "t")
    cm, m_doc = _component(args.m_file, args.m_hamming, "m")
    code = mollard(MollardSpec(ct, cm), emit_stream=stream)
    if args.structure_out:
        s = mollard_propelinear(structure_for(ct, args.t_structure), structure_for(cm, args.m_structure))
        write_structure(s, args.structure_out)
    return _emit(args, code, {"construction": "mollard", "t": t_doc, "m": m_doc})


def cmd_analyze(args) -> int:
    code = read_code(args.code)
    what = args.what
    if what == "rank":
        print(rank(code))
    elif what == "kernel":
        basis = kernel(code)
        print(len(basis))
        if args.verbose:
            for k in basis:
                print(k)
    elif what == "mindist":
        print(min_distance(code))
    elif what == "perfect":
        return _verdict(is_perfect(code))
    elif what == "sym":
        g = symmetry_group(code)
        print(g.order)
        if args.verbose:
            for p in g.generators:
                print(p.one_line())
    elif what == "transitive":
        tr = is_transitive(code)
        rc = _verdict(tr.transitive)
        if args.verbose:
            for r, iso in sorted(tr.witnesses.items()):
                print(f"{int_to_str(r, code.length)} : {iso.perm.one_line()}")
        return rc
    elif what == "propelinear":
        s = structure_for(code, args.structure)
        v = verify_propelinear(s)
        if v and args.group_laws:
            v = check_group_laws(s)
        if not v:
            x, y = v.counterexample
            print(f"counterexample: {int_to_str(x, code.length)} {int_to_str(y, code.length)} ({v.reason})", file=sys.stderr)
        elif args.dump:
            write_structure(s, args.dump)
        return _verdict(v.ok)
    return TRUE


def cmd_homs(args) -> int:
    code = read_code(args.code)
    s = structure_for(code, args.structure)
    homs = structure_homs(s)
    print(f"# |Pi(C)| = {len(set(s.perms))}, homomorphisms into Z2: {len(homs)}")
    for i, h in enumerate(homs):
        signs = " ".join(f"{g.one_line().replace(' ', ',')}->{b}" for g, b in zip(h.generators, h.signs))
        lam = extend_hom(s, h)
        bump = lambda_rank_bump(lam) if code.length <= 31 else "?"
        print(f"{i}\t{signs or 'trivial'}\trank_bump={bump}")
    return TRUE


def _parse_bases(items) -> list[tuple[NodeNR, str]]:
    out = []
    for item in items or []:
        parts = item.split(":", 2)
        if len(parts) != 3:
            raise PropelinearError(f"--with-base expects n:r:tag, got {item!r}")
        out.append((NodeNR(int(parts[0]), int(parts[1])), parts[2]))
    return out


def cmd_plan(args) -> int:
    inv = paper_inventory()
    for node, tag in _parse_bases(args.with_base):
        inv = inv.with_base(node, tag)
    bumps = set()
    for item in args.with_bump or []:
        n, _, r = item.partition(":")
        bumps.add(NodeNR(int(n), int(r)))
    inv = Inventory(inv.bases, frozenset(bumps))
    report = theorem_coverage_check(args.max_m, inv)
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return TRUE if report.ok else FALSE


def _load_recipe(path: str) -> Recipe:
    with open(path, encoding="utf-8") as f:
        text = f.read().strip()
    if text.startswith("{"):
        return Recipe.from_dict(json.loads(text))
    return parse_expression(text)


def cmd_verify_recipe(args) -> int:
    rec = _load_recipe(args.recipe)
    problems = validate(rec)
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return _verdict(False)
    print(f"{rec.target.n} {rec.target.r} valid {rec.expression()}")
    if args.realize:
        bases = {}
        for item in args.base_code or []:
            n, r, path = item.split(":", 2)
            bases[(int(n), int(r))] = read_code(path)
        out = realize(rec, bases)
        if hasattr(out, "predicted_rank"):
            print(f"deferred: length {out.target.n} beyond materialization, predicted rank {out.predicted_rank}")
        else:
            print(f"realized: length {out.length}, size {out.size}, rank {rank(out)}")
    return _verdict(True)


def cmd_ingest(args) -> int:
    db = ingest(args.manifest, verify=args.verify, seed=args.seed)
    for item in db:
        checked = ",".join(f"{k}={v}" for k, v in sorted(item.verified.items()))
        print(f"{item.code_id}\tok\t{checked}")
    if args.survey:
        for line in survey(db).lines():
            print(f"# {line}")
    return TRUE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propelinear", description="Perfect codes, propelinear structures and rank plans.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a Hamming, Vasil'ev or Mollard code")
    c.add_argument("kind", choices=["hamming", "vasiliev", "mollard", "replay"])
    c.add_argument("--m", type=int, help="Hamming order (length 2^m - 1)")
    c.add_argument("--base", help="Vasil'ev base code file")
    c.add_argument("--hamming", type=int, help="Vasil'ev base: Hamming code of this order")
    c.add_argument("--lambda", dest="lambda_spec", default="zero", help="zero | table:<path> | hom:<index>")
    c.add_argument("--base-structure", help="structure dump for the Vasil'ev base")
    c.add_argument("--t-file")
    c.add_argument("--m-file")
    c.add_argument("--t-hamming", type=int)
    c.add_argument("--m-hamming", type=int)
    c.add_argument("--t-structure")
    c.add_argument("--m-structure")
    c.add_argument("--descriptor", help="descriptor to replay")
    c.add_argument("--descriptor-out")
    c.add_argument("--structure-out", help="also write the lifted propelinear structure")
    c.add_argument("--emit-stream", action="store_true", help="enumerate without materializing")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="compute an invariant of a code file")
    a.add_argument("what", choices=["rank", "kernel", "mindist", "perfect", "sym", "transitive", "propelinear"])
    a.add_argument("code")
    a.add_argument("--structure", help="structure dump to verify (propelinear)")
    a.add_argument("--dump", help="write the verified structure here (propelinear)")
    a.add_argument("--group-laws", action="store_true", help="also check identity, inverses, associativity")
    a.add_argument("-v", "--verbose", action="store_true")
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("homs", help="list homomorphisms of Pi(C) into Z2")
    h.add_argument("code")
    h.add_argument("--structure")
    h.set_defaults(func=cmd_homs)

    pl = sub.add_parser("plan", help="rank reachability report")
    pl.add_argument("--max-m", type=int, required=True)
    pl.add_argument("--with-base", action="append", metavar="N:R:TAG")
    pl.add_argument("--with-bump", action="append", metavar="N:R")
    pl.add_argument("--format", choices=["text", "json"], default="text")
    pl.set_defaults(func=cmd_plan)

    v = sub.add_parser("verify-recipe", help="check (and optionally build) a recipe")
    v.add_argument("recipe")
    v.add_argument("--realize", action="store_true")
    v.add_argument("--base-code", action="append", metavar="N:R:PATH")
    v.set_defaults(func=cmd_verify_recipe)

    g = sub.add_parser("ingest", help="load and re-verify a code database manifest")
    g.add_argument("manifest")
    g.add_argument("--verify", choices=["full", "sample"], default="full")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--survey", action="store_true")
    g.set_defaults(func=cmd_ingest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PropelinearError, RecipeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
