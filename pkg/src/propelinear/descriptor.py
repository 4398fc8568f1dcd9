"""Replayable construction descriptors (nested JSON documents).

Examples::

    {"construction": "hamming", "m": 3}
    {"construction": "vasiliev", "base": {...}, "lambda": {"kind": "zero"}}
    {"construction": "mollard", "t": {...}, "m": {...}}
    {"construction": "file", "path": "codes/x.txt", "sha256": "..."}

``lambda`` may also be ``{"kind": "table", "ones": ["0110...", ...]}`` (the
codewords mapped to 1) or ``{"kind": "hom", "index": i, "structure": path}``.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional, Union

from .code import Code, CodeStream, hamming_code, int_to_str, str_to_int
from .constructions import LambdaFn, MollardSpec, mollard, vasiliev
from .errors import CodeFormatError
from .fileio import read_code, structure_for
from .homs import extend_hom, structure_homs

AnyCode = Union[Code, CodeStream]


def words_digest(code: Code) -> str:
    return hashlib.sha256(code.words.tobytes()).hexdigest()


def file_descriptor(path: str, code: Code) -> dict:
    return {"construction": "file", "path": path, "sha256": words_digest(code)}


def lambda_descriptor(lam: Optional[LambdaFn], hom_index: Optional[int] = None, structure: Optional[str] = None) -> dict:
    if hom_index is not None:
        d = {"kind": "hom", "index": hom_index}
        if structure:
            d["structure"] = structure
        return d
    if lam is None or lam.is_zero():
        return {"kind": "zero"}
    n = lam.base_code.length
    ones = [int_to_str(w, n) for w, b in zip(lam.base_code.words.tolist(), lam.table.tolist()) if b]
    return {"kind": "table", "ones": ones}


def build(doc: dict, emit_stream: Optional[bool] = None) -> AnyCode:
    """Replay a descriptor bit-exactly."""
    kind = doc.get("construction")
    if kind == "hamming":
        return hamming_code(int(doc["m"]))
    if kind == "file":
        code = read_code(doc["path"])
        if "sha256" in doc and words_digest(code) != doc["sha256"]:
            raise CodeFormatError(f"{doc['path']} changed since the descriptor was written")
        return code
    if kind == "vasiliev":
        base = build(doc["base"], emit_stream=False)
        return vasiliev(base, _lambda(doc.get("lambda", {"kind": "zero"}), base), emit_stream=emit_stream)
    if kind == "mollard":
        return mollard(MollardSpec(build(doc["t"], False), build(doc["m"], False)), emit_stream=emit_stream)
    raise CodeFormatError(f"unknown construction {kind!r}")


def _lambda(d: dict, base: Code) -> LambdaFn:
    kind = d.get("kind", "zero")
    if kind == "zero":
        return LambdaFn.zero(base)
    if kind == "table":
        ones = {str_to_int(s) for s in d.get("ones", [])}
        return LambdaFn.from_mapping(base, {w: int(w in ones) for w in base.words.tolist()})
    if kind == "hom":
        s = structure_for(base, d.get("structure"))
        homs = structure_homs(s)
        return extend_hom(s, homs[int(d["index"])])
    raise CodeFormatError(f"unknown lambda kind {kind!r}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"
