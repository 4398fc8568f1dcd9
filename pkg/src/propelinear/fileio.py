"""Text formats: code files, structure dumps and lambda tables.

Code file::

    n=7
    # comments and blank lines are ignored
    0000000
    1101000
    ...

Coordinate 1 is the leftmost character.  Structure dumps hold one
``<codeword> : <permutation in one-line notation>`` line per codeword, and
lambda tables one ``<codeword> <bit>`` line per codeword.
"""

from __future__ import annotations

import io
import os
from typing import IO, Iterator, Optional, Union

import numpy as np

from .code import Code, CodeStream, int_to_str, is_linear, str_to_int
from .constructions import LambdaFn
from .errors import CodeFormatError
from .gf2 import WORD
from .perm import Permutation
from .structure import PropelinearStructure, build_normalized_propelinear

PathOrFile = Union[str, os.PathLike, IO[str]]


def _open_text(src: PathOrFile):
    if hasattr(src, "read"):
        return src, False
    return open(src, encoding="ascii"), True


def _content_lines(fh) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(fh, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_word(line: str, n: int, lineno: int) -> int:
    if len(line) != n:
        raise CodeFormatError(f"line {lineno}: expected {n} characters, got {len(line)}")
    if set(line) - {"0", "1"}:
        raise CodeFormatError(f"line {lineno}: only 0 and 1 are allowed, got {line!r}")
    return str_to_int(line)


def _parse_header(lines, what: str) -> tuple[int, dict]:
    meta: dict = {}
    n = None
    for lineno, line in lines:
        key, sep, value = line.partition("=")
        if not sep:
            raise CodeFormatError(f"line {lineno}: {what} must start with an n=<length> header")
        key = key.strip()
        if key == "n":
            try:
                n = int(value)
            except ValueError:
                raise CodeFormatError(f"line {lineno}: bad length {value!r}") from None
            if n < 1:
                raise CodeFormatError(f"line {lineno}: length must be positive")
            return n, meta
        meta[key] = value.strip()
    raise CodeFormatError(f"{what} has no n=<length> header")


def read_code(src: PathOrFile) -> Code:
    """Parse a code file, deduplicating words and requiring 0^n."""
    fh, close = _open_text(src)
    try:
        lines = _content_lines(fh)
        n, meta = _parse_header(lines, "code file")
        words = []
        for lineno, line in lines:
            if "=" in line:
                key, _, value = line.partition("=")
                meta[key.strip()] = value.strip()
                continue
            words.append(_parse_word(line, n, lineno))
    finally:
        if close:
            fh.close()
    if not words:
        raise CodeFormatError("code file lists no codewords")
    if 0 not in words:
        raise CodeFormatError(
            "code does not contain the all-zero word; replace C by c + C for any codeword c "
            "(a translate is equivalent and contains 0^n) and re-save"
        )
    name = meta.get("name", "") or (os.path.basename(str(src)) if not hasattr(src, "read") else "")
    return Code(n, words, name=name)


def _word_lines(words: np.ndarray, n: int) -> bytes:
    bits = ((words[:, None] >> np.arange(n, dtype=WORD)[None, :]) & WORD(1)).astype(np.uint8)
    rows = np.concatenate([bits + ord("0"), np.full((words.size, 1), ord("\n"), dtype=np.uint8)], axis=1)
    return rows.tobytes()


def write_code(code: Union[Code, CodeStream], dst: PathOrFile, name: Optional[str] = None) -> None:
    """Write the text format; streams are written chunk by chunk in enumeration order."""
    close = not hasattr(dst, "write")
    fh = open(dst, "w", encoding="ascii") if close else dst
    try:
        fh.write(f"n={code.length}\n")
        label = code.name if name is None else name
        if label:
            fh.write(f"name={label}\n")
        for chunk in code.chunks():
            fh.write(_word_lines(np.asarray(chunk, dtype=WORD), code.length).decode("ascii"))
    finally:
        if close:
            fh.close()


def code_to_text(code: Union[Code, CodeStream]) -> str:
    buf = io.StringIO()
    write_code(code, buf)
    return buf.getvalue()


def write_structure(s: PropelinearStructure, dst: PathOrFile) -> None:
    close = not hasattr(dst, "write")
    fh = open(dst, "w", encoding="ascii") if close else dst
    n = s.length
    try:
        fh.write(f"n={n}\n")
        for w, i in zip(s.code.words.tolist(), s.index.tolist()):
            fh.write(f"{int_to_str(w, n)} : {s.perms[i].one_line()}\n")
    finally:
        if close:
            fh.close()


def read_structure(src: PathOrFile, code: Optional[Code] = None) -> PropelinearStructure:
    """Parse a structure dump; with ``code`` given, the dumped word set must equal it."""
    fh, close = _open_text(src)
    mapping: dict[int, Permutation] = {}
    n = None
    try:
        for lineno, line in _content_lines(fh):
            if line.startswith("n="):
                n = int(line[2:])
                continue
            word, sep, perm = line.partition(":")
            if not sep:
                raise CodeFormatError(f"line {lineno}: expected '<codeword> : <permutation>'")
            word = word.strip()
            if n is None:
                n = len(word)
            w = _parse_word(word, n, lineno)
            try:
                p = Permutation.parse(perm)
            except ValueError as exc:
                raise CodeFormatError(f"line {lineno}: {exc}") from None
            if p.degree != n:
                raise CodeFormatError(f"line {lineno}: permutation of degree {p.degree}, expected {n}")
            if w in mapping and mapping[w] != p:
                raise CodeFormatError(f"line {lineno}: codeword assigned two permutations")
            mapping[w] = p
    finally:
        if close:
            fh.close()
    if n is None or not mapping:
        raise CodeFormatError("empty structure dump")
    if code is None:
        code = Code(n, sorted(mapping))
    elif code.length != n or set(code.words.tolist()) != set(mapping):
        raise CodeFormatError("structure dump does not cover exactly the codewords of the code")
    return PropelinearStructure.from_assignment(code, mapping)


def read_lambda(src: PathOrFile, code: Code) -> LambdaFn:
    """Parse a ``<codeword> <bit>`` table; words missing from the file map to 0."""
    fh, close = _open_text(src)
    mapping: dict[int, int] = {}
    try:
        for lineno, line in _content_lines(fh):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("0", "1"):
                raise CodeFormatError(f"line {lineno}: expected '<codeword> <0|1>'")
            w = _parse_word(parts[0], code.length, lineno)
            if w not in code:
                raise CodeFormatError(f"line {lineno}: {parts[0]} is not a codeword of the base code")
            mapping[w] = int(parts[1])
    finally:
        if close:
            fh.close()
    return LambdaFn.from_mapping(code, {w: mapping.get(w, 0) for w in code.words.tolist()})


def write_lambda(lam: LambdaFn, dst: PathOrFile) -> None:
    close = not hasattr(dst, "write")
    fh = open(dst, "w", encoding="ascii") if close else dst
    n = lam.base_code.length
    try:
        for w, b in zip(lam.base_code.words.tolist(), lam.table.tolist()):
            fh.write(f"{int_to_str(w, n)} {b}\n")
    finally:
        if close:
            fh.close()


def structure_for(code: Code, dump: Optional[PathOrFile] = None) -> PropelinearStructure:
    """A dumped structure if given, else x * y = x + y for linear codes, else the forced one."""
    if dump is not None:
        return read_structure(dump, code)
    if is_linear(code):
        return PropelinearStructure.identity(code)
    return build_normalized_propelinear(code)
