import io
import json

import numpy as np
import pytest

from propelinear import (
    CodeFormatError,
    LambdaFn,
    PropelinearStructure,
    hamming_code,
    read_code,
    read_lambda,
    read_structure,
    vasiliev,
    write_code,
    write_lambda,
    write_structure,
)
from propelinear import descriptor as desc
from propelinear.fileio import code_to_text, structure_for
from propelinear.structure import build_normalized_propelinear


def test_code_roundtrip(h7, tmp_path):
    p = tmp_path / "h7.txt"
    write_code(h7, p)
    text = p.read_text()
    assert text.startswith("n=7\n")
    assert "1110000" in text.splitlines()
    assert read_code(p) == h7


def test_stream_written_in_chunks(h7):
    st = vasiliev(h7, emit_stream=True)
    c = read_code(io.StringIO(code_to_text(st)))
    assert c == vasiliev(h7)


@pytest.mark.parametrize(
    "text, match",
    [
        ("0000\n", "n=<length>"),
        ("n=4\n000\n", "line 2"),
        ("n=4\n0000\n0020\n", "line 3"),
        ("n=3\n111\n", "all-zero"),
        ("n=3\n# only comments\n", "no codewords"),
    ],
)
def test_read_errors(text, match):
    with pytest.raises(CodeFormatError, match=match):
        read_code(io.StringIO(text))


def test_comments_and_name():
    c = read_code(io.StringIO("# hdr\nn=3\nname=rep\n000 # zero\n\n111\n"))
    assert c.name == "rep" and c.size == 2


def test_structure_roundtrip(twisted8):
    s = build_normalized_propelinear(twisted8)
    buf = io.StringIO()
    write_structure(s, buf)
    back = read_structure(io.StringIO(buf.getvalue()), twisted8)
    assert back.assignment() == s.assignment()
    assert read_structure(io.StringIO(buf.getvalue())).code == twisted8


def test_structure_must_cover_code(h7):
    s = PropelinearStructure.identity(h7)
    buf = io.StringIO()
    write_structure(s, buf)
    lines = buf.getvalue().splitlines()[:-1]
    with pytest.raises(CodeFormatError):
        read_structure(io.StringIO("\n".join(lines)), h7)


def test_lambda_roundtrip(h7):
    lam = LambdaFn.random(h7, np.random.default_rng(4))
    buf = io.StringIO()
    write_lambda(lam, buf)
    assert read_lambda(io.StringIO(buf.getvalue()), h7).table.tolist() == lam.table.tolist()
    with pytest.raises(CodeFormatError):
        read_lambda(io.StringIO("1000000 1\n"), h7)


def test_structure_for(h7, twisted8):
    assert structure_for(h7).perms == PropelinearStructure.identity(h7).perms
    assert len(set(structure_for(twisted8).perms)) == 8


def test_descriptor_replay(h7, tmp_path):
    p = tmp_path / "base.txt"
    write_code(h7, p)
    lam = LambdaFn.random(h7, np.random.default_rng(9))
    doc = {
        "construction": "mollard",
        "t": {"construction": "hamming", "m": 2},
        "m": {
            "construction": "vasiliev",
            "base": desc.file_descriptor(str(p), h7),
            "lambda": desc.lambda_descriptor(lam),
        },
    }
    doc = json.loads(desc.dumps(doc))
    inner = desc.build(doc["m"])
    assert inner == vasiliev(h7, lam)
    out = desc.build(doc, emit_stream=True)
    assert out.length == 3 * 15 + 3 + 15


def test_descriptor_detects_changed_file(h7, tmp_path):
    p = tmp_path / "base.txt"
    write_code(h7, p)
    d = desc.file_descriptor(str(p), h7)
    write_code(hamming_code(2), p)
    with pytest.raises(CodeFormatError, match="changed"):
        desc.build(d)
