import os

import pytest

from propelinear import hamming_code, write_code
from propelinear.database import IngestError, ingest, read_manifest, survey
from propelinear.errors import CodeFormatError


@pytest.fixture
def manifest(tmp_path, h7, twisted8):
    write_code(h7, tmp_path / "h7.txt")
    write_code(twisted8, tmp_path / "t8.txt")
    write_code(hamming_code(4), tmp_path / "h15.txt")
    m = tmp_path / "codes.tsv"
    m.write_text(
        "# id path invariants\n"
        "h7\th7.txt\tperfect=1,rank=4,kernel=4,sym=168,transitive=yes\n"
        "t8\tt8.txt\trank=8,kernel_dim=1,sym_order=1,transitive=true\n"
        "h15\th15.txt\trank=11\n"
    )
    return m


def test_ingest_full(manifest):
    db = ingest(str(manifest))
    assert [d.code_id for d in db] == ["h7", "t8", "h15"]
    assert db[0].verified == {"perfect": True, "rank": 4, "kernel_dim": 4, "sym_order": 168, "transitive": True}


def test_ingest_sample_checks_cheap_keys_everywhere(manifest):
    db = ingest(str(manifest), verify="sample", seed=3, sample_fraction=0.01)
    costly = [d for d in db if "sym_order" in d.verified]
    assert len(costly) <= 1
    assert all("rank" in d.verified for d in db)
    db = ingest(str(manifest), verify="sample", sample_fraction=1.0)
    assert [d.verified == {k: d.declared[k] for k in d.declared} for d in db] == [True] * 3


def test_ingest_mismatch(manifest):
    manifest.write_text(manifest.read_text().replace("rank=8", "rank=7"))
    with pytest.raises(IngestError, match="t8"):
        ingest(str(manifest))


def test_manifest_errors(tmp_path):
    m = tmp_path / "bad.tsv"
    m.write_text("a\tx.txt\tcolour=red\n")
    with pytest.raises(CodeFormatError, match="line 1"):
        read_manifest(str(m))
    m.write_text("a\tx.txt\na\ty.txt\n")
    with pytest.raises(CodeFormatError, match="duplicate"):
        read_manifest(str(m))


def test_survey(manifest):
    sv = survey(ingest(str(manifest)))
    assert sv.total == 3
    assert sv.transitive_trivial_sym == ["t8"]
    assert sv.rank_counts == {8: 1}
    assert sv.full_rank == ["t8"]
    assert any("trivial symmetry group: 1" in line for line in sv.lines())


DB = os.environ.get("PROPELINEAR_DB15")


@pytest.mark.skipif(not DB, reason="set PROPELINEAR_DB15 to a length-15 code manifest")
def test_external_length15_database():
    sv = survey(ingest(DB, verify="sample"))
    assert len(sv.transitive_trivial_sym) == 44
    assert len(sv.full_rank) == 39
    assert len(sv.full_rank_lifts) == 3
