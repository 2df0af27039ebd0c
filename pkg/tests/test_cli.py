import os

import pytest

from scodes.cli import main, read_code_file, write_code_file
from scodes.constructions import linkage, single_codeword
from scodes.rankmetric import rect_mrd


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_upper(capsys):
    rc, out, _ = run(capsys, "bound", "--q", "2", "--n", "9", "--d", "6", "--k", "4", "--dir", "upper")
    assert rc == 0
    assert out.strip() == "1156"


def test_bound_lower(capsys):
    rc, out, _ = run(capsys, "bound", "--q", "2", "--n", "8", "--d", "6", "--k", "4", "--dir", "lower")
    assert rc == 0
    assert out.strip() == "257"


def test_bound_convention(capsys):
    rc, out, _ = run(capsys, "bound", "--q", "2", "--n", "4", "--d", "10", "--k", "2", "--dir", "upper")
    assert rc == 0
    assert out.strip() == "1"


def test_bound_explain_shows_provenance(capsys):
    rc, out, _ = run(capsys, "bound", "--q", "2", "--n", "7", "--d", "4", "--k", "3",
                     "--dir", "lower", "--explain")
    assert rc == 0
    assert out.splitlines()[0] == "333"
    assert "fact:lower" in out


def test_bound_no_facts(capsys):
    rc, out, _ = run(capsys, "bound", "--q", "2", "--n", "8", "--d", "6", "--k", "4",
                     "--dir", "upper", "--no-facts")
    assert rc == 0
    assert out.strip() == "289"


def test_bound_param_error(capsys):
    rc, _, err = run(capsys, "bound", "--q", "1", "--n", "8", "--d", "6", "--k", "4", "--dir", "upper")
    assert rc == 2


def test_construct_and_verify_roundtrip(tmp_path, capsys):
    path = str(tmp_path / "c.scode")
    rc, out, _ = run(capsys, "construct", "linkage", "--q", "2", "--n", "8", "--k", "4",
                     "--d", "6", "-o", path)
    assert rc == 0
    assert "257 codewords" in out
    assert "exact scan" in out
    rc, out, _ = run(capsys, "verify", path, "--expect-d", "6")
    assert rc == 0
    assert "min distance 6" in out


def test_verify_detects_failure(tmp_path, capsys):
    path = str(tmp_path / "c.scode")
    rc, _, _ = run(capsys, "construct", "spread", "--q", "2", "--n", "6", "--k", "3", "-o", path)
    assert rc == 0
    rc, _, err = run(capsys, "verify", path, "--expect-d", "8")
    assert rc == 3
    assert "FAIL" in err


def test_verify_missing_file(capsys):
    rc, _, err = run(capsys, "verify", "/nonexistent/x.scode")
    assert rc == 4


def test_verify_corrupt_file(tmp_path, capsys):
    bad = tmp_path / "bad.scode"
    bad.write_text("SCODE 1\nq=2 p=2 e=1 n=4 k=2 d=4 count=3\n1 0 0 0\n0 1 0 0\n\n", encoding="utf-8")
    rc, _, err = run(capsys, "verify", str(bad))
    assert rc == 4
    assert "data error" in err


def test_code_file_roundtrip_canonical(tmp_path):
    code = linkage(single_codeword(2, 4, 4, 6, position="left"),
                   single_codeword(2, 4, 4, 6, position="left"),
                   rect_mrd(2, 4, 4, 3))
    path = str(tmp_path / "x.scode")
    write_code_file(path, code)
    back = read_code_file(path)
    assert set(back.words) == set(code.words)
    assert (back.q, back.n, back.k, back.d) == (2, 8, 4, 6)
    # writing the parse result reproduces the file byte for byte
    path2 = str(tmp_path / "y.scode")
    write_code_file(path2, back)
    assert open(path).read() == open(path2).read()


def test_code_file_gf4_modulus_header(tmp_path):
    code = single_codeword(4, 4, 2, 4)
    path = str(tmp_path / "g.scode")
    write_code_file(path, code)
    text = open(path).read()
    assert "mod=1,1,1" in text
    back = read_code_file(path)
    assert back.words == code.words


def test_construct_ef_with_skeleton(tmp_path, capsys):
    path = str(tmp_path / "ef.scode")
    rc, out, _ = run(capsys, "construct", "ef", "--q", "2", "--n", "7", "--k", "3", "--d", "6",
                     "--skeleton", "1110000,0001101", "-o", path)
    assert rc == 0
    assert "17 codewords" in out


def test_construct_insert2(tmp_path, capsys):
    path = str(tmp_path / "i2.scode")
    rc, out, _ = run(capsys, "construct", "insert2", "--q", "2", "-o", path)
    assert rc == 0
    assert "58 codewords" in out


def test_expand_and_sharpfloor(capsys):
    rc, out, _ = run(capsys, "expand", "--value", "137", "--q", "3", "--r", "3")
    assert rc == 0
    assert out.strip() == "2 1 2 -2"
    rc, out, _ = run(capsys, "sharpfloor", "--a", "17374", "--b", "15", "--q", "2", "--r", "3")
    assert rc == 0
    assert out.strip() == "1156"


def test_table_contains_fact_row(capsys):
    rc, out, _ = run(capsys, "table", "--q", "2", "--n-max", "9", "--d", "4", "--format", "md")
    assert rc == 0
    row = next(l for l in out.splitlines() if l.startswith("| 9 | 3 |"))
    assert "| 5986 |" in row
    assert "Rules used:" in out


def test_table_csv(capsys):
    rc, out, _ = run(capsys, "table", "--q", "2", "--n-max", "6", "--d", "4", "--format", "csv")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,k,lower,lower_rule,upper,upper_rule"
    assert any(l.startswith("6,3,77,") for l in lines)


def test_packing_file_roundtrip(tmp_path):
    from scodes.cli import read_packing_file
    from scodes.constructions import find_parallelism

    par = find_parallelism(2, 4, 2)
    lines = ["SCODE 1", "q=2 p=2 e=1 n=4 k=2 d=4 count=35"]
    for i, part in enumerate(par.parts):
        lines.append(f"# part={i}")
        for w in part:
            for row in w.rref.entries:
                lines.append(" ".join(map(str, row)))
            lines.append("")
    path = tmp_path / "par.scode"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    pk = read_packing_file(str(path), 4)
    assert len(pk.parts) == 7
    assert pk.total_words() == 35


def test_packing_file_rejects_overlap(tmp_path):
    from scodes.cli import FileError, read_packing_file

    lines = ["SCODE 1", "q=2 p=2 e=1 n=4 k=2 d=4 count=2",
             "# part=0", "1 0 0 0", "0 1 0 0", "",
             "# part=1", "1 0 0 0", "0 1 0 0", ""]
    path = tmp_path / "bad.scode"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(FileError):
        read_packing_file(str(path), 4)


def write_parallelism_file(path, packing):
    lines = ["SCODE 1", f"q={packing.q} p=2 e=1 n={packing.n} k={packing.k} d=4 count={packing.total_words()}"]
    for i, part in enumerate(packing.parts):
        lines.append(f"# part={i}")
        for w in part:
            for row in w.rref.entries:
                lines.append(" ".join(map(str, row)))
            lines.append("")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_packing_env_override(tmp_path, monkeypatch, capsys):
    from scodes.cli import _packing_for
    from scodes.constructions import find_parallelism

    par = find_parallelism(2, 4, 2)
    write_parallelism_file(tmp_path / "parallelism_q2_n4_k2.scode", par)
    monkeypatch.setenv("SCODES_PACKINGS", str(tmp_path))
    pk = _packing_for(2, 4, 2, 4)
    assert len(pk.parts) == 7 and pk.total_words() == 35


def test_construct_coset_and_assemble(tmp_path, capsys):
    path = str(tmp_path / "coset.scode")
    rc, out, _ = run(capsys, "construct", "coset", "--q", "2", "-o", path)
    assert rc == 0 and "700 codewords" in out
    path2 = str(tmp_path / "asm.scode")
    rc, out, _ = run(capsys, "construct", "assemble", "--q", "2", "-o", path2,
                     "--verify-cap", "100")
    assert rc == 0
    assert "4797 codewords" in out
    assert "non-certifying" in out


def test_construct_insert1(tmp_path, capsys):
    path = str(tmp_path / "i1.scode")
    rc, out, _ = run(capsys, "construct", "insert1", "--q", "2", "-o", path)
    assert rc == 0 and "512 codewords" in out


def test_construct_unavailable_packing(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("SCODES_PACKINGS", raising=False)
    path = str(tmp_path / "c3.scode")
    rc, _, err = run(capsys, "construct", "coset", "--q", "3", "-o", path)
    assert rc == 4


def test_verify_sampled_flag(tmp_path, capsys):
    path = str(tmp_path / "s.scode")
    rc, _, _ = run(capsys, "construct", "spread", "--q", "2", "--n", "8", "--k", "2", "-o", path)
    assert rc == 0
    rc, out, _ = run(capsys, "verify", path, "--sampled", "300", "--expect-d", "4")
    assert rc == 0
    assert "non-certifying" in out


def test_construct_gen_linkage(tmp_path, capsys):
    path = str(tmp_path / "gl.scode")
    rc, out, _ = run(capsys, "construct", "gen-linkage", "--q", "2", "--n", "8", "--k", "4",
                     "--d", "4", "--split", "4", "-o", path, "--verify-cap", "100")
    assert rc == 0
    assert "4622 codewords" in out
