import subprocess
import sys

import pytest

from conftest import CORPUS, S
from qmat.cli import Document, DocumentError, main, parse, render
from qmat.family import SubspaceFamily
from qmat.fixtures import CORPUS as CORPUS_FILES
from qmat.lattice import get_lattice
from qmat.qmatroid import dual, uniform

CE = str(CORPUS / "paper_counterexample.qm")
MIXED = str(CORPUS / "mixed_diamond.qm")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- documents

def test_parse_family_document():
    doc = parse("ground q=2 n=2\n[family I]\n0\n10\n")
    assert (doc.q, doc.n) == (2, 2) and doc.rank is None
    assert doc.families["I"] == SubspaceFamily(get_lattice(2, 2), [S("0"), S("10")])


def test_empty_family_section():
    doc = parse("ground q=3 n=2\n[family F]\n")
    assert len(doc.families["F"]) == 0


def test_comments_blank_lines_and_crlf():
    text = "# header next\r\n\r\nground q=2 n=2   # trailing\r\n[family I]\r\n 0 \r\n10 # x\r\n"
    assert parse(text).families["I"] == parse("ground q=2 n=2\n[family I]\n0\n10\n").families["I"]


def test_generators_are_canonicalized():
    doc = parse("ground q=3 n=2\n[family F]\n22\n20 01\n")
    assert [s.literal() for s in doc.families["F"]] == ["11", "10 01"]


@pytest.mark.parametrize("text,line,fragment", [
    ("ground q=2 n=2\n[family I]\n102\n", 3, "digits"),
    ("ground q=2 n=2\n[family I]\n12\n", 3, "digit"),
    ("ground q=4 n=2\n", 1, "prime"),
    ("grund q=2 n=2\n", 1, "ground"),
    ("[family I]\n", 1, "ground"),
    ("ground q=2 n=2\n0\n", 2, "outside"),
    ("ground q=2 n=2\n[family 1x]\n", 2, "name"),
    ("ground q=2 n=2\n[family I]\n[family I]\n", 3, "duplicate family"),
    ("ground q=2 n=2\n[family I]\n10\n# c\n10\n", 5, "duplicate subspace"),
    ("ground q=3 n=2\n[family I]\n10\n20\n", 4, "duplicate subspace"),
    ("ground q=2 n=2\n[circuits]\n", 2, "unknown section"),
    ("ground q=2 n=2\n[rank]\n0 = 0\n", 2, "not total"),
    ("ground q=2 n=2\n[rank]\n0 = x\n", 3, "nonneg"),
    ("ground q=2 n=2\n[rank]\n0 = -1\n", 3, "nonneg"),
    ("ground q=2 n=2\n[rank]\n0 = 0\n00 = 0\n", 4, "duplicate rank"),
    ("ground q=2 n=2\n[rank]\n[rank]\n", 3, "duplicate [rank]"),
])
def test_parse_errors_name_the_line(text, line, fragment):
    with pytest.raises(DocumentError) as err:
        parse(text)
    assert err.value.line == line
    assert f"line {line}:" in str(err.value) and fragment in str(err.value)


def test_missing_header():
    with pytest.raises(DocumentError):
        parse("# nothing\n")


def test_rank_section_round_trip():
    m = uniform(1, 3, 2)
    doc = Document(2, 3, {"B": SubspaceFamily(m.lattice, [S("100", 2, 3)])}, m.rank)
    text = render(doc)
    again = parse(text)
    assert again.rank == m.rank and again.families == doc.families
    assert render(again) == text


@pytest.mark.parametrize("filename", sorted(CORPUS_FILES))
def test_corpus_round_trip(filename):
    text = (CORPUS / filename).read_text(encoding="utf-8")
    assert render(parse(text)) == text


# ---------------------------------------------------------------- commands

def test_check_reports_i4_failure(capsys):
    code, out, _ = run(capsys, "check", "--file", CE, "--family", "I",
                       "--axioms", "I1,I2,I3,I4")
    assert code == 1
    assert out.splitlines() == ["I1 PASS", "I2 PASS", "I3 PASS", "I4 FAIL A=01 B=11 I=0 J=0"]


def test_check_derived_rank(capsys):
    code, out, _ = run(capsys, "check", "--file", CE, "--axioms", "R1,R2,R3")
    assert code == 1 and out.splitlines()[-1] == "R3 FAIL A=01 B=11"


def test_check_passing(capsys):
    code, out, _ = run(capsys, "check", "--file", MIXED, "--family", "B",
                       "--axioms", "B1,B2,B3,B4,nB3", "--mode", "inclusion")
    assert code == 0 and out.count("PASS") == 5
    code, out, _ = run(capsys, "check", "--file", MIXED, "--axioms", "R1,R2,R3")
    assert code == 0


def test_check_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "check", "--file", str(tmp_path / "nope.qm"), "--axioms", "I1")
    assert code == 2 and out == "" and "nope.qm" in err


def test_check_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.qm"
    bad.write_text("ground q=2 n=2\n[family I]\n102\n")
    code, _, err = run(capsys, "check", "--file", str(bad), "--axioms", "I1")
    assert code == 2 and "line 3" in err
    assert run(capsys, "check", "--file", MIXED, "--axioms", "I1")[0] == 2  # ambiguous family
    assert run(capsys, "check", "--file", CE, "--family", "Q", "--axioms", "I1")[0] == 2
    assert run(capsys, "check", "--file", CE, "--axioms", "I7")[0] == 2
    assert run(capsys, "check", "--file", CE)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--file", MIXED, "--family", "I",
                       "--from", "independent", "--to", "bases")
    assert code == 0
    assert out == "ground q=2 n=2\n[family bases]\n01\n10\n"
    code, out, _ = run(capsys, "derive", "--file", MIXED, "--from", "rank", "--to", "spanning",
                       "--name", "S")
    assert code == 0 and parse(out).families["S"] == parse(open(MIXED).read()).families["S"]
    code, out, _ = run(capsys, "derive", "--file", CE, "--from", "independent", "--to", "rank")
    assert code == 1 and out.startswith("nI3 FAIL")
    code, out, _ = run(capsys, "derive", "--file", CE, "--from", "independent", "--to", "rank",
                       "--no-check")
    assert code == 0 and parse(out).rank is not None
    assert run(capsys, "derive", "--file", CE, "--from", "rank", "--to", "bases")[0] == 2


def test_dual(capsys):
    code, out, _ = run(capsys, "dual", "--file", str(CORPUS / "uniform_2_4_2.qm"))
    assert code == 0 and parse(out).rank == dual(uniform(2, 4, 2)).rank
    code, out, _ = run(capsys, "dual", "--file", CE, "--family", "I")
    assert code == 1 and out.startswith("R3 FAIL")


def test_minor(capsys):
    code, out, _ = run(capsys, "minor", "--file", str(CORPUS / "free_2_3.qm"),
                       "--restrict", "100,010")
    assert code == 0 and parse(out).rank == uniform(2, 2, 2).rank
    code, out, _ = run(capsys, "minor", "--file", MIXED, "--contract", "10")
    doc = parse(out)
    assert (doc.q, doc.n) == (2, 1) and doc.rank.values == (0, 0)
    assert run(capsys, "minor", "--file", MIXED, "--contract", "1")[0] == 2
    assert run(capsys, "minor", "--file", MIXED)[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "2")
    assert code == 0 and out.split("\n")[:-1] == ["0", "01", "10", "11", "10 01"]
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "3", "--dim", "1")
    assert len(out.splitlines()) == 7
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "2", "--census", "I1,I2,I4")
    assert out.strip().endswith(": 6")
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "2", "--census", "I1,I2,I4",
                       "--up-to-iso")
    assert out.strip().endswith(": 4")
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "2", "--families", "antichain")
    assert out.splitlines()[-1] == "# 10 families"
    assert run(capsys, "enumerate", "--q", "4", "--n", "2")[0] == 2


def test_mine(capsys):
    code, out, _ = run(capsys, "mine", "--satisfy", "I1,I2,I3", "--violate", "I4",
                       "--q", "2", "--n", "2", "--up-to-iso")
    assert code == 1 and list(parse(out).families) == ["M1"]
    code, out, _ = run(capsys, "mine", "--satisfy", "I1,I2,I4", "--violate", "I3",
                       "--q", "2", "--n", "2")
    assert code == 0 and "no family" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "T1", "--q", "2", "--n", "2")
    assert code == 0
    assert out.splitlines()[-1] == "RESULT T1 checked=6 violations=0 seed=none"
    code, out, _ = run(capsys, "verify", "--theorem", "T12", "--q", "2", "--n", "3",
                       "--search", "sampled", "--samples", "50", "--seed", "3")
    assert code == 0
    assert [l.split()[1] for l in out.splitlines() if l.startswith("RESULT")] == ["T12a", "T12b"]
    assert "seed=3" in out
    code, out, _ = run(capsys, "verify", "--theorem", "T7", "--q", "2", "--n", "2")
    assert code == 1 and "violations=3" in out
    assert run(capsys, "verify", "--theorem", "T0", "--q", "2", "--n", "2")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmat.cli", "verify", "--theorem", "T1",
                           "--q", "2", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "RESULT T1" in proc.stdout
