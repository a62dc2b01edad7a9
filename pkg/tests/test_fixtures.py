import pytest

from conftest import CORPUS
from qmat.axioms import AxiomId
from qmat.fixtures import CORPUS as CORPUS_FILES, FIXTURES, fixture, write_corpus
from qmat.qmatroid import are_isomorphic, loop_space, loops


@pytest.mark.parametrize("filename", sorted(CORPUS_FILES))
def test_expected_tables_match_live_checkers(filename):
    name, params = CORPUS_FILES[filename]
    fx = fixture(name, **params)
    assert fx.evaluate() == fx.expected


@pytest.mark.parametrize("filename", sorted(CORPUS_FILES))
def test_shipped_files_match_fixtures(filename):
    name, params = CORPUS_FILES[filename]
    assert (CORPUS / filename).read_text(encoding="utf-8") == fixture(name, **params).text()


def test_write_corpus(tmp_path):
    paths = write_corpus(tmp_path)
    assert sorted(p.name for p in paths) == sorted(CORPUS_FILES)


def test_counterexample_table():
    fx = fixture("paper_counterexample")
    failing = {ax for (_, ax), ok in fx.expected.items() if not ok}
    assert failing == {AxiomId.I4, AxiomId.I4pp, AxiomId.nI3, AxiomId.R3}
    assert fx.qmatroid is None


def test_mixed_diamond():
    m = fixture("mixed_diamond").qmatroid
    assert [s.literal() for s in loops(m)] == ["11"]
    assert loop_space(m).literal() == "11"


def test_parametrized_fixtures():
    assert fixture("free", q=3, n=2).qmatroid.rank.values == (0, 1, 1, 1, 1, 2)
    assert all(v == 0 for v in fixture("zero").qmatroid.rank.values)
    assert are_isomorphic(fixture("uniform").qmatroid, fixture("uniform", k=1, n=2, q=2).qmatroid)
    assert set(FIXTURES) == {"paper_counterexample", "mixed_diamond", "free", "zero", "uniform"}
    with pytest.raises(KeyError):
        fixture("nope")
