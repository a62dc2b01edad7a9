from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qmat.lattice import parse_subspace  # noqa: E402

CORPUS = Path(__file__).parent / "corpus"


def S(text: str, q: int = 2, n: int = 2):
    return parse_subspace(text, q, n)


@pytest.fixture
def corpus() -> Path:
    return CORPUS


@lru_cache(maxsize=None)
def all_qmatroids(q: int, n: int):
    """Every q-matroid on F_q^n, found from its independent spaces."""
    from qmat.axioms import AxiomId
    from qmat.crypto import rank_from_independent
    from qmat.family import SubspaceFamily
    from qmat.lattice import get_lattice
    from qmat.qmatroid import make_qmatroid
    from qmat.verify import family_masks, satisfies

    lat = get_lattice(q, n)
    axioms = (AxiomId.I1, AxiomId.I2, AxiomId.I4)
    return tuple(make_qmatroid(rank_from_independent(SubspaceFamily(lat, m)))
                 for m in family_masks(lat, "downward-closed") if satisfies(lat, axioms, m))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
