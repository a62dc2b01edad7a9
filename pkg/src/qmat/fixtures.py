"""Canned documents with their expected axiom tables.

Every fixture carries a family ``I`` of independent spaces.  Fixtures that
are q-matroids also carry their bases ``B``, spanning spaces ``S`` and the
rank section.  On F_2^2 the atoms are x = 10, y = 01 and z = 11.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .axioms import (BASIS_AXIOMS, INDEPENDENCE_AXIOMS, RANK_AXIOMS, SPANNING_AXIOMS, AxiomId,
                     Mode, check)
from .cli import Document, render
from .crypto import rank_from_independent
from .family import SubspaceFamily
from .lattice import get_lattice, parse_subspace
from .qmatroid import (QMatroid, bases, independent_spaces, make_qmatroid, spanning_spaces,
                       uniform)

TARGET_AXIOMS = {"I": INDEPENDENCE_AXIOMS, "B": BASIS_AXIOMS, "S": SPANNING_AXIOMS,
                 "rank": RANK_AXIOMS}


@dataclass(frozen=True)
class Fixture:
    """A document plus the expected outcome of each (target, axiom) check.

    The target ``rank`` means the rank section when present and otherwise
    the rank derived from ``I``.
    """

    name: str
    document: Document
    expected: dict[tuple[str, AxiomId], bool] = field(hash=False)
    qmatroid: QMatroid | None = None

    def text(self) -> str:
        return render(self.document)

    def target(self, key: str):
        doc = self.document
        if key == "rank":
            return doc.rank if doc.rank is not None else rank_from_independent(
                doc.families["I"], check=False)
        return doc.families[key]

    def evaluate(self, mode: Mode = Mode.DIMENSION) -> dict[tuple[str, AxiomId], bool]:
        return {(t, ax): check(ax, self.target(t), mode).passed for t, ax in self.expected}


def _family(q: int, n: int, literals) -> SubspaceFamily:
    return SubspaceFamily(get_lattice(q, n), [parse_subspace(s, q, n) for s in literals])


def _all_pass(targets) -> dict[tuple[str, AxiomId], bool]:
    return {(t, ax): True for t in targets for ax in TARGET_AXIOMS[t]}


def _from_qmatroid(name: str, m: QMatroid) -> Fixture:
    doc = Document(m.q, m.n, {"I": independent_spaces(m), "B": bases(m),
                              "S": spanning_spaces(m)}, m.rank)
    return Fixture(name, doc, _all_pass(TARGET_AXIOMS), m)


def paper_counterexample() -> Fixture:
    """{0, x} on F_2^2: (I1)-(I3) hold, (I4) fails, so it is not a q-matroid."""
    doc = Document(2, 2, {"I": _family(2, 2, ["0", "10"])})
    expected = _all_pass(["I", "rank"])
    for key in [("I", AxiomId.I4), ("I", AxiomId.I4pp), ("I", AxiomId.nI3),
                ("rank", AxiomId.R3)]:
        expected[key] = False
    return Fixture("paper_counterexample", doc, expected)


def mixed_diamond() -> Fixture:
    """Independents {0, x, y}: rank 1 with the single loop z."""
    indep = _family(2, 2, ["0", "10", "01"])
    return _from_qmatroid("mixed_diamond", make_qmatroid(rank_from_independent(indep)))


def _uniform_fixture(name, k, n, q):
    return _from_qmatroid(name, uniform(k, n, q))


FIXTURES = {
    "paper_counterexample": lambda: paper_counterexample(),
    "mixed_diamond": lambda: mixed_diamond(),
    "free": lambda q=2, n=3: _uniform_fixture("free", n, n, q),
    "zero": lambda q=2, n=2: _uniform_fixture("zero", 0, n, q),
    "uniform": lambda k=1, n=2, q=2: _uniform_fixture("uniform", k, n, q),
}

#: Files shipped in the test corpus, built from the fixtures above.
CORPUS = {
    "paper_counterexample.qm": ("paper_counterexample", {}),
    "mixed_diamond.qm": ("mixed_diamond", {}),
    "free_2_3.qm": ("free", {"q": 2, "n": 3}),
    "zero_3_2.qm": ("zero", {"q": 3, "n": 2}),
    "uniform_1_2_2.qm": ("uniform", {"k": 1, "n": 2, "q": 2}),
    "uniform_2_4_2.qm": ("uniform", {"k": 2, "n": 4, "q": 2}),
}


def fixture(name: str, **params) -> Fixture:
    try:
        make = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
    return make(**params)


def write_corpus(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for filename, (name, params) in CORPUS.items():
        path = directory / filename
        path.write_text(fixture(name, **params).text(), encoding="utf-8")
        written.append(path)
    return written
