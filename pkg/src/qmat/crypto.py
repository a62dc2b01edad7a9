"""Conversions between rank functions and independent, basis and spanning
families.

Each conversion checks the axioms its input must satisfy and raises
:class:`~qmat.axioms.AxiomViolation` otherwise.  Pass ``check=False`` to
convert families that are known not to come from a q-matroid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .axioms import AxiomId, AxiomViolation, RANK_AXIOMS
from .axioms import check as check_axiom
from .family import SubspaceFamily, max_incl, min_incl, top_dim_mask
from .qmatroid import RankFunction, independent_spaces

KINDS = ("rank", "independent", "bases", "spanning")

PRECONDITIONS = {
    "rank": RANK_AXIOMS,
    "independent": (AxiomId.I1, AxiomId.I2, AxiomId.nI3),
    "bases": (AxiomId.B1, AxiomId.B2, AxiomId.nB3),
    "spanning": (AxiomId.S1, AxiomId.S2, AxiomId.nS3),
}

Payload = Union[RankFunction, SubspaceFamily]


def require(axioms, target) -> None:
    for ax in axioms:
        rep = check_axiom(ax, target)
        if not rep.passed:
            raise AxiomViolation(rep)


def rank_from_independent(f: SubspaceFamily, check: bool = True) -> RankFunction:
    """r(A) = largest dimension of a member of f inside A."""
    if check:
        require((AxiomId.I1, AxiomId.I2), f)
    lat = f.lattice
    values = []
    for i in range(lat.size):
        m = top_dim_mask(lat, f.mask & lat.down[i])
        values.append(lat.dims[m.bit_length() - 1] if m else 0)
    return RankFunction(lat, values)


def independent_from_rank(r: RankFunction, check: bool = True) -> SubspaceFamily:
    if check:
        require(RANK_AXIOMS, r)
    return independent_spaces(r)


def bases_from_independent(f: SubspaceFamily, check: bool = True) -> SubspaceFamily:
    if check:
        require(PRECONDITIONS["independent"], f)
    return max_incl(f)


def independent_from_bases(f: SubspaceFamily, check: bool = True) -> SubspaceFamily:
    if check:
        require(PRECONDITIONS["bases"], f)
    return f.downward_closure()


def spanning_from_bases(f: SubspaceFamily, check: bool = True) -> SubspaceFamily:
    if check:
        require(PRECONDITIONS["bases"], f)
    return f.upward_closure()


def bases_from_spanning(f: SubspaceFamily, check: bool = True) -> SubspaceFamily:
    if check:
        require(PRECONDITIONS["spanning"], f)
    return min_incl(f)


@dataclass(frozen=True)
class Presentation:
    """A q-matroid given by one of its cryptomorphic descriptions."""

    kind: str
    payload: Payload

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        require(PRECONDITIONS[self.kind], self.payload)

    def to(self, kind: str) -> Presentation:
        return Presentation(kind, convert(self.kind, kind, self.payload))


def convert(src: str, dst: str, payload: Payload, check: bool = True) -> Payload:
    """Route any conversion through rank -> independent -> bases -> spanning."""
    if src not in KINDS or dst not in KINDS:
        raise ValueError(f"kinds must be among {KINDS}")
    if check:
        require(PRECONDITIONS[src], payload)
    # walk to the independent family first
    if src == "rank":
        indep = independent_from_rank(payload, check=False)
    elif src == "independent":
        indep = payload
    elif src == "bases":
        indep = independent_from_bases(payload, check=False)
    else:
        indep = independent_from_bases(bases_from_spanning(payload, check=False), check=False)
    if dst == "independent":
        return indep
    if dst == "rank":
        return rank_from_independent(indep, check=False)
    b = bases_from_independent(indep, check=False)
    if dst == "bases":
        return b
    return spanning_from_bases(b, check=False)
