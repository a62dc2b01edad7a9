"""Rank functions, q-matroids, and the operations on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .axioms import AxiomReport, AxiomViolation, RANK_AXIOMS, check_rank_axiom
from .family import SubspaceFamily, max_incl
from .lattice import (Embedding, LatticeError, QuotientMap, Subspace, SubspaceLattice,
                      automorphisms, bits, get_lattice)


class RankFunction:
    """A total map from the subspaces of one lattice to non-negative ints.

    ``values[i]`` is the rank of ``lattice[i]``.
    """

    __slots__ = ("lattice", "values")

    def __init__(self, lattice: SubspaceLattice, values):
        values = tuple(values)
        if len(values) != lattice.size:
            raise ValueError(f"rank needs {lattice.size} values, got {len(values)}")
        self.lattice = lattice
        self.values = values

    @classmethod
    def from_mapping(cls, lattice: SubspaceLattice, mapping: Mapping[Subspace, int]) -> RankFunction:
        missing = [s for s in lattice if s not in mapping]
        if missing:
            raise ValueError(f"rank is not total: no value for {missing[0].literal()}")
        extra = [s for s in mapping if s not in lattice.index]
        if extra:
            raise ValueError(f"{extra[0]!r} is not in the lattice")
        return cls(lattice, (mapping[s] for s in lattice))

    @classmethod
    def from_function(cls, lattice: SubspaceLattice, fn: Callable[[Subspace], int]) -> RankFunction:
        return cls(lattice, (fn(s) for s in lattice))

    def __call__(self, s: Subspace) -> int:
        return self.values[self.lattice.id(s)]

    def items(self):
        return zip(self.lattice.subspaces, self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankFunction):
            return NotImplemented
        lat, olat = self.lattice, other.lattice
        return (lat.q, lat.n, self.values) == (olat.q, olat.n, other.values)

    def __hash__(self) -> int:
        return hash((self.lattice.q, self.lattice.n, self.values))

    def __repr__(self) -> str:
        body = ", ".join(f"{s.literal()}: {v}" for s, v in self.items())
        return f"RankFunction({{{body}}})"


@dataclass(frozen=True)
class QMatroid:
    """A rank function already checked against (R1)-(R3).

    Build one with :func:`make_qmatroid`; the constructor does not validate.
    """

    rank: RankFunction

    @property
    def lattice(self) -> SubspaceLattice:
        return self.rank.lattice

    @property
    def q(self) -> int:
        return self.rank.lattice.q

    @property
    def n(self) -> int:
        return self.rank.lattice.n

    def r(self, s: Subspace) -> int:
        return self.rank(s)

    def __repr__(self) -> str:
        return f"QMatroid(q={self.q}, n={self.n}, rank={self.rank.values})"


def rank_reports(rank: RankFunction) -> list[AxiomReport]:
    return [check_rank_axiom(ax, rank) for ax in RANK_AXIOMS]


def make_qmatroid(rank: RankFunction) -> QMatroid:
    """Validate (R1)-(R3); raise :class:`AxiomViolation` on the first failure."""
    for rep in rank_reports(rank):
        if not rep.passed:
            raise AxiomViolation(rep)
    return QMatroid(rank)


def _lattice(q: int, n: int) -> SubspaceLattice:
    return get_lattice(q, n)


def uniform(k: int, n: int, q: int) -> QMatroid:
    """The uniform q-matroid with r(A) = min(k, dim A)."""
    if not 0 <= k <= n:
        raise ValueError(f"uniform rank {k} outside [0, {n}]")
    lat = _lattice(q, n)
    return make_qmatroid(RankFunction(lat, (min(k, d) for d in lat.dims)))


def free(q: int, n: int) -> QMatroid:
    return uniform(n, n, q)


def zero_qmatroid(q: int, n: int) -> QMatroid:
    return uniform(0, n, q)


MatroidLike = Union[QMatroid, RankFunction]


def _rank(m: MatroidLike) -> RankFunction:
    return m.rank if isinstance(m, QMatroid) else m


def independent_spaces(m: MatroidLike) -> SubspaceFamily:
    r = _rank(m)
    lat = r.lattice
    return SubspaceFamily(lat, sum(1 << i for i in range(lat.size) if r.values[i] == lat.dims[i]))


def dependent_spaces(m: MatroidLike) -> SubspaceFamily:
    r = _rank(m)
    return SubspaceFamily(r.lattice, r.lattice.full & ~independent_spaces(r).mask)


def spanning_spaces(m: MatroidLike) -> SubspaceFamily:
    r = _rank(m)
    top = r.values[-1]
    return SubspaceFamily(r.lattice, sum(1 << i for i, v in enumerate(r.values) if v == top))


def bases(m: MatroidLike) -> SubspaceFamily:
    return max_incl(independent_spaces(m))


def loops(m: MatroidLike) -> SubspaceFamily:
    r = _rank(m)
    lat = r.lattice
    return SubspaceFamily(lat, sum(1 << a for a in lat.atom_ids if r.values[a] == 0))


class LoopSpaceError(ValueError):
    """The loops do not fill out a subspace; impossible for a q-matroid."""


def loop_space(m: MatroidLike) -> Subspace:
    """Sum of all loops, checked to have only loops as 1-dim subspaces."""
    r = _rank(m)
    lat = r.lattice
    found = loops(r)
    space = 0
    for a in bits(found.mask):
        space = lat.join(space, a)
    stray = lat.down[space] & lat.layers[1] & ~found.mask
    if stray:
        x = lat[(stray & -stray).bit_length() - 1]
        raise LoopSpaceError(f"{x.literal()} lies in the span of the loops but has rank "
                             f"{r(x)}")
    return lat[space]


def dual_rank(r: RankFunction) -> RankFunction:
    lat = r.lattice
    top = r.values[-1]
    return RankFunction(lat, (lat.dims[i] - top + r.values[lat.perp_ids[i]]
                              for i in range(lat.size)))


def dual(m: QMatroid) -> QMatroid:
    """r*(A) = dim A - r(E) + r(A^perp)."""
    return make_qmatroid(dual_rank(m.rank))


def restriction(m: QMatroid, x: Subspace) -> QMatroid:
    """M|X on F_q^(dim X), coordinatised by the RREF basis of X."""
    emb = Embedding(x)
    lat = _lattice(m.q, x.dim)
    return make_qmatroid(RankFunction.from_function(lat, lambda w: m.rank(emb.push(w))))


def contraction(m: QMatroid, x: Subspace) -> QMatroid:
    """M/X on F_q^(n - dim X), through :class:`QuotientMap`."""
    pi = QuotientMap(x)
    rx = m.rank(x)
    lat = _lattice(m.q, pi.m)
    return make_qmatroid(RankFunction.from_function(lat, lambda w: m.rank(pi.pull(w)) - rx))


ISO_MAX_N = 3
ISO_FIELDS = (2, 3)


def _check_iso_guard(lat: SubspaceLattice) -> None:
    if lat.n > ISO_MAX_N or lat.q not in ISO_FIELDS:
        raise LatticeError(f"isomorphism search is limited to n <= {ISO_MAX_N}, "
                           f"q in {ISO_FIELDS}; got q={lat.q}, n={lat.n}")


def are_isomorphic(m1: MatroidLike, m2: MatroidLike) -> bool:
    r1, r2 = _rank(m1), _rank(m2)
    lat = r1.lattice
    if (lat.q, lat.n) != (r2.lattice.q, r2.lattice.n):
        return False
    _check_iso_guard(lat)
    if sorted(r1.values) != sorted(r2.values) or r1.values[-1] != r2.values[-1]:
        return False
    v1, v2 = r1.values, r2.values
    return any(all(v1[i] == v2[p[i]] for i in range(lat.size)) for p in automorphisms(lat))


def isomorphism_key(lat: SubspaceLattice, mask: int) -> int:
    """Smallest image of a family bitmask under the automorphism group."""
    _check_iso_guard(lat)
    best = None
    for p in automorphisms(lat):
        img = 0
        for i in bits(mask):
            img |= 1 << p[i]
        if best is None or img < best:
            best = img
    return best


def families_isomorphic(f1: SubspaceFamily, f2: SubspaceFamily) -> bool:
    if (f1.lattice.q, f1.lattice.n) != (f2.lattice.q, f2.lattice.n):
        return False
    return isomorphism_key(f1.lattice, f1.mask) == isomorphism_key(f2.lattice, f2.mask)


__all__ = [
    "RankFunction", "QMatroid", "make_qmatroid", "uniform", "free", "zero_qmatroid",
    "independent_spaces", "dependent_spaces", "spanning_spaces", "bases", "loops",
    "loop_space", "LoopSpaceError", "dual", "dual_rank", "restriction", "contraction",
    "are_isomorphic", "isomorphism_key", "families_isomorphic",
]
