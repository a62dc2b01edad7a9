"""Finite families of subspaces and their max/min operators."""

from __future__ import annotations

from typing import Iterable, Iterator

from .lattice import Subspace, SubspaceLattice, bits, lowest


# mask-level operators, shared with the axiom checkers

def max_incl_mask(lat: SubspaceLattice, mask: int) -> int:
    out = 0
    for i in bits(mask):
        if lat.up[i] & mask == 1 << i:
            out |= 1 << i
    return out


def min_incl_mask(lat: SubspaceLattice, mask: int) -> int:
    out = 0
    for i in bits(mask):
        if lat.down[i] & mask == 1 << i:
            out |= 1 << i
    return out


def top_dim_mask(lat: SubspaceLattice, mask: int) -> int:
    """Members of mask having the largest dimension present."""
    if not mask:
        return 0
    return mask & lat.layers[lat.dims[mask.bit_length() - 1]]


def bottom_dim_mask(lat: SubspaceLattice, mask: int) -> int:
    if not mask:
        return 0
    return mask & lat.layers[lat.dims[lowest(mask)]]


class SubspaceFamily:
    """An immutable set of subspaces of one lattice, kept as a bitmask."""

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: SubspaceLattice, members: Iterable[Subspace] | int = ()):
        self.lattice = lattice
        if isinstance(members, int):
            if members < 0 or members >> lattice.size:
                raise ValueError("mask has bits outside the lattice")
            self.mask = members
        else:
            self.mask = lattice.mask(members)

    @classmethod
    def whole(cls, lattice: SubspaceLattice) -> SubspaceFamily:
        return cls(lattice, lattice.full)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.lattice.members(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, s: Subspace) -> bool:
        i = self.lattice.index.get(s)
        return i is not None and bool(self.mask >> i & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubspaceFamily):
            return NotImplemented
        lat, olat = self.lattice, other.lattice
        return (lat.q, lat.n, self.mask) == (olat.q, olat.n, other.mask)

    def __hash__(self) -> int:
        return hash((self.lattice.q, self.lattice.n, self.mask))

    def __repr__(self) -> str:
        return "{" + ", ".join(s.literal() for s in self) + "}"

    def _new(self, mask: int) -> SubspaceFamily:
        return SubspaceFamily(self.lattice, mask)

    def within(self, x: Subspace) -> SubspaceFamily:
        """Members contained in x, i.e. F cap L(x)."""
        return self._new(self.mask & self.lattice.down[self.lattice.id(x)])

    def above(self, x: Subspace) -> SubspaceFamily:
        """Members containing x, i.e. F cap [x, E]."""
        return self._new(self.mask & self.lattice.up[self.lattice.id(x)])

    def perp(self) -> SubspaceFamily:
        return self._new(self.lattice.perp_mask(self.mask))

    def downward_closure(self) -> SubspaceFamily:
        m = 0
        for i in bits(self.mask):
            m |= self.lattice.down[i]
        return self._new(m)

    def upward_closure(self) -> SubspaceFamily:
        m = 0
        for i in bits(self.mask):
            m |= self.lattice.up[i]
        return self._new(m)


def max_incl(f: SubspaceFamily) -> SubspaceFamily:
    return SubspaceFamily(f.lattice, max_incl_mask(f.lattice, f.mask))


def min_incl(f: SubspaceFamily) -> SubspaceFamily:
    return SubspaceFamily(f.lattice, min_incl_mask(f.lattice, f.mask))


def max_dim_in(x: Subspace, f: SubspaceFamily) -> SubspaceFamily:
    """Members of f inside x of maximal dimension among such members."""
    lat = f.lattice
    return SubspaceFamily(lat, top_dim_mask(lat, f.mask & lat.down[lat.id(x)]))


def min_dim_over(x: Subspace, f: SubspaceFamily) -> SubspaceFamily:
    """Members of f containing x of minimal dimension among such members."""
    lat = f.lattice
    return SubspaceFamily(lat, bottom_dim_mask(lat, f.mask & lat.up[lat.id(x)]))
