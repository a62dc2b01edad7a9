"""Checkers for the rank, independence, basis and spanning space axioms.

Every checker scans its quantifiers in the canonical lattice order and
returns the first violating tuple it meets, so a failing report is
reproducible.  The fast paths work on bitmasks over lattice indices;
:func:`replay` re-evaluates a witness directly from the definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Callable, Union

from .family import (SubspaceFamily, bottom_dim_mask, max_incl_mask, min_incl_mask,
                     top_dim_mask)
from .lattice import Subspace, SubspaceLattice, bits, intersect, span_sum, contains

if TYPE_CHECKING:
    from .qmatroid import RankFunction


class AxiomId(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"
    I4 = "I4"
    I4pp = "I4pp"
    nI3 = "nI3"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B4p = "B4p"
    B4pp = "B4pp"
    nB3 = "nB3"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    nS3 = "nS3"

    def __str__(self) -> str:
        return self.value

    @property
    def kind(self) -> str:
        return _KIND[self.value.lstrip("n")[0]]


_KIND = {"R": "rank", "I": "independent", "B": "bases", "S": "spanning"}

RANK_AXIOMS = (AxiomId.R1, AxiomId.R2, AxiomId.R3)
INDEPENDENCE_AXIOMS = (AxiomId.I1, AxiomId.I2, AxiomId.I3, AxiomId.I4, AxiomId.I4pp, AxiomId.nI3)
BASIS_AXIOMS = (AxiomId.B1, AxiomId.B2, AxiomId.B3, AxiomId.B4, AxiomId.B4p, AxiomId.B4pp,
                AxiomId.nB3)
SPANNING_AXIOMS = (AxiomId.S1, AxiomId.S2, AxiomId.S3, AxiomId.S4, AxiomId.nS3)


def parse_axioms(text: str) -> list[AxiomId]:
    """Comma separated ids, e.g. ``I1,I2,nI3``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(AxiomId(tok))
        except ValueError:
            raise ValueError(f"unknown axiom {tok!r}") from None
    return out


class Mode(str, Enum):
    """How "maximal" (or "minimal") members are selected."""

    DIMENSION = "dimension"
    INCLUSION = "inclusion"

    def __str__(self) -> str:
        return self.value


Witness = tuple[tuple[str, Subspace], ...]


@dataclass(frozen=True)
class AxiomReport:
    axiom: AxiomId
    passed: bool
    witness: Witness | None = None
    mode: Mode = Mode.DIMENSION

    def __bool__(self) -> bool:
        return self.passed

    def roles(self) -> dict[str, Subspace]:
        return dict(self.witness or ())

    def line(self) -> str:
        if self.passed:
            return f"{self.axiom} PASS"
        parts = [f"{self.axiom} FAIL"]
        for role, s in self.witness or ():
            parts.append(f"{role}={witness_literal(s)}")
        return " ".join(parts)


def witness_literal(s: Subspace) -> str:
    """Subspace literal with rows joined by commas, so it stays one token."""
    return s.literal().replace(" ", ",")


class AxiomViolation(ValueError):
    """A structure failed an axiom it was required to satisfy."""

    def __init__(self, report: AxiomReport):
        self.report = report
        super().__init__(report.line())


# --------------------------------------------------------------------------
# rank axioms


def rank_violation(lat: SubspaceLattice, values) -> tuple | None:
    """First violation of (R1)-(R3) as (axiom, index tuple), or None."""
    for ax in RANK_AXIOMS:
        w = _RANK_CHECKS[ax](lat, values)
        if w is not None:
            return ax, w
    return None


def _r1(lat, r):
    for a in range(lat.size):
        if not 0 <= r[a] <= lat.dims[a]:
            return (("A", a),)
    return None


def _r2(lat, r):
    for a in range(lat.size):
        ra = r[a]
        for b in bits(lat.up[a]):
            if ra > r[b]:
                return (("A", a), ("B", b))
    return None


def _r3(lat, r):
    up, down = lat.up, lat.down
    for a in range(lat.size):
        ra = r[a]
        comparable = up[a] | down[a]
        for b in range(a + 1, lat.size):
            if comparable >> b & 1:
                continue
            if r[lat.join(a, b)] + r[lat.meet(a, b)] > ra + r[b]:
                return (("A", a), ("B", b))
    return None


_RANK_CHECKS = {AxiomId.R1: _r1, AxiomId.R2: _r2, AxiomId.R3: _r3}


# --------------------------------------------------------------------------
# helpers shared by the family checkers


def _atoms_below(lat, i):
    return lat.down[i] & lat.layers[1]


def _good_atoms(lat, mask, i):
    """Atoms x with i + x in the family."""
    out = 0
    for x in lat.atom_ids:
        if mask >> lat.join(i, x) & 1:
            out |= 1 << x
    return out


def _hyperplane_hull(lat, mask, i):
    """Smallest Z such that a hyperplane X over i has every atom outside X
    good for i exactly when X contains Z.  Z is i joined with the bad atoms."""
    z = i
    bad = lat.layers[1] & ~_good_atoms(lat, mask, i)
    for x in bits(bad):
        z = lat.join(z, x)
    return z


def _max_selector(lat, mode):
    return top_dim_mask if mode is Mode.DIMENSION else max_incl_mask


def _min_selector(lat, mode):
    return bottom_dim_mask if mode is Mode.DIMENSION else min_incl_mask


class _Cache(dict):
    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, key):
        v = self[key] = self.fn(key)
        return v


def _inner_maxes(lat, mask, mode):
    """A -> the maximal members of mask inside A."""
    sel = _max_selector(lat, mode)
    return _Cache(lambda a: sel(lat, mask & lat.down[a]))


def _basis_maxes(lat, mask, mode):
    """A -> the maximal intersections of members of mask with A."""
    sel = _max_selector(lat, mode)
    members = list(bits(mask))

    def compute(a):
        inter = 0
        for b in members:
            inter |= 1 << lat.meet(a, b)
        return sel(lat, inter)
    return _Cache(compute)


def _outer_mins(lat, mask, mode):
    """A -> the minimal members of mask containing A."""
    sel = _min_selector(lat, mode)
    return _Cache(lambda a: sel(lat, mask & lat.up[a]))


def _upward(lat, m):
    out = 0
    for k in bits(m):
        out |= lat.up[k]
    return out


def _downward(lat, m):
    out = 0
    for k in bits(m):
        out |= lat.down[k]
    return out


def _fourth_axiom(lat, maxes):
    """Shared scan for (I4) and (B4): for A, B and I in maxes[A], J in
    maxes[B] some K in maxes[A+B] lies in I+J."""
    up, down = lat.up, lat.down
    ups = _Cache(lambda s: _upward(lat, maxes[s]))
    for a in range(lat.size):
        ma = maxes[a]
        if not ma:
            continue
        comparable = up[a] | down[a]
        for b in range(a + 1, lat.size):
            # comparable pairs always pass: take K = the larger side's member
            if comparable >> b & 1:
                continue
            mb = maxes[b]
            if not mb:
                continue
            ok = ups[lat.join(a, b)]
            for i in bits(ma):
                for j in bits(mb):
                    if not ok >> lat.join(i, j) & 1:
                        return (("A", a), ("B", b), ("I", i), ("J", j))
    return None


def _one_step_axiom(lat, maxes):
    """Shared scan for (I4'') and (B4''): for A, I in maxes[A] and an atom x,
    some J in maxes[x+A] lies in x+I."""
    for a in range(lat.size):
        ma = maxes[a]
        for i in bits(ma):
            for x in lat.atom_ids:
                if not maxes[lat.join(a, x)] & lat.down[lat.join(i, x)]:
                    return (("A", a), ("I", i), ("x", x))
    return None


# --------------------------------------------------------------------------
# independence axioms


def _i1(lat, mask, mode):
    return None if mask else ()


def _i2(lat, mask, mode):
    for i in range(lat.size):
        if not mask >> i & 1:
            above = lat.up[i] & mask
            if above:
                return (("I", i), ("J", (above & -above).bit_length() - 1))
    return None


def _i3(lat, mask, mode):
    for i in bits(mask):
        good = _good_atoms(lat, mask, i) & ~lat.down[i]
        di = lat.dims[i]
        for j in bits(mask):
            if lat.dims[j] > di and not _atoms_below(lat, j) & good:
                return (("I", i), ("J", j))
    return None


def _ni3(lat, mask, mode):
    for i in bits(mask):
        z = _hyperplane_hull(lat, mask, i)
        di = lat.dims[i]
        for j in bits(mask):
            # a hyperplane X over z missing J exists iff J is not inside z
            if lat.dims[j] > di and lat.leq(j, z):
                return (("I", i), ("J", j))
    return None


def _i4(lat, mask, mode):
    return _fourth_axiom(lat, _inner_maxes(lat, mask, mode))


def _i4pp(lat, mask, mode):
    return _one_step_axiom(lat, _inner_maxes(lat, mask, mode))


# --------------------------------------------------------------------------
# basis axioms


def _b2(lat, mask, mode):
    for b1 in bits(mask):
        above = lat.up[b1] & mask & ~(1 << b1)
        if above:
            return (("B1", b1), ("B2", (above & -above).bit_length() - 1))
    return None


def _codim_one_over(lat, b1, floor):
    """Codimension-1 subspaces A of b1 containing floor."""
    d = lat.dims[b1]
    if d == 0:
        return 0
    return lat.down[b1] & lat.layers[d - 1] & lat.up[floor]


def _b3(lat, mask, mode):
    good = _Cache(lambda a: _good_atoms(lat, mask, a))
    for b1 in bits(mask):
        for b2 in bits(mask):
            low = _atoms_below(lat, b2)
            for a in bits(_codim_one_over(lat, b1, lat.meet(b1, b2))):
                if not low & good[a]:
                    return (("B1", b1), ("B2", b2), ("A", a))
    return None


def _nb3(lat, mask, mode):
    hull = _Cache(lambda a: _hyperplane_hull(lat, mask, a))
    for b1 in bits(mask):
        for b2 in bits(mask):
            for a in bits(_codim_one_over(lat, b1, lat.meet(b1, b2))):
                if lat.leq(b2, hull[a]):
                    return (("B1", b1), ("B2", b2), ("A", a))
    return None


def _b4(lat, mask, mode):
    return _fourth_axiom(lat, _basis_maxes(lat, mask, mode))


def _b4p(lat, mask, mode):
    maxes = _basis_maxes(lat, mask, mode)
    for a in range(lat.size):
        ma = maxes[a]
        if not ma:
            continue
        for b in range(lat.size):
            target = maxes[lat.join(a, b)]
            for i in bits(ma):
                if not target & lat.down[lat.join(i, b)]:
                    return (("A", a), ("B", b), ("I", i))
    return None


def _b4pp(lat, mask, mode):
    return _one_step_axiom(lat, _basis_maxes(lat, mask, mode))


# --------------------------------------------------------------------------
# spanning space axioms


def _s1(lat, mask, mode):
    return None if mask >> lat.top & 1 else (("E", lat.top),)


def _s2(lat, mask, mode):
    for i in range(lat.size):
        if not mask >> i & 1:
            below = lat.down[i] & mask
            if below:
                return (("I", i), ("J", (below & -below).bit_length() - 1))
    return None


def _s3(lat, mask, mode):
    for i in bits(mask):
        good = 0
        for x in lat.hyperplane_ids:
            if not lat.leq(i, x) and mask >> lat.meet(i, x) & 1:
                good |= 1 << x
        di = lat.dims[i]
        for j in bits(mask):
            if lat.dims[j] < di and not good & lat.up[j]:
                return (("I", i), ("J", j))
    return None


def _s4(lat, mask, mode):
    mins = _outer_mins(lat, mask, mode)
    up, down = lat.up, lat.down
    downs = _Cache(lambda s: _downward(lat, mins[s]))
    for a in range(lat.size):
        ma = mins[a]
        if not ma:
            continue
        comparable = up[a] | down[a]
        for b in range(a + 1, lat.size):
            if comparable >> b & 1:
                continue
            mb = mins[b]
            if not mb:
                continue
            ok = downs[lat.meet(a, b)]
            for i in bits(ma):
                for j in bits(mb):
                    if not ok >> lat.meet(i, j) & 1:
                        return (("A", a), ("B", b), ("I", i), ("J", j))
    return None


def _ns3(lat, mask, mode):
    for s1 in bits(mask):
        # atoms x such that every hyperplane missing x cuts s1 inside the family
        common = lat.down[lat.top]
        for x in lat.hyperplane_ids:
            if not mask >> lat.meet(x, s1) & 1:
                common &= lat.down[x]
        room = common & lat.down[s1]
        d1 = lat.dims[s1]
        for s2 in bits(mask):
            if lat.dims[s2] < d1 and not room & lat.layers[1] & ~lat.down[s2]:
                return (("S1", s1), ("S2", s2))
    return None


_FAMILY_CHECKS: dict[AxiomId, Callable] = {
    AxiomId.I1: _i1, AxiomId.I2: _i2, AxiomId.I3: _i3, AxiomId.I4: _i4,
    AxiomId.I4pp: _i4pp, AxiomId.nI3: _ni3,
    AxiomId.B1: _i1, AxiomId.B2: _b2, AxiomId.B3: _b3, AxiomId.B4: _b4,
    AxiomId.B4p: _b4p, AxiomId.B4pp: _b4pp, AxiomId.nB3: _nb3,
    AxiomId.S1: _s1, AxiomId.S2: _s2, AxiomId.S3: _s3, AxiomId.S4: _s4, AxiomId.nS3: _ns3,
}


def family_violation(axiom: AxiomId, lat: SubspaceLattice, mask: int,
                     mode: Mode = Mode.DIMENSION):
    """Index-level witness of a violated family axiom, or None if it holds."""
    return _FAMILY_CHECKS[AxiomId(axiom)](lat, mask, Mode(mode))


def family_holds(axiom: AxiomId, lat: SubspaceLattice, mask: int,
                 mode: Mode = Mode.DIMENSION) -> bool:
    return family_violation(axiom, lat, mask, mode) is None


def _report(axiom, lat, w, mode) -> AxiomReport:
    if w is None:
        return AxiomReport(axiom, True, None, mode)
    return AxiomReport(axiom, False, tuple((role, lat[i]) for role, i in w), mode)


def _require(axiom, allowed):
    axiom = AxiomId(axiom)
    if axiom not in allowed:
        raise ValueError(f"{axiom} is not one of {', '.join(map(str, allowed))}")
    return axiom


def check_rank_axiom(axiom: AxiomId, r: RankFunction) -> AxiomReport:
    axiom = _require(axiom, RANK_AXIOMS)
    return _report(axiom, r.lattice, _RANK_CHECKS[axiom](r.lattice, r.values), Mode.DIMENSION)


def _check_family(axiom, f: SubspaceFamily, mode, allowed) -> AxiomReport:
    axiom = _require(axiom, allowed)
    mode = Mode(mode)
    return _report(axiom, f.lattice, family_violation(axiom, f.lattice, f.mask, mode), mode)


def check_independence_axiom(axiom: AxiomId, f: SubspaceFamily,
                             mode: Mode = Mode.DIMENSION) -> AxiomReport:
    return _check_family(axiom, f, mode, INDEPENDENCE_AXIOMS)


def check_basis_axiom(axiom: AxiomId, f: SubspaceFamily,
                      mode: Mode = Mode.DIMENSION) -> AxiomReport:
    return _check_family(axiom, f, mode, BASIS_AXIOMS)


def check_spanning_axiom(axiom: AxiomId, f: SubspaceFamily,
                         mode: Mode = Mode.DIMENSION) -> AxiomReport:
    return _check_family(axiom, f, mode, SPANNING_AXIOMS)


def check(axiom: AxiomId, target: Union[SubspaceFamily, RankFunction],
          mode: Mode = Mode.DIMENSION) -> AxiomReport:
    """Dispatch on the axiom's letter."""
    axiom = AxiomId(axiom)
    if axiom.kind == "rank":
        if isinstance(target, SubspaceFamily):
            raise TypeError(f"{axiom} needs a rank function, not a family")
        return check_rank_axiom(axiom, target)
    if not isinstance(target, SubspaceFamily):
        raise TypeError(f"{axiom} needs a family, got {type(target).__name__}")
    return _check_family(axiom, target, mode, _FAMILY_CHECKS)


def check_all(axioms, target, mode: Mode = Mode.DIMENSION) -> list[AxiomReport]:
    return [check(a, target, mode) for a in axioms]


# --------------------------------------------------------------------------
# witness replay, straight from the definitions


def _selected(cands: list[Subspace], mode: Mode, maximal: bool) -> list[Subspace]:
    if not cands:
        return []
    if mode is Mode.DIMENSION:
        best = max(c.dim for c in cands) if maximal else min(c.dim for c in cands)
        return [c for c in cands if c.dim == best]
    if maximal:
        return [c for c in cands if not any(o != c and contains(o, c) for o in cands)]
    return [c for c in cands if not any(o != c and contains(c, o) for o in cands)]


def _fam_max(f, x, mode):
    return _selected([m for m in f if contains(x, m)], mode, True)


def _fam_min(f, x, mode):
    return _selected([m for m in f if contains(m, x)], mode, False)


def _basis_max(f, x, mode):
    return _selected(sorted({intersect(b, x) for b in f}), mode, True)


def _atoms_of(lat, s):
    return [x for x in lat.atoms() if contains(s, x)]


def replay(report: AxiomReport, target) -> bool:
    """True iff the witness of a failed report really violates the axiom."""
    if report.passed:
        return False
    w = report.roles()
    ax, mode = report.axiom, report.mode
    if ax.kind == "rank":
        r = target
        if ax is AxiomId.R1:
            a = w["A"]
            return not 0 <= r(a) <= a.dim
        a, b = w["A"], w["B"]
        if ax is AxiomId.R2:
            return contains(b, a) and r(a) > r(b)
        return r(span_sum(a, b)) + r(intersect(a, b)) > r(a) + r(b)

    f = target
    lat = f.lattice
    members = set(f)
    if ax in (AxiomId.I1, AxiomId.B1):
        return not members
    if ax is AxiomId.S1:
        return lat.ground not in members
    if ax is AxiomId.I2:
        return w["J"] in members and contains(w["J"], w["I"]) and w["I"] not in members
    if ax is AxiomId.S2:
        return w["J"] in members and contains(w["I"], w["J"]) and w["I"] not in members
    if ax in (AxiomId.I3, AxiomId.nI3):
        i, j = w["I"], w["J"]
        if i not in members or j not in members or i.dim >= j.dim:
            return False
        if ax is AxiomId.I3:
            return not any(not contains(i, x) and span_sum(i, x) in members
                           for x in _atoms_of(lat, j))
        return not any(
            contains(h, i) and not contains(h, j)
            and all(span_sum(i, x) in members for x in lat.atoms() if not contains(h, x))
            for h in lat.hyperplanes())
    if ax is AxiomId.I4:
        a, b, i, j = w["A"], w["B"], w["I"], w["J"]
        if i not in _fam_max(f, a, mode) or j not in _fam_max(f, b, mode):
            return False
        ij = span_sum(i, j)
        return not any(contains(ij, k) for k in _fam_max(f, span_sum(a, b), mode))
    if ax is AxiomId.I4pp:
        a, i, x = w["A"], w["I"], w["x"]
        if i not in _fam_max(f, a, mode) or x.dim != 1:
            return False
        xi = span_sum(x, i)
        return not any(contains(xi, k) for k in _fam_max(f, span_sum(x, a), mode))
    if ax is AxiomId.B2:
        b1, b2 = w["B1"], w["B2"]
        return b1 in members and b2 in members and b1 != b2 and contains(b2, b1)
    if ax in (AxiomId.B3, AxiomId.nB3):
        b1, b2, a = w["B1"], w["B2"], w["A"]
        if b1 not in members or b2 not in members:
            return False
        if not (contains(b1, a) and a.dim == b1.dim - 1 and contains(a, intersect(b1, b2))):
            return False
        if ax is AxiomId.B3:
            return not any(span_sum(a, y) in members for y in _atoms_of(lat, b2))
        return not any(
            contains(h, a) and not contains(h, b2)
            and all(span_sum(a, x) in members for x in lat.atoms() if not contains(h, x))
            for h in lat.hyperplanes())
    if ax is AxiomId.B4:
        a, b, i, j = w["A"], w["B"], w["I"], w["J"]
        if i not in _basis_max(f, a, mode) or j not in _basis_max(f, b, mode):
            return False
        ij = span_sum(i, j)
        return not any(contains(ij, k) for k in _basis_max(f, span_sum(a, b), mode))
    if ax is AxiomId.B4p:
        a, b, i = w["A"], w["B"], w["I"]
        if i not in _basis_max(f, a, mode):
            return False
        ib = span_sum(i, b)
        return not any(contains(ib, k) for k in _basis_max(f, span_sum(a, b), mode))
    if ax is AxiomId.B4pp:
        a, i, x = w["A"], w["I"], w["x"]
        if i not in _basis_max(f, a, mode) or x.dim != 1:
            return False
        xi = span_sum(x, i)
        return not any(contains(xi, k) for k in _basis_max(f, span_sum(a, x), mode))
    if ax is AxiomId.S3:
        i, j = w["I"], w["J"]
        if i not in members or j not in members or j.dim >= i.dim:
            return False
        return not any(contains(h, j) and not contains(h, i) and intersect(i, h) in members
                       for h in lat.hyperplanes())
    if ax is AxiomId.S4:
        a, b, i, j = w["A"], w["B"], w["I"], w["J"]
        if i not in _fam_min(f, a, mode) or j not in _fam_min(f, b, mode):
            return False
        ij = intersect(i, j)
        return not any(contains(k, ij) for k in _fam_min(f, intersect(a, b), mode))
    if ax is AxiomId.nS3:
        s1, s2 = w["S1"], w["S2"]
        if s1 not in members or s2 not in members or s2.dim >= s1.dim:
            return False
        return not any(
            not contains(s2, x)
            and all(intersect(h, s1) in members for h in lat.hyperplanes() if not contains(h, x))
            for x in _atoms_of(lat, s1))
    raise ValueError(f"no replay rule for {ax}")
