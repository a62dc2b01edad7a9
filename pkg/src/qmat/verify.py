"""Exhaustive and sampled checking of the implications between axiom systems.

A :class:`TheoremSpec` names hypotheses and conclusions over one kind of
family.  :func:`run_theorem` generates families, keeps those satisfying the
hypotheses and records every conclusion that fails on them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .axioms import AxiomId, AxiomReport, Mode, check_rank_axiom, family_violation
from .crypto import rank_from_independent
from .family import SubspaceFamily, max_incl_mask
from .lattice import Embedding, SubspaceLattice, bits, get_lattice
from .qmatroid import LoopSpaceError, RankFunction, dual_rank, isomorphism_key, loop_space

#: Default number of sampled families per theorem.
DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 20240611
#: Largest lattice for which every family (2**size of them) is enumerated.
ALL_FAMILIES_MAX_SIZE = 10
#: Largest lattice for which pruned families are enumerated.
PRUNED_MAX_SIZE = 20
FAMILY_LIMIT = 2_000_000

CONSTRAINTS = ("all", "downward-closed", "upward-closed", "antichain")
PRUNING = {"independent": "downward-closed", "spanning": "upward-closed", "bases": "antichain"}


class SearchTooLarge(ValueError):
    """The requested family search exceeds the guard."""


@dataclass(frozen=True)
class Search:
    kind: str = "exhaustive"  # exhaustive | pruned | sampled
    count: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.kind not in ("exhaustive", "pruned", "sampled"):
            raise ValueError(f"unknown search {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "sampled":
            return f"sampled({self.count}, seed={self.seed})"
        return self.kind


def default_search(lat: SubspaceLattice) -> Search:
    if lat.size <= ALL_FAMILIES_MAX_SIZE:
        return Search("exhaustive")
    if lat.size <= PRUNED_MAX_SIZE:
        return Search("pruned")
    return Search("sampled")


@dataclass(frozen=True)
class TheoremSpec:
    name: str
    family_kind: str
    hypotheses: tuple[AxiomId, ...]
    conclusions: tuple[str, ...]
    equivalence: bool = False
    statement: str = ""

    def __post_init__(self):
        for ax in self.hypotheses:
            if AxiomId(ax).kind != self.family_kind:
                raise ValueError(f"{ax} is not a {self.family_kind} axiom")
        for c in self.conclusions:
            if c not in PROPERTIES and AxiomId(c).kind != self.family_kind:
                raise ValueError(f"{c} is not a {self.family_kind} axiom")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    report: AxiomReport | None = None


@dataclass
class RunResult:
    name: str
    q: int
    n: int
    search: Search
    families_considered: int = 0
    families_distinct: int = 0
    families_satisfying_hypotheses: int = 0
    violations: list[tuple[SubspaceFamily, CheckResult]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def seed(self) -> int | None:
        return self.search.seed if self.search.kind == "sampled" else None

    @property
    def ok(self) -> bool:
        return not self.violations

    def result_line(self) -> str:
        seed = "none" if self.seed is None else self.seed
        return (f"RESULT {self.name} checked={self.families_satisfying_hypotheses} "
                f"violations={len(self.violations)} seed={seed}")

    def report(self) -> str:
        lines = [
            f"theorem {self.name} on F_{self.q}^{self.n}, search {self.search}",
            f"  families considered: {self.families_considered}"
            f" ({self.families_distinct} distinct)",
            f"  satisfying hypotheses: {self.families_satisfying_hypotheses}",
            f"  violations: {len(self.violations)}",
        ]
        for fam, res in self.violations[:10]:
            detail = res.detail if res.detail.startswith(res.name) else f"{res.name} {res.detail}"
            lines.append(f"    {fam!r}: {detail}")
        lines.append(f"  elapsed: {self.elapsed:.2f}s")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# derived properties usable as conclusions


def _derived_rank(lat, mask) -> RankFunction:
    return rank_from_independent(SubspaceFamily(lat, mask), check=False)


def _rank_property(axiom):
    def prop(lat, mask, mode):
        rep = check_rank_axiom(axiom, _derived_rank(lat, mask))
        return CheckResult(f"rank.{axiom}", rep.passed, rep.line(), rep)
    return prop


@lru_cache(maxsize=None)
def restriction_maps(lat: SubspaceLattice) -> tuple[tuple[int, SubspaceLattice, tuple[int, ...]], ...]:
    """For every subspace F: (index of F, L(F_q^dim F), sub-index -> index in lat)."""
    out = []
    for f_id, f in enumerate(lat.subspaces):
        emb = Embedding(f)
        sub = get_lattice(lat.q, f.dim)
        out.append((f_id, sub, tuple(lat.index[emb.push(w)] for w in sub)))
    return tuple(out)


def restrict_mask(mask: int, embedding: tuple[int, ...]) -> int:
    out = 0
    for j, i in enumerate(embedding):
        if mask >> i & 1:
            out |= 1 << j
    return out


def _restriction_property(lat, mask, mode):
    for f_id, sub, emb in restriction_maps(lat):
        rmask = restrict_mask(mask, emb)
        for ax in (AxiomId.I1, AxiomId.I2, AxiomId.nI3):
            w = family_violation(ax, sub, rmask, mode)
            if w is not None:
                roles = " ".join(f"{role}={sub[i].literal()}" for role, i in w)
                return CheckResult("restrict", False,
                                   f"restriction to {lat[f_id].literal()} fails {ax} {roles}")
    return CheckResult("restrict", True)


def _loop_property(lat, mask, mode):
    try:
        loop_space(_derived_rank(lat, mask))
    except LoopSpaceError as exc:
        return CheckResult("loops", False, str(exc))
    return CheckResult("loops", True)


PROPERTIES = {
    "rank.R1": _rank_property(AxiomId.R1),
    "rank.R2": _rank_property(AxiomId.R2),
    "rank.R3": _rank_property(AxiomId.R3),
    "restrict": _restriction_property,
    "loops": _loop_property,
}


# --------------------------------------------------------------------------
# registry

I, B, S = "independent", "bases", "spanning"
A = AxiomId

THEOREMS: dict[str, TheoremSpec] = {t.name: t for t in [
    TheoremSpec("T1", I, (A.I1, A.I2, A.I4), ("I3",),
                statement="(I1),(I2),(I4) imply (I3)"),
    TheoremSpec("T2", B, (A.B1, A.B2, A.B4), ("B3",),
                statement="(B1),(B2),(B4) imply (B3)"),
    TheoremSpec("T3", S, (A.S1, A.S2, A.S4), ("S3",),
                statement="(S1),(S2),(S4) imply (S3)"),
    TheoremSpec("T4", I, (A.I1, A.I2, A.I4), ("nI3",),
                statement="independent spaces of a q-matroid satisfy (nI3)"),
    TheoremSpec("T5", I, (A.I1, A.I2, A.nI3), ("I4", "rank.R1", "rank.R2", "rank.R3"),
                statement="(I1),(I2),(nI3) give a q-matroid"),
    TheoremSpec("T6", B, (A.B1, A.B2, A.B4), ("nB3",),
                statement="bases of a q-matroid satisfy (nB3)"),
    TheoremSpec("T7", B, (A.B1, A.B2, A.nB3), ("B4",),
                statement="(B1),(B2),(nB3) give a q-matroid"),
    TheoremSpec("T8", B, (A.B1, A.B2, A.B3), ("B4", "B4p", "B4pp"), equivalence=True,
                statement="under (B1)-(B3): (B4) <=> (B4') <=> (B4'')"),
    TheoremSpec("T9", S, (A.S1, A.S2, A.nS3), ("S3", "S4"),
                statement="(S1),(S2),(nS3) give spanning spaces"),
    TheoremSpec("T10", I, (A.I1, A.I2, A.nI3), ("restrict",),
                statement="restrictions of an (I1),(I2),(nI3) family keep those axioms"),
    TheoremSpec("T11", I, (A.I1, A.I2, A.nI3), ("loops",),
                statement="loops are the 1-spaces of one subspace"),
    TheoremSpec("T12a", I, (A.nI3,), ("I3",), statement="(nI3) implies (I3)"),
    TheoremSpec("T12b", B, (A.nB3,), ("B3",), statement="(nB3) implies (B3)"),
]}

#: Names accepted on the command line; T12 covers both remarks.
GROUPS: dict[str, tuple[str, ...]] = {name: (name,) for name in THEOREMS}
GROUPS["T12"] = ("T12a", "T12b")
GROUPS["all"] = tuple(THEOREMS)


def theorems(name: str) -> list[TheoremSpec]:
    try:
        return [THEOREMS[t] for t in GROUPS[name]]
    except KeyError:
        raise ValueError(f"unknown theorem {name!r}; known: {', '.join(GROUPS)}") from None


# --------------------------------------------------------------------------
# family generation


def antichains(lat: SubspaceLattice, limit: int = FAMILY_LIMIT) -> Iterator[int]:
    """Every antichain of the lattice as a bitmask, in increasing order."""
    comparable = [lat.up[i] | lat.down[i] for i in range(lat.size)]
    count = 0
    # decide indices from the top down, "leave out" before "take"
    stack = [(lat.size - 1, 0, 0)]
    while stack:
        i, chosen, blocked = stack.pop()
        if i < 0:
            count += 1
            if count > limit:
                raise SearchTooLarge(f"more than {limit} antichains in {lat!r}")
            yield chosen
            continue
        if not blocked >> i & 1:
            stack.append((i - 1, chosen | 1 << i, blocked | comparable[i]))
        stack.append((i - 1, chosen, blocked))


def _close(lat, mask, table):
    out = 0
    for i in bits(mask):
        out |= table[i]
    return out


def family_masks(lat: SubspaceLattice, constraint: str = "all",
                 limit: int = FAMILY_LIMIT) -> Iterator[int]:
    if constraint == "all":
        if lat.size > ALL_FAMILIES_MAX_SIZE * 2 or 1 << lat.size > limit:
            raise SearchTooLarge(f"{1 << lat.size} families on {lat!r} exceed the limit {limit}")
        yield from range(1 << lat.size)
    elif constraint == "antichain":
        yield from antichains(lat, limit)
    elif constraint == "downward-closed":
        for a in antichains(lat, limit):
            yield _close(lat, a, lat.down)
    elif constraint == "upward-closed":
        for a in antichains(lat, limit):
            yield _close(lat, a, lat.up)
    else:
        raise ValueError(f"unknown constraint {constraint!r}; expected one of {CONSTRAINTS}")


def enumerate_families(lat: SubspaceLattice, constraint: str = "all",
                       limit: int = FAMILY_LIMIT) -> Iterator[SubspaceFamily]:
    for m in family_masks(lat, constraint, limit):
        yield SubspaceFamily(lat, m)


class FamilySampler:
    """Random families of one kind, drawn through a random ideal.

    The ideal is one of: the downward closure of a few random subspaces,
    the independent spaces of a q-matroid from a fixed pool, or such a
    family with a few members removed or added.  The pool holds the
    q-matroids r(A) = min(k, dim A - dim(A cap K)), their duals and
    truncations.  Bases are the maximal members of the ideal and spanning
    families are the ideal mapped through perp.
    """

    def __init__(self, lat: SubspaceLattice, kind: str, seed: int):
        self.lat = lat
        self.kind = kind
        self.rng = random.Random(seed)
        self.pool = _qmatroid_pool(lat)

    def _random_ideal(self) -> int:
        lat, rng = self.lat, self.rng
        gens = rng.sample(range(lat.size), rng.randint(1, min(6, lat.size)))
        return _close(lat, sum(1 << g for g in gens), lat.down)

    def _perturb(self, mask: int) -> int:
        lat, rng = self.lat, self.rng
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                tops = list(bits(max_incl_mask(lat, mask)))
                if len(tops) > 1 or (tops and tops[0] != 0):
                    mask &= ~(1 << rng.choice(tops))
            else:
                addable = [i for i in range(lat.size)
                           if not mask >> i & 1 and lat.down[i] & ~(1 << i) & ~mask == 0]
                if addable:
                    mask |= 1 << rng.choice(addable)
        return mask

    def ideal(self) -> int:
        u = self.rng.random()
        if u < 1 / 3:
            return self._random_ideal()
        base = self.rng.choice(self.pool)
        if u < 2 / 3:
            return base
        return self._perturb(base)

    def __call__(self) -> int:
        m = self.ideal()
        if self.kind == "independent":
            return m
        if self.kind == "bases":
            return max_incl_mask(self.lat, m)
        return self.lat.perp_mask(m)


@lru_cache(maxsize=None)
def _qmatroid_pool(lat: SubspaceLattice) -> tuple[int, ...]:
    ranks = set()
    for k_id in range(lat.size):
        base = tuple(lat.dims[i] - lat.dims[lat.meet(i, k_id)] for i in range(lat.size))
        for k in range(lat.n + 1):
            r = tuple(min(k, v) for v in base)
            d = dual_rank(RankFunction(lat, r)).values
            ranks.update((r, d))
            for t in range(d[-1]):
                ranks.add(tuple(min(t, v) for v in d))
    pool = set()
    for r in ranks:
        pool.add(sum(1 << i for i in range(lat.size) if r[i] == lat.dims[i]))
    return tuple(sorted(pool))


@lru_cache(maxsize=4)
def sampled_masks(lat: SubspaceLattice, kind: str, count: int, seed: int) -> tuple[int, ...]:
    sampler = FamilySampler(lat, kind, seed)
    return tuple(sampler() for _ in range(count))


def family_stream(lat: SubspaceLattice, kind: str, search: Search) -> Iterable[int]:
    if search.kind == "exhaustive":
        return family_masks(lat, "all")
    if search.kind == "pruned":
        return family_masks(lat, PRUNING[kind])
    return sampled_masks(lat, kind, search.count, search.seed)


# --------------------------------------------------------------------------
# running theorems

_COST = {
    A.I1: 0, A.B1: 0, A.S1: 0, A.I2: 1, A.B2: 1, A.S2: 1,
    A.nI3: 2, A.I3: 2, A.nB3: 3, A.B3: 3, A.S3: 3, A.nS3: 3,
    A.I4pp: 4, A.B4pp: 4, A.I4: 5, A.B4: 5, A.B4p: 5, A.S4: 5,
}


@lru_cache(maxsize=1 << 20)
def _holds(lat: SubspaceLattice, axiom: AxiomId, mask: int, mode: Mode) -> bool:
    return family_violation(axiom, lat, mask, mode) is None


def satisfies(lat: SubspaceLattice, axioms: Iterable[AxiomId], mask: int,
              mode: Mode = Mode.DIMENSION) -> bool:
    return all(_holds(lat, ax, mask, mode) for ax in sorted(axioms, key=_COST.__getitem__))


def _conclude(spec: TheoremSpec, lat, mask, mode) -> list[CheckResult]:
    results = []
    for c in spec.conclusions:
        if c in PROPERTIES:
            results.append(PROPERTIES[c](lat, mask, mode))
        else:
            w = family_violation(AxiomId(c), lat, mask, mode)
            if w is None:
                results.append(CheckResult(c, True))
            else:
                rep = AxiomReport(AxiomId(c), False, tuple((r, lat[i]) for r, i in w), mode)
                results.append(CheckResult(c, False, rep.line(), rep))
    if not spec.equivalence:
        return [r for r in results if not r.passed]
    if len({r.passed for r in results}) == 1:
        return []
    detail = " ".join(f"{r.name}={'PASS' if r.passed else 'FAIL'}" for r in results)
    return [CheckResult("<=>".join(spec.conclusions), False, detail)]


def run_theorem(spec: TheoremSpec | str, q: int, n: int, search: Search | None = None,
                mode: Mode = Mode.DIMENSION) -> RunResult:
    if isinstance(spec, str):
        spec = THEOREMS[spec]
    lat = get_lattice(q, n)
    search = search or default_search(lat)
    res = RunResult(spec.name, q, n, search)
    start = time.perf_counter()
    seen: dict[int, list[CheckResult] | None] = {}
    for mask in family_stream(lat, spec.family_kind, search):
        res.families_considered += 1
        fresh = mask not in seen
        if fresh:
            outcome = None
            if satisfies(lat, spec.hypotheses, mask, mode):
                outcome = _conclude(spec, lat, mask, mode)
            seen[mask] = outcome
        else:
            outcome = seen[mask]
        if outcome is None:
            continue
        res.families_satisfying_hypotheses += 1
        if fresh:
            # one entry per distinct family, however often it was sampled
            res.violations.extend((SubspaceFamily(lat, mask), r) for r in outcome)
    res.families_distinct = len(seen)
    res.elapsed = time.perf_counter() - start
    return res


def _search_space(lat: SubspaceLattice, axioms: Iterable[AxiomId]) -> Iterable[int]:
    axioms = set(axioms)
    if lat.size <= ALL_FAMILIES_MAX_SIZE:
        return family_masks(lat, "all")
    for ax, constraint in ((A.I2, "downward-closed"), (A.S2, "upward-closed"),
                           (A.B2, "antichain")):
        if ax in axioms:
            return family_masks(lat, constraint)
    raise SearchTooLarge(f"no exhaustive search on {lat!r} without (I2), (S2) or (B2)")


def mine(satisfy: Iterable[AxiomId], violate: Iterable[AxiomId], q: int, n: int,
         limit: int = 10, up_to_iso: bool = False,
         mode: Mode = Mode.DIMENSION) -> list[SubspaceFamily]:
    """Families satisfying every axiom in satisfy and violating every one in
    violate, at most limit of them, one per isomorphism class if asked."""
    satisfy = [AxiomId(a) for a in satisfy]
    violate = [AxiomId(a) for a in violate]
    if set(satisfy) & set(violate):
        return []
    lat = get_lattice(q, n)
    found: list[SubspaceFamily] = []
    classes: set[int] = set()
    for mask in _search_space(lat, satisfy):
        if len(found) >= limit:
            break
        if not satisfies(lat, satisfy, mask, mode):
            continue
        if any(_holds(lat, ax, mask, mode) for ax in violate):
            continue
        if up_to_iso:
            key = isomorphism_key(lat, mask)
            if key in classes:
                continue
            classes.add(key)
        found.append(SubspaceFamily(lat, mask))
    return found


def census(q: int, n: int, axioms: Iterable[AxiomId], up_to_iso: bool = False,
           mode: Mode = Mode.DIMENSION) -> int:
    axioms = [AxiomId(a) for a in axioms]
    lat = get_lattice(q, n)
    hits = [m for m in _search_space(lat, axioms) if satisfies(lat, axioms, m, mode)]
    if up_to_iso:
        return len({isomorphism_key(lat, m) for m in hits})
    return len(hits)


def run_all(q: int, n: int, search: Search | None = None,
            mode: Mode = Mode.DIMENSION) -> list[RunResult]:
    return [run_theorem(spec, q, n, search, mode) for spec in THEOREMS.values()]


__all__ = [
    "Search", "TheoremSpec", "RunResult", "CheckResult", "THEOREMS", "GROUPS", "theorems",
    "enumerate_families", "family_masks", "antichains", "FamilySampler", "run_theorem",
    "run_all", "mine", "census", "satisfies", "SearchTooLarge",
]
