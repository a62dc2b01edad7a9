"""Subspaces of F_q^n and the subspace lattice L(E).

A :class:`Subspace` is stored by the reduced row echelon form of any
spanning set, so equality of subspaces is equality of the dataclass.
:class:`SubspaceLattice` materialises every subspace for a fixed (q, n),
numbers them in a fixed order (dimension, then the canonical rows
lexicographically) and precomputes containment as int bitmasks over those
indices.  The bitmask tables are what the axiom checkers run on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import gf

Vector = tuple[int, ...]

#: Refuse to materialise lattices with more subspaces than this.
DEFAULT_LIMIT = 10**6


class LatticeError(ValueError):
    """Bad vectors, mismatched ambient spaces, or a malformed literal."""


class LatticeTooLarge(LatticeError):
    """The requested lattice exceeds the enumeration guard."""


# --------------------------------------------------------------------------
# dense linear algebra over F_q


def rref(rows: Iterable[Sequence[int]], q: int, n: int) -> tuple[Vector, ...]:
    """Reduced row echelon form with zero rows dropped."""
    mat = [[x % q for x in r] for r in rows]
    out: list[list[int]] = []
    pivot_row = 0
    for col in range(n):
        sel = None
        for i in range(pivot_row, len(mat)):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        row = mat[pivot_row]
        s = gf.inv(row[col], q)
        if s != 1:
            row[:] = [(x * s) % q for x in row]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col]:
                f = mat[i][col]
                other = mat[i]
                other[:] = [(a - f * b) % q for a, b in zip(other, row)]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    for i in range(pivot_row):
        out.append(mat[i])
    return tuple(tuple(r) for r in out)


def pivots(rows: Sequence[Vector]) -> tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(r) if x) for r in rows)


def null_space(rows: Sequence[Vector], q: int, n: int) -> list[Vector]:
    """Basis of {v : <r, v> = 0 for every row r}; rows must be in RREF."""
    piv = pivots(rows)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, p in zip(rows, piv):
            v[p] = -r[f] % q
        basis.append(tuple(v))
    return basis


def mat_inverse(mat: Sequence[Vector], q: int) -> list[Vector]:
    n = len(mat)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(mat)]
    red = rref(aug, q, 2 * n)
    if len(red) < n or pivots(red) != tuple(range(n)):
        raise LatticeError("matrix is singular")
    return [r[n:] for r in red]


def vec_mat(v: Sequence[int], mat: Sequence[Sequence[int]], q: int) -> Vector:
    """Row vector times matrix."""
    cols = len(mat[0]) if mat else 0
    return tuple(sum(v[i] * mat[i][j] for i in range(len(mat))) % q for j in range(cols))


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n given by its canonical RREF basis."""

    q: int
    n: int
    rows: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def sort_key(self) -> tuple:
        return (len(self.rows), self.rows)

    def __lt__(self, other: Subspace) -> bool:
        return self.sort_key() < other.sort_key()

    def vectors(self) -> Iterable[Vector]:
        """Every vector of the subspace (q**dim of them)."""
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            v = [0] * self.n
            for c, r in zip(coeffs, self.rows):
                if c:
                    for j, x in enumerate(r):
                        v[j] += c * x
            yield tuple(x % self.q for x in v)

    def literal(self) -> str:
        if not self.rows:
            return "0"
        return " ".join("".join(map(str, r)) for r in self.rows)

    def __str__(self) -> str:
        return self.literal()

    def __repr__(self) -> str:
        return f"<{self.literal()}>"


def _check_vec(v: Sequence[int], q: int, n: int) -> Vector:
    v = tuple(v)
    if len(v) != n:
        raise LatticeError(f"vector {v} has length {len(v)}, expected {n}")
    for x in v:
        if not isinstance(x, int) or not 0 <= x < q:
            raise LatticeError(f"entry {x!r} of {v} is not in [0, {q})")
    return v


def canonicalize(q: int, n: int, generators: Iterable[Sequence[int]]) -> Subspace:
    gens = [_check_vec(g, q, n) for g in generators]
    return Subspace(q, n, rref(gens, q, n))


def zero(q: int, n: int) -> Subspace:
    return Subspace(q, n, ())


def ground(q: int, n: int) -> Subspace:
    return Subspace(q, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if (a.q, a.n) != (b.q, b.n):
        raise LatticeError(f"ambient mismatch: F_{a.q}^{a.n} vs F_{b.q}^{b.n}")


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return Subspace(a.q, a.n, rref(a.rows + b.rows, a.q, a.n))


def perp(a: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    return Subspace(a.q, a.n, rref(null_space(a.rows, a.q, a.n), a.q, a.n))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    # the dot product is nondegenerate, so (A cap B)^perp = A^perp + B^perp
    return perp(span_sum(perp(a), perp(b)))


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff b is a subspace of a."""
    _same_ambient(a, b)
    return len(rref(a.rows + b.rows, a.q, a.n)) == a.dim


def parse_subspace(text: str, q: int, n: int) -> Subspace:
    """Parse a literal: ``0`` or whitespace separated vectors of n digits."""
    tokens = text.split()
    if not tokens:
        raise LatticeError("empty subspace literal")
    if tokens == ["0"]:
        return zero(q, n)
    gens = []
    for tok in tokens:
        if len(tok) != n:
            raise LatticeError(f"vector {tok!r} must have exactly {n} digits")
        vec = []
        for ch in tok:
            if ch not in "0123456789" or int(ch) >= q:
                raise LatticeError(f"bad digit {ch!r} in {tok!r} for q={q}")
            vec.append(int(ch))
        gens.append(vec)
    return canonicalize(q, n, gens)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(q: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def _rref_matrices(q: int, n: int, k: int) -> Iterable[tuple[Vector, ...]]:
    for piv in itertools.combinations(range(n), k):
        # free slots: row i, column j > piv[i] with j not a pivot column
        slots = [(i, j) for i in range(k) for j in range(piv[i] + 1, n) if j not in piv]
        for vals in itertools.product(range(q), repeat=len(slots)):
            m = [[0] * n for _ in range(k)]
            for i, p in enumerate(piv):
                m[i][p] = 1
            for (i, j), v in zip(slots, vals):
                m[i][j] = v
            yield tuple(tuple(r) for r in m)


def enumerate_subspaces(q: int, n: int, k: int | None = None,
                        limit: int = DEFAULT_LIMIT) -> list[Subspace]:
    """All subspaces (of dimension k if given) in the canonical order."""
    gf.check_order(q)
    if k is not None and not 0 <= k <= n:
        raise LatticeError(f"dimension {k} outside [0, {n}]")
    dims = range(n + 1) if k is None else [k]
    total = sum(gaussian_binomial(n, d, q) for d in dims)
    if total > limit:
        raise LatticeTooLarge(f"F_{q}^{n} has {total} subspaces, above the limit {limit}")
    out = []
    for d in dims:
        layer = [Subspace(q, n, rows) for rows in _rref_matrices(q, n, d)]
        layer.sort(key=Subspace.sort_key)
        out.extend(layer)
    return out


# --------------------------------------------------------------------------
# the lattice with bitmask tables


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Interval:
    lower: Subspace
    upper: Subspace
    members: tuple[Subspace, ...]

    def __contains__(self, x: Subspace) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


class SubspaceLattice:
    """L(F_q^n) with every subspace indexed 0..N-1 in canonical order.

    Index 0 is the zero subspace and N-1 the ground space.  ``down[i]``
    and ``up[i]`` are bitmasks of the subspaces contained in / containing
    subspace i (both include i itself).
    """

    def __init__(self, q: int, n: int, limit: int = DEFAULT_LIMIT):
        gf.check_order(q)
        if n < 0:
            raise LatticeError("ambient dimension must be non-negative")
        self.q = q
        self.n = n
        self.subspaces: tuple[Subspace, ...] = tuple(enumerate_subspaces(q, n, limit=limit))
        self.size = len(self.subspaces)
        self.index = {s: i for i, s in enumerate(self.subspaces)}
        self.dims = tuple(s.dim for s in self.subspaces)
        self.layers = [0] * max(n + 1, 2)
        for i, d in enumerate(self.dims):
            self.layers[d] |= 1 << i
        self.full = (1 << self.size) - 1

        weights = [q ** (n - 1 - j) for j in range(n)]
        vsets = []
        for s in self.subspaces:
            m = 0
            for v in s.vectors():
                m |= 1 << sum(w * x for w, x in zip(weights, v))
            vsets.append(m)
        self._vsets = vsets
        self.down = [0] * self.size
        self.up = [0] * self.size
        for i in range(self.size):
            vi = vsets[i]
            for j in range(i + 1):
                if self.dims[j] <= self.dims[i] and vsets[j] & ~vi == 0:
                    self.down[i] |= 1 << j
                    self.up[j] |= 1 << i
        self.atom_ids = tuple(bits(self.layers[1]))
        self.hyperplane_ids = tuple(bits(self.layers[n - 1])) if n else ()
        self.perp_ids = tuple(self.index[perp(s)] for s in self.subspaces)
        self._join: dict[tuple[int, int], int] = {}

    def __repr__(self) -> str:
        return f"SubspaceLattice(q={self.q}, n={self.n}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.subspaces)

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces[i]

    @property
    def zero(self) -> Subspace:
        return self.subspaces[0]

    @property
    def ground(self) -> Subspace:
        return self.subspaces[-1]

    @property
    def top(self) -> int:
        return self.size - 1

    def id(self, s: Subspace) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise LatticeError(f"{s!r} is not a subspace of F_{self.q}^{self.n}") from None

    def of_dim(self, k: int) -> list[Subspace]:
        return [self.subspaces[i] for i in bits(self.layers[k])]

    def atoms(self) -> list[Subspace]:
        return [self.subspaces[i] for i in self.atom_ids]

    def hyperplanes(self) -> list[Subspace]:
        return [self.subspaces[i] for i in self.hyperplane_ids]

    # index-level lattice operations
    def join(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        r = self._join.get(key)
        if r is None:
            r = self._join[key] = lowest(self.up[i] & self.up[j])
        return r

    def meet(self, i: int, j: int) -> int:
        return (self.down[i] & self.down[j]).bit_length() - 1

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def mask(self, subspaces: Iterable[Subspace]) -> int:
        m = 0
        for s in subspaces:
            m |= 1 << self.id(s)
        return m

    def members(self, mask: int) -> list[Subspace]:
        return [self.subspaces[i] for i in bits(mask)]

    def interval(self, a: Subspace, b: Subspace) -> Interval:
        ia, ib = self.id(a), self.id(b)
        if not self.leq(ia, ib):
            raise LatticeError(f"{a!r} is not contained in {b!r}")
        return Interval(a, b, tuple(self.members(self.up[ia] & self.down[ib])))

    def perp_mask(self, mask: int) -> int:
        """The family {X : X^perp in mask}, which is also {A^perp : A in mask}."""
        out = 0
        for i in bits(mask):
            out |= 1 << self.perp_ids[i]
        return out


@lru_cache(maxsize=None)
def get_lattice(q: int, n: int) -> SubspaceLattice:
    """Shared immutable lattice for (q, n)."""
    return SubspaceLattice(q, n)


def hyperplanes(lat: SubspaceLattice) -> list[Subspace]:
    return lat.hyperplanes()


def interval(a: Subspace, b: Subspace) -> Interval:
    return get_lattice(a.q, a.n).interval(a, b)


# --------------------------------------------------------------------------
# coordinate maps for minors


class QuotientMap:
    """Linear surjection F_q^n -> F_q^(n - dim X) with kernel X.

    The basis of X is extended to a basis of F_q^n with unit vectors taken
    greedily in index order; the quotient coordinates of a vector are its
    coefficients on those added unit vectors.
    """

    def __init__(self, x: Subspace):
        q, n = x.q, x.n
        self.kernel = x
        self.q, self.n = q, n
        basis = list(x.rows)
        lifts: list[Vector] = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            if len(rref(basis + lifts + [e], q, n)) > len(basis) + len(lifts):
                lifts.append(e)
        self.lifts = tuple(lifts)
        self.m = len(lifts)
        self._inv = mat_inverse(basis + lifts, q)

    def __call__(self, v: Sequence[int]) -> Vector:
        coords = vec_mat(v, self._inv, self.q)
        return coords[self.n - self.m:]

    def push(self, a: Subspace) -> Subspace:
        return canonicalize(self.q, self.m, [self(v) for v in a.rows])

    def pull(self, w: Subspace) -> Subspace:
        gens = list(self.kernel.rows)
        for row in w.rows:
            gens.append(vec_mat(row, self.lifts, self.q))
        return canonicalize(self.q, self.n, gens)


def quotient_map(x: Subspace) -> QuotientMap:
    return QuotientMap(x)


class Embedding:
    """Identify F_q^k with a k-dimensional subspace X via its RREF basis."""

    def __init__(self, x: Subspace):
        self.target = x
        self.q, self.n, self.k = x.q, x.n, x.dim
        self._piv = pivots(x.rows)

    def push(self, w: Subspace) -> Subspace:
        return canonicalize(self.q, self.n, [vec_mat(r, self.target.rows, self.q) for r in w.rows])

    def pull(self, a: Subspace) -> Subspace:
        """Coordinates of a subspace of X; reads off the pivot entries."""
        if not contains(self.target, a):
            raise LatticeError(f"{a!r} is not inside {self.target!r}")
        return canonicalize(self.q, self.k, [tuple(r[p] for p in self._piv) for r in a.rows])


# --------------------------------------------------------------------------
# lattice automorphisms


def _invertible_matrices(q: int, n: int) -> Iterable[tuple[Vector, ...]]:
    nonzero = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    for rows in itertools.product(nonzero, repeat=n):
        if len(rref(rows, q, n)) == n:
            yield rows


@lru_cache(maxsize=None)
def automorphisms(lat: SubspaceLattice) -> tuple[tuple[int, ...], ...]:
    """Every lattice automorphism of L(F_q^n) as an index permutation.

    For n = 2 these are the permutations of the q + 1 atoms.  For n >= 3 and
    prime q they are induced by invertible matrices.
    """
    n, q = lat.n, lat.q
    atom_sets = [lat.down[i] & lat.layers[1] for i in range(lat.size)]
    by_atoms = {m: i for i, m in enumerate(atom_sets)}
    atoms = lat.atom_ids
    if n <= 1:
        return (tuple(range(lat.size)),)
    images: Iterable[dict[int, int]]
    if n == 2:
        images = (dict(zip(atoms, p)) for p in itertools.permutations(atoms))
    else:
        def induced():
            for m in _invertible_matrices(q, n):
                yield {a: lat.index[canonicalize(q, n, [vec_mat(lat[a].rows[0], m, q)])]
                       for a in atoms}
        images = induced()
    perms = set()
    for amap in images:
        perm = []
        for i in range(lat.size):
            img = 0
            for a in bits(atom_sets[i]):
                img |= 1 << amap[a]
            perm.append(by_atoms[img])
        perms.add(tuple(perm))
    return tuple(sorted(perms))


def permute_mask(perm: Sequence[int], mask: int) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << perm[i]
    return out
