"""The subspace lattice of PG(n,q).

Subspaces are kept in reduced row-echelon canonical form, which makes them
hashable, comparable and enumerable in a fixed order: the geometry index
sorts all j-spaces lexicographically on the flattened basis under the
integer element encoding.  Enumeration generates RREF matrices directly by
pivot-column pattern, so the count is exact by construction.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional

from .field import GF, make_extension

DEFAULT_SUBSPACE_CAP = 10 ** 7
SINGER_VERIFY_CAP = 10 ** 4


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured size cap."""


def subspace_cap() -> int:
    return int(os.environ.get("PGCODES_SUBSPACE_CAP", DEFAULT_SUBSPACE_CAP))


def gaussian_coeff(m: int, i: int, q: int) -> int:
    """The q-binomial [m choose i]_q, exact; 1 for i = 0, 0 outside [0, m]."""
    if i < 0 or i > m:
        return 0
    num = den = 1
    for t in range(i):
        num *= q ** (m - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def theta(m: int, q: int) -> int:
    """Number of points of PG(m,q); 0 for negative m."""
    if m < 0:
        return 0
    return (q ** (m + 1) - 1) // (q - 1)


@dataclass(frozen=True)
class Subspace:
    """A projective subspace in RREF canonical basis form.

    ``basis`` holds dim+1 rows of n+1 encoded field elements; the empty
    space has an empty basis and dim -1.
    """

    field: GF
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def key(self) -> tuple[int, ...]:
        return tuple(x for row in self.basis for x in row)

    def pivots(self) -> list[int]:
        out = []
        for row in self.basis:
            out.append(next(i for i, x in enumerate(row) if x))
        return out

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, q={self.field.q}, dim={self.dim})"


def _rref(field: GF, rows: list[list[int]]) -> list[tuple[int, ...]]:
    """Reduced row echelon form over F_q; zero rows dropped."""
    work = [list(r) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        lead = work[rank][col]
        if lead != 1:
            ival = field.inv(lead)
            work[rank] = [field.mul(ival, x) for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                c = field.neg(work[r][col])
                work[r] = [field.add(x, field.mul(c, y))
                           for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return [tuple(r) for r in work[:rank]]


def canonicalize(field: GF, n: int, rows: Iterable[Iterable[int]]) -> Subspace:
    """Canonical subspace spanned by the given vectors of F_q^{n+1}."""
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != n + 1:
            raise ValueError("vector length does not match ambient dimension")
    return Subspace(field, n, tuple(_rref(field, mat)))


def empty_subspace(field: GF, n: int) -> Subspace:
    return Subspace(field, n, ())


def point(field: GF, n: int, vec: Iterable[int]) -> Subspace:
    return canonicalize(field, n, [list(vec)])


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.field is not b.field or a.n != b.n:
        raise ValueError("subspaces live in different ambient spaces")


def incidence(lam: Subspace, kappa: Subspace) -> bool:
    """True iff lam is contained in kappa."""
    _check_ambient(lam, kappa)
    if lam.dim > kappa.dim:
        return False
    field = lam.field
    pivots = kappa.pivots()
    for row in lam.basis:
        v = list(row)
        for pc, brow in zip(pivots, kappa.basis):
            c = v[pc]
            if c:
                c = field.neg(c)
                v = [field.add(x, field.mul(c, y)) for x, y in zip(v, brow)]
        if any(v):
            return False
    return True


def span(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return canonicalize(a.field, a.n, list(a.basis) + list(b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the Zassenhaus block trick."""
    _check_ambient(a, b)
    field, n = a.field, a.n
    w = n + 1
    stacked = [list(r) + list(r) for r in a.basis]
    stacked += [list(r) + [0] * w for r in b.basis]
    ech = _rref(field, stacked)
    inter = [list(r[w:]) for r in ech if not any(r[:w])]
    return canonicalize(field, n, inter)


def skew(a: Subspace, b: Subspace) -> bool:
    return intersect(a, b).dim == -1


class GeometryIndex:
    """The ordered set G_j(n,q) with O(1) canonical-form lookup."""

    def __init__(self, field: GF, n: int, j: int):
        if not (-1 <= j <= n):
            raise ValueError(f"j={j} out of range for PG({n},q)")
        count = gaussian_coeff(n + 1, j + 1, field.q)
        if count > subspace_cap():
            raise CapExceeded(
                f"G_{j}({n},{field.q}) has {count} elements, cap is {subspace_cap()}")
        self.field = field
        self.n = n
        self.j = j
        self.subspaces = _enumerate_rref(field, n, j)
        self.subspaces.sort(key=Subspace.key)
        self.index = {s.basis: i for i, s in enumerate(self.subspaces)}
        if len(self.subspaces) != count:
            raise AssertionError("enumeration count mismatch")  # pragma: no cover

    def __len__(self) -> int:
        return len(self.subspaces)

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces[i]

    def find(self, s: Subspace) -> int:
        return self.index[s.basis]

    def __repr__(self) -> str:
        return f"GeometryIndex(G_{self.j}({self.n},{self.field.q}), {len(self)})"


def _enumerate_rref(field: GF, n: int, j: int) -> list[Subspace]:
    """All (j+1) x (n+1) RREF matrices over F_q, by pivot pattern."""
    if j == -1:
        return [empty_subspace(field, n)]
    q = field.q
    out = []
    ncols = n + 1
    nrows = j + 1
    for pivots in combinations(range(ncols), nrows):
        pivot_set = set(pivots)
        free_cells = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, ncols):
                if c not in pivot_set:
                    free_cells.append((r, c))
        template = [[0] * ncols for _ in range(nrows)]
        for r, pc in enumerate(pivots):
            template[r][pc] = 1
        for values in product(range(q), repeat=len(free_cells)):
            rows = [row[:] for row in template]
            for (r, c), v in zip(free_cells, values):
                rows[r][c] = v
            out.append(Subspace(field, n, tuple(tuple(r) for r in rows)))
    return out


_GEOM_CACHE: dict[tuple, GeometryIndex] = {}


def geometry_index(field: GF, n: int, j: int) -> GeometryIndex:
    key = (id(field), n, j)
    if key not in _GEOM_CACHE:
        _GEOM_CACHE[key] = GeometryIndex(field, n, j)
    return _GEOM_CACHE[key]


def enumerate_subspaces(n: int, q: int, j: int) -> GeometryIndex:
    from .field import field_of_size

    return geometry_index(field_of_size(q), n, j)


def subspaces_within(kappa: Subspace, j: int) -> list[Subspace]:
    """All j-subspaces of kappa, as subspaces of the ambient space."""
    d = kappa.dim
    if j > d:
        return []
    if j == -1:
        return [empty_subspace(kappa.field, kappa.n)]
    field = kappa.field
    local = geometry_index(field, d, j)
    out = []
    for u in local.subspaces:
        rows = _matmul(field, u.basis, kappa.basis)
        out.append(canonicalize(field, kappa.n, rows))
    return out


def _matmul(field: GF, a, b) -> list[list[int]]:
    nb = len(b[0])
    out = []
    for row in a:
        acc = [0] * nb
        for c, brow in zip(row, b):
            if c:
                acc = [field.add(x, field.mul(c, y)) for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def incidence_matrix(n: int, q: int, k: int, j: int):
    """Sparse p-ary incidence matrix of k-spaces (rows) vs j-spaces (columns).

    Returns (rows, nrows, ncols) where rows[r] is the ascending tuple of
    column indices holding a 1.
    """
    if not (0 <= j < k < n):
        raise ValueError(f"need 0 <= j < k < n, got j={j}, k={k}, n={n}")
    from .field import field_of_size

    field = field_of_size(q)
    gk = geometry_index(field, n, k)
    gj = geometry_index(field, n, j)
    rows = []
    for kappa in gk.subspaces:
        cols = sorted(gj.find(lam) for lam in subspaces_within(kappa, j))
        rows.append(tuple(cols))
    return rows, len(gk), len(gj)


# -- charts -------------------------------------------------------------

def to_chart(s: Subspace, pi: Subspace) -> Subspace:
    """Coordinates of s (contained in pi) w.r.t. pi's RREF basis rows.

    Because pi's basis is in RREF, the coordinate vector of any point of pi
    is simply its tuple of entries at pi's pivot columns; the result lives
    in PG(dim(pi), q).
    """
    if not incidence(s, pi):
        raise ValueError("subspace is not contained in the chart space")
    pivots = pi.pivots()
    rows = [[row[c] for c in pivots] for row in s.basis]
    return canonicalize(s.field, pi.dim, rows)


def from_chart(s: Subspace, pi: Subspace) -> Subspace:
    """Inverse of to_chart: lift a subspace of PG(dim(pi),q) into pi."""
    if s.n != pi.dim:
        raise ValueError("chart subspace has wrong ambient dimension")
    rows = _matmul(pi.field, s.basis, pi.basis) if s.basis else []
    return canonicalize(pi.field, pi.n, rows)


def pivot_complement(iota: Subspace) -> Subspace:
    """The coordinate subspace on the non-pivot columns of iota; skew to it."""
    pivots = set(iota.pivots())
    n = iota.n
    rows = []
    for c in range(n + 1):
        if c not in pivots:
            row = [0] * (n + 1)
            row[c] = 1
            rows.append(row)
    return canonicalize(iota.field, n, rows)


# -- collineations -------------------------------------------------------

@dataclass(frozen=True)
class Collineation:
    """Semilinear map s -> frobenius^e(s) . matrix on row vectors."""

    field: GF
    n: int
    matrix: tuple[tuple[int, ...], ...]
    frob: int = 0

    def apply_vector(self, v) -> list[int]:
        field = self.field
        if self.frob:
            v = [field.frobenius(x, self.frob) for x in v]
        acc = [0] * (self.n + 1)
        for c, mrow in zip(v, self.matrix):
            if c:
                acc = [field.add(x, field.mul(c, y)) for x, y in zip(acc, mrow)]
        return acc


def apply_collineation(f: Collineation, s: Subspace) -> Subspace:
    if s.field is not f.field or s.n != f.n:
        raise ValueError("collineation and subspace ambient mismatch")
    rows = [f.apply_vector(list(r)) for r in s.basis]
    return canonicalize(s.field, s.n, rows)


def matrix_inverse(field: GF, m) -> tuple[tuple[int, ...], ...]:
    size = len(m)
    aug = [list(row) + [1 if i == r else 0 for i in range(size)]
           for r, row in enumerate(m)]
    ech = _rref(field, aug)
    if len(ech) != size or any(ech[r][r] != 1 for r in range(size)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[size:]) for row in ech)


def collineation_inverse(f: Collineation) -> Collineation:
    field = f.field
    e = (-f.frob) % field.h if field.h > 1 else 0
    mat = f.matrix
    if e:
        mat = tuple(tuple(field.frobenius(x, e) for x in row) for row in mat)
    return Collineation(field, f.n, matrix_inverse(field, mat), e)


def identity_collineation(field: GF, n: int) -> Collineation:
    mat = tuple(tuple(1 if i == j else 0 for j in range(n + 1)) for i in range(n + 1))
    return Collineation(field, n, mat, 0)


def singer_cycle(n: int, q: int) -> Collineation:
    """Companion matrix of the canonical primitive degree-(n+1) modulus over F_q.

    Its point action on PG(n,q) is a single cycle of length theta_n, which is
    verified at construction while theta_n stays below the verification cap.
    """
    from .field import field_of_size

    field = field_of_size(q)
    ext = make_extension(field, n + 1)
    coeffs = ext.modulus  # x^{n+1} + sum c_i x^i
    mat = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        mat[i][i + 1] = 1
    for jcol in range(n + 1):
        mat[n][jcol] = field.neg(coeffs[jcol])
    f = Collineation(field, n, tuple(tuple(r) for r in mat), 0)
    t = theta(n, q)
    if t <= SINGER_VERIFY_CAP:
        start = point(field, n, [1] + [0] * n)
        cur = start
        for step in range(1, t + 1):
            cur = apply_collineation(f, cur)
            if cur == start:
                if step != t:
                    raise AssertionError(
                        f"Singer point orbit closed after {step}, expected {t}")
                break
        else:  # pragma: no cover
            raise AssertionError("Singer point orbit did not close")
    return f


def singer_point_order(f: Collineation, geom0: "GeometryIndex") -> list[int]:
    """Point indices of geom0 in Singer orbit order, starting at the first point."""
    start = geom0.subspaces[0]
    order = [geom0.find(start)]
    cur = apply_collineation(f, start)
    while cur != start:
        order.append(geom0.find(cur))
        cur = apply_collineation(f, cur)
    if len(order) != len(geom0):
        raise AssertionError("Singer orbit does not cover all points")
    return order
