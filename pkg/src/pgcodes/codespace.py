"""The vector space V(j,n,q) over F_p and the codes built inside it.

Code vectors are sparse maps from j-space index to a nonzero F_p value.
Codes carry a reduced-echelon basis over F_p with respect to the canonical
G_j order; rank, kernel, hull and span computations all run on the dense
row representations from :mod:`pgcodes.linalg` (int bitmasks for p = 2).

Exhaustive code word enumeration walks coefficient space in Gray-code
order; the exhaustive minimum-weight search switches to a meet-in-the-middle
block scan (numpy) once the dimension makes the plain walk too slow.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Optional

import numpy as np

from . import linalg
from .field import GF, field_of_size
from .geometry import (CapExceeded, GeometryIndex, Subspace, geometry_index,
                       incidence_matrix, subspaces_within)

DEFAULT_WORD_CAP = 2 ** 22
_GRAY_LOOP_MAX_DIM = 18  # beyond this the p=2 scan uses the MITM block path


def word_cap() -> int:
    return int(os.environ.get("PGCODES_WORD_CAP", DEFAULT_WORD_CAP))


class CodeVector:
    """Sparse element of V(j,n,q): index -> nonzero value of F_p."""

    __slots__ = ("geometry", "entries")

    def __init__(self, geometry: GeometryIndex, entries: Optional[dict] = None):
        self.geometry = geometry
        p = geometry.field.p
        self.entries = {}
        if entries:
            for i, v in entries.items():
                v %= p
                if v:
                    if not 0 <= i < len(geometry):
                        raise ValueError(f"index {i} out of range")
                    self.entries[i] = v

    @property
    def p(self) -> int:
        return self.geometry.field.p

    def weight(self) -> int:
        return len(self.entries)

    def support(self) -> set[int]:
        return set(self.entries)

    def get(self, i: int) -> int:
        return self.entries.get(i, 0)

    def is_zero(self) -> bool:
        return not self.entries

    def as_key(self) -> tuple:
        return tuple(sorted(self.entries.items()))

    def _check(self, other: "CodeVector") -> None:
        if other.geometry is not self.geometry:
            raise ValueError("code vectors live over different geometries")

    def add(self, other: "CodeVector") -> "CodeVector":
        self._check(other)
        p = self.p
        out = dict(self.entries)
        for i, v in other.entries.items():
            nv = (out.get(i, 0) + v) % p
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
        return CodeVector(self.geometry, out)

    def scale(self, c: int) -> "CodeVector":
        c %= self.p
        if c == 0:
            return CodeVector(self.geometry)
        return CodeVector(self.geometry, {i: (c * v) % self.p
                                          for i, v in self.entries.items()})

    def sub(self, other: "CodeVector") -> "CodeVector":
        return self.add(other.scale(self.p - 1))

    def __eq__(self, other) -> bool:
        return (isinstance(other, CodeVector) and other.geometry is self.geometry
                and other.entries == self.entries)

    def __hash__(self) -> int:
        return hash((id(self.geometry), self.as_key()))

    def to_dense(self):
        return linalg.row_from_entries(self.p, len(self.geometry),
                                       self.entries.items())

    @classmethod
    def from_dense(cls, geometry: GeometryIndex, row) -> "CodeVector":
        p = geometry.field.p
        return cls(geometry, dict(linalg.row_entries(p, len(geometry), row)))

    def __repr__(self) -> str:
        return f"CodeVector(weight={self.weight()} over {self.geometry!r})"


def zero_word(geometry: GeometryIndex) -> CodeVector:
    return CodeVector(geometry)

def ones_word(geometry: GeometryIndex) -> CodeVector:
    return CodeVector(geometry, {i: 1 for i in range(len(geometry))})


def dot(v: CodeVector, w: CodeVector) -> int:
    """Scalar product sum v(lam) w(lam) mod p."""
    v._check(w)
    small, big = (v, w) if len(v.entries) <= len(w.entries) else (w, v)
    acc = 0
    for i, a in small.entries.items():
        b = big.entries.get(i)
        if b:
            acc += a * b
    return acc % v.p


def kspace_word(kappa: Subspace, j: int) -> CodeVector:
    """The characteristic function of G_j(kappa) in V(j,n,q)."""
    if kappa.dim < j:
        raise ValueError(f"subspace of dim {kappa.dim} holds no {j}-spaces")
    geom = geometry_index(kappa.field, kappa.n, j)
    return CodeVector(geom, {geom.find(lam): 1
                             for lam in subspaces_within(kappa, j)})


def support_i(v: CodeVector, i: int) -> set[Subspace]:
    """supp_i(v): all i-spaces below some support j-space."""
    j = v.geometry.j
    if not 0 <= i < j:
        raise ValueError(f"need 0 <= i < {j}")
    out: set[Subspace] = set()
    for idx in v.entries:
        out.update(subspaces_within(v.geometry[idx], i))
    return out


KINDS = ("primal", "dual", "hull", "span")


@dataclass
class Code:
    """A linear code over F_p with an echelon basis w.r.t. the G_j order."""

    n: int
    q: int
    j: int
    k: int
    kind: str
    geometry: GeometryIndex
    pivots: list[int]
    rows: list  # dense rows in the linalg representation

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def p(self) -> int:
        return self.geometry.field.p

    @property
    def length(self) -> int:
        return len(self.geometry)

    def basis_vectors(self) -> list[CodeVector]:
        return [CodeVector.from_dense(self.geometry, r) for r in self.rows]

    def contains_dense(self, row) -> bool:
        return linalg.in_span(self.p, self.pivots, self.rows, row)

    def __repr__(self) -> str:
        return (f"Code({self.kind} C_{{{self.j},{self.k}}}"
                f"({self.n},{self.q}), dim={self.dim})")


def membership(v: CodeVector, code: Code) -> bool:
    if v.geometry is not code.geometry:
        raise ValueError("vector and code geometries differ")
    return code.contains_dense(v.to_dense())


def _generator_rows(field: GF, n: int, j: int, k: int):
    sparse, nrows, ncols = incidence_matrix(n, field.q, k, j)
    p = field.p
    return [linalg.row_from_entries(p, ncols, [(c, 1) for c in cols])
            for cols in sparse], ncols


def build_code(n: int, q: int, j: int, k: int, kind: str = "primal") -> Code:
    """Construct C_{j,k}(n,q), its dual, hull or span, with echelon basis.

    The hull is computed two independent ways (basis intersection with the
    dual of C_{j,n-k+j}, and the solution of c.1 = 0 inside the code) and
    the two results are required to agree.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if not (0 <= j < k < n):
        raise ValueError(f"need 0 <= j < k < n, got j={j}, k={k}, n={n}")
    field = field_of_size(q)
    p = field.p
    geom = geometry_index(field, n, j)
    gen, ncols = _generator_rows(field, n, j, k)
    pivots, rows = linalg.echelon(p, gen, ncols)
    if kind == "primal":
        return Code(n, q, j, k, kind, geom, pivots, rows)
    if kind == "dual":
        kpiv, krows = linalg.kernel(p, rows, ncols)
        return Code(n, q, j, k, kind, geom, kpiv, krows)
    # hull and span pair the code with C_{j,n-k+j}(n,q)
    k2 = n - k + j
    if not (j < k2 < n):
        raise ValueError(f"companion parameter n-k+j={k2} out of range")
    gen2, _ = _generator_rows(field, n, j, k2)
    piv2, rows2 = linalg.echelon(p, gen2, ncols)
    kpiv2, krows2 = linalg.kernel(p, rows2, ncols)
    if kind == "span":
        spiv, srows = linalg.echelon(p, rows + krows2, ncols)
        return Code(n, q, j, k, kind, geom, spiv, srows)
    hp1, hr1 = linalg.intersect_spans(p, rows, krows2, ncols)
    hp2, hr2 = _hull_by_sum_condition(p, rows, ncols)
    if (hp1, hr1) != (hp2, hr2):
        raise AssertionError("hull cross-check failed: the two constructions "
                             "disagree")  # pragma: no cover
    return Code(n, q, j, k, kind, geom, hp1, hr1)


def _hull_by_sum_condition(p: int, rows, ncols: int):
    """{c in rowspace : c . 1 = 0} via one linear condition on coefficients."""
    sums = [sum(v for _, v in linalg.row_entries(p, ncols, r)) % p for r in rows]
    cond = linalg.row_from_entries(p, len(rows), enumerate(sums))
    _, coeff_basis = linalg.kernel(p, [cond], len(rows))
    out = []
    for coeffs in coeff_basis:
        acc = linalg.zero_row(p, ncols)
        for i in range(len(rows)):
            c = linalg.row_get(p, coeffs, i)
            if c:
                acc = linalg.row_addmul(p, acc, c, rows[i])
        out.append(acc)
    return linalg.echelon(p, out, ncols)


@dataclass
class WeightReport:
    """Result of a minimum-weight search."""

    weight: int
    witness: CodeVector
    exhaustive: bool
    min_words: Optional[list[CodeVector]] = None


def enumerate_codewords(code: Code, cap: Optional[int] = None) -> Iterator[tuple[CodeVector, int]]:
    """Yield every codeword exactly once with its weight, Gray-code order."""
    cap = word_cap() if cap is None else cap
    total = code.p ** code.dim
    if total > cap:
        raise CapExceeded(f"{total} codewords exceed enumeration cap {cap}")
    geom = code.geometry
    for _, vec, w in _walk_words(code):
        yield CodeVector.from_dense(geom, vec), w


def _walk_words(code: Code) -> Iterator[tuple[int, object, int]]:
    """Internal Gray walk: yields (coefficient index, dense row, weight)."""
    p, rows, ncols = code.p, code.rows, code.length
    if p == 2:
        acc = 0
        coeff = 0
        yield 0, acc, 0
        for i in range(1, 1 << len(rows)):
            t = (i & -i).bit_length() - 1
            acc ^= rows[t]
            coeff ^= 1 << t
            yield coeff, acc, acc.bit_count()
        return
    m = len(rows)
    sparse = [linalg.row_entries(p, ncols, r) for r in rows]
    vec = [0] * ncols
    digits = [0] * m
    focus = list(range(m + 1))
    direction = [1] * m
    weight = 0
    yield 0, vec, 0
    while True:
        jj = focus[0]
        focus[0] = 0
        if jj == m:
            return
        delta = direction[jj]
        digits[jj] += delta
        step = delta % p
        for c, rv in sparse[jj]:
            old = vec[c]
            new = (old + step * rv) % p
            vec[c] = new
            weight += (new != 0) - (old != 0)
        if digits[jj] in (0, p - 1):
            direction[jj] = -direction[jj]
            focus[jj] = focus[jj + 1]
            focus[jj + 1] = jj + 1
        coeff = 0
        for d in reversed(digits):
            coeff = coeff * p + d
        yield coeff, vec, weight


def min_weight(code: Code, cap: Optional[int] = None, seed: int = 0,
               collect: bool = False) -> WeightReport:
    """Minimum weight of the code; exhaustive when p^dim fits under the cap.

    Beyond the cap the search is a bounded heuristic (all combinations of up
    to three basis rows plus seeded random re-echelon restarts) and the
    report says so via ``exhaustive=False``.  With ``collect=True`` an
    exhaustive report also carries every minimum-weight word.
    """
    cap = word_cap() if cap is None else cap
    geom = code.geometry
    if code.dim == 0:
        return WeightReport(0, zero_word(geom), True,
                            [] if collect else None)
    if code.p ** code.dim <= cap:
        if code.p == 2 and code.dim > _GRAY_LOOP_MAX_DIM:
            best, wit, words = _min_weight_mitm(code, collect)
        else:
            best, wit, words = _min_weight_walk(code, collect)
        report = WeightReport(best, CodeVector.from_dense(geom, wit), True)
        if collect:
            report.min_words = [CodeVector.from_dense(geom, w) for w in words]
        return report
    best, wit = _min_weight_heuristic(code, seed)
    return WeightReport(best, CodeVector.from_dense(geom, wit), False)


def _min_weight_walk(code: Code, collect: bool):
    best = code.length + 1
    best_coeff = None
    witness = None
    words = []
    for coeff, vec, w in _walk_words(code):
        if coeff == 0:
            continue
        if w < best or (w == best and coeff < best_coeff):
            if w < best:
                words = []
            best, best_coeff = w, coeff
            witness = vec if code.p == 2 else list(vec)
        if collect and w == best:
            words.append(vec if code.p == 2 else tuple(vec))
    if collect:
        words = sorted(set(words)) if code.p == 2 else sorted(set(words))
    return best, witness, words


def _popcount_u64(arr: np.ndarray, lut: np.ndarray) -> np.ndarray:
    return lut[arr.view(np.uint8)].reshape(arr.shape + (8,)).sum(axis=-1)


def _min_weight_mitm(code: Code, collect: bool):
    """Exhaustive GF(2) scan by meet-in-the-middle over split basis halves."""
    ncols = code.length
    nwords = (ncols + 63) // 64
    dim = code.dim

    def to_words(mask: int) -> list[int]:
        return [(mask >> (64 * t)) & 0xFFFFFFFFFFFFFFFF for t in range(nwords)]

    half = dim // 2
    sides = []
    for rows in (code.rows[:half], code.rows[half:]):
        combos = np.zeros((1, nwords), dtype=np.uint64)
        for r in rows:
            shifted = combos ^ np.array(to_words(r), dtype=np.uint64)
            combos = np.concatenate([combos, shifted])
        sides.append(combos)
    ca, cb = sides
    lut = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)
    best = ncols + 1
    best_pair = None
    pairs: list[tuple[int, int]] = []
    block = max(1, (1 << 22) // max(1, len(cb)))
    for a0 in range(0, len(ca), block):
        chunk = ca[a0:a0 + block]
        x = chunk[:, None, :] ^ cb[None, :, :]
        w = _popcount_u64(x, lut).sum(axis=-1).astype(np.int64)
        if a0 == 0:
            w[0, 0] = ncols + 2  # exclude the zero word
        mn = int(w.min())
        if mn < best:
            best = mn
            pairs = []
            best_pair = None
        if mn == best:
            ii, jj = np.nonzero(w == best)
            for a, b in zip(ii.tolist(), jj.tolist()):
                ga, gb = a0 + a, b
                if collect:
                    pairs.append((ga, gb))
                coeff = ga | (gb << half)
                if best_pair is None or coeff < best_pair[0]:
                    best_pair = (coeff, ga, gb)
    def mask_of(ga: int, gb: int) -> int:
        words = ca[ga] ^ cb[gb]
        out = 0
        for t in range(nwords):
            out |= int(words[t]) << (64 * t)
        return out

    witness = mask_of(best_pair[1], best_pair[2])
    words = sorted({mask_of(a, b) for a, b in pairs}) if collect else []
    return best, witness, words


def _min_weight_heuristic(code: Code, seed: int):
    p, rows, ncols = code.p, code.rows, code.length
    best = ncols + 1
    witness = None

    def consider(vec):
        nonlocal best, witness
        w = linalg.row_weight(p, vec)
        if 0 < w < best:
            best, witness = w, vec

    units = range(1, p)
    for r in rows:
        consider(r)
    for size in (2, 3):
        for idxs in combinations(range(len(rows)), size):
            for coeffs in product(units, repeat=size - 1):
                vec = rows[idxs[0]]
                for t, c in zip(idxs[1:], coeffs):
                    vec = linalg.row_addmul(p, vec, c, rows[t])
                consider(vec)
    rng = random.Random(seed)
    for _ in range(8):
        perm = list(range(ncols))
        rng.shuffle(perm)
        permuted = [_permute_row(p, r, perm, ncols) for r in rows]
        _, ech = linalg.echelon(p, permuted, ncols)
        inv = [0] * ncols
        for i, c in enumerate(perm):
            inv[c] = i
        back = [_permute_row(p, r, inv, ncols) for r in ech]
        for r in back:
            consider(r)
        for a, b in combinations(range(len(back)), 2):
            for c in units:
                consider(linalg.row_addmul(p, back[a], c, back[b]))
    return best, witness


def _permute_row(p: int, row, perm: list[int], ncols: int):
    entries = [(perm[c], v) for c, v in linalg.row_entries(p, ncols, row)]
    return linalg.row_from_entries(p, ncols, entries)
