"""Dense linear algebra over prime fields F_p.

Two row representations, chosen by characteristic: for p = 2 a row is an int
bitmask (bit c = column c, XOR is row addition); for odd p a row is a list of
ints in [0, p).  All functions take p and ncols explicitly and work on either
representation.  This is the performance core behind rank, kernel and
codeword enumeration.
"""

from __future__ import annotations

from typing import Iterable


def zero_row(p: int, ncols: int):
    return 0 if p == 2 else [0] * ncols


def row_from_entries(p: int, ncols: int, entries: Iterable[tuple[int, int]]):
    """Build a dense row from (column, value) pairs."""
    if p == 2:
        m = 0
        for c, v in entries:
            if v & 1:
                m |= 1 << c
        return m
    row = [0] * ncols
    for c, v in entries:
        row[c] = v % p
    return row


def row_entries(p: int, ncols: int, row) -> list[tuple[int, int]]:
    """Sparse (column, value) pairs of a dense row, columns ascending."""
    if p == 2:
        out = []
        while row:
            low = row & -row
            out.append((low.bit_length() - 1, 1))
            row ^= low
        return out
    return [(c, v) for c, v in enumerate(row) if v]


def row_weight(p: int, row) -> int:
    if p == 2:
        return row.bit_count()
    return sum(1 for v in row if v)


def row_add(p: int, a, b):
    if p == 2:
        return a ^ b
    return [(x + y) % p for x, y in zip(a, b)]


def row_scale(p: int, c: int, a):
    if p == 2:
        return a if c & 1 else 0
    return [(c * x) % p for x in a]


def row_addmul(p: int, a, c: int, b):
    """a + c*b."""
    if p == 2:
        return a ^ b if c & 1 else a
    return [(x + c * y) % p for x, y in zip(a, b)]


def row_dot(p: int, a, b) -> int:
    if p == 2:
        return (a & b).bit_count() & 1
    return sum(x * y for x, y in zip(a, b)) % p


def row_get(p: int, row, col: int) -> int:
    if p == 2:
        return (row >> col) & 1
    return row[col]


def echelon(p: int, rows, ncols: int) -> tuple[list[int], list]:
    """Reduced row-echelon form of the row space; returns (pivots, rows).

    Rows come out with strictly increasing pivot columns, pivot entries 1 and
    pivot columns cleared elsewhere, so the output is the canonical basis of
    the span.  Zero rows are dropped.
    """
    work = list(rows)
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(work)):
            if row_get(p, work[r], col):
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        lead = row_get(p, work[rank], col)
        if lead != 1:
            work[rank] = row_scale(p, pow(lead, p - 2, p), work[rank])
        for r in range(len(work)):
            if r != rank and row_get(p, work[r], col):
                work[r] = row_addmul(p, work[r], p - row_get(p, work[r], col),
                                     work[rank])
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return pivots, work[:rank]


def reduce_row(p: int, pivots: list[int], basis: list, v):
    """Remainder of v after elimination against an echelon basis."""
    for col, b in zip(pivots, basis):
        c = row_get(p, v, col)
        if c:
            v = row_addmul(p, v, p - c, b)
    return v


def in_span(p: int, pivots: list[int], basis: list, v) -> bool:
    return row_weight(p, reduce_row(p, pivots, basis, v)) == 0


def coords_in_span(p: int, pivots: list[int], basis: list, v):
    """Coefficients of v over the echelon basis, or None if not in the span."""
    coeffs = []
    for col, b in zip(pivots, basis):
        c = row_get(p, v, col)
        coeffs.append(c)
        if c:
            v = row_addmul(p, v, p - c, b)
    if row_weight(p, v) != 0:
        return None
    return coeffs


def kernel(p: int, rows, ncols: int) -> tuple[list[int], list]:
    """Echelon basis of {v : r . v = 0 for every row r}."""
    pivots, ech = echelon(p, rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        entries = [(f, 1)]
        for col, r in zip(pivots, ech):
            c = row_get(p, r, f)
            if c:
                entries.append((col, (p - c) % p))
        basis.append(row_from_entries(p, ncols, entries))
    return echelon(p, basis, ncols)


def intersect_spans(p: int, rows_a, rows_b, ncols: int) -> tuple[list[int], list]:
    """Echelon basis of rowspace(A) n rowspace(B), by the Zassenhaus trick."""
    stacked = []
    for r in rows_a:
        stacked.append(_concat(p, r, r, ncols))
    for r in rows_b:
        stacked.append(_concat(p, r, zero_row(p, ncols), ncols))
    _, ech = echelon(p, stacked, 2 * ncols)
    inter = []
    for r in ech:
        left, right = _split(p, r, ncols)
        if row_weight(p, left) == 0:
            inter.append(right)
    return echelon(p, inter, ncols)


def _concat(p: int, left, right, ncols: int):
    if p == 2:
        return left | (right << ncols)
    return list(left) + list(right)


def _split(p: int, row, ncols: int):
    if p == 2:
        mask = (1 << ncols) - 1
        return row & mask, row >> ncols
    return row[:ncols], row[ncols:]
