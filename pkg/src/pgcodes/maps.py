"""The three structural maps between the spaces V(j,n,q).

* ``proj``: project from a point R onto a hyperplane pi; the value at a
  j-space of pi sums the input over all j-spaces of the (j+1)-space spanned
  with R.
* ``pa``: quotient by an i-space iota, evaluated on a complementary space
  pi; the value at mu reads the input at span(mu, iota).
* ``la``: push down to i-spaces by summing over all j-spaces through each.

Codomains over a subspace pi are re-indexed as full projective spaces via
the fixed RREF chart of pi, so results live over the canonical geometry
index and can be tested for membership in smaller codes directly.  Index
tables are cached per (map, arguments) pair, making repeated evaluation
over many code words cheap.
"""

from __future__ import annotations

from .codespace import CodeVector
from .geometry import (GeometryIndex, Subspace, from_chart, geometry_index,
                       incidence, skew, span, subspaces_within)

_PROJ_CACHE: dict[tuple, tuple] = {}
_PA_CACHE: dict[tuple, tuple] = {}
_LA_CACHE: dict[tuple, list] = {}


def _proj_tables(geom: GeometryIndex, R: Subspace, pi: Subspace):
    key = (id(geom), R.basis, pi.basis)
    if key in _PROJ_CACHE:
        return _PROJ_CACHE[key]
    field, n, j = geom.field, geom.n, geom.j
    target = geometry_index(field, n - 1, j)
    fanout: list[list[int]] = [[] for _ in range(len(geom))]
    for t, lam_c in enumerate(target.subspaces):
        lam = from_chart(lam_c, pi)
        through = span(R, lam)
        for sub in subspaces_within(through, j):
            fanout[geom.find(sub)].append(t)
    _PROJ_CACHE[key] = (target, fanout)
    return target, fanout


def proj(R: Subspace, pi: Subspace, v: CodeVector) -> CodeVector:
    """proj^{(j)}_{R,pi}(v), as a code vector over PG(n-1,q) via pi's chart."""
    geom = v.geometry
    if R.dim != 0:
        raise ValueError("R must be a point")
    if pi.dim != geom.n - 1:
        raise ValueError("pi must be a hyperplane")
    if incidence(R, pi):
        raise ValueError("R must not lie in pi")
    target, fanout = _proj_tables(geom, R, pi)
    p = v.p
    acc: dict[int, int] = {}
    for s, val in v.entries.items():
        for t in fanout[s]:
            acc[t] = (acc.get(t, 0) + val) % p
    return CodeVector(target, acc)


def _pa_table(geom: GeometryIndex, iota: Subspace, pi: Subspace):
    key = (id(geom), iota.basis, pi.basis)
    if key in _PA_CACHE:
        return _PA_CACHE[key]
    field, j = geom.field, geom.j
    i = iota.dim
    target = geometry_index(field, pi.dim, j - i - 1)
    source_to_target: dict[int, int] = {}
    for t, mu_c in enumerate(target.subspaces):
        mu = from_chart(mu_c, pi)
        lam = span(mu, iota)
        source_to_target[geom.find(lam)] = t
    _PA_CACHE[key] = (target, source_to_target)
    return target, source_to_target


def pa(iota: Subspace, pi: Subspace, v: CodeVector) -> CodeVector:
    """The quotient map by iota: output(mu) = v(span(mu, iota))."""
    geom = v.geometry
    i, j, n = iota.dim, geom.j, geom.n
    if not -1 <= i < j:
        raise ValueError(f"need -1 <= dim(iota) < j, got {i} and j={j}")
    if pi.dim != n - i - 1:
        raise ValueError(f"pi must have dimension n-i-1 = {n - i - 1}")
    if not skew(iota, pi):
        raise ValueError("iota and pi must be skew")
    target, table = _pa_table(geom, iota, pi)
    entries = {table[s]: val for s, val in v.entries.items() if s in table}
    return CodeVector(target, entries)


def _la_table(geom: GeometryIndex, i: int) -> list[tuple[int, ...]]:
    key = (id(geom), i)
    if key in _LA_CACHE:
        return _LA_CACHE[key]
    lower = geometry_index(geom.field, geom.n, i)
    table = [tuple(lower.find(s) for s in subspaces_within(lam, i))
             for lam in geom.subspaces]
    _LA_CACHE[key] = table
    return table


def la(i: int, v: CodeVector) -> CodeVector:
    """Sum v over all j-spaces through each i-space."""
    geom = v.geometry
    if not 0 <= i < geom.j:
        raise ValueError(f"need 0 <= i < j = {geom.j}")
    table = _la_table(geom, i)
    lower = geometry_index(geom.field, geom.n, i)
    p = v.p
    acc: dict[int, int] = {}
    for s, val in v.entries.items():
        for t in table[s]:
            acc[t] = (acc.get(t, 0) + val) % p
    return CodeVector(lower, acc)
