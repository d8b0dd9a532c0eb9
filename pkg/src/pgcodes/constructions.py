"""Explicit code word constructions for the dual codes.

Standard words, pull-backs (with detection), embedded words, truncated
cones and field-reduction words.  Each function builds a sparse CodeVector
over the canonical geometry index; membership claims about the results are
exercised by the verification suites rather than asserted here.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .codespace import CodeVector
from .field import GF, subfield_expand
from .geometry import (GeometryIndex, Subspace, canonicalize, empty_subspace,
                       from_chart, geometry_index, incidence, intersect,
                       pivot_complement, skew, span, subspaces_within, to_chart)
from .maps import pa


def standard_word(iota: Subspace, pi: Subspace, rho: Subspace) -> CodeVector:
    """Difference of the two pencils of j-spaces through iota inside pi and rho.

    iota is a (j-1)-space (empty for j = 0); pi and rho are distinct
    (n-k+j)-spaces meeting in a hyperplane of both that contains iota.  The
    result lies in the dual of C_{j,k}(n,q) with k = n + j - dim(pi) and has
    weight 2 q^{n-k}.
    """
    if pi == rho:
        raise ValueError("pi and rho must differ")
    if pi.dim != rho.dim:
        raise ValueError("pi and rho must have the same dimension")
    sigma = intersect(pi, rho)
    if sigma.dim != pi.dim - 1:
        raise ValueError("pi and rho must meet in a hyperplane of both")
    if not incidence(iota, sigma):
        raise ValueError("iota must lie in the intersection of pi and rho")
    j = iota.dim + 1
    geom = geometry_index(pi.field, pi.n, j)
    p = geom.field.p
    entries: dict[int, int] = {}
    for space, sign in ((pi, 1), (rho, p - 1)):
        for lam in subspaces_within(space, j):
            if incidence(iota, lam):
                idx = geom.find(lam)
                val = (entries.get(idx, 0) + sign) % p
                if val:
                    entries[idx] = val
                else:
                    entries.pop(idx, None)
    return CodeVector(geom, entries)


def all_standard_words(n: int, q: int, j: int, k: int) -> Iterator[CodeVector]:
    """Every standard word of C_{j,k}(n,q)^perp once per (iota, {pi, rho})."""
    from .field import field_of_size

    field = field_of_size(q)
    d = n - k + j
    big = geometry_index(field, n, d)
    for a in range(len(big)):
        for b in range(a + 1, len(big)):
            pi, rho = big[a], big[b]
            sigma = intersect(pi, rho)
            if sigma.dim != d - 1:
                continue
            if j == 0:
                yield standard_word(empty_subspace(field, n), pi, rho)
            else:
                for iota in subspaces_within(sigma, j - 1):
                    yield standard_word(iota, pi, rho)


def pull_back(base: CodeVector, pi: Subspace, iota: Subspace) -> CodeVector:
    """Lift a word over the chart of the (n-j)-space pi to V(j,n,q) through iota.

    The lifted word is supported on the j-spaces through iota, each taking
    the base value at its intersection point with pi; the weight is
    preserved.
    """
    n = pi.n
    j = iota.dim + 1
    if base.geometry.j != 0:
        raise ValueError("base word must live over points")
    if base.geometry.n != pi.dim:
        raise ValueError("base word geometry does not match the chart of pi")
    if pi.dim != n - j:
        raise ValueError(f"pi must have dimension n-j = {n - j}")
    if not skew(iota, pi):
        raise ValueError("iota and pi must be skew")
    geom = geometry_index(pi.field, n, j)
    entries: dict[int, int] = {}
    for pt_idx, val in base.entries.items():
        pt = from_chart(base.geometry[pt_idx], pi)
        lam = span(iota, pt)
        entries[geom.find(lam)] = val
    return CodeVector(geom, entries)


def detect_pull_back(c: CodeVector) -> Optional[tuple[Subspace, CodeVector, Subspace]]:
    """If the support j-spaces share a (j-1)-space, return (iota, base, pi).

    The common space is the first in canonical order when several exist (a
    single-j-space support leaves it ambiguous).  The base word is the
    quotient of c by iota, evaluated on the coordinate complement pi of
    iota; the round trip through pull_back is checked before returning.
    """
    geom = c.geometry
    if geom.j < 1:
        raise ValueError("pull-back detection needs j >= 1")
    if c.is_zero():
        return None
    supp = sorted(c.entries)
    first = geom[supp[0]]
    candidates = [iota for iota in subspaces_within(first, geom.j - 1)
                  if all(incidence(iota, geom[s]) for s in supp[1:])]
    if not candidates:
        return None
    iota = min(candidates, key=Subspace.key)
    pi = pivot_complement(iota)
    base = pa(iota, pi, c)
    if pull_back(base, pi, iota) != c:
        raise AssertionError("pull-back reconstruction mismatch")  # pragma: no cover
    return iota, base, pi


def embed(c: CodeVector, pi: Subspace) -> CodeVector:
    """Extend a word over the chart of the n'-space pi by zero to V(j,N,q)."""
    if c.geometry.n != pi.dim:
        raise ValueError("word geometry does not match the chart of pi")
    geom = geometry_index(pi.field, pi.n, c.geometry.j)
    entries = {}
    for idx, val in c.entries.items():
        lam = from_chart(c.geometry[idx], pi)
        entries[geom.find(lam)] = val
    return CodeVector(geom, entries)


def truncated_cone(c: CodeVector, pi: Subspace, tau: Subspace) -> CodeVector:
    """Cone a plane dual word over the vertex tau, truncated at the vertex.

    pi is a plane, tau an (n-3)-space skew to it; points of tau get value 0
    and any other point P takes the base value at span(P,tau) meet pi.  The
    weight multiplies by q^{n-2}.
    """
    n = pi.n
    if n < 3:
        raise ValueError("ambient dimension must be at least 3")
    if pi.dim != 2 or c.geometry.n != 2 or c.geometry.j != 0:
        raise ValueError("base word must be a point function over a plane chart")
    if tau.dim != n - 3:
        raise ValueError(f"tau must have dimension n-3 = {n - 3}")
    if not skew(tau, pi):
        raise ValueError("tau and pi must be skew")
    geom = geometry_index(pi.field, n, 0)
    entries = {}
    for idx, P in enumerate(geom.subspaces):
        if incidence(P, tau):
            continue
        foot = intersect(span(P, tau), pi)
        val = c.get(c.geometry.find(to_chart(foot, pi)))
        if val:
            entries[idx] = val
    return CodeVector(geom, entries)


def blowup(s: Subspace, base: GF) -> Subspace:
    """Field reduction of a subspace of PG(n,q^e) into PG((n+1)e-1, q).

    A d-space maps to a ((d+1)e - 1)-space; coordinates expand over the
    polynomial basis {1, w, ..., w^{e-1}} via subfield_expand, one lifted
    row per basis row and basis scalar.
    """
    ext = s.field
    if ext.base is not base:
        raise ValueError("subspace field is not a tower over the given base")
    e = ext.e
    big_n = (s.n + 1) * e - 1
    rows = []
    for row in s.basis:
        for t in range(e):
            wt = ext.pow(ext.generator, t)
            lifted: list[int] = []
            for x in row:
                lifted.extend(subfield_expand(ext, ext.mul(wt, x), base))
            rows.append(lifted)
    out = canonicalize(base, big_n, rows)
    if s.dim >= 0 and out.dim != (s.dim + 1) * e - 1:
        raise AssertionError("blow-up dimension mismatch")  # pragma: no cover
    return out


def field_reduce_word(c: CodeVector, ext: GF) -> CodeVector:
    """Contract a dual word of C_{2e-1}(N,q) to one of C_1(n,q^e).

    N = (n+1)e - 1; the value at a point P of PG(n,q^e) is the sum of c over
    the points of the spread element blowup(P).  The weight cannot grow.
    """
    base = c.geometry.field
    if ext.base is not base:
        raise ValueError("extension is not a tower over the word's field")
    e = ext.e
    N = c.geometry.n
    if c.geometry.j != 0:
        raise ValueError("field reduction starts from a point function")
    if (N + 1) % e != 0:
        raise ValueError(f"ambient dimension {N} is not (n+1)e-1 for e={e}")
    n = (N + 1) // e - 1
    target = geometry_index(ext, n, 0)
    src = c.geometry
    p = base.p
    entries = {}
    for idx, P in enumerate(target.subspaces):
        elem = blowup(P, base)
        acc = 0
        for pt in subspaces_within(elem, 0):
            acc += c.get(src.find(pt))
        acc %= p
        if acc:
            entries[idx] = acc
    return CodeVector(target, entries)


def spread_elements(ext: GF, n: int) -> list[Subspace]:
    """The (e-1)-spread of PG((n+1)e-1, q) induced by the points of PG(n,q^e)."""
    base = ext.base
    if base is None:
        raise ValueError("extension field required")
    pts = geometry_index(ext, n, 0)
    return [blowup(P, base) for P in pts.subspaces]
