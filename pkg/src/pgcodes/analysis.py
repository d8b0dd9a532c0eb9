"""Bounds, classifications and theorem verification procedures.

Weight-bound tables split the prime powers into five classes; small-weight
code words are classified as combinations of at most two k-spaces by exact
search; the verify_* procedures run the classification, hull, dual
reduction, cyclicity, span and map-lemma statements over exhaustively
enumerable instances and emit one pass/fail record per assertion.  Every
record carries an ``exhaustive`` flag so a bounded search can never pose as
a proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional

from . import linalg
from .codespace import (Code, CodeVector, build_code, dot, enumerate_codewords,
                        kspace_word, membership, min_weight, ones_word,
                        support_i, word_cap, zero_word)
from .field import field_of_size, split_prime_power
from .geometry import (CapExceeded, GeometryIndex, Subspace, gaussian_coeff,
                       geometry_index, incidence, intersect, singer_cycle,
                       singer_point_order, skew, span, subspaces_within, theta)
from .maps import la, pa, proj
from .constructions import all_standard_words


# -- the weight bound tables ---------------------------------------------

def q_class(q: int) -> str:
    """Which of the five prime-power classes contains q."""
    p, h = split_prime_power(q)  # raises for non prime powers
    if q <= 9 or q in (16, 25, 27, 49):
        return "Q1"
    if 9 < q <= 23 or q in (29, 31, 32, 121):
        return "Q2"
    if q > 32 and h == 1:
        return "Q3"
    if q > 32 and p == 2:
        return "Q4"
    return "Q5"


def two_space_bound(k: int, q: int) -> int:
    """The classification threshold for codes of points and k-spaces."""
    cls = q_class(q)
    if cls == "Q1":
        return 2 * q ** k
    if cls == "Q2":
        return 2 * theta(k, q)
    if cls == "Q3":
        return 3 * q ** k - 3 * q ** (k - 1) - 1
    if cls == "Q4":
        return 3 * q ** k - 3 * q ** (k - 1) + theta(k - 2, q) - 1
    return 3 * q ** k - 2 * q ** (k - 1) + theta(k - 2, q) - 1


def two_space_bound_jk(j: int, k: int, q: int) -> Fraction:
    """The classification threshold for codes of j- and k-spaces (exact)."""
    cls = q_class(q)
    g = gaussian_coeff(k + 1, j + 1, q)
    if cls == "Q1":
        return one_space_bound(j, k, q)
    if cls == "Q2":
        return Fraction(2 * g)
    if cls in ("Q3", "Q4"):
        return (3 - Fraction(7, q)) * g
    return (3 - Fraction(6, q)) * g


def one_space_bound(j: int, k: int, q: int) -> Fraction:
    """Below this weight every code word is a scalar multiple of a k-space."""
    return Fraction(2 * q ** k * gaussian_coeff(k, j, q), theta(j, q))


@dataclass(frozen=True)
class WeightBoundTable:
    q_class: str
    W_k: int
    W_jk: Fraction


def weight_bound_table(j: int, k: int, q: int) -> WeightBoundTable:
    return WeightBoundTable(q_class(q), two_space_bound(k, q),
                            two_space_bound_jk(j, k, q))


def two_space_weight(k: int, q: int, s: int, epsilon: int) -> int:
    """Weight of a combination of two k-spaces meeting in dimension s."""
    if not -1 <= s < k:
        raise ValueError(f"need -1 <= s < k, got s={s}")
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    return 2 * theta(k, q) - (1 + epsilon) * theta(s, q)


def predicted_small_spectrum(n: int, k: int, q: int) -> set[int]:
    """All weights below 2*theta_k realized by combinations of <= 2 k-spaces."""
    p, _ = split_prime_power(q)
    epsilons = (1,) if p == 2 else (0, 1)
    out = {theta(k, q)}
    for s in range(max(0, 2 * k - n), k):
        for eps in epsilons:
            out.add(two_space_weight(k, q, s, eps))
    return out


# -- reports ---------------------------------------------------------------

@dataclass
class Assertion:
    name: str
    params: dict
    expected: object
    observed: object
    passed: bool
    exhaustive: bool

    def record(self) -> dict:
        return {"name": self.name, "params": self.params,
                "expected": repr(self.expected), "observed": repr(self.observed),
                "pass": self.passed, "exhaustive": self.exhaustive}


@dataclass
class Report:
    name: str
    assertions: list[Assertion] = dc_field(default_factory=list)

    def check(self, name: str, params: dict, expected, observed,
              exhaustive: bool = True, passed: Optional[bool] = None) -> Assertion:
        if passed is None:
            passed = expected == observed
        a = Assertion(name, params, expected, observed, passed, exhaustive)
        self.assertions.append(a)
        return a

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def records(self) -> list[dict]:
        return [a.record() for a in self.assertions]


# -- classification --------------------------------------------------------

@dataclass
class Classification:
    """Decomposition of a code word into at most two k-spaces."""

    kind: str  # zero | one_space | two_spaces | other
    spaces: tuple[tuple[Subspace, int], ...]
    exhaustive_search: bool
    decompositions: Optional[list[tuple[tuple[Subspace, int], ...]]] = None


_KWORD_CACHE: dict[tuple, tuple] = {}


def _kspace_words(field, n: int, j: int, k: int):
    key = (id(field), n, j, k)
    if key not in _KWORD_CACHE:
        geomk = geometry_index(field, n, k)
        words = [kspace_word(kappa, j) for kappa in geomk.subspaces]
        supports = [frozenset(w.entries) for w in words]
        _KWORD_CACHE[key] = (geomk, words, supports)
    return _KWORD_CACHE[key]


def decompose_into_spaces(c: CodeVector, k: int,
                          all_decompositions: bool = False) -> Classification:
    """Exact search for c as a combination of at most two k-space words.

    Single spaces are tried before pairs, both in canonical order; the
    first match wins.  Over F_2 a two-space decomposition need not be
    unique, so ``all_decompositions`` collects every match instead.
    """
    geom = c.geometry
    p = geom.field.p
    geomk, words, supports = _kspace_words(geom.field, geom.n, geom.j, k)
    if c.is_zero():
        return Classification("zero", (), True)
    supp = frozenset(c.entries)
    found: list[tuple[tuple[Subspace, int], ...]] = []
    vals = set(c.entries.values())
    if len(vals) == 1:
        alpha = next(iter(vals))
        for idx, s in enumerate(supports):
            if s == supp:
                found.append(((geomk[idx], alpha),))
                if not all_decompositions:
                    break
    if found and not all_decompositions:
        return Classification("one_space", found[0], True)
    pair_found: list[tuple[tuple[Subspace, int], ...]] = []
    candidates = [idx for idx, s in enumerate(supports) if s & supp]
    for a_pos in range(len(candidates)):
        a = candidates[a_pos]
        for b_pos in range(a_pos + 1, len(candidates)):
            b = candidates[b_pos]
            if not supp <= (supports[a] | supports[b]):
                continue
            for alpha in range(1, p):
                for beta in range(1, p):
                    if words[a].scale(alpha).add(words[b].scale(beta)) == c:
                        pair_found.append(((geomk[a], alpha), (geomk[b], beta)))
                        if not all_decompositions:
                            break
                if pair_found and not all_decompositions:
                    break
            if pair_found and not all_decompositions:
                break
        if pair_found and not all_decompositions:
            break
    if found:
        return Classification("one_space", found[0], True,
                              found + pair_found if all_decompositions else None)
    if pair_found:
        return Classification("two_spaces", pair_found[0], True,
                              pair_found if all_decompositions else None)
    return Classification("other", (), True)


def classify_small_weight(c: CodeVector, code: Code,
                          all_decompositions: bool = False) -> Classification:
    """Classify a code word of ``code``; raises if c is not a member."""
    if not membership(c, code):
        raise ValueError("vector is not a member of the code")
    return decompose_into_spaces(c, code.k, all_decompositions)


def reconstruct(cls: Classification, geometry: GeometryIndex, j: int) -> CodeVector:
    out = zero_word(geometry)
    for kappa, coeff in cls.spaces:
        out = out.add(kspace_word(kappa, j).scale(coeff))
    return out


# -- secants ---------------------------------------------------------------

@dataclass
class SecantProfile:
    histogram: dict[int, int]
    n: int
    q: int

    def total(self) -> int:
        return sum(self.histogram.values())


_LINESETS_CACHE: dict[tuple, list] = {}


def _line_point_sets(field, n: int) -> list[frozenset[int]]:
    key = (id(field), n)
    if key not in _LINESETS_CACHE:
        geom0 = geometry_index(field, n, 0)
        lines = geometry_index(field, n, 1)
        _LINESETS_CACHE[key] = [
            frozenset(geom0.find(P) for P in subspaces_within(l, 0))
            for l in lines.subspaces]
    return _LINESETS_CACHE[key]


def secant_profile(S: Iterable[int], n: int, q: int) -> SecantProfile:
    """Histogram of |line meet S| over all lines of PG(n,q); S holds point indices."""
    field = field_of_size(q)
    pts = set(S)
    hist: dict[int, int] = {}
    for lset in _line_point_sets(field, n):
        m = len(lset & pts)
        hist[m] = hist.get(m, 0) + 1
    return SecantProfile(hist, n, q)


def hyperplane_containment(S: Iterable[int], n: int, q: int):
    """A hyperplane containing S, or one containing its complement, if any.

    Returns ("set", H), ("complement", H) or None.
    """
    field = field_of_size(q)
    geom0 = geometry_index(field, n, 0)
    pts = set(S)
    comp = set(range(len(geom0))) - pts
    for H in geometry_index(field, n, n - 1).subspaces:
        hset = {geom0.find(P) for P in subspaces_within(H, 0)}
        if pts <= hset:
            return "set", H
        if comp <= hset:
            return "complement", H
    return None


# -- verification procedures -----------------------------------------------

def _collect_min_words(code: Code, cap: Optional[int] = None):
    rep = min_weight(code, cap=cap, collect=True)
    if not rep.exhaustive:
        raise CapExceeded("minimum weight search was not exhaustive")
    return rep


def _difference_words(n: int, q: int, j: int, k: int) -> set[tuple]:
    """Keys of all scalar multiples of differences of two k-spaces through
    a common (k-1)-space."""
    field = field_of_size(q)
    p = field.p
    geomk = geometry_index(field, n, k)
    out: set[tuple] = set()
    for a in range(len(geomk)):
        for b in range(a + 1, len(geomk)):
            if intersect(geomk[a], geomk[b]).dim != k - 1:
                continue
            diff = kspace_word(geomk[a], j).sub(kspace_word(geomk[b], j))
            for alpha in range(1, p):
                out.add(diff.scale(alpha).as_key())
    return out


def verify_small_weight_theorem(n: int, q: int, j: int, k: int, bound: int,
                                expect_spaces: Optional[int] = None,
                                cap: Optional[int] = None) -> Report:
    """Classify every code word up to ``bound`` and check the hull statements."""
    report = Report("smallweight")
    params = {"n": n, "q": q, "j": j, "k": k, "bound": bound}
    if expect_spaces is None:
        expect_spaces = 2 if j == 0 else 1
    code = build_code(n, q, j, k)
    counts = {"zero": 0, "one_space": 0, "two_spaces": 0, "other": 0}
    bad = 0
    for word, w in enumerate_codewords(code, cap=cap):
        if w == 0 or w > bound:
            continue
        cls = decompose_into_spaces(word, k)
        counts[cls.kind] += 1
        if cls.kind == "other" or (expect_spaces == 1 and cls.kind == "two_spaces"):
            bad += 1
    report.check("small_words_decompose", params,
                 expected=0, observed=bad)
    report.check("classification_counts", params, expected="recorded",
                 observed=counts, passed=True)
    hull = build_code(n, q, j, k, "hull")
    report.check("hull_codimension", params, expected=code.dim - 1,
                 observed=hull.dim)
    rep = _collect_min_words(hull, cap=cap)
    expected_min = 2 * q ** (k - j) * gaussian_coeff(k, j, q)
    report.check("hull_min_weight", params, expected=expected_min,
                 observed=rep.weight)
    observed_keys = {w.as_key() for w in rep.min_words}
    expected_keys = _difference_words(n, q, j, k)
    report.check("hull_min_words_are_differences", params,
                 expected=len(expected_keys), observed=len(observed_keys),
                 passed=observed_keys == expected_keys)
    return report


def three_space_scan(n: int, q: int, k: int, cap: Optional[int] = None) -> Report:
    """Scan irreducible combinations of three k-spaces; weights must exceed W(k,q).

    Coefficient patterns fix the first scalar to 1: rescaling changes
    neither the weight nor reducibility.
    """
    report = Report("three_space")
    params = {"n": n, "q": q, "k": k}
    field = field_of_size(q)
    p = field.p
    geomk, words, _ = _kspace_words(field, n, 0, k)
    ncols = len(words[0].geometry)
    dense = [w.to_dense() for w in words]
    bound = two_space_bound(k, q)
    nk = len(words)
    scan_count = nk * (nk - 1) * (nk - 2) // 6 * (p - 1) ** 2
    if scan_count > (cap if cap is not None else word_cap()):
        raise CapExceeded(f"triple scan of {scan_count} combinations too large")
    min_irreducible = None
    scanned = irreducible = 0
    for a, b, c in combinations(range(len(words)), 3):
        for beta in range(1, p):
            for gamma in range(1, p):
                vec = linalg.row_addmul(p, dense[a], beta, dense[b])
                vec = linalg.row_addmul(p, vec, gamma, dense[c])
                scanned += 1
                word = CodeVector.from_dense(words[0].geometry, vec)
                cls = decompose_into_spaces(word, k)
                if cls.kind in ("zero", "one_space", "two_spaces"):
                    continue
                irreducible += 1
                w = word.weight()
                if min_irreducible is None or w < min_irreducible:
                    min_irreducible = w
    report.check("irreducible_triples_exceed_bound", params,
                 expected=f"> {bound}", observed=min_irreducible,
                 passed=min_irreducible is not None and min_irreducible > bound)
    report.check("scan_size", params, expected=scanned,
                 observed={"scanned": scanned, "irreducible": irreducible},
                 passed=scanned > 0)
    return report


def verify_dual_reduction(n: int, q: int, j: int, k: int,
                          cap: Optional[int] = None,
                          allow_heuristic: bool = False) -> Report:
    """d(C_{j,k}(n,q)^perp) = d(C_{0,1}(n-k+1,q)^perp), plus the q-even value
    and, for prime q, the standard-word characterisation."""
    report = Report("dual")
    params = {"n": n, "q": q, "j": j, "k": k}
    p, h = split_prime_power(q)
    dual = build_code(n, q, j, k, "dual")
    exhaustive = p ** dual.dim <= (cap if cap is not None else word_cap())
    if not exhaustive and not allow_heuristic:
        raise CapExceeded(
            f"dual has {p}^{dual.dim} words; pass a larger cap or allow_heuristic")
    rep1 = min_weight(dual, cap=cap, collect=exhaustive)
    small = build_code(n - k + 1, q, 0, 1, "dual")
    rep2 = _collect_min_words(small, cap=cap)
    report.check("reduction_to_point_line_dual", params, expected=rep2.weight,
                 observed=rep1.weight, exhaustive=rep1.exhaustive)
    if p == 2:
        report.check("q_even_value", params,
                     expected=(q + 2) * q ** (n - k - 1), observed=rep1.weight,
                     exhaustive=rep1.exhaustive)
    if h == 1 and rep1.exhaustive:
        std = set()
        for w in all_standard_words(n, q, j, k):
            for alpha in range(1, p):
                std.add(w.scale(alpha).as_key())
        observed = {w.as_key() for w in rep1.min_words}
        report.check("min_words_are_standard", params, expected=len(std),
                     observed=len(observed), passed=observed == std)
    return report


def cyclic_obstruction_holds(n: int, j: int, q: int) -> bool:
    """gauss(n+1,j+1,q) > q^{n+1}-1: no collineation is cyclic on j-spaces."""
    return gaussian_coeff(n + 1, j + 1, q) > q ** (n + 1) - 1


def verify_cyclicity(n: int, q: int, k: int) -> Report:
    """Shift-invariance of C_{0,k}(n,q) under the Singer point order, and the
    arithmetic obstruction for 1 <= j <= n-2."""
    report = Report("cyclic")
    params = {"n": n, "q": q, "k": k}
    field = field_of_size(q)
    geom0 = geometry_index(field, n, 0)
    f = singer_cycle(n, q)
    order = singer_point_order(f, geom0)
    report.check("singer_orbit_length", params, expected=theta(n, q),
                 observed=len(order))
    code = build_code(n, q, 0, k)
    npts = len(geom0)
    pos = [0] * npts
    for t, idx in enumerate(order):
        pos[idx] = t
    bad = 0
    for row in code.rows:
        vec = CodeVector.from_dense(geom0, row)
        shifted = {order[(pos[idx] + 1) % npts]: val
                   for idx, val in vec.entries.items()}
        if not membership(CodeVector(geom0, shifted), code):
            bad += 1
    report.check("shift_invariance", params, expected=0, observed=bad)
    if n >= 3:
        holds = all(cyclic_obstruction_holds(n, j, q) for j in range(1, n - 1))
        report.check("higher_j_obstruction", params, expected=True, observed=holds)
    return report


def verify_span_lemma(n: int, q: int, j: int, k: int, seed: int = 0,
                      cap: Optional[int] = None, samples: int = 40) -> Report:
    """Minimum words of the span code, and the constant-product membership test."""
    report = Report("span")
    params = {"n": n, "q": q, "j": j, "k": k}
    field = field_of_size(q)
    p = field.p
    spancode = build_code(n, q, j, k, "span")
    k2 = n - k + j
    dual2 = build_code(n, q, j, k2, "dual")
    report.check("span_dimension", params, expected=dual2.dim + 1,
                 observed=spancode.dim)
    rep = _collect_min_words(spancode, cap=cap)
    if j == 0:
        geomk, words, _ = _kspace_words(field, n, j, k)
        expected_keys = {w.scale(a).as_key()
                         for w in words for a in range(1, p)}
        observed = {w.as_key() for w in rep.min_words}
        report.check("span_min_words_are_kspaces", params,
                     expected=len(expected_keys), observed=len(observed),
                     passed=observed == expected_keys)
    else:
        bad = sum(0 if membership(w, dual2) else 1 for w in rep.min_words)
        report.check("span_min_words_in_dual", params, expected=0, observed=bad)
    geom2 = geometry_index(field, n, k2)
    kwords2 = [kspace_word(kappa, j) for kappa in geom2.subspaces]
    rng = random.Random(seed)
    geom = spancode.geometry
    mismatches = 0
    checked = 0
    for _ in range(samples):
        if rng.random() < 0.5:
            coeffs = [rng.randrange(p) for _ in range(spancode.dim)]
            vec = zero_word(geom)
            for cf, row in zip(coeffs, spancode.rows):
                if cf:
                    vec = vec.add(CodeVector.from_dense(geom, row).scale(cf))
        else:
            vec = CodeVector(geom, {i: rng.randrange(1, p)
                                    for i in rng.sample(range(len(geom)),
                                                        rng.randrange(1, len(geom)))})
        products = {dot(vec, w2) for w2 in kwords2}
        criterion = len(products) == 1
        member = membership(vec, spancode)
        checked += 1
        if criterion != member:
            mismatches += 1
    report.check("membership_criterion", params, expected=0, observed=mismatches,
                 exhaustive=False)
    report.check("membership_criterion_cases", params, expected=samples,
                 observed=checked)
    return report
