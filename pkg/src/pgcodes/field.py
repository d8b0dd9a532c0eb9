"""Exact arithmetic in prime fields F_p and extension fields F_q, q = p^h.

Elements are encoded as ints in [0, q): the base-|subfield| digit packing of
the coefficient vector over the subfield, little-endian in the generator.
For a prime field the int is the representative itself.  This encoding is
also the serialized form used by every file format in the package.

Fields are interned: ``make_field(p, h)`` always returns the same object,
and ``make_extension(base, e)`` is cached per (base, e), so identity checks
are safe for "same field" preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

FIELD_CAP = 2 ** 20
TABLE_CAP = 2 ** 16

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = 41
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[int]:
    """Distinct prime factors of n, by trial division (n stays small here)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, h) with q = p^h, or raise ValueError."""
    ps = factorize(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    h = 0
    while q > 1:
        q //= p
        h += 1
    return p, h


class GF:
    """A finite field F_q.  Operations take and return ints in [0, q).

    Prime fields have ``base is None``; extensions hold a reference to
    their base field and a monic modulus of degree ``e`` over it.  The
    modulus is the lexicographically first one (scanning packed coefficient
    ints upward) whose root is a primitive element, so every field is
    canonical and the class of x is always a multiplicative generator.
    """

    def __init__(self, p: int, base: Optional["GF"] = None, e: int = 1):
        if base is None:
            if not is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
            self.p = p
            self.base = None
            self.e = 1
            self.h = 1
            self.q = p
            self.modulus = (0,)  # the polynomial x
            self.generator = self._find_prime_generator()
        else:
            if e < 2:
                raise ValueError("extension degree must be >= 2")
            self.p = base.p
            self.base = base
            self.e = e
            self.h = base.h * e
            self.q = base.q ** e
            if self.q > FIELD_CAP:
                raise ValueError(f"field size {self.q} exceeds cap {FIELD_CAP}")
            self.modulus = self._scan_modulus()
            self.generator = base.q  # the class of x: digits (0, 1, 0, ...)
        self._exp: Optional[list[int]] = None
        self._log: Optional[list[int]] = None
        if self.q <= TABLE_CAP:
            self._build_tables()

    # -- construction helpers ------------------------------------------

    def _find_prime_generator(self) -> int:
        p = self.p
        if p == 2:
            return 1
        primes = factorize(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // ell, p) != 1 for ell in primes):
                return g
        raise AssertionError("no generator found")  # pragma: no cover

    def _scan_modulus(self) -> tuple[int, ...]:
        base, e = self.base, self.e
        order = self.q - 1
        primes = factorize(order)
        for m in range(base.q ** e):
            coeffs = []
            t = m
            for _ in range(e):
                coeffs.append(t % base.q)
                t //= base.q
            mod = tuple(coeffs)
            # order of x in base[x]/(x^e + ...) equals q-1 iff the modulus is
            # irreducible with primitive root: a non-field quotient has fewer
            # than q-1 units.
            x = (0, 1) + (0,) * (e - 2) if e >= 2 else (1,)
            if _poly_powmod(base, x, order, mod) != _poly_one(e):
                continue
            if all(_poly_powmod(base, x, order // ell, mod) != _poly_one(e)
                   for ell in primes):
                self._check_no_roots(mod)
                return mod
        raise AssertionError("no primitive modulus found")  # pragma: no cover

    def _check_no_roots(self, mod: tuple[int, ...]) -> None:
        base, e = self.base, self.e
        if base.q * e > 2 ** 12:
            return
        for a in range(base.q):
            val, power = 0, 1
            for c in mod:
                val = base.add(val, base.mul(c, power))
                power = base.mul(power, a)
            val = base.add(val, power)  # + a^e (monic)
            if val == 0:
                raise AssertionError(f"modulus {mod} has root {a}")

    def _build_tables(self) -> None:
        q = self.q
        exp = [1] * (q - 1)
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, self.generator)
        if v != 1:
            raise AssertionError("generator order mismatch")  # pragma: no cover
        self._exp, self._log = exp, log

    # -- element codec -------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector over the base field, little-endian."""
        if self.base is None:
            return (a,)
        out = []
        for _ in range(self.e):
            out.append(a % self.base.q)
            a //= self.base.q
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        if self.base is None:
            return cs[0] % self.p
        v = 0
        for c in reversed(cs):
            v = v * self.base.q + c
        return v

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % self.p
        bq, e = self.base.q, self.e
        out, mult = 0, 1
        for _ in range(e):
            out += self.base.add(a % bq, b % bq) * mult
            a //= bq
            b //= bq
            mult *= bq
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.base is None:
            return (-a) % self.p
        bq, e = self.base.q, self.e
        out, mult = 0, 1
        for _ in range(e):
            out += self.base.neg(a % bq) * mult
            a //= bq
            mult *= bq
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        prod = _poly_mulmod(self.base, self.coeffs(a), self.coeffs(b), self.modulus)
        return self.from_coeffs(prod)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        n %= self.q - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        r = 1
        while n:
            if n & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            n >>= 1
        return r

    def frobenius(self, a: int, t: int = 1) -> int:
        """a raised to p^t."""
        return self.pow(a, self.p ** (t % (self.h or 1)))

    def __repr__(self) -> str:
        return f"GF({self.q})"


def _poly_one(e: int) -> tuple[int, ...]:
    return (1,) + (0,) * (e - 1)


def _poly_mulmod(base: GF, a, b, mod) -> tuple[int, ...]:
    """Multiply coefficient tuples modulo the monic polynomial x^e + mod."""
    e = len(mod)
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
    for d in range(2 * e - 2, e - 1, -1):
        c = prod[d]
        if c == 0:
            continue
        prod[d] = 0
        for i, mi in enumerate(mod):
            prod[d - e + i] = base.sub(prod[d - e + i], base.mul(c, mi))
    return tuple(prod[:e])


def _poly_powmod(base: GF, a, n: int, mod) -> tuple[int, ...]:
    e = len(mod)
    r = _poly_one(e)
    a = tuple(a) + (0,) * (e - len(a))
    while n:
        if n & 1:
            r = _poly_mulmod(base, r, a, mod)
        a = _poly_mulmod(base, a, a, mod)
        n >>= 1
    return r


_FIELDS: dict[tuple, GF] = {}


def make_field(p: int, h: int) -> GF:
    """The canonical field F_{p^h} over its prime field."""
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if p ** h > FIELD_CAP:
        raise ValueError(f"field size {p ** h} exceeds cap {FIELD_CAP}")
    key = ("prime-chain", p, h)
    if key not in _FIELDS:
        if h == 1:
            _FIELDS[key] = GF(p)
        else:
            _FIELDS[key] = GF(p, base=make_field(p, 1), e=h)
    return _FIELDS[key]


def field_of_size(q: int) -> GF:
    p, h = split_prime_power(q)
    return make_field(p, h)


def make_extension(base: GF, e: int) -> GF:
    """The degree-e tower extension of ``base`` with polynomial basis 1..w^{e-1}."""
    key = ("ext", id(base), e)
    if key not in _FIELDS:
        _FIELDS[key] = GF(base.p, base=base, e=e)
    return _FIELDS[key]


def subfield_expand(ext: GF, x: int, base: GF) -> tuple[int, ...]:
    """Coordinates of x over `base` w.r.t. the basis {1, w, ..., w^{e-1}}."""
    if ext.base is not base:
        raise ValueError("element does not live in a tower over the given base")
    return ext.coeffs(x)


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific field; ints wrapped for safe mixed-field checks."""

    field: GF
    value: int

    def _coerce(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            raise TypeError("expected a FieldElement")
        if other.field is not self.field:
            raise ValueError("operands bound to different fields")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))


def arith(op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    """Named field operation on wrapped elements; op in {add,neg,mul,inv,pow}."""
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError("pow exponent must be an int")
        return a ** b
    raise ValueError(f"unknown operation {op!r}")
