"""Exact arithmetic in prime fields, Galois extension fields, and residue rings Z_{p^l}.

Every scalar is a canonical integer representative in [0, q).  Extension
field elements encode their coefficient vector in base p, so
rep = c0 + c1*p + ... + c_{k-1}*p^{k-1}, and multiplication runs on
generator log/antilog tables; all ring operations are exact integer work.

The canonical additive character sends sigma to exp(2*pi*i*sigma/q) on
Z_{p^l} and x to exp(2*pi*i*Tr(x)/p) on fields.  Character values are kept
as exact angle numerators (CharacterValue, CharacterSum) so that long sums
accumulate without rounding; floating point appears only in final
magnitude comparisons.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

MAX_Q = 1 << 20

PRIME_FIELD = "prime-field"
EXTENSION_FIELD = "extension-field"
RESIDUE_RING = "residue-ring"
RING_KINDS = (PRIME_FIELD, EXTENSION_FIELD, RESIDUE_RING)

# full addition tables are precomputed for extension fields up to this size
_ADD_TABLE_LIMIT = 256


class RingError(ValueError):
    """Rejected ring parameters: composite p, reducible modulus, oversized q."""


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class NotAUnitError(ValueError):
    """A unit was required (inversion, unit-only weights) but not supplied."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _digits(rep: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(rep % p)
        rep //= p
    return out


def _poly_rem(f: list[int], g: list[int], p: int) -> list[int]:
    # coefficient lists, constant term first; g must be monic
    r = list(f)
    dg = len(g) - 1
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            return r
        c = r[-1]
        shift = len(r) - 1 - dg
        for i, gc in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gc) % p


def _poly_is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    k = len(f) - 1
    if k < 1:
        return False
    for deg in range(1, k // 2 + 1):
        for r in range(p**deg):
            g = _digits(r, p, deg) + [1]
            if not _poly_rem(f, g, p):
                return False
    return True


def _default_modulus_low(p: int, k: int) -> list[int]:
    # smallest monic irreducible of degree k, scanning lower coefficients base p
    for r in range(p**k):
        f = _digits(r, p, k) + [1]
        if _poly_is_irreducible(f, p):
            return f
    raise RingError(f"no irreducible polynomial of degree {k} over F_{p}")


class Ring:
    """One of F_p, F_{p^k}, or Z_{p^l}, with q = p^exponent capped at 2**20.

    Instances are immutable after construction and hashable; two rings
    compare equal when built from identical parameters, so values flow
    freely between equal rings.  All operations are pure.
    """

    __slots__ = ("kind", "p", "exponent", "q", "modulus_poly",
                 "_mod_low", "_exp", "_log", "_add_flat", "_neg_tab")

    def __init__(self, kind: str, p: int, exponent: int, modulus_poly=None):
        if kind not in RING_KINDS:
            raise RingError(f"unknown ring kind {kind!r}")
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise RingError(f"p = {p!r} is not prime")
        if not isinstance(exponent, int) or isinstance(exponent, bool) or exponent < 1:
            raise RingError(f"exponent must be a positive integer, got {exponent!r}")
        if kind == PRIME_FIELD and exponent != 1:
            raise RingError("a prime field takes exponent 1")
        if kind == RESIDUE_RING and p < 3:
            raise RingError("residue rings require p >= 3")
        if kind == EXTENSION_FIELD and exponent < 2:
            raise RingError("extension fields need exponent >= 2; use prime-field instead")
        q = p**exponent
        if q > MAX_Q:
            raise RingError(f"q = {q} exceeds the table-arithmetic cap 2**20")
        self.kind = kind
        self.p = p
        self.exponent = exponent
        self.q = q
        self._add_flat = None
        self._neg_tab = None
        if kind == EXTENSION_FIELD:
            self._mod_low = self._checked_modulus(modulus_poly)
            self.modulus_poly = tuple(reversed(self._mod_low))
            self._build_tables()
        else:
            if modulus_poly is not None:
                raise RingError("modulus_poly only applies to extension fields")
            self._mod_low = None
            self.modulus_poly = None
            self._exp = None
            self._log = None

    # construction helpers -------------------------------------------------

    @classmethod
    def prime_field(cls, p: int) -> "Ring":
        return cls(PRIME_FIELD, p, 1)

    @classmethod
    def extension_field(cls, p: int, k: int, modulus_poly=None) -> "Ring":
        return cls(EXTENSION_FIELD, p, k, modulus_poly)

    @classmethod
    def residue_ring(cls, p: int, l: int) -> "Ring":
        return cls(RESIDUE_RING, p, l)

    def _checked_modulus(self, modulus_poly) -> list[int]:
        p, k = self.p, self.exponent
        if modulus_poly is None:
            return _default_modulus_low(p, k)
        seq = [int(c) for c in modulus_poly]
        if len(seq) != k + 1:
            raise RingError(f"modulus must have degree {k} (length {k + 1}, highest first)")
        if seq[0] != 1:
            raise RingError("modulus must be monic")
        if any(not 0 <= c < p for c in seq):
            raise RingError(f"modulus coefficients must lie in [0, {p})")
        low = list(reversed(seq))
        if not _poly_is_irreducible(low, p):
            raise RingError("modulus polynomial is reducible")
        return low

    def _build_tables(self):
        q = self.q
        g = self._find_generator()
        exp = [0] * (q - 1)
        log = [-1] * q
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_poly(cur, g)
        if cur != 1:
            raise RingError("generator order check failed")
        self._exp = exp
        self._log = log
        if q <= _ADD_TABLE_LIMIT:
            neg = [self._ext_addsub(0, a, -1) for a in range(q)]
            flat = [0] * (q * q)
            for a in range(q):
                base = a * q
                for b in range(q):
                    flat[base + b] = self._ext_addsub(a, b, 1)
            self._neg_tab = neg
            self._add_flat = flat

    def _mul_poly(self, a: int, b: int) -> int:
        # table-free polynomial product, used while bootstrapping the tables
        p, k = self.p, self.exponent
        da = _digits(a, p, k)
        db = _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self._mod_low
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        rep = 0
        for i in range(k - 1, -1, -1):
            rep = rep * p + prod[i]
        return rep

    def _pow_poly(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._mul_poly(out, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        order = self.q - 1
        fac = _prime_factors(order)
        for cand in range(2, self.q):
            if all(self._pow_poly(cand, order // r) != 1 for r in fac):
                return cand
        raise RingError("no multiplicative generator found")

    # scalar arithmetic on canonical representatives -----------------------

    @property
    def is_field(self) -> bool:
        return self.kind != RESIDUE_RING

    @property
    def char_modulus(self) -> int:
        """Angle denominator of the canonical character: q on Z_{p^l}, p on fields."""
        return self.q if self.kind == RESIDUE_RING else self.p

    def validate_rep(self, rep) -> int:
        if not isinstance(rep, int) or isinstance(rep, bool) or not 0 <= rep < self.q:
            raise ValueError(f"{rep!r} is not a canonical representative in [0, {self.q})")
        return rep

    def _ext_addsub(self, a: int, b: int, sign: int) -> int:
        p = self.p
        out = 0
        m = 1
        while a or b:
            out += ((a % p + sign * (b % p)) % p) * m
            a //= p
            b //= p
            m *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.kind == EXTENSION_FIELD:
            if self._add_flat is not None:
                return self._add_flat[a * self.q + b]
            return self._ext_addsub(a, b, 1)
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        if self.kind == EXTENSION_FIELD:
            if self._add_flat is not None:
                return self._add_flat[a * self.q + self._neg_tab[b]]
            return self._ext_addsub(a, b, -1)
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        if self.kind == EXTENSION_FIELD:
            if self._neg_tab is not None:
                return self._neg_tab[a]
            return self._ext_addsub(0, a, -1)
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        if self.kind == EXTENSION_FIELD:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return (a * b) % self.q

    def is_unit(self, a: int) -> bool:
        if self.kind == RESIDUE_RING:
            return a % self.p != 0
        return a != 0

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise NotAUnitError(f"{a} is not a unit in {self}")
        if self.kind == EXTENSION_FIELD:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return pow(a, -1, self.q)

    def dot(self, u, v) -> int:
        if self.kind == EXTENSION_FIELD:
            acc = 0
            for a, b in zip(u, v):
                acc = self.add(acc, self.mul(a, b))
            return acc
        acc = 0
        for a, b in zip(u, v):
            acc += a * b
        return acc % self.q

    def trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(k-1)), landing in the prime subfield."""
        if self.kind != EXTENSION_FIELD:
            raise ValueError("trace applies to extension fields only")
        total = a
        t = a
        for _ in range(self.exponent - 1):
            t = 0 if t == 0 else self._exp[(self._log[t] * self.p) % (self.q - 1)]
            total = self.add(total, t)
        return total

    def char_angle(self, a: int) -> int:
        """Angle numerator of the canonical character at a."""
        if self.kind == EXTENSION_FIELD:
            return self.trace(a)
        return a

    def elements(self) -> range:
        return range(self.q)

    def units(self):
        return (a for a in range(1, self.q) if self.is_unit(a))

    def unit_count(self) -> int:
        if self.kind == RESIDUE_RING:
            return self.q - self.q // self.p
        return self.q - 1

    def scalar(self, rep: int) -> "Scalar":
        return Scalar(self, rep)

    def vector(self, coords) -> "Vector":
        return Vector(self, tuple(coords))

    # identity --------------------------------------------------------------

    def _key(self):
        return (self.kind, self.p, self.exponent, self.modulus_poly)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.kind == RESIDUE_RING:
            return f"Z_{self.q}"
        return f"F_{self.q}"


def make_ring(kind: str, p: int, exponent: int, modulus_poly=None) -> Ring:
    """Validated ring from serialized parameters."""
    return Ring(kind, p, exponent, modulus_poly)


@dataclass(frozen=True)
class Scalar:
    """A ring element by canonical representative, with operator arithmetic."""

    ring: Ring
    rep: int

    def __post_init__(self):
        self.ring.validate_rep(self.rep)

    def _other_rep(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatchError(f"mixed rings {self.ring} and {other.ring}")
            return other.rep
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.validate_rep(other)
        return None

    def __add__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Scalar(self.ring, self.ring.add(self.rep, rep))

    __radd__ = __add__

    def __sub__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Scalar(self.ring, self.ring.sub(self.rep, rep))

    def __rsub__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Scalar(self.ring, self.ring.sub(rep, self.rep))

    def __mul__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Scalar(self.ring, self.ring.mul(self.rep, rep))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.rep))

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.rep)

    def inverse(self) -> "Scalar":
        return Scalar(self.ring, self.ring.inv(self.rep))

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficient vector, constant term first (length k on extension fields)."""
        if self.ring.kind == EXTENSION_FIELD:
            return tuple(_digits(self.rep, self.ring.p, self.ring.exponent))
        return (self.rep,)

    def __repr__(self):
        return f"{self.rep} in {self.ring}"


@dataclass(frozen=True)
class Vector:
    """A point of R_q^d, coordinates as canonical representatives."""

    ring: Ring
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 2:
            raise ValueError("vectors need dimension >= 2")
        for c in self.coords:
            self.ring.validate_rep(c)

    @property
    def d(self) -> int:
        return len(self.coords)

    def dot(self, other: "Vector") -> Scalar:
        if not isinstance(other, Vector):
            raise TypeError("dot expects a Vector")
        if other.ring != self.ring:
            raise RingMismatchError(f"mixed rings {self.ring} and {other.ring}")
        if other.d != self.d:
            raise ValueError(f"dimension mismatch {self.d} vs {other.d}")
        return Scalar(self.ring, self.ring.dot(self.coords, other.coords))


def dot(u: Vector, v: Vector) -> Scalar:
    return u.dot(v)


def invert(s: Scalar) -> Scalar:
    return s.inverse()


def is_unit(s: Scalar) -> bool:
    return s.is_unit


@dataclass(frozen=True)
class CharacterValue:
    """exp(2*pi*i*numerator/modulus), stored exactly as an angle."""

    numerator: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.numerator < self.modulus:
            raise ValueError("character angle out of range")

    def __mul__(self, other):
        if not isinstance(other, CharacterValue):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ValueError("character values with different moduli")
        return CharacterValue((self.numerator + other.numerator) % self.modulus, self.modulus)

    def conjugate(self) -> "CharacterValue":
        return CharacterValue((-self.numerator) % self.modulus, self.modulus)

    def value(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.numerator / self.modulus)


def character(s: Scalar) -> CharacterValue:
    """Canonical additive character at s: rep/q on Z_{p^l}, Tr(s)/p on fields."""
    return CharacterValue(s.ring.char_angle(s.rep), s.ring.char_modulus)


def lambda_factor(s: Scalar) -> float:
    """Weight attached to a dot-product value: 1 away from zero, sqrt(q) at zero.

    On Z_{p^l} only units carry a stated weight; a non-unit argument is an
    error rather than a guess.
    """
    ring = s.ring
    if ring.kind == RESIDUE_RING:
        if not ring.is_unit(s.rep):
            raise NotAUnitError("no weight is defined for non-units in Z_{p^l}")
        return 1.0
    return 1.0 if s.rep != 0 else math.sqrt(ring.q)


class CharacterSum:
    """Integer-weighted multiset of character angles over one modulus.

    Accumulation, merging, and products (angle convolution) are exact; the
    only floating-point step is value(), whose error stays far below the
    1e-6 comparison tolerances used downstream.
    """

    __slots__ = ("modulus", "counts")

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.counts = [0] * modulus

    def add(self, numerator: int, weight: int = 1) -> None:
        self.counts[numerator % self.modulus] += weight

    def add_sum(self, other: "CharacterSum", weight: int = 1) -> None:
        if other.modulus != self.modulus:
            raise ValueError("character sums with different moduli")
        for j, c in enumerate(other.counts):
            if c:
                self.counts[j] += c * weight

    def convolve(self, other: "CharacterSum") -> "CharacterSum":
        """Exact product of the two sums (angles add)."""
        if other.modulus != self.modulus:
            raise ValueError("character sums with different moduli")
        m = self.modulus
        out = CharacterSum(m)
        oc = out.counts
        for i, a in enumerate(self.counts):
            if a:
                for j, b in enumerate(other.counts):
                    if b:
                        oc[(i + j) % m] += a * b
        return out

    def total_weight(self) -> int:
        return sum(abs(c) for c in self.counts)

    def value(self) -> complex:
        m = self.modulus
        return sum((c * cmath.exp(2j * cmath.pi * j / m) for j, c in enumerate(self.counts) if c),
                   start=0j)
