"""Counting triples (u, v, w) in E^3 with u.v = alpha and u.w = beta.

Three routes that must agree exactly: a cubic brute-force enumeration (the
oracle), the O(n^2) incidence identity sum_x r_alpha(x) * r_beta(x), and
the orthogonality decomposition I + II + III carried as exact rationals
with denominator q^2.  Prime-field and Z_{p^l} sets ride a blocked numpy
inner loop; extension fields fall back to table arithmetic.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rings import EXTENSION_FIELD, CharacterSum, Ring, RingMismatchError, Scalar

# cap on cells per numpy block, keeps peak memory around 32 MB
_BLOCK_CELLS = 4_000_000

_DIRECT_LIMIT = 64


def _rep_of(ring: Ring, value) -> int:
    if isinstance(value, Scalar):
        if value.ring != ring:
            raise RingMismatchError("scalar belongs to a different ring")
        return value.rep
    return ring.validate_rep(value)


class PointSet:
    """Duplicate-free subset of R_q^d with O(1) membership tests."""

    __slots__ = ("ring", "d", "points", "_members", "_arr")

    def __init__(self, ring: Ring, d: int, points):
        if d < 2:
            raise ValueError("dimension must be at least 2")
        canon = []
        for pt in points:
            t = tuple(pt)
            if len(t) != d:
                raise ValueError(f"point {t} does not have dimension {d}")
            for c in t:
                ring.validate_rep(c)
            canon.append(t)
        members = frozenset(canon)
        if len(members) != len(canon):
            raise ValueError("duplicate points in point set")
        self.ring = ring
        self.d = d
        self.points = tuple(canon)
        self._members = members
        self._arr = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt) -> bool:
        return tuple(pt) in self._members

    def __repr__(self):
        return f"PointSet({self.ring}, d={self.d}, n={len(self.points)})"

    @classmethod
    def full_grid(cls, ring: Ring, d: int) -> "PointSet":
        return cls(ring, d, itertools.product(range(ring.q), repeat=d))

    def array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.asarray(self.points, dtype=np.int64).reshape(len(self.points), self.d)
        return self._arr


def brute_force_count(E: PointSet, alpha, beta) -> int:
    """|Pi_{alpha,beta}(E)| by enumerating E x E x E; coordinates may repeat.

    The independent oracle: cubic time, and deliberately free of the
    incidence identity the fast path relies on.
    """
    ring = E.ring
    a = _rep_of(ring, alpha)
    b = _rep_of(ring, beta)
    pts = E.points
    dotf = ring.dot
    total = 0
    for u in pts:
        for v in pts:
            if dotf(u, v) != a:
                continue
            for w in pts:
                if dotf(u, w) == b:
                    total += 1
    return total


def _incidence_counts(E: PointSet, reps: list[int]) -> list[list[int]]:
    """r_gamma(x) for every x in E and every gamma in reps, in one shared pass."""
    n = len(E)
    if n == 0:
        return [[] for _ in reps]
    ring = E.ring
    if ring.kind == EXTENSION_FIELD:
        out = [[0] * n for _ in reps]
        pts = E.points
        dotf = ring.dot
        for i, x in enumerate(pts):
            row = [dotf(x, y) for y in pts]
            for j, rep in enumerate(reps):
                out[j][i] = row.count(rep)
        return out
    arr = E.array()
    q = ring.q
    at = np.ascontiguousarray(arr.T)
    step = max(1, _BLOCK_CELLS // n)
    outs = [np.zeros(n, dtype=np.int64) for _ in reps]
    for lo in range(0, n, step):
        g = (arr[lo:lo + step] @ at) % q
        for j, rep in enumerate(reps):
            outs[j][lo:lo + step] = np.count_nonzero(g == rep, axis=1)
    return [o.tolist() for o in outs]


def fast_count(E: PointSet, alpha, beta) -> int:
    """Exact |Pi_{alpha,beta}(E)| in O(n^2) via sum_x r_alpha(x) * r_beta(x)."""
    ring = E.ring
    ra, rb = _incidence_counts(E, [_rep_of(ring, alpha), _rep_of(ring, beta)])
    return sum(x * y for x, y in zip(ra, rb))


@dataclass(frozen=True)
class IncidenceProfile:
    """r_gamma(x) = #{y in E : x.y = gamma} for every x in E."""

    gamma: int
    counts: dict

    def total(self) -> int:
        return sum(self.counts.values())


def incidence_profile(E: PointSet, gamma) -> IncidenceProfile:
    g = _rep_of(E.ring, gamma)
    (row,) = _incidence_counts(E, [g])
    return IncidenceProfile(g, dict(zip(E.points, row)))


def dot_histogram(E: PointSet) -> dict[int, int]:
    """h(gamma) = #{(x, y) in E^2 : x.y = gamma} for every gamma in R_q."""
    ring = E.ring
    q = ring.q
    hist = dict.fromkeys(range(q), 0)
    n = len(E)
    if n == 0:
        return hist
    if ring.kind == EXTENSION_FIELD:
        c = Counter()
        dotf = ring.dot
        for x in E.points:
            for y in E.points:
                c[dotf(x, y)] += 1
        hist.update(c)
        return hist
    arr = E.array()
    at = np.ascontiguousarray(arr.T)
    step = max(1, _BLOCK_CELLS // n)
    acc = np.zeros(q, dtype=np.int64)
    for lo in range(0, n, step):
        g = (arr[lo:lo + step] @ at) % q
        acc += np.bincount(g.ravel(), minlength=q)
    return {i: int(v) for i, v in enumerate(acc)}


@dataclass(frozen=True)
class TripleDecomposition:
    """Exact split count = I + II + III, rationals with denominator q^2."""

    term_i: Fraction
    term_ii: Fraction
    term_iii: Fraction
    total: Fraction
    brute_total: int | None = None

    def __post_init__(self):
        if self.term_i + self.term_ii + self.term_iii != self.total:
            raise ValueError("decomposition terms do not sum to the total")
        if self.brute_total is not None and self.total != self.brute_total:
            raise ValueError("decomposition total disagrees with the brute count")


def character_decomposition(E: PointSet, alpha, beta, brute_total: int | None = None) -> TripleDecomposition:
    """Exact decomposition with I = n^3/q^2, II and III from closed forms.

    Orthogonality collapses the s-sums to integers:
        sum_{s != 0} sum_{x,y} chi(s(x.y - gamma)) = q*h(gamma) - n^2
        sum_{s != 0} sum_{y} chi(s(x.y - gamma))   = q*r_gamma(x) - n
    so II = n*((q*h(alpha) - n^2) + (q*h(beta) - n^2)) / q^2 and
    III = sum_x (q*r_alpha(x) - n)(q*r_beta(x) - n) / q^2, all integer work.
    The total always equals the plain triple count.
    """
    ring = E.ring
    a = _rep_of(ring, alpha)
    b = _rep_of(ring, beta)
    n = len(E)
    q = ring.q
    qq = q * q
    ra, rb = _incidence_counts(E, [a, b])
    h_a = sum(ra)
    h_b = sum(rb)
    term_i = Fraction(n**3, qq)
    term_ii = Fraction(n * ((q * h_a - n * n) + (q * h_b - n * n)), qq)
    term_iii = Fraction(sum((q * x - n) * (q * y - n) for x, y in zip(ra, rb)), qq)
    return TripleDecomposition(term_i, term_ii, term_iii,
                               term_i + term_ii + term_iii, brute_total)


@dataclass(frozen=True)
class DirectDecomposition:
    """Float image of the decomposition from literal character summation."""

    term_i: complex
    term_ii: complex
    term_iii: complex
    total: complex


def character_decomposition_direct(E: PointSet, alpha, beta) -> DirectDecomposition:
    """The same split evaluated by literally summing character values over s, t.

    Angles accumulate exactly in CharacterSum; floats appear only when the
    accumulated sums are evaluated and divided by q^2.  Guarded to q <= 64
    and n <= 64: this is the slow cross-check, not a production path.
    """
    ring = E.ring
    n = len(E)
    q = ring.q
    if q > _DIRECT_LIMIT or n > _DIRECT_LIMIT:
        raise ValueError(f"direct decomposition is guarded to q <= {_DIRECT_LIMIT} and n <= {_DIRECT_LIMIT}")
    a = _rep_of(ring, alpha)
    b = _rep_of(ring, beta)
    m = ring.char_modulus
    qq = q * q
    sum_s = CharacterSum(m)   # over s != 0, x, y of chi(s(x.y - alpha))
    sum_t = CharacterSum(m)   # over t != 0, x, z of chi(t(beta - x.z))
    third = CharacterSum(m)
    for x in E.points:
        da = [ring.sub(ring.dot(x, y), a) for y in E.points]
        db = [ring.sub(b, ring.dot(x, z)) for z in E.points]
        sa = CharacterSum(m)
        sb = CharacterSum(m)
        for s in range(1, q):
            for t0 in da:
                sa.add(ring.char_angle(ring.mul(s, t0)))
            for t0 in db:
                sb.add(ring.char_angle(ring.mul(s, t0)))
        sum_s.add_sum(sa)
        sum_t.add_sum(sb)
        third.add_sum(sa.convolve(sb))
    term_i = complex(n**3 / qq)
    term_ii = (sum_s.value() + sum_t.value()) * n / qq
    term_iii = third.value() / qq
    return DirectDecomposition(term_i, term_ii, term_iii, term_i + term_ii + term_iii)
