"""Lines {x in R_q^2 : x.v = gamma}: point sets, intersections, directions.

Over Z_{p^l} a line whose normal has zero-divisor coordinates can be empty
or carry g*q points, and two distinct lines can share more than one point.
Direction equivalence is therefore decided on the full homogeneous
solution set {x : x.v = 0} rather than on slopes; the readable tag
(least nonzero kernel point, kernel size) alone does not separate all
kernels over Z_{p^l}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .counting import PointSet, _rep_of
from .rings import Ring, RingMismatchError, Scalar


@dataclass(frozen=True)
class Line:
    """Solution set of x*v_x + y*v_y = value in R_q^2, named by (normal, value)."""

    ring: Ring
    normal: tuple[int, int]
    value: int

    def __post_init__(self):
        normal = tuple(self.normal)
        if len(normal) != 2:
            raise ValueError("lines live in R_q^2")
        normal = tuple(_rep_of(self.ring, c) for c in normal)
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "value", _rep_of(self.ring, self.value))

    def contains(self, point) -> bool:
        return self.ring.dot(self.normal, tuple(point)) == self.value


def solve_linear(ring: Ring, a: int, c: int) -> list[int]:
    """All t in R_q with a*t = c: one solution over fields when a != 0,
    gcd(a, q) solutions over Z_q when gcd(a, q) divides c, none otherwise."""
    q = ring.q
    if a == 0:
        return list(range(q)) if c == 0 else []
    if ring.is_field:
        return [ring.mul(c, ring.inv(a))]
    g = math.gcd(a, q)
    if c % g:
        return []
    qg = q // g
    t0 = (c // g) * pow(a // g, -1, qg) % qg
    return [t0 + j * qg for j in range(g)]


def line_points(line: Line) -> set[tuple[int, int]]:
    """Materialize the solution set, iterating the free coordinate."""
    ring = line.ring
    q = ring.q
    a, b = line.normal
    gam = line.value
    if a == 0 and b == 0:
        if gam == 0:
            return {(x, y) for x in range(q) for y in range(q)}
        return set()
    if b == 0:
        return {(x, y) for x in solve_linear(ring, a, gam) for y in range(q)}
    pts = set()
    for x in range(q):
        rhs = ring.sub(gam, ring.mul(a, x))
        for y in solve_linear(ring, b, rhs):
            pts.add((x, y))
    return pts


def line_size(line: Line) -> int:
    """|line| without materializing: 0, q^2, or gcd(a, b, q) * q."""
    a, b = line.normal
    ring = line.ring
    q = ring.q
    if a == 0 and b == 0:
        return q * q if line.value == 0 else 0
    if ring.is_field:
        return q
    g = math.gcd(math.gcd(a, b), q)
    return g * q if line.value % g == 0 else 0


def intersection_size(l1: Line, l2: Line) -> int:
    """|l1 ∩ l2|, materializing the smaller line and probing the other's equation."""
    if l1.ring != l2.ring:
        raise RingMismatchError("lines over different rings")
    if line_size(l1) > line_size(l2):
        l1, l2 = l2, l1
    return sum(1 for pt in line_points(l1) if l2.contains(pt))


@dataclass(frozen=True, eq=False)
class DirectionClass:
    """Direction of a line: its homogeneous solution set {x : x.v = 0}.

    Equality and hashing use the full kernel point set, which is what makes
    two classes equal exactly when the kernels coincide; the least nonzero
    member and the cardinality are carried as a readable tag.  All empty
    lines share one distinguished empty class.
    """

    representative: tuple[int, int] | None
    size: int
    points: frozenset

    def __eq__(self, other):
        return isinstance(other, DirectionClass) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        if not self.points:
            return "DirectionClass(empty)"
        return f"DirectionClass({self.representative}, size={self.size})"


EMPTY_DIRECTION = DirectionClass(None, 0, frozenset())


def direction_class(line: Line) -> DirectionClass:
    if line_size(line) == 0:
        return EMPTY_DIRECTION
    ker = line_points(Line(line.ring, line.normal, 0))
    rep = min(pt for pt in ker if pt != (0, 0))
    return DirectionClass(rep, len(ker), frozenset(ker))


def same_direction(l1: Line, l2: Line) -> bool:
    """Whether the homogeneous solution sets of the two normals coincide.

    Over a field this is exactly the normals being scalar multiples of one
    another; over Z_{p^l} whole kernels are compared.
    """
    if l1.ring != l2.ring:
        raise RingMismatchError("lines over different rings")
    k1 = line_points(Line(l1.ring, l1.normal, 0))
    k2 = line_points(Line(l2.ring, l2.normal, 0))
    return k1 == k2


@dataclass(frozen=True)
class PairClassification:
    """E x E split by line-intersection behaviour: a pair (v, w) sits in set_a
    when both cross intersections have at most one point, in set_b otherwise."""

    set_a: tuple
    set_b: tuple

    def __post_init__(self):
        if set(self.set_a) & set(self.set_b):
            raise ValueError("classification sets overlap")


def classify_pairs(E: PointSet, alpha, beta) -> PairClassification:
    """Place every ordered pair (v, w) of E x E by direct intersection counting."""
    if E.d != 2:
        raise ValueError("pair classification is defined in dimension 2")
    ring = E.ring
    a = _rep_of(ring, alpha)
    b = _rep_of(ring, beta)
    in_a = []
    in_b = []
    for v in E.points:
        lav = Line(ring, v, a)
        lbv = Line(ring, v, b)
        for w in E.points:
            small = (intersection_size(lav, Line(ring, w, b)) <= 1
                     and intersection_size(Line(ring, w, a), lbv) <= 1)
            (in_a if small else in_b).append((v, w))
    return PairClassification(tuple(in_a), tuple(in_b))


def direction_census(E: PointSet, alpha) -> dict[DirectionClass, int]:
    """Group the lines {L_alpha(v) : v in E} by direction class.

    Points with zero normal are skipped, so the counts total |E| minus the
    number of such points.
    """
    if E.d != 2:
        raise ValueError("direction census is defined in dimension 2")
    a = _rep_of(E.ring, alpha)
    census: dict[DirectionClass, int] = {}
    for v in E.points:
        if v == (0, 0):
            continue
        cls = direction_class(Line(E.ring, v, a))
        census[cls] = census.get(cls, 0) + 1
    return census
