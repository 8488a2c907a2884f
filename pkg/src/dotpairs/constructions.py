"""Point-set generators.

The two-line configuration forces about n^2/4 triples through the corner
point (1, 1); the axis configuration realizes the cubic rate for the pair
(0, 0); random sets come from a SplitMix64 stream so identical arguments
reproduce identical sets on any platform and in any execution order.
"""

from __future__ import annotations

from .counting import PointSet, _rep_of
from .rings import NotAUnitError, Ring

_M64 = (1 << 64) - 1


class _SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _M64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        # rejection keeps the draw unbiased
        limit = _M64 + 1 - ((_M64 + 1) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound


def sharp_lower_bound(n: int) -> int:
    """Triples guaranteed by sharp_construction: floor((n-1)/2) * ceil((n-1)/2)."""
    return ((n - 1) // 2) * (n // 2)


def sharp_construction(ring: Ring, n: int, alpha, beta) -> PointSet:
    """n points: u = (1, 1) plus batches on the lines x + y = alpha and x + y = beta.

    Every pair (b, c) with b on the first line and c on the second completes
    the triple (u, b, c), since u.b = alpha and u.c = beta, so the set
    carries at least sharp_lower_bound(n) triples.  Slots lost to collisions
    (u already on a line, or alpha = beta) spill to the lexicographically
    least unoccupied points off both lines; |E| = n exactly.
    """
    a = _rep_of(ring, alpha)
    b = _rep_of(ring, beta)
    if not (ring.is_unit(a) and ring.is_unit(b)):
        raise NotAUnitError("sharp construction needs unit alpha and beta")
    q = ring.q
    if not 3 <= n <= 2 * q - 1:
        raise ValueError(f"need 3 <= n <= 2q-1 = {2 * q - 1}, got {n}")
    u = (1, 1)
    pts = [u]
    occupied = {u}
    first = (n - 1) // 2
    second = (n - 1) - first
    for target, gam in ((first, a), (second, b)):
        placed = 0
        for x in range(q):
            if placed == target:
                break
            pt = (x, ring.sub(gam, x))
            if pt not in occupied:
                pts.append(pt)
                occupied.add(pt)
                placed += 1
    if len(pts) < n:
        for x in range(q):
            for y in range(q):
                if len(pts) == n:
                    break
                s = ring.add(x, y)
                if s == a or s == b or (x, y) in occupied:
                    continue
                pts.append((x, y))
                occupied.add((x, y))
            if len(pts) == n:
                break
    return PointSet(ring, 2, pts)


def zero_triple_count(n: int) -> int:
    """Exact |Pi_{0,0}| of zero_construction: ceil(n/2) * floor(n/2) * n."""
    a = (n + 1) // 2
    return a * (n - a) * n


def zero_construction(ring: Ring, n: int) -> PointSet:
    """ceil(n/2) points (0, y) and floor(n/2) points (x, 0), unit coordinates.

    Cross-axis dot products vanish and same-axis ones cannot (unit * unit is
    a unit, which matters over Z_{p^l} where distinct nonzero residues can
    multiply to zero), so exactly the cross-axis triples land in Pi_{0,0}
    and the count is zero_triple_count(n).  The origin is excluded.
    """
    units = [r for r in range(1, ring.q) if ring.is_unit(r)]
    cap = 2 * len(units)
    if not 1 <= n <= cap:
        raise ValueError(f"need 1 <= n <= {cap} (two axes of unit coordinates), got {n}")
    a = (n + 1) // 2
    b = n - a
    pts = [(0, y) for y in units[:a]] + [(x, 0) for x in units[:b]]
    return PointSet(ring, 2, pts)


def random_set(ring: Ring, d: int, n: int, seed: int) -> PointSet:
    """n distinct points of R_q^d, uniform without replacement.

    Identical (ring, d, n, seed) always yields the identical set: dense
    draws use a partial Fisher-Yates shuffle of the index range, sparse
    draws use rejection sampling, both driven by one SplitMix64 stream.
    """
    total = ring.q**d
    if not 0 <= n <= total:
        raise ValueError(f"need 0 <= n <= q^d = {total}, got {n}")
    rng = _SplitMix64(seed)
    if 3 * n >= total:
        idx = list(range(total))
        for i in range(n):
            j = i + rng.below(total - i)
            idx[i], idx[j] = idx[j], idx[i]
        chosen = idx[:n]
    else:
        seen = set()
        chosen = []
        while len(chosen) < n:
            c = rng.below(total)
            if c not in seen:
                seen.add(c)
                chosen.append(c)
    q = ring.q
    pts = []
    for c in chosen:
        coords = []
        for _ in range(d):
            coords.append(c % q)
            c //= q
        pts.append(tuple(coords))
    return PointSet(ring, d, pts)
