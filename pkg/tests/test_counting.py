"""The three counting routes and their exact agreement."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dotpairs.constructions import random_set
from dotpairs.counting import (PointSet, brute_force_count, character_decomposition,
                               character_decomposition_direct, dot_histogram, fast_count,
                               incidence_profile)
from dotpairs.rings import Ring

F5 = Ring.prime_field(5)
Z9 = Ring.residue_ring(3, 2)
F9 = Ring.extension_field(3, 2)


def test_point_set_validation():
    with pytest.raises(ValueError):
        PointSet(F5, 2, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        PointSet(F5, 2, [(0, 5)])
    with pytest.raises(ValueError):
        PointSet(F5, 2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        PointSet(F5, 1, [(0,)])
    E = PointSet(F5, 2, [(0, 1), (1, 0)])
    assert (0, 1) in E and (1, 1) not in E and len(E) == 2


def test_brute_force_single_point():
    u = (2, 3)
    alpha = F5.dot(u, u)
    E = PointSet(F5, 2, [u])
    assert brute_force_count(E, alpha, alpha) == 1
    assert brute_force_count(E, alpha, (alpha + 1) % 5) == 0


def test_full_grid_anchor_counts():
    E = PointSet.full_grid(F5, 2)
    assert brute_force_count(E, 1, 1) == 600
    assert brute_force_count(E, 0, 0) == 1225
    assert fast_count(PointSet.full_grid(Z9, 2), 1, 1) == 5832


def test_empty_set():
    E = PointSet(F5, 2, [])
    assert brute_force_count(E, 1, 1) == 0
    assert fast_count(E, 1, 1) == 0
    dec = character_decomposition(E, 1, 1)
    assert dec.term_i == dec.term_ii == dec.term_iii == dec.total == 0


def test_incidence_profile_full_grid():
    prof = incidence_profile(PointSet.full_grid(F5, 2), 1)
    assert prof.counts[(0, 0)] == 0
    assert all(v == 5 for pt, v in prof.counts.items() if pt != (0, 0))
    # total matches the histogram entry
    assert prof.total() == dot_histogram(PointSet.full_grid(F5, 2))[1]


def test_dot_histogram_full_grid():
    h = dot_histogram(PointSet.full_grid(F5, 2))
    assert h[0] == 145
    assert all(h[g] == 120 for g in range(1, 5))
    assert sum(h.values()) == 625


def test_dot_histogram_single_point():
    u = (1, 2)
    h = dot_histogram(PointSet(F5, 2, [u]))
    expect = F5.dot(u, u)
    assert h[expect] == 1 and sum(h.values()) == 1


def test_decomposition_full_grid_terms():
    dec = character_decomposition(PointSet.full_grid(F5, 2), 1, 1,
                                  brute_total=600)
    assert dec.term_i == 625
    assert dec.term_ii == -50
    assert dec.term_iii == 25
    assert dec.total == 600


def test_decomposition_invariant_guard():
    with pytest.raises(ValueError):
        character_decomposition(PointSet.full_grid(F5, 2), 1, 1, brute_total=601)


def test_direct_decomposition_full_grid():
    direct = character_decomposition_direct(PointSet.full_grid(F5, 2), 1, 1)
    for part, expect in ((direct.term_i, 625), (direct.term_ii, -50),
                         (direct.term_iii, 25), (direct.total, 600)):
        assert abs(part.real - expect) < 1e-6
        assert abs(part.imag) < 1e-9


def test_direct_guard():
    with pytest.raises(ValueError):
        character_decomposition_direct(PointSet.full_grid(Ring.prime_field(101), 2), 1, 1)


_RINGS = [Ring.prime_field(3), F5, Ring.prime_field(7), Z9, F9]


@st.composite
def _sets_and_values(draw):
    ring = draw(st.sampled_from(_RINGS))
    d = draw(st.integers(2, 3))
    cap = min(ring.q**d, 16)
    n = draw(st.integers(0, cap))
    seed = draw(st.integers(0, 2**32 - 1))
    alpha = draw(st.integers(0, ring.q - 1))
    beta = draw(st.integers(0, ring.q - 1))
    return random_set(ring, d, n, seed), alpha, beta


@settings(max_examples=60, deadline=None, derandomize=True)
@given(_sets_and_values())
def test_three_routes_agree(case):
    E, alpha, beta = case
    bf = brute_force_count(E, alpha, beta)
    assert fast_count(E, alpha, beta) == bf
    dec = character_decomposition(E, alpha, beta, brute_total=bf)
    assert dec.total == bf
    direct = character_decomposition_direct(E, alpha, beta)
    assert abs(direct.total.real - bf) < 1e-6
    assert abs(direct.total.imag) < 1e-9
    assert abs(direct.term_ii - complex(dec.term_ii)) < 1e-6
    assert abs(direct.term_iii - complex(dec.term_iii)) < 1e-6


@settings(max_examples=40, deadline=None, derandomize=True)
@given(_sets_and_values())
def test_swap_symmetry(case):
    E, alpha, beta = case
    assert fast_count(E, alpha, beta) == fast_count(E, beta, alpha)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(_sets_and_values(), st.integers(0, 2**31))
def test_monotone_under_insertion(case, extra_seed):
    E, alpha, beta = case
    ring = E.ring
    if len(E) == ring.q**E.d:
        return
    rng = random.Random(extra_seed)
    while True:
        pt = tuple(rng.randrange(ring.q) for _ in range(E.d))
        if pt not in E:
            break
    bigger = PointSet(ring, E.d, list(E.points) + [pt])
    assert fast_count(bigger, alpha, beta) >= fast_count(E, alpha, beta)


@settings(max_examples=30, deadline=None, derandomize=True)
@given(_sets_and_values())
def test_histogram_totals(case):
    E, _, _ = case
    h = dot_histogram(E)
    n = len(E)
    assert sum(h.values()) == n * n
    prof = incidence_profile(E, 1 % E.ring.q)
    assert prof.total() == h[1 % E.ring.q]
