"""Contracted sector maps, branch structure, and direction recognition."""

import math

import numpy as np
import pytest

from bouwmoller.farey import (BoundaryOrbit, NoConvergence, _branch_matrix,
                              direction_from_itinerary, farey_F, farey_F_cot,
                              farey_FF, ff_branches, gamma, gamma_factors,
                              itinerary, reflection, subsectors)

SMALL = [(3, 4), (4, 3), (3, 5), (5, 3), (4, 5), (5, 4)]

GAMMA_43 = np.array([[-1.106681919700322, 1.542545107856117],
                     [0.0, 0.903602003609845]])


def test_gamma_regression():
    assert np.abs(gamma(4, 3) - GAMMA_43).max() < 1e-12


def test_gamma_factors_compose():
    for m, n in SMALL:
        fs = gamma_factors(m, n)
        prod = np.eye(2)
        for f in fs:
            prod = prod @ f
        assert np.abs(prod - gamma(m, n)).max() < 1e-12
        assert abs(np.linalg.det(gamma(m, n)) + 1) < 1e-12


def test_gamma_sends_sector_boundaries_to_dual_boundaries():
    for m, n in SMALL:
        g = gamma(m, n)
        v0 = g @ np.array([1.0, 0.0])
        v1 = g @ np.array([math.cos(math.pi / n), math.sin(math.pi / n)])
        ang0 = math.atan2(v0[1], v0[0]) % math.pi
        ang1 = math.atan2(v1[1], v1[0]) % math.pi
        assert min(ang0, math.pi - ang0) < 1e-9 or abs(ang0 - math.pi / m) < 1e-9
        assert min(ang1, math.pi - ang1) < 1e-9 or abs(ang1 - math.pi / m) < 1e-9


def test_reflection_matrices_for_n3():
    r3 = math.sqrt(3)
    want = [np.eye(2),
            np.array([[-0.5, r3 / 2], [r3 / 2, 0.5]]),
            np.array([[-1.0, 0.0], [0.0, 1.0]])]
    for i, mat in enumerate(want):
        assert np.abs(reflection(4, 3, i) - mat).max() < 1e-12


def test_reflections_are_involutions():
    for m, n in SMALL:
        for i in range(2 * n):
            rho = reflection(m, n, i)
            assert np.abs(rho @ rho - np.eye(2)).max() < 1e-12


def test_sector_map_regression():
    branch, image = farey_F(4, 3, math.pi / 8)
    assert branch == 3
    assert abs(image - 0.674862366396710) < 1e-12
    pair, image2 = farey_FF(4, 3, math.pi / 8)
    assert pair == (3, 1)
    assert abs(image2 - 0.881036298635568) < 1e-12


def test_cotangent_conjugate_matches_angles():
    theta = 0.31
    branch, image = farey_F(4, 3, theta)
    b2, u = farey_F_cot(4, 3, 1 / math.tan(theta))
    assert b2 == branch
    assert abs(u - 1 / math.tan(image)) < 1e-9


def test_subsectors_tile_the_standard_sector():
    for m, n in SMALL:
        tiles = subsectors(m, n)
        assert len(tiles) == m - 1
        # subsector 1 is the top interval, subsector m-1 touches zero
        assert abs(tiles[0][1] - math.pi / n) < 1e-9
        assert abs(tiles[-1][0]) < 1e-9
        ends = sorted(x for lo, hi in tiles for x in (lo, hi))
        assert abs(ends[0]) < 1e-9
        assert abs(ends[-1] - math.pi / n) < 1e-9
        for a, b in zip(ends[1:-1:2], ends[2:-1:2]):
            assert abs(a - b) < 1e-9


def test_branch_intervals_tile_and_pin_parabolic_points():
    for (m, n), at_zero in (((4, 3), (3, 2)), ((3, 4), (2, 3))):
        branches = ff_branches(m, n)
        assert set(branches) == {(a, b) for a in range(1, m)
                                 for b in range(1, n)}
        ends = sorted((lo, hi) for lo, hi, _ in branches.values())
        assert abs(ends[0][0]) < 1e-9
        assert abs(ends[-1][1] - math.pi / n) < 1e-9
        for (_, hi), (lo, _) in zip(ends, ends[1:]):
            assert abs(hi - lo) < 1e-9
        lo0, hi0, _ = branches[at_zero]
        assert abs(lo0) < 1e-9
        lo1, hi1, _ = branches[(1, 1)]
        assert abs(hi1 - math.pi / n) < 1e-9


def test_itinerary_regression():
    itin = itinerary(4, 3, 13 * math.pi / 180, 8)
    assert itin.b0 == 0
    assert itin.pairs == ((3, 2), (2, 1), (1, 2), (1, 1),
                          (3, 2), (2, 2), (2, 2), (3, 2))
    assert itin.flatten() == [0, 3, 2, 2, 1, 1, 2, 1, 1, 3, 2, 2, 2, 2, 2, 3, 2]


def test_itinerary_quarantines_boundaries():
    with pytest.raises(BoundaryOrbit):
        itinerary(4, 3, math.pi / 3, 4)


def test_constant_itinerary_recovers_the_eigendirection():
    # iterating inverse branches contracts onto the branch matrix's
    # contracting eigenvector
    mat = _branch_matrix(4, 3, 2, 2)
    assert abs(np.linalg.det(mat) - 1) < 1e-9
    evals, evecs = np.linalg.eig(mat)
    v = evecs[:, int(np.argmin(np.abs(evals)))]
    want = math.atan2(v[1], v[0]) % math.pi
    got = direction_from_itinerary(4, 3, 0, [(2, 2)] * 25, tol=1e-9)
    assert abs(got - want) < 1e-9
    assert abs(got - 0.487806738579) < 1e-9


def test_direction_recovery_is_certified():
    # spread over all six starting sectors, avoiding parabolic tails
    for theta in (0.13, 0.51, 0.97, 1.9, 2.6, 4.0, 4.6, 5.9):
        itin = itinerary(4, 3, theta, 25)
        got = direction_from_itinerary(4, 3, itin.b0, itin.pairs, tol=1e-6)
        assert abs(got - theta) < 1e-6


def test_direction_recovery_reports_stalls():
    itin = itinerary(4, 3, 0.51, 2)
    with pytest.raises(NoConvergence):
        direction_from_itinerary(4, 3, itin.b0, itin.pairs, tol=1e-9)


def test_direction_recovery_validates_input():
    with pytest.raises(ValueError):
        direction_from_itinerary(4, 3, 0, [])
    with pytest.raises(ValueError):
        direction_from_itinerary(4, 3, 6, [(1, 1)])
    with pytest.raises(ValueError):
        direction_from_itinerary(4, 3, 0, [(4, 1)])
    with pytest.raises(ValueError):
        direction_from_itinerary(4, 3, 0, [(1, 3)])
