"""Transition diagrams, sector permutations, and the arrow alphabet."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from bouwmoller.cli import GOLDEN_D0_LABELS, GOLDEN_GRIDS, GOLDEN_PERMS
from bouwmoller.diagrams import (NotAdmissible, NotChained, admissible_in,
                                 arrow_alphabet, build_D0, build_T0,
                                 build_Ti, sector_permutation, t0_grid)

SMALL = [(3, 4), (4, 3), (3, 5), (5, 3), (4, 5), (5, 4)]


def random_walk(m, n, rng, length):
    nxt = {}
    for a, b in build_T0(m, n).arrows:
        nxt.setdefault(a, []).append(b)
    w = [rng.choice(sorted(nxt))]
    while len(w) < length:
        w.append(rng.choice(sorted(nxt[w[-1]])))
    return w


def test_base_grids():
    assert t0_grid(4, 3) == ((1, 2, 3), (6, 5, 4), (7, 8, 9))
    assert t0_grid(3, 4) == ((1, 2, 3, 4), (8, 7, 6, 5))


def test_sector_grids_match_frozen_tables():
    for (m, n), grids in GOLDEN_GRIDS.items():
        for i, grid in grids.items():
            assert build_Ti(m, n, i).grid == grid


def test_sector_out_of_range():
    with pytest.raises(ValueError):
        build_Ti(4, 3, 3)
    with pytest.raises(ValueError):
        build_Ti(4, 3, -1)


def test_sector_permutations_match_frozen_tables():
    for (m, n), perms in GOLDEN_PERMS.items():
        for i, table in perms.items():
            perm = sector_permutation(m, n, i)
            assert tuple(perm[k] for k in range(1, len(table) + 1)) == table


def test_sector_permutations_are_involutions():
    for m, n in SMALL:
        count = n * (m - 1)
        for i in range(n):
            perm = sector_permutation(m, n, i)
            assert sorted(perm[k] for k in range(1, count + 1)) == \
                list(range(1, count + 1))
            for k in range(1, count + 1):
                assert perm[perm[k]] == k
        assert all(sector_permutation(m, n, 0)[k] == k
                   for k in range(1, count + 1))


def test_permuted_grid_rows_are_the_sector_grid():
    for m, n in SMALL:
        base = t0_grid(m, n)
        for i in range(n):
            perm = sector_permutation(m, n, i)
            want = tuple(tuple(perm[x] for x in row) for row in base)
            assert build_Ti(m, n, i).grid == want


def test_admissibility_detects_sector_and_reversal():
    assert admissible_in(4, 3, [1, 2, 3]) == {0, 3}
    assert admissible_in(4, 3, [1, 6, 7, 8, 7, 8, 5, 4, 5, 2]) == {0}
    assert admissible_in(4, 3, [2, 5, 4, 5, 8, 7, 8, 7, 6, 1]) == {3}
    assert admissible_in(4, 3, [1, 1]) == set()


def test_diagram_admits():
    t0 = build_T0(4, 3)
    assert t0.admits([1, 6, 7, 8])
    assert not t0.admits([1, 7])


def test_derivation_labels_match_frozen_tables():
    for (m, n), labels in GOLDEN_D0_LABELS.items():
        d0 = build_D0(m, n)
        assert d0.arrow_labels == labels
        assert set(d0.arrows) == set(build_T0(m, n).arrows)


def test_arrow_alphabet_size_formula():
    for m, n in SMALL:
        assert len(arrow_alphabet(m, n).names) == 3 * m * n - 2 * m - 4 * n + 2


def test_arrow_alphabet_round_trip():
    import random
    rng = random.Random(11)
    alpha = arrow_alphabet(4, 3)
    for _ in range(50):
        word = random_walk(4, 3, rng, rng.randrange(2, 12))
        names = alpha.to_arrows(word)
        assert alpha.to_vertices(names) == word


def test_arrow_alphabet_rejects_broken_paths():
    alpha = arrow_alphabet(4, 3)
    with pytest.raises(NotChained):
        alpha.to_arrows([1, 7])
    with pytest.raises(NotChained):
        alpha.to_vertices(["r1", "r1"])


def test_serialization_is_canonical():
    t1 = build_Ti(4, 3, 1)
    data = json.loads(t1.to_json())
    assert data["sector"] == 1
    assert tuple(tuple(r) for r in data["grid"]) == GOLDEN_GRIDS[(4, 3)][1]
    assert t1.to_json() == build_Ti(4, 3, 1).to_json()
    dot = build_D0(4, 3).to_dot()
    assert dot.startswith("digraph") and 'label="1"' in dot


@settings(deadline=None, max_examples=30)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=3, max_value=6),
       st.randoms(use_true_random=False))
def test_walks_are_admissible_in_every_permuted_sector(m, n, rng):
    word = random_walk(m, n, rng, 8)
    assert 0 in admissible_in(m, n, word)
    for i in range(1, n):
        if m % 2 == 0 and n % 2 == 0 and i % 2 == 0:
            with pytest.raises(ValueError, match="no reflecting normalization"):
                sector_permutation(m, n, i)
            continue
        perm = sector_permutation(m, n, i)
        assert i in admissible_in(m, n, [perm[x] for x in word])
