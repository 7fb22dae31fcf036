"""Linear trajectories and their cutting sequences."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from bouwmoller.diagrams import admissible_in
from bouwmoller.renorm import derive, fixed_point_form, normalize
from bouwmoller.surface import build_surface
from bouwmoller.tracer import (NotCoAdjacent, VertexHit, realize_periodic,
                               sector_of, start_through, trace)


def test_sector_of():
    assert sector_of(0.1, 3) == (0, False)
    assert sector_of(math.pi / 3, 3) == (0, True)
    assert sector_of(math.pi / 3 + 0.05, 3) == (1, False)
    assert sector_of(2 * math.pi - 0.1, 3) == (5, False)
    assert sector_of(0.1 + 2 * math.pi, 3) == (0, False)


def test_trace_regression():
    surf = build_surface(4, 3)
    start = start_through(surf, 1, math.pi / 8)
    word = trace(surf, start, math.pi / 8, 12)
    assert list(word.labels) == [1, 6, 7, 8, 5, 2, 1, 6, 7, 8, 5, 4]


def test_crossings_lie_on_their_sides():
    surf = build_surface(4, 3)
    start = start_through(surf, 1, 0.51)
    word = trace(surf, start, 0.51, 40)
    assert len(word.crossings) == len(word.labels) == 40
    last_t = 0.0
    for c in word.crossings:
        assert c.t > last_t
        last_t = c.t
        found = False
        for k, e in surf.seats(c.label):
            a, b = surf.polygons[k].edge(e)
            dx, dy = b[0] - a[0], b[1] - a[1]
            px, py = c.point[0] - a[0], c.point[1] - a[1]
            if abs(dx * py - dy * px) < 1e-9 and \
                    -1e-9 <= (dx * px + dy * py) / (dx * dx + dy * dy) <= 1 + 1e-9:
                found = True
        assert found
        assert c.as_dict()["label"] == c.label


def test_traced_words_are_admissible_in_the_direction_sector():
    rng = random.Random(5)
    for m, n in ((4, 3), (3, 4)):
        surf = build_surface(m, n)
        for _ in range(20):
            theta = rng.uniform(0, 2 * math.pi)
            sec, boundary = sector_of(theta, n, tol=1e-6)
            if boundary:
                continue
            try:
                start = start_through(surf, 1 + rng.randrange(n * (m - 1)), theta)
                word = list(trace(surf, start, theta, 60).labels)
            except VertexHit:
                continue
            assert sec in admissible_in(m, n, word)


def test_start_through_rejects_parallel_directions():
    surf = build_surface(4, 3)
    with pytest.raises(VertexHit):
        start_through(surf, 1, math.pi / 3)


def test_periodic_pair_realization():
    theta, start, word = realize_periodic(4, 3, 1, 2)
    w = list(word.labels)
    assert set(w[0::2]) == {w[0]} and set(w[1::2]) == {w[1]}
    assert {w[0], w[1]} == {1, 2}
    assert fixed_point_form(w)
    _, u = normalize(4, 3, w)
    image = derive(4, 3, u, cyclic=True)
    assert len(image) == len(w)
    assert fixed_point_form(image)


def test_periodic_pair_requires_adjacency():
    with pytest.raises(NotCoAdjacent):
        realize_periodic(4, 3, 1, 5)


@settings(deadline=None, max_examples=25)
@given(st.floats(min_value=0.01, max_value=math.pi - 0.01),
       st.integers(min_value=1, max_value=9))
def test_window_length_matches_request(theta, label):
    surf = build_surface(4, 3)
    if sector_of(theta, 3, tol=1e-3)[1]:
        return
    try:
        start = start_through(surf, label, theta)
        word = trace(surf, start, theta, 25)
    except VertexHit:
        return
    assert len(word) == 25
    assert len(word.crossings) == 25
