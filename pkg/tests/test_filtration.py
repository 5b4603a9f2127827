import math
from itertools import combinations

import numpy as np
import pytest

from persent import (
    BudgetExceededError,
    PointCloud,
    build_rips,
    distance_matrix,
    format_complex_lines,
    sample_circle,
    simplex_stream,
)

from oracles import brute_rips


def rips_of(points, max_dim, threshold="full", budget=10_000_000):
    m = distance_matrix(PointCloud(np.asarray(points, dtype=float)))
    return m, build_rips(m, max_dim=max_dim, threshold=threshold, budget=budget)


def as_pairs(fc):
    return set(simplex_stream(fc))


def test_two_points_single_edge():
    _, fc = rips_of([[0, 0], [5, 0]], max_dim=1)
    assert as_pairs(fc) == {((0,), 0.0), ((1,), 0.0), ((0, 1), 2.5)}


def test_equilateral_triangle_enters_at_half():
    side = [[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]]
    _, fc = rips_of(side, max_dim=2)
    triangle = [v for s, v in simplex_stream(fc) if len(s) == 3]
    assert len(triangle) == 1
    # the longest side is exactly 1 for two of the pairs
    assert abs(triangle[0] - 0.5) < 1e-12


def test_matches_brute_force_enumeration():
    rng = np.random.default_rng(42)
    for trial in range(8):
        n = int(rng.integers(2, 8))
        pts = rng.normal(size=(n, 3))
        max_dim = int(rng.integers(0, n))
        m, fc = rips_of(pts, max_dim=max_dim)
        fc.validate()
        expected = brute_rips(m.values, max_dim, fc.cap_value)
        assert as_pairs(fc) == expected


def test_numeric_threshold_cuts_simplices():
    rng = np.random.default_rng(8)
    pts = rng.normal(size=(7, 2))
    m, fc = rips_of(pts, max_dim=3, threshold=0.4)
    fc.validate()
    expected = brute_rips(m.values, 3, 0.4)
    assert as_pairs(fc) == expected
    assert all(v <= 0.4 for _, v in simplex_stream(fc))


def test_edge_count_matches_pair_count():
    rng = np.random.default_rng(17)
    pts = rng.normal(size=(25, 2))
    m, fc = rips_of(pts, max_dim=1, threshold=0.9)
    edges = sum(1 for s, _ in simplex_stream(fc) if len(s) == 2)
    expected = sum(
        1
        for i, j in combinations(range(25), 2)
        if m.values[i, j] / 2.0 <= 0.9
    )
    assert edges == expected


def test_flag_property_on_small_cloud():
    # a simplex is present iff all its edges are present
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(8, 2))
    m, fc = rips_of(pts, max_dim=4, threshold=0.7)
    have = {s for s, _ in simplex_stream(fc)}
    edges = {s for s in have if len(s) == 2}
    for k in (3, 4, 5):
        for verts in combinations(range(8), k):
            all_edges_in = all(
                (a, b) in edges for a, b in combinations(verts, 2)
            )
            assert (verts in have) == all_edges_in


def test_full_complex_is_power_set():
    # d points, full threshold, max_dim d-1: every non-empty subset
    _, fc = rips_of(np.random.default_rng(1).normal(size=(6, 2)), max_dim=5)
    assert len(fc) == 2**6 - 1


def test_budget_is_a_hard_error():
    pts = np.random.default_rng(2).normal(size=(10, 2))
    with pytest.raises(BudgetExceededError) as err:
        rips_of(pts, max_dim=9, budget=50)
    assert "budget" in str(err.value)


def test_vertices_precede_edges_and_faces_precede_cofaces():
    _, fc = rips_of(sample_circle(15, 2.0, seed=2).points, max_dim=2)
    seen = set()
    last_key = None
    for verts, value in simplex_stream(fc):
        key = (value, len(verts), verts)
        if last_key is not None:
            assert key > last_key
        last_key = key
        for k in range(len(verts)):
            face = verts[:k] + verts[k + 1 :]
            if face:
                assert face in seen
        seen.add(verts)
    assert len(seen) == len(fc)


def test_dump_lines():
    _, fc = rips_of([[0, 0], [5, 0]], max_dim=1)
    lines = list(format_complex_lines(fc))
    assert lines[0] == "0 0 0"
    assert lines[1] == "0 1 0"
    assert lines[2] == "1 0 1 2.5"


def test_rejects_bad_arguments():
    m = distance_matrix(PointCloud(np.array([[0.0, 0.0], [1.0, 0.0]])))
    with pytest.raises(ValueError):
        build_rips(m, max_dim=-1)
    with pytest.raises(ValueError):
        build_rips(m, max_dim=1, threshold=0.0)
    with pytest.raises(ValueError):
        build_rips(m, max_dim=1, threshold=-2)
