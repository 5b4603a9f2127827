import math

import numpy as np
import pytest

from persent import (
    InputFormatError,
    Interval,
    PointCloud,
    apply_essential_cap,
    betti_numbers_at,
    build_rips,
    compute_barcode,
    distance_matrix,
    format_barcode,
    parse_barcode,
    resolved_dimensions,
    sample_circle,
)
from persent._kernels import BACKENDS

from conftest import SEED_CIRCLE_GAPPED
from oracles import barcode_counts_at, components_at, dense_reduction_lows

SQRT2 = math.sqrt(2)


def pipeline(points, max_dim, threshold="full"):
    fc = build_rips(
        distance_matrix(PointCloud(np.asarray(points, dtype=float))),
        max_dim=max_dim,
        threshold=threshold,
    )
    raw = compute_barcode(fc)
    return fc, raw, apply_essential_cap(raw, fc.diameter, fc.threshold)


def bars(b, dim=None):
    out = [
        (iv.dim, iv.birth, iv.death, iv.essential)
        for iv in b.intervals
        if dim is None or iv.dim == dim
    ]
    return sorted(out)


def test_two_points_merge_and_essential():
    _, raw, capped = pipeline([[0, 0], [5, 0]], max_dim=1)
    assert bars(raw, 0) == [(0, 0.0, 2.5, False), (0, 0.0, math.inf, True)]
    assert bars(capped, 0) == [(0, 0.0, 2.5, False), (0, 0.0, 2.5, True)]
    assert bars(capped, 1) == []
    assert capped.cap == 2.5


def test_equilateral_triangle_zero_length_loop():
    pts = [[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]]
    _, _, capped = pipeline(pts, max_dim=2)
    loop = bars(capped, 1)
    assert len(loop) == 1
    dim, birth, death, essential = loop[0]
    assert birth == death == 0.5
    assert not essential


def test_unit_square_loop():
    _, _, capped = pipeline([[0, 0], [1, 0], [1, 1], [0, 1]], max_dim=2)
    positive = [iv for iv in capped.intervals if iv.dim == 1 and iv.length > 0]
    assert len(positive) == 1
    assert positive[0].birth == 0.5
    assert positive[0].death == SQRT2 / 2


def test_circle_essential_component_near_two():
    cloud = sample_circle(30, 2.0, seed=12)
    fc = build_rips(distance_matrix(cloud), max_dim=1)
    capped = apply_essential_cap(compute_barcode(fc), fc.diameter, fc.threshold)
    essential0 = [
        iv for iv in capped.intervals if iv.dim == 0 and iv.essential
    ]
    assert len(essential0) == 1
    assert abs(essential0[0].death - 2.0) < 0.05


def test_single_point_cloud():
    _, raw, capped = pipeline([[0.0, 0.0]], max_dim=0)
    assert bars(raw) == [(0, 0.0, math.inf, True)]
    assert bars(capped) == [(0, 0.0, 0.0, True)]  # cap = diameter/2 = 0


def test_numeric_threshold_caps_at_threshold():
    _, _, capped = pipeline(
        np.random.default_rng(0).normal(size=(12, 2)), max_dim=1, threshold=1.3
    )
    ess = capped.deaths[capped.essential]
    assert len(ess) >= 1
    assert np.all(ess == 1.3)
    assert capped.cap == 1.3


def test_dim0_interval_count_equals_point_count():
    _, raw, _ = pipeline(np.random.default_rng(5).normal(size=(9, 3)), max_dim=2)
    assert int((raw.dims == 0).sum()) == 9


def test_exactly_one_interval_spans_zero_to_cap_at_full():
    # the surviving component: birth 0, death = cap, essential
    _, _, capped = pipeline(np.random.default_rng(6).normal(size=(10, 2)), max_dim=2)
    spanning = (capped.births == 0.0) & (capped.deaths == capped.cap) & capped.essential
    assert int(spanning.sum()) == 1


def test_conservation_every_simplex_creates_or_kills():
    fc, raw, _ = pipeline(np.random.default_rng(2).normal(size=(8, 2)), max_dim=7)
    finite = int((~raw.essential).sum())
    essential = int(raw.essential.sum())
    assert 2 * finite + essential == len(fc)


def test_determinism():
    pts = np.random.default_rng(9).normal(size=(10, 3))
    _, a, _ = pipeline(pts, max_dim=2)
    _, b, _ = pipeline(pts, max_dim=2)
    assert np.array_equal(a.dims, b.dims)
    assert np.array_equal(a.births, b.births)
    assert np.array_equal(a.deaths, b.deaths)
    assert np.array_equal(a.essential, b.essential)


@pytest.mark.parametrize("backend", BACKENDS)
def test_backends_match_dense_reduction(backend):
    from persent.persistence import _vertex_counts
    from persent._kernels import reduce_columns

    fc = build_rips(
        distance_matrix(PointCloud(np.random.default_rng(4).normal(size=(7, 2)))),
        max_dim=6,
    )
    simplices = fc.simplices
    nverts = _vertex_counts(simplices)
    index = {s: j for j, s in enumerate(simplices)}
    columns = []
    for s in simplices:
        if len(s) == 1:
            columns.append([])
        else:
            columns.append(
                sorted(index[s[:k] + s[k + 1 :]] for k in range(len(s)))
            )
    col_ptr = np.zeros(len(simplices) + 1, dtype=np.int64)
    for j, col in enumerate(columns):
        col_ptr[j + 1] = col_ptr[j] + len(col)
    rows = np.asarray([r for col in columns for r in col], dtype=np.int32)

    lows = reduce_columns(col_ptr, rows, backend=backend)
    expected = dense_reduction_lows(columns, len(simplices))
    assert list(lows) == expected


def test_betti_components_match_union_find():
    cloud = sample_circle(25, 2.0, seed=33)
    m = distance_matrix(cloud)
    fc = build_rips(m, max_dim=2)
    for t in (0.05, 0.15, 0.3, 0.6, 1.0):
        betti = betti_numbers_at(fc, t)
        assert betti[0] == components_at(m.values, t)


def test_betti_gapped_circle_two_components_no_loop():
    # seed chosen so exactly two sampling gaps exceed chord length 1.0:
    # at scale 0.5 the complex is two arcs
    cloud = sample_circle(30, 2.0, seed=SEED_CIRCLE_GAPPED)
    fc = build_rips(distance_matrix(cloud), max_dim=2)
    betti = betti_numbers_at(fc, 0.5)
    assert betti[0] == 2
    assert betti[1] == 0


def test_betti_full_complex_contractible():
    fc = build_rips(
        distance_matrix(PointCloud(np.random.default_rng(10).normal(size=(6, 4)))),
        max_dim=5,
    )
    betti = betti_numbers_at(fc, fc.diameter / 2)
    assert betti == [1, 0, 0, 0, 0, 0]


def test_barcode_betti_consistency_small_clouds():
    rng = np.random.default_rng(77)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        fc, raw, _ = pipeline(rng.normal(size=(n, 2)), max_dim=n - 1)
        intervals = [(int(d), float(b), float(e)) for d, b, e in
                     zip(raw.dims, raw.births, raw.deaths)]
        for t in sorted(set(fc.values.tolist())):
            betti = betti_numbers_at(fc, t)
            counts = barcode_counts_at(intervals, t)
            for k in range(fc.max_dim + 1):
                assert counts.get(k, 0) == betti[k], (t, k)


def test_resolved_dimensions():
    assert list(resolved_dimensions(0)) == [0]
    assert list(resolved_dimensions(1)) == [0]
    assert list(resolved_dimensions(2)) == [0, 1]
    assert list(resolved_dimensions(3)) == [0, 1, 2]


def test_restrict_to_dims():
    _, _, capped = pipeline(np.random.default_rng(3).normal(size=(8, 2)), max_dim=2)
    low = capped.restrict_to_dims(resolved_dimensions(2))
    assert set(low.dims_present()) <= {0, 1}
    assert len(low) == int((capped.dims < 2).sum())


def test_format_parse_round_trip():
    _, _, capped = pipeline(np.random.default_rng(8).normal(size=(9, 2)), max_dim=2)
    text = format_barcode(capped)
    back = parse_barcode(text)
    assert np.array_equal(back.dims, capped.dims)
    assert np.array_equal(back.births, capped.births)
    assert np.array_equal(back.deaths, capped.deaths)
    assert back.cap == capped.cap
    assert back.point_count == capped.point_count
    assert back.threshold == capped.threshold


def test_parse_errors_carry_line_numbers():
    good = "# cap=2.5 threshold=full points=2\n0 0 2.5\n"
    parse_barcode(good)

    with pytest.raises(InputFormatError) as err:
        parse_barcode("0 0 2.5\n")
    assert err.value.line == 1  # header required

    with pytest.raises(InputFormatError) as err:
        parse_barcode("# cap=2.5 threshold=full points=2\n0 0\n")
    assert err.value.line == 2

    with pytest.raises(InputFormatError) as err:
        parse_barcode("# cap=2.5 threshold=full points=2\n0 0 2.5\n1 x 2\n")
    assert err.value.line == 3

    with pytest.raises(InputFormatError) as err:
        parse_barcode("# cap=2.5 threshold=full points=2\n0 3 2\n")
    assert err.value.line == 2  # death before birth


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(dim=-1, birth=0.0, death=1.0)
    with pytest.raises(ValueError):
        Interval(dim=0, birth=2.0, death=1.0)
    with pytest.raises(ValueError):
        Interval(dim=0, birth=-0.5, death=1.0)
    assert Interval(0, 0.0, 2.0).length == 2.0
    assert Interval(0, 0.0, 2.0).contains(0.0)
    assert not Interval(0, 0.0, 2.0).contains(2.0)
