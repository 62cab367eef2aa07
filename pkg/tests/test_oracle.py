import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimerstrip.lattice import build_dual, build_graph, build_square_torus
from dimerstrip.oracle import (
    SizeError,
    WeightHistogram,
    convex_hull,
    count_min_fas_bruteforce,
    enumerate_matchings,
    fas_report,
    is_fas,
    iter_matchings,
    newton_polygon,
)


@pytest.mark.parametrize("n,total", [(2, 8), (4, 36), (6, 200), (8, 1156), (10, 6728)])
def test_square_totals(n, total):
    h = enumerate_matchings(build_graph("square", n))
    assert h.total == total
    assert h[(0, 1)] == h[(0, -1)] == 1
    assert h.is_symmetric()


@pytest.mark.parametrize("n,total", [(2, 5), (4, 9), (6, 20), (8, 49), (10, 125)])
def test_hex_totals(n, total):
    assert enumerate_matchings(build_graph("hex", n)).total == total


def test_histogram_matches_plain_enumeration():
    g = build_graph("square", 6)
    h = WeightHistogram()
    for m in iter_matchings(g):
        h.add(g.weight(m))
    assert h.counts == enumerate_matchings(g).counts


def test_parallel_enumeration_is_identical():
    g = build_graph("square", 8)
    assert enumerate_matchings(g, workers=2).counts == enumerate_matchings(g).counts


def test_torus_totals():
    assert enumerate_matchings(build_square_torus(4, 4)).total == 272
    assert enumerate_matchings(build_square_torus(4, 6)).total == 3108


def test_size_guard():
    with pytest.raises(SizeError):
        enumerate_matchings(build_graph("square", 18))


def test_csv_roundtrip():
    h = enumerate_matchings(build_graph("square", 4))
    text = h.to_csv()
    assert text.splitlines()[0] == "nz,nw,count"
    assert WeightHistogram.from_csv(text).counts == h.counts


def test_newton_polygon_square():
    h = enumerate_matchings(build_graph("square", 4))
    poly = newton_polygon(h, square_strip_n=4)
    assert sorted(poly.vertices) == [(-2, 0), (0, -1), (0, 1), (2, 0)]
    assert poly.internal == [(-1, 0), (0, 0), (1, 0)]
    assert poly.boundary_lattice_count() == 4


def test_newton_polygon_rejects_wrong_shape():
    h = enumerate_matchings(build_graph("hex", 4))
    with pytest.raises(AssertionError):
        newton_polygon(h, square_strip_n=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=20))
def test_hull_contains_points(points):
    hull = convex_hull(points)
    if len(hull) < 3:
        return
    for p in points:
        for a, b in zip(hull, hull[1:] + hull[:1]):
            assert (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0


def test_is_fas_rejects_non_matching():
    g = build_graph("square", 4)
    d = build_dual(g)
    with pytest.raises(ValueError):
        is_fas(d, [0])


def test_fas_report_square():
    rep = fas_report(build_graph("square", 4))
    assert (rep.total, rep.fas) == (36, 32)
    assert rep.internal_not_fas == 0
    # the rhombus vertices: each leaves the two zig-zag paths along its opposite sides
    assert rep.non_fas == [((-2, 0), 2), ((0, -1), 2), ((0, 1), 2), ((2, 0), 2)]


def test_fas_report_hex():
    rep = fas_report(build_graph("hex", 4))
    assert rep.fas == 4 and rep.internal_not_fas == 0


def test_minimum_fas_bruteforce():
    count, size = count_min_fas_bruteforce(build_dual(build_graph("square", 2)))
    assert (count, size) == (4, 2)
    with pytest.raises(SizeError):
        count_min_fas_bruteforce(build_dual(build_graph("square", 6)))
