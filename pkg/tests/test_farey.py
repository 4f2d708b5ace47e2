from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


from heegaard.farey import (
    INF,
    Slope,
    SlopeError,
    act,
    adjacent,
    bfs_distance,
    common_neighbor,
    distance,
    neighbors_bounded,
)

S = Slope.parse


def test_slope_normalization():
    assert Slope.of(2, -4) == S("-1/2")
    assert S("inf") == INF == Slope.of(-1, 0)
    assert str(INF) == "inf" and str(S("3")) == "3/1"
    for bad in ("0/0", "x", "1/2/3"):
        with pytest.raises(SlopeError):
            S(bad)
    with pytest.raises(SlopeError):
        Slope(2, 4)


def test_adjacent_examples():
    assert adjacent(S("0/1"), INF)
    assert adjacent(S("0/1"), S("1/1"))
    assert adjacent(S("1/2"), S("3/5"))
    assert not adjacent(S("0/1"), S("2/1"))


def test_distance_examples():
    assert distance(S("2/7"), S("2/7")) == 0
    assert distance(S("0/1"), S("1/1")) == 1
    assert distance(S("2/5"), S("5/2")) == bfs_distance(S("2/5"), S("5/2")) == 4


def test_common_neighbor_examples():
    z, one = S("0/1"), S("1/1")
    assert common_neighbor(z, one) == INF
    assert common_neighbor(S("1/3"), S("3/1")) is None
    assert bfs_distance(S("1/3"), S("3/1")) == 3


def test_zero_one_infinity_triangle():
    z, one = S("0/1"), S("1/1")
    for a, b in ((z, one), (one, INF), (z, INF)):
        assert adjacent(a, b) and distance(a, b) == 1
        c = common_neighbor(a, b)
        assert adjacent(c, a) and adjacent(c, b)


def test_neighbors_are_adjacent():
    s = S("3/7")
    ns = neighbors_bounded(s, 30, 30)
    assert ns and all(adjacent(s, t) for t in ns)
    brute = [Slope.of(p, q) for q in range(0, 31) for p in range(-30, 31) if (p, q) != (0, 0)]
    assert set(ns) == {t for t in brute if abs(t.p) <= 30 and t.q <= 30 and adjacent(s, t)}


@st.composite
def slope(draw):
    p = draw(st.integers(-20, 20))
    q = draw(st.integers(0, 20))
    if p == 0 and q == 0:
        q = 1
    return Slope.of(p, q)


def _mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


# T, T^-1 and S generate SL(2, Z)
GENS = [(1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0)]
sl2z = st.lists(st.sampled_from(GENS), max_size=8).map(
    lambda ms: reduce(_mul, ms, (1, 0, 0, 1))
)


@settings(max_examples=300, deadline=None)
@given(slope(), slope(), slope())
def test_triangle_inequality(a, b, c):
    assert distance(a, c) <= distance(a, b) + distance(b, c)
    assert distance(a, b) == distance(b, a)
    assert (distance(a, b) == 0) == (a == b)


@settings(max_examples=300, deadline=None)
@given(slope(), slope(), sl2z)
def test_modular_invariance(a, b, m):
    p, q, r, s = m
    assert p * s - q * r == 1
    assert distance(act(m, a), act(m, b)) == distance(a, b)


@settings(max_examples=300, deadline=None)
@given(slope(), slope())
def test_common_neighbor_property(a, b):
    c = common_neighbor(a, b)
    if distance(a, b) <= 2:
        assert c is not None and adjacent(c, a) and adjacent(c, b)
    else:
        assert c is None


def test_common_neighbor_tiebreak_least_denominator():
    a, b = S("1/3"), S("2/5")
    c = common_neighbor(a, b)
    assert c is not None
    cands = [t for t in neighbors_bounded(a, 10, 10) if adjacent(t, b)]
    assert min(t.q for t in cands) == c.q
