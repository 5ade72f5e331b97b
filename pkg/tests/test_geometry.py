from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from treemax.errors import ParameterError, ResourceBudgetError
from treemax.geometry import (
    TreeParams,
    VertexAddress,
    ball_size,
    distance,
    enumerate_ball,
    first_vertex,
    sphere_decomposition,
    sphere_size,
)


def test_ball_size_examples():
    assert ball_size(2, 0) == 1
    assert ball_size(2, 1) == 4
    assert ball_size(2, 2) == 10
    assert ball_size(3, 2) == 17


def test_sphere_size_examples():
    assert sphere_size(2, 0) == 1
    assert sphere_size(2, 1) == 3
    assert sphere_size(2, 3) == 12


def test_distance_examples():
    o = VertexAddress.root(2)
    x = VertexAddress((0, 1), 2)
    y = VertexAddress((0, 0, 1), 2)
    assert distance(x, x) == 0
    assert distance(o, y) == y.norm == 3
    assert distance(x, y) == 3


def test_distance_mismatched_trees():
    with pytest.raises(ParameterError):
        distance(VertexAddress((), 2), VertexAddress((), 3))


def test_invalid_parameters():
    with pytest.raises(ParameterError):
        TreeParams(1)
    with pytest.raises(ParameterError):
        VertexAddress((0, 2), 2)  # non-root vertices have k children
    VertexAddress((2,), 2)  # the root has k + 1
    with pytest.raises(ParameterError):
        ball_size(2, -1)


def test_decomposition_examples():
    assert sphere_decomposition(2, 0, 2).entries == ((2, 6),)
    assert sphere_decomposition(2, 2, 1).entries == ((3, 2), (1, 1))
    assert sphere_decomposition(2, 1, 2).entries == ((3, 4), (1, 2))


def test_enumerate_ball_examples():
    assert list(enumerate_ball(2, 0)) == [VertexAddress.root(2)]
    assert len(list(enumerate_ball(2, 1))) == 4
    assert len(list(enumerate_ball(3, 4))) == 161


def test_enumeration_order_and_budget():
    verts = list(enumerate_ball(2, 4))
    assert verts == sorted(verts)
    with pytest.raises(ResourceBudgetError) as err:
        list(enumerate_ball(2, 20, budget=1000))
    assert "1000" in str(err.value)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_decomposition_sums_to_sphere(k):
    for m in range(41):
        for n in range(41):
            assert sphere_decomposition(k, m, n).total == sphere_size(k, n)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_decomposition_bracket_off_root(k):
    # the stated bracket holds for every center except the root
    lo = Fraction(k - 1, k)
    for m in range(1, 41):
        for n in range(41):
            for j, _, c in sphere_decomposition(k, m, n).steps():
                assert lo <= Fraction(c, k ** (n - j)) <= 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_decomposition_at_root(k):
    # k + 1 branches at the root: count/k^n = (k+1)/k, outside the bracket
    for n in range(1, 41):
        (entry,) = sphere_decomposition(k, 0, n).entries
        assert Fraction(entry[1], k**n) == Fraction(k + 1, k)


@pytest.mark.parametrize("k,R", [(2, 7), (3, 5)])
def test_decomposition_matches_enumeration(k, R):
    verts = list(enumerate_ball(k, R))
    for m in range(R + 1):
        x = first_vertex(k, m)
        by_n = {}
        for y in verts:
            by_n.setdefault(distance(x, y), Counter())[y.norm] += 1
        for n in range(R - m + 1):
            assert dict(sphere_decomposition(k, m, n).entries) == dict(by_n[n])


@pytest.mark.parametrize("k", [2, 3])
def test_metric_axioms(k):
    verts = list(enumerate_ball(k, 4 if k == 2 else 3))
    for x, y in product(verts, repeat=2):
        d = distance(x, y)
        assert d == distance(y, x)
        assert (d == 0) == (x == y)
    step = max(1, len(verts) // 25)
    sample = verts[::step]
    for x, y, z in product(sample, repeat=3):
        assert distance(x, z) <= distance(x, y) + distance(y, z)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_ball_minus_ball_is_sphere(k):
    for r in range(1, 61):
        assert ball_size(k, r) - ball_size(k, r - 1) == sphere_size(k, r)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_doubling_against_square(k):
    for r in range(31):
        assert ball_size(k, 2 * r) <= ball_size(k, r) ** 2


def test_address_text_round_trip():
    x = VertexAddress((2, 0, 1), 2)
    assert VertexAddress.from_text(x.to_text(), 2) == x
    assert x.parent().child(1) == x
