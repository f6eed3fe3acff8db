import itertools

import pytest

from conftest import example_cone_rays
from oracles import box_minimal_elements, hilbert_basis_2d
from sampling import random_cones, random_singular_2d
from toricnash.arcorder import (
    essential_divisor_count,
    in_S,
    is_minimal_in_S,
    leq,
    minimal_elements,
    parallelepiped_points,
    triangulate,
)
from toricnash.cones import contains, is_regular, is_simplicial, make_cone
from toricnash.lattice import is_primitive
from toricnash.resolution import Fan, hj_minimal_resolution_2d, is_subdivision

SQUARE = make_cone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])


def sigma(e):
    return make_cone(example_cone_rays(e))


def test_in_S():
    assert not any(in_S(make_cone([(1, 0), (0, 1)]), v) for v in [(0, 0), (1, 1), (3, 2)])
    assert in_S(sigma(3), (1, 1, 1))
    assert not in_S(sigma(3), (1, 0, 0))
    assert not in_S(sigma(3), (0, 0, 0))
    assert not in_S(sigma(3), (0, 0, -1))


def test_leq():
    s = sigma(4)
    assert leq(s, (1, 1, 1), (1, 1, 1))
    assert leq(s, (1, 1, 1), (2, 2, 4))
    assert not leq(s, (1, 1, 1), (1, 1, 0)) and not leq(s, (1, 1, 0), (1, 1, 1))
    with pytest.raises(ValueError):
        leq(s, (0, 0, 1), (1, 1, 1))


def test_triangulate():
    assert triangulate(sigma(3)) == [sigma(3)]
    simplices = triangulate(SQUARE)
    assert len(simplices) == 2 and all(is_simplicial(s) for s in simplices)
    assert is_subdivision(Fan(SQUARE, tuple(simplices)), SQUARE, pairwise=True)
    orthant = make_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert triangulate(orthant) == [orthant]


def test_triangulate_random(rng):
    for c in random_cones(rng, 15, ranks=(3, 4), extra=(1, 2, 3)):
        simplices = triangulate(c)
        assert all(is_simplicial(s) and set(s.rays) <= set(c.rays) for s in simplices)
        assert is_subdivision(Fan(c, tuple(simplices)), c, pairwise=True)


def test_parallelepiped_points():
    assert parallelepiped_points(make_cone([(1, 0), (0, 1)])) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert parallelepiped_points(make_cone([(1, 0), (1, 2)])) == [(0, 0), (1, 0), (1, 1), (1, 2), (2, 2)]
    pts = parallelepiped_points(sigma(3))
    assert (1, 1, 1) in pts and (1, 1, 2) in pts
    with pytest.raises(ValueError):
        parallelepiped_points(SQUARE)


@pytest.mark.parametrize("e", [2, 3, 5, 7])
def test_example_family(e):
    rep = minimal_elements(sigma(e))
    assert rep.minimal_elements == tuple((1, 1, d) for d in range(1, e))
    assert essential_divisor_count(sigma(e)) == e - 1


def test_minimal_elements_small_cases():
    assert minimal_elements(make_cone([(1, 0), (0, 1)])).minimal_elements == ()
    for n in range(2, 9):
        assert minimal_elements(make_cone([(1, 0), (1, n)])).minimal_elements == tuple(
            (1, d) for d in range(1, n)
        )
    assert essential_divisor_count(make_cone([(1, 0), (1, 7)])) == 6
    assert minimal_elements(SQUARE).minimal_elements == ((1, 1, 1),)


def test_report_invariants(rng):
    for c in random_cones(rng, 30, ranks=(2, 3), extra=(0, 1, 2)):
        rep = minimal_elements(c)
        assert rep.s_candidate_count <= rep.candidate_count
        for v in rep.minimal_elements:
            assert is_primitive(v) and in_S(c, v) and is_minimal_in_S(c, v)
            assert not any(w != v and leq(c, w, v) for w in rep.minimal_elements)
        # S is empty exactly for regular cones, and then nothing is minimal
        assert (rep.count == 0) == is_regular(c)
        if is_regular(c):
            assert not any(in_S(c, p) for p in _box(c))


def _box(c, b=3):
    return [p for p in itertools.product(range(-b, b + 1), repeat=c.rank) if contains(c, p)]


def test_agrees_with_box_search(rng):
    for c in random_cones(rng, 12, ranks=(2, 3), extra=(0, 1)):
        box, _ = box_minimal_elements(list(c.rays))
        assert list(minimal_elements(c).minimal_elements) == box


def test_two_dim_matches_hilbert_basis(rng):
    for _ in range(25):
        c = random_singular_2d(rng, bound=12)
        _, new = hj_minimal_resolution_2d(c)
        hb = [v for v in hilbert_basis_2d(*c.rays) if v not in c.rays]
        assert sorted(new) == hb == list(minimal_elements(c).minimal_elements)
