import itertools

import numpy as np
import pytest
from scipy.optimize import nnls

from oracles import brute_facet_normals
from toricnash import lattice as L


def _unimodular(u):
    return abs(L.determinant(u)) == 1


@pytest.mark.parametrize(
    "m",
    [[[1, 0], [0, 1]], [[2, 4], [1, 3]], [[0, 1], [1, 0]], [[3, 5, 7], [2, 4, 6], [1, 1, 1]], [[4, 6], [6, 9]]],
)
def test_hnf_identities(m):
    h, u = L.hermite_normal_form(m)
    assert L.matmul(u, m) == tuple(tuple(r) for r in h)
    assert _unimodular(u)


def test_hnf_examples():
    assert [list(r) for r in L.hermite_normal_form([[1, 0], [0, 1]])[0]] == [[1, 0], [0, 1]]
    assert [list(r) for r in L.hermite_normal_form([[2, 4], [1, 3]])[0]] == [[1, 1], [0, 2]]
    h, u = L.hermite_normal_form([[0, 1], [1, 0]])
    assert [list(r) for r in h] == [[1, 0], [0, 1]]
    assert [list(r) for r in u] == [[0, 1], [1, 0]]


@pytest.mark.parametrize("m", [[[1, 0], [0, 1]], [[2, 0], [0, 3]], [[2]], [[6, 4], [2, 8], [4, 0]], [[0, 0], [0, 5]]])
def test_snf_identities(m):
    d, u, v = L.smith_normal_form(m)
    assert L.matmul(L.matmul(u, m), v) == tuple(tuple(r) for r in d)
    assert _unimodular(u) and _unimodular(v)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(x >= 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i])
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)


def test_snf_examples():
    assert L.invariant_factors([[2, 0], [0, 3]]) == (1, 6)
    d, u, v = L.smith_normal_form([[2]])
    assert (d, u, v) == (((2,),), ((1,),), ((1,),))
    assert L.invariant_factors([[1, 0], [0, 1]]) == (1, 1)


def test_primitive_part():
    assert L.primitive_part((2, 2, 10)) == (1, 1, 5)
    assert L.primitive_part((1, 1, 3)) == (1, 1, 3)
    assert L.primitive_part((0, -4, 6)) == (0, -2, 3)
    with pytest.raises(ValueError, match="zero vector has no primitive part"):
        L.primitive_part((0, 0))


def test_facet_normals_examples():
    assert L.facet_normals([(1, 0), (0, 1)]) == [(0, 1), (1, 0)]
    assert L.facet_normals([(1, 0), (1, 2)]) == [(0, 1), (2, -1)]
    rays = [(1, 0, 0), (0, 1, 0), (1, 1, 3)]
    normals = L.facet_normals(rays)
    assert len(normals) == 3
    for u in normals:
        vals = [L.dot(u, r) for r in rays]
        assert min(vals) == 0 and vals.count(0) == 2


def test_facet_normals_errors():
    with pytest.raises(ValueError, match="not strongly convex"):
        L.facet_normals([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(ValueError, match="not full-dimensional"):
        L.facet_normals([(1, 0, 0), (0, 1, 0)])


def test_rank_cap():
    with pytest.raises(ValueError):
        L.check_rank(L.MAX_RANK + 1)


def test_facet_normals_match_bruteforce(rng):
    done = 0
    while done < 40:
        n = rng.choice([2, 3, 4])
        rays = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n + rng.randint(0, 2))]
        rays = [r for r in rays if any(r)]
        try:
            normals = L.facet_normals(rays)
        except ValueError:
            continue
        done += 1
        assert normals == brute_facet_normals([L.primitive_part(r) for r in rays])


def test_facet_normals_box_roundtrip():
    rays = [(1, 0, 0), (0, 1, 0), (1, 1, 3), (2, -1, 1)]
    normals = L.facet_normals(rays)
    a = np.array(rays, dtype=float).T
    for p in itertools.product(range(-3, 4), repeat=3):
        by_normals = all(L.dot(p, u) >= 0 for u in normals)
        _, resid = nnls(a, np.array(p, dtype=float))
        assert by_normals == (resid < 1e-9)
