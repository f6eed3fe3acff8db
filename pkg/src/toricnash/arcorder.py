"""The set S of lattice points over the singular locus and its minimal elements.

For a cone ``c`` the set S consists of the lattice points lying in the
relative interior of some singular face.  Points are ordered by
``v <= w  iff  w - v in c``.  The minimal elements of S are in bijection
with the essential divisors over the affine toric variety of ``c``.

Search region
-------------
Every minimal element lies in the closed fundamental parallelepiped
``{sum c_i g_i : 0 <= c_i <= 1}`` of some simplex of a triangulation of
``c`` that uses only the rays of ``c``.  If ``v = sum c_i g_i`` with some
``c_j > 1``, all ``g_i`` with ``c_i > 0`` lie in the smallest face ``F``
containing ``v``, and ``v - g_j`` has the same positive support, so it
still lies in the relative interior of ``F``; hence ``v - g_j`` is an
element of S strictly below ``v``.  The test-suite checks this bound against
exhaustive box search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import floor
from typing import Sequence

from . import lattice
from .cones import Cone, Face, contains, faces, is_regular, is_simplicial, make_cone, vanishing_normals
from .lattice import LatticeVector, dot


@dataclass(frozen=True)
class MinimalElementReport:
    cone: Cone
    minimal_elements: tuple[LatticeVector, ...]
    candidate_count: int
    s_candidate_count: int

    @property
    def count(self) -> int:
        return len(self.minimal_elements)


@lru_cache(maxsize=256)
def _singular_patterns(c: Cone) -> dict[frozenset, bool]:
    return {f.normals: not is_regular(f) for f in faces(c)}


def in_S(c: Cone, v: Sequence[int]) -> bool:
    """Whether ``v`` lies in the relative interior of a singular face of ``c``."""
    if not contains(c, v):
        return False
    return _singular_patterns(c)[vanishing_normals(c, v)]


def leq(c: Cone, v: Sequence[int], w: Sequence[int]) -> bool:
    """The cone order: ``v <= w`` iff ``w - v`` lies in ``c``."""
    if not contains(c, v) or not contains(c, w):
        raise ValueError("both vectors must lie in the cone")
    return contains(c, lattice.sub(w, v))


def _orientation(basis_t, vectors) -> int:
    """Sign of det(vectors) measured in the coordinates of a span basis."""
    coords = [lattice.solve_rational(basis_t, v) for v in vectors]
    den = 1
    for row in coords:
        for x in row:
            den = den * x.denominator
    d = lattice.determinant([[int(x * den) for x in row] for row in coords])
    return (d > 0) - (d < 0)


def triangulate(c: Cone) -> list[Cone]:
    """Placing triangulation of ``c`` by its rays in lex order.

    The simplices use only rays of ``c``, meet in common faces and cover
    ``c``.
    """
    if is_simplicial(c):
        return [c]
    rays = list(c.rays)
    simplices: list[tuple[int, ...]] = [(0,)]
    span = [0]
    for k in range(1, len(rays)):
        if lattice.rank([rays[i] for i in span] + [rays[k]]) > len(span):
            span.append(k)
            simplices = [s + (k,) for s in simplices]
            continue
        basis_t = lattice.transpose([rays[i] for i in span])
        d = len(span)
        counts: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for si, s in enumerate(simplices):
            for drop in s:
                facet = tuple(i for i in s if i != drop)
                counts.setdefault(facet, []).append((si, drop))
        added = []
        for facet, owners in counts.items():
            if len(owners) != 1:
                continue
            _, opposite = owners[0]
            fv = [rays[i] for i in facet]
            side_p = _orientation(basis_t, fv + [rays[k]])
            side_q = _orientation(basis_t, fv + [rays[opposite]])
            if side_p != 0 and side_p == -side_q:
                added.append(tuple(sorted(facet + (k,))))
        assert added, "new ray sees no boundary facet"
        assert all(len(s) == d for s in added)
        simplices += added
    return sorted(
        (make_cone([rays[i] for i in s]) for s in simplices),
        key=lambda cone: cone.rays,
    )


def _half_open_points(rays: Sequence[LatticeVector]) -> list[tuple[LatticeVector, tuple[Fraction, ...]]]:
    """Lattice points of ``{sum c_i r_i : 0 <= c_i < 1}`` with their coefficients.

    ``rays`` must be linearly independent; the lattice is the saturation of
    their span.
    """
    d, u, v = lattice.smith_normal_form(rays)
    k = len(rays)
    diag = [d[i][i] for i in range(k)]
    # rays = u^-1 d v^-1, so a point y v^-1 of the saturated lattice equals
    # (y d^-1 u) @ rays; enumerate y over the finite group.
    out = []

    def rec(i, y):
        if i == k:
            coeffs = [sum(Fraction(y[j], diag[j]) * u[j][col] for j in range(k)) for col in range(k)]
            coeffs = [x - floor(x) for x in coeffs]
            point = tuple(
                int(sum(coeffs[i] * rays[i][col] for i in range(k))) for col in range(len(rays[0]))
            )
            out.append((point, tuple(coeffs)))
            return
        for yi in range(diag[i]):
            rec(i + 1, y + [yi])

    rec(0, [])
    return out


def parallelepiped_points(simplex, closed: bool = True) -> list[LatticeVector]:
    """Lattice points ``sum c_i r_i`` with every ``c_i`` in ``[0, 1]``.

    With ``closed=False`` the half-open box ``[0, 1)`` is used instead.
    Output is lex-sorted.
    """
    if not is_simplicial(simplex):
        raise ValueError("parallelepiped points need a simplicial cone")
    rays = list(simplex.rays)
    if not rays:
        return [()]
    pts = set()
    for p, coeffs in _half_open_points(rays):
        if not closed:
            pts.add(p)
            continue
        zero = [i for i, x in enumerate(coeffs) if x == 0]
        for size in range(len(zero) + 1):
            for extra in combinations(zero, size):
                q = p
                for i in extra:
                    q = lattice.add(q, rays[i])
                pts.add(q)
    return sorted(pts)


def _height_functional(c: Cone) -> LatticeVector:
    """Sum of facet normals; strictly positive on ``c`` minus the origin."""
    return tuple(sum(col) for col in zip(*c.normals))


def minimal_elements(c: Cone) -> MinimalElementReport:
    candidates = set()
    if any(not is_regular(f) for f in faces(c)):
        for simplex in triangulate(c):
            candidates.update(parallelepiped_points(simplex))
    in_s = [v for v in candidates if in_S(c, v)]
    h = _height_functional(c)
    in_s.sort(key=lambda v: (dot(v, h), v))
    found: list[LatticeVector] = []
    for v in in_s:
        if not any(contains(c, lattice.sub(v, m)) for m in found):
            found.append(v)
    assert all(lattice.is_primitive(v) for v in found)
    return MinimalElementReport(
        cone=c,
        minimal_elements=tuple(sorted(found)),
        candidate_count=len(candidates),
        s_candidate_count=len(in_s),
    )


def essential_divisor_count(c: Cone) -> int:
    return len(minimal_elements(c).minimal_elements)


def is_minimal_in_S(c: Cone, v: Sequence[int]) -> bool:
    return tuple(v) in minimal_elements(c).minimal_elements
