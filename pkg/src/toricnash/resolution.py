"""Fan subdivisions: star subdivisions, 2-D minimal resolutions, toric
resolutions that avoid a prescribed ray, and certificates for the results.

Every subdivision step is a star subdivision at a new primitive ray, so the
exceptional locus of each produced resolution is a union of divisors.
Tie-breaking is lexicographic on primitive vectors throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import lattice
from .arcorder import _half_open_points, in_S, minimal_elements, triangulate
from .cones import (
    Cone,
    Face,
    contains,
    faces,
    is_regular,
    is_simplicial,
    make_cone,
    multiplicity,
    smallest_face_containing,
)
from .lattice import LatticeVector, dot

PHASES = ("two-dim-minimal", "star-n1", "star-n2", "simplicialize", "regularize")


class NotAvoidableError(Exception):
    """Raised when asked to omit the ray of an essential divisor."""


@dataclass(frozen=True)
class Fan:
    ambient: Cone
    maximal_cones: tuple[Cone, ...]

    def __post_init__(self):
        object.__setattr__(self, "maximal_cones", tuple(sorted(self.maximal_cones, key=lambda k: k.rays)))

    @cached_property
    def all_cones(self) -> tuple[Face, ...]:
        seen = {}
        for k in self.maximal_cones:
            for f in faces(k):
                seen.setdefault(f.rays, f)
        return tuple(sorted(seen.values(), key=lambda f: (f.dim, f.rays)))

    @cached_property
    def cone_keys(self) -> frozenset[tuple[LatticeVector, ...]]:
        return frozenset(f.rays for f in self.all_cones)

    @cached_property
    def rays(self) -> tuple[LatticeVector, ...]:
        return tuple(sorted({r for k in self.maximal_cones for r in k.rays}))

    def has_cone(self, rays: Sequence[Sequence[int]]) -> bool:
        return tuple(sorted(tuple(r) for r in rays)) in self.cone_keys


@dataclass
class SubdivisionLog:
    steps: list[tuple[LatticeVector, str]] = field(default_factory=list)
    kept_cone: tuple[LatticeVector, ...] | None = None

    def record(self, center: LatticeVector, phase: str) -> None:
        assert phase in PHASES
        self.steps.append((center, phase))

    def extend(self, other: "SubdivisionLog") -> None:
        self.steps.extend(other.steps)


def trivial_fan(c: Cone) -> Fan:
    return Fan(c, (c,))


def star_subdivide(f: Fan, v: Sequence[int]) -> Fan:
    """Insert the ray through ``v`` and cone over the faces that avoid it."""
    v = tuple(v)
    if not lattice.is_primitive(v):
        raise ValueError(f"center {v} is not primitive")
    if not contains(f.ambient, v):
        raise ValueError(f"center {v} lies outside the ambient cone")
    if v in f.rays:
        raise ValueError(f"center {v} is already a ray of the fan")
    n = f.ambient.rank
    out = []
    for k in f.maximal_cones:
        if not contains(k, v):
            out.append(k)
            continue
        for facet in faces(k):
            if facet.dim == n - 1 and v not in facet:
                out.append(make_cone(facet.rays + (v,)))
    return Fan(f.ambient, tuple(out))


def _det2(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _hj_chain(u1: Sequence[int], u2: Sequence[int]) -> list[LatticeVector]:
    """Rays strictly between primitive ``u1`` and ``u2`` in Z^2 of the
    minimal regular subdivision, listed from ``u1`` towards ``u2``."""
    if _det2(u1, u2) < 0:
        return _hj_chain(u2, u1)[::-1]
    if _det2(u1, u2) == 0:
        raise ValueError("rays are collinear")
    out = []
    w = tuple(u1)
    while (big_d := _det2(w, u2)) > 1:
        g, x, y = lattice._xgcd(w[0], -w[1])
        assert g == 1
        # w0*p1 - w1*p0 = 1  with  p1 = x, p0 = y
        p0 = (y, x)
        k = -(_det2(p0, u2) // big_d)
        p = (p0[0] + k * w[0], p0[1] + k * w[1])
        assert _det2(w, p) == 1 and 0 < _det2(p, u2) < big_d
        out.append(p)
        w = p
    assert _det2(w, u2) == 1
    return out


def _plane_chain(n1: Sequence[int], n2: Sequence[int]) -> list[LatticeVector]:
    """Full minimal regular chain of the 2-dim cone <n1, n2> inside N."""
    basis = lattice.lattice_basis([n1, n2])
    bt = lattice.transpose(basis)
    c1 = [int(x) for x in lattice.solve_rational(bt, n1)]
    c2 = [int(x) for x in lattice.solve_rational(bt, n2)]
    c1, c2 = lattice.primitive_part(c1), lattice.primitive_part(c2)
    chain = [c1] + _hj_chain(c1, c2) + [c2]
    return [tuple(sum(p[i] * basis[i][j] for i in range(2)) for j in range(len(n1))) for p in chain]


def hj_minimal_resolution_2d(c: Cone) -> tuple[Fan, list[LatticeVector]]:
    """Minimal resolution of a 2-dimensional cone by continued fractions.

    The new rays are the lattice points on the compact boundary of the
    convex hull of the nonzero lattice points of ``c``.
    """
    if c.rank != 2:
        raise ValueError("hj_minimal_resolution_2d needs a cone in a rank-2 lattice")
    if is_regular(c):
        return trivial_fan(c), []
    u1, u2 = c.rays
    new = _hj_chain(u1, u2)
    chain = [u1] + new + [u2]
    cones = [make_cone([a, b]) for a, b in zip(chain, chain[1:])]
    assert all(is_regular(k) for k in cones)
    return Fan(c, tuple(cones)), new


def simplicialize(f: Fan) -> tuple[Fan, SubdivisionLog]:
    log = SubdivisionLog()
    while True:
        bad = [g for g in f.all_cones if not is_simplicial(g)]
        if not bad:
            return f, log
        gamma = min(bad, key=lambda g: (g.dim, g.rays))
        center = lattice.primitive_part([sum(col) for col in zip(*gamma.rays)])
        f = star_subdivide(f, center)
        log.record(center, "simplicialize")


def _multiplicity_profile(f: Fan) -> tuple[int, ...]:
    return tuple(sorted((multiplicity(k) for k in f.maximal_cones), reverse=True))


def regularize(f: Fan) -> tuple[Fan, SubdivisionLog]:
    if not all(is_simplicial(k) for k in f.maximal_cones):
        raise ValueError("regularize needs a simplicial fan")
    log = SubdivisionLog()
    profile = _multiplicity_profile(f)
    while profile[0] > 1:
        worst = min((k for k in f.maximal_cones if multiplicity(k) == profile[0]), key=lambda k: k.rays)
        pts = [(sum(coeffs), p) for p, coeffs in _half_open_points(worst.rays) if any(p)]
        _, point = min(pts)
        center = lattice.primitive_part(point)
        f = star_subdivide(f, center)
        log.record(center, "regularize")
        new_profile = _multiplicity_profile(f)
        assert new_profile[0] <= profile[0] and new_profile < profile, "regularize failed to make progress"
        profile = new_profile
    return f, log


def resolve(c: Cone) -> tuple[Fan, SubdivisionLog]:
    """Equivariant divisorial resolution touching only singular cones."""
    f, log = simplicialize(trivial_fan(c))
    f, log2 = regularize(f)
    log.extend(log2)
    return f, log


def _decompose(c: Cone, v: LatticeVector) -> tuple[LatticeVector, LatticeVector, int]:
    """Write ``v = n1 + n2`` with ``n1`` in S and ``n2`` either in S (case 1)
    or on a ray of ``c`` (case 2)."""
    below = [m for m in minimal_elements(c).minimal_elements if m != v and contains(c, lattice.sub(v, m))]
    if not below:
        raise AssertionError(f"no element of S lies below the non-minimal point {v}")
    n1 = below[0]
    n2 = lattice.sub(v, n1)
    if in_S(c, n2):
        return n1, n2, 1
    tau = smallest_face_containing(c, n2)
    assert is_regular(tau)
    coeffs = [int(x) for x in lattice.solve_rational(lattice.transpose(tau.rays), n2)]
    support = [i for i, b in enumerate(coeffs) if b]
    first = support[0]
    for i in support[1:]:
        n1 = lattice.add(n1, lattice.scale(coeffs[i], tau.rays[i]))
    n2 = lattice.scale(coeffs[first], tau.rays[first])
    assert in_S(c, n1)
    return n1, n2, 2


def avoid_ray(c: Cone, v: Sequence[int]) -> tuple[Fan, SubdivisionLog]:
    """Divisorial resolution of ``c`` in which the ray through ``v`` is absent.

    Only possible when ``v`` lies in S but is not minimal there.
    """
    v = tuple(v)
    if not lattice.is_primitive(v):
        raise ValueError(f"{v} is not primitive")
    if not in_S(c, v):
        raise ValueError(f"{v} does not lie over the singular locus")
    if v in minimal_elements(c).minimal_elements:
        raise NotAvoidableError(
            f"cannot avoid an essential divisor: {v} is minimal in S"
        )
    n1, n2, _ = _decompose(c, v)
    chain = _plane_chain(n1, n2)
    bt = lattice.transpose(lattice.lattice_basis([n1, n2]))
    pair = None
    for a, b in zip(chain, chain[1:]):
        ca = lattice.solve_rational(bt, a)
        cb = lattice.solve_rational(bt, b)
        cv = lattice.solve_rational(bt, v)
        det = ca[0] * cb[1] - ca[1] * cb[0]
        alpha = (cv[0] * cb[1] - cv[1] * cb[0]) / det
        beta = (ca[0] * cv[1] - ca[1] * cv[0]) / det
        if alpha > 0 and beta > 0:
            pair = (a, b)
            break
    assert pair is not None, "v is not inside the 2-dimensional cone"
    v1, v2 = pair
    if not in_S(c, v1):
        v1, v2 = v2, v1
    assert in_S(c, v1)

    log = SubdivisionLog(kept_cone=tuple(sorted(pair)))
    f = star_subdivide(trivial_fan(c), v1)
    log.record(v1, "star-n1")
    if v2 not in f.rays:
        f = star_subdivide(f, v2)
        log.record(v2, "star-n2")
    assert f.has_cone(pair)
    f, log_s = simplicialize(f)
    assert f.has_cone(pair)
    f, log_r = regularize(f)
    assert f.has_cone(pair) and v not in f.rays
    log.extend(log_s)
    log.extend(log_r)
    return f, log


# ---------------------------------------------------------------- certificates


def _check_ambient(f: Fan, c: Cone) -> None:
    if f.ambient.rank != c.rank:
        raise ValueError("fan and cone live in lattices of different rank")


def _slice_volume(k: Cone, height: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for s in triangulate(k):
        den = 1
        for r in s.rays:
            den *= dot(r, height)
        total += Fraction(abs(lattice.determinant(s.rays)), den)
    return total


def _pairwise_faces_ok(a: Cone, b: Cone) -> bool:
    common = set(a.rays) & set(b.rays)
    inter = lattice.dual_extreme_rays(list(a.normals) + list(b.normals))
    if not set(inter) <= common:
        return False
    key = tuple(sorted(common))
    return any(f.rays == key for f in faces(a)) and any(f.rays == key for f in faces(b))


@lru_cache(maxsize=128)
def _subdivision_check(f: Fan, c: Cone, pairwise: bool) -> bool:
    n = c.rank
    if not all(contains(c, r) for k in f.maximal_cones for r in k.rays):
        return False
    if any(k.rank != n for k in f.maximal_cones):
        return False
    # facet pairing: interior walls have two owners on opposite sides,
    # walls on the boundary of c have exactly one
    walls: dict[tuple, list[LatticeVector]] = {}
    for k in f.maximal_cones:
        for facet in faces(k):
            if facet.dim == n - 1:
                (u,) = facet.normals
                walls.setdefault(facet.rays, []).append(u)
    for rays, normals in walls.items():
        on_boundary = any(all(dot(r, u) == 0 for r in rays) for u in c.normals)
        if on_boundary:
            if len(normals) != 1:
                return False
        elif len(normals) != 2 or lattice.add(*normals) != (0,) * n:
            return False
    h = tuple(sum(col) for col in zip(*c.normals))
    if sum(_slice_volume(k, h) for k in f.maximal_cones) != _slice_volume(c, h):
        return False
    if pairwise:
        ks = f.maximal_cones
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                if not _pairwise_faces_ok(ks[i], ks[j]):
                    return False
    return True


def is_subdivision(f: Fan, c: Cone, pairwise: bool = False) -> bool:
    """Whether the maximal cones of ``f`` tile ``c`` face to face.

    Checks containment, wall pairing and exact equality of the slice
    volumes.  ``pairwise=True`` additionally intersects every pair of
    maximal cones exactly.
    """
    _check_ambient(f, c)
    return _subdivision_check(f, c, pairwise)


def is_regular_fan(f: Fan) -> bool:
    return all(is_regular(k) for k in f.maximal_cones)


def preserves_regular_faces(f: Fan, c: Cone) -> bool:
    _check_ambient(f, c)
    return all(f.has_cone(g.rays) for g in faces(c) if is_regular(g))


def exceptional_rays(f: Fan, c: Cone) -> list[LatticeVector]:
    _check_ambient(f, c)
    return [r for r in f.rays if r not in c.rays]


def is_divisorial(f: Fan, c: Cone) -> bool:
    """Whether the exceptional set of X(f) -> X(c) has pure codimension one.

    The exceptional set is the union of orbits of cones of ``f`` that are
    not faces of ``c``; it is a divisor exactly when every such cone has a
    ray outside ``c.rays``.
    """
    if not is_subdivision(f, c):
        raise ValueError("fan is not a subdivision of the cone")
    old = set(c.rays)
    face_keys = {g.rays for g in faces(c)}
    return all(g.rays in face_keys for g in f.all_cones if set(g.rays) <= old)
