"""Strongly convex rational polyhedral cones and their faces.

A :class:`Cone` is always full-dimensional in its ambient lattice and is
described by its primitive extreme rays together with its primitive inner
facet normals.  Faces are identified by their ray sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

from . import lattice
from .lattice import LatticeVector, dot


@dataclass(frozen=True)
class Cone:
    rays: tuple[LatticeVector, ...]
    normals: tuple[LatticeVector, ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.rays[0])

    @property
    def dim(self) -> int:
        return self.rank

    def __contains__(self, v) -> bool:
        return contains(self, v)

    @cached_property
    def face_list(self) -> tuple["Face", ...]:
        return tuple(_compute_faces(self))

    @cached_property
    def as_face(self) -> "Face":
        return Face(self, self.rays, self.rank)


@dataclass(frozen=True)
class Face:
    parent: Cone = field(repr=False)
    rays: tuple[LatticeVector, ...]
    dim: int

    @cached_property
    def normals(self) -> frozenset[LatticeVector]:
        """Facet normals of the parent that vanish on this face."""
        return frozenset(u for u in self.parent.normals if all(dot(r, u) == 0 for r in self.rays))

    def __contains__(self, v) -> bool:
        return contains(self.parent, v) and all(dot(v, u) == 0 for u in self.normals)


def make_cone(raw_rays: Iterable[Sequence[int]]) -> Cone:
    """Build a cone from (not necessarily primitive or extreme) generators.

    >>> make_cone([(2, 0), (0, 3)]).rays
    ((0, 1), (1, 0))
    """
    raw = [lattice.vector(r) for r in raw_rays]
    if not raw:
        raise ValueError("a cone needs at least one ray")
    n = len(raw[0])
    if any(len(r) != n for r in raw):
        raise ValueError("rays have different ranks")
    lattice.check_rank(n)
    rays = sorted({lattice.primitive_part(r) for r in raw})
    if lattice.rank(rays) < n:
        if not lattice.is_pointed(rays):
            raise ValueError("not strongly convex")
        raise ValueError("not full-dimensional (unsupported)")
    normals = lattice.facet_normals(rays)
    # drop generators that are not extreme
    extreme = [
        r for r in rays
        if lattice.rank([u for u in normals if dot(r, u) == 0]) == n - 1
    ]
    return Cone(tuple(extreme), tuple(normals))


def _check_rank(c: Cone, v: Sequence[int]) -> None:
    if len(v) != c.rank:
        raise ValueError(f"rank mismatch: vector of rank {len(v)} against cone of rank {c.rank}")


def contains(c: Cone, v: Sequence[int]) -> bool:
    _check_rank(c, v)
    return all(dot(v, u) >= 0 for u in c.normals)


def vanishing_normals(c: Cone, v: Sequence[int]) -> frozenset[LatticeVector]:
    return frozenset(u for u in c.normals if dot(v, u) == 0)


def face_from_rays(c: Cone, rays: Iterable[LatticeVector]) -> Face:
    rays = tuple(sorted(rays))
    return Face(c, rays, lattice.rank(rays) if rays else 0)


def smallest_face_containing(c: Cone, v: Sequence[int]) -> Face:
    """The face whose relative interior contains ``v``."""
    if not contains(c, v):
        raise ValueError(f"{tuple(v)} does not lie in the cone")
    zero = vanishing_normals(c, v)
    return face_from_rays(c, (r for r in c.rays if all(dot(r, u) == 0 for u in zero)))


def in_relative_interior(f: Face, v: Sequence[int]) -> bool:
    _check_rank(f.parent, v)
    if not contains(f.parent, v):
        return False
    return smallest_face_containing(f.parent, v).rays == f.rays


def _compute_faces(c: Cone) -> list[Face]:
    ray_sets = {frozenset(c.rays)}
    frontier = {frozenset(r for r in c.rays if dot(r, u) == 0) for u in c.normals}
    while frontier:
        ray_sets |= frontier
        frontier = {a & b for a in frontier for b in ray_sets} - ray_sets
    out = [face_from_rays(c, s) for s in ray_sets]
    out.sort(key=lambda f: (f.dim, f.rays))
    return out


def faces(c: Cone) -> list[Face]:
    """Complete face lattice, from the zero face up to ``c`` itself."""
    return list(c.face_list)


def is_simplicial(f) -> bool:
    return len(f.rays) == f.dim


def multiplicity(f) -> int:
    """Index of the ray sublattice inside its saturation.

    Defined for simplicial faces (or cones) only.
    """
    if not is_simplicial(f):
        raise ValueError("multiplicity is only defined for simplicial cones")
    if not f.rays:
        return 1
    return prod(lattice.invariant_factors(f.rays))


def is_regular(f) -> bool:
    """Whether the rays of ``f`` extend to a basis of the lattice."""
    return is_simplicial(f) and multiplicity(f) == 1


def singular_faces(c: Cone) -> list[Face]:
    return [f for f in faces(c) if not is_regular(f)]


def is_face_of(c: Cone, rays: Iterable[LatticeVector]) -> bool:
    key = tuple(sorted(rays))
    return any(f.rays == key for f in c.face_list)
