"""Seeded generators of random test inputs."""

from __future__ import annotations

import random

from toricnash.arcorder import in_S, minimal_elements
from toricnash.cones import Cone, is_regular, make_cone
from toricnash.lattice import is_primitive


def random_cone(rng: random.Random, ranks=(2, 3), bound: int = 3, extra=(0, 1)) -> Cone:
    while True:
        n = rng.choice(ranks)
        rays = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n + rng.choice(extra))]
        if any(not any(r) for r in rays):
            continue
        try:
            return make_cone(rays)
        except ValueError:
            pass


def random_cones(rng: random.Random, count: int, **kw) -> list[Cone]:
    return [random_cone(rng, **kw) for _ in range(count)]


def random_singular_cone(rng: random.Random, **kw) -> Cone:
    while True:
        c = random_cone(rng, **kw)
        if not is_regular(c):
            return c


def random_singular_2d(rng: random.Random, bound: int = 25) -> Cone:
    while True:
        u = tuple(rng.randint(-bound, bound) for _ in range(2))
        w = tuple(rng.randint(-bound, bound) for _ in range(2))
        if not (any(u) and any(w) and is_primitive(u) and is_primitive(w)):
            continue
        if abs(u[0] * w[1] - u[1] * w[0]) > 1:
            return make_cone([u, w])


def non_minimal_points(c: Cone, limit: int | None = None) -> list[tuple[int, ...]]:
    """Primitive points ``m + r`` (m minimal, r a ray) that lie in S."""
    mins = minimal_elements(c).minimal_elements
    out = []
    for m in mins:
        for r in c.rays:
            v = tuple(a + b for a, b in zip(m, r))
            if is_primitive(v) and in_S(c, v) and v not in mins and v not in out:
                out.append(v)
    return out[:limit] if limit else out
