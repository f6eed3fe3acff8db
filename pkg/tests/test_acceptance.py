"""Acceptance gate: one test per criterion, each timed against its limit.

Every criterion prints one ``PASS``/``FAIL`` line (also collected into the
pytest terminal summary).  Run standalone with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import SEED, example_cone_rays  # noqa: E402
from oracles import box_minimal_elements, hilbert_basis_2d  # noqa: E402
from properties import run_suites  # noqa: E402
from sampling import non_minimal_points, random_cone, random_singular_2d, random_singular_cone  # noqa: E402
from toricnash.arcorder import essential_divisor_count, minimal_elements  # noqa: E402
from toricnash.cones import make_cone  # noqa: E402
from toricnash.germ import (  # noqa: E402
    LineSpec,
    blowup_chart_strict_transform,
    curve_on_hypersurface,
    dfm_surjective,
    extend_curve_to_surface,
    linear_part,
    residual_order,
    restrict_t_zero,
)
from toricnash.resolution import (  # noqa: E402
    avoid_ray,
    hj_minimal_resolution_2d,
    is_divisorial,
    is_regular_fan,
    is_subdivision,
    preserves_regular_faces,
    resolve,
)
from toricnash.series import parse_series  # noqa: E402

RESULTS: list[str] = []


def _gate(number: int, title: str, limit: float, body) -> None:
    start = time.perf_counter()
    detail, ok = "", False
    try:
        detail = body() or ""
        ok = True
    except AssertionError as exc:
        detail = f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    budget = "no limit" if limit == float("inf") else f"limit {limit:.0f}s"
    line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s / {budget}) {detail}".rstrip()
    if ok and not in_time:
        line += " -- over time limit"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def _certified(f, c) -> bool:
    return is_subdivision(f, c) and is_regular_fan(f) and preserves_regular_faces(f, c) and is_divisorial(f, c)


def test_criterion_1_example_family():
    def body():
        for e in (2, 3, 5, 7, 11):
            c = make_cone(example_cone_rays(e))
            got = minimal_elements(c).minimal_elements
            assert got == tuple((1, 1, d) for d in range(1, e)), (e, got)
            assert essential_divisor_count(c) == e - 1
        return "e in {2,3,5,7,11}"

    _gate(1, "minimal elements (1,1,d), 1<=d<=e-1", 5, body)


def test_criterion_2_two_dim_oracle():
    def body():
        rng = random.Random(SEED + 2)
        for _ in range(100):
            c = random_singular_2d(rng, bound=25)
            _, new = hj_minimal_resolution_2d(c)
            mins = list(minimal_elements(c).minimal_elements)
            assert mins == sorted(new), (c.rays, mins, new)
        # independent cross-check of the HJ chain against brute-force Hilbert bases
        for _ in range(20):
            c = random_singular_2d(rng, bound=10)
            hb = [v for v in hilbert_basis_2d(*c.rays) if v not in c.rays]
            assert hb == sorted(hj_minimal_resolution_2d(c)[1]), c.rays
        return "100 cones, |entries|<=25; 20 Hilbert-basis cross-checks"

    _gate(2, "2-D minimal elements = Hirzebruch-Jung new rays", 30, body)


def test_criterion_3_box_search():
    def body():
        rng = random.Random(SEED + 3)
        for _ in range(50):
            c = random_cone(rng, ranks=(2, 3), bound=3, extra=(0, 0, 1))
            box, _ = box_minimal_elements(list(c.rays))
            got = list(minimal_elements(c).minimal_elements)
            assert got == box, (c.rays, got, box)
        return "50 cones of rank <= 3"

    _gate(3, "minimal elements = exhaustive box search", 60, body)


def test_criterion_4_resolution_property():
    def body():
        rng = random.Random(SEED + 4)
        cones = [random_singular_cone(rng, ranks=(3,), bound=3, extra=(0, 0, 1)) for _ in range(20)]
        for c in cones:
            f, _ = resolve(c)
            assert _certified(f, c), c.rays
            assert set(minimal_elements(c).minimal_elements) <= set(f.rays), c.rays
        avoided = 0
        pool = [(c, v) for c in cones for v in non_minimal_points(c, limit=2)]
        rng.shuffle(pool)
        for c, v in pool[:20]:
            f, _ = avoid_ray(c, v)
            assert v not in f.rays and _certified(f, c), (c.rays, v)
            avoided += 1
        assert avoided == 20, f"only {avoided} non-minimal points sampled"
        return "20 resolutions, 20 avoided rays"

    _gate(4, "certified resolutions contain minima; non-minimal rays avoidable", 120, body)


def test_criterion_5_fermat_germ():
    def body():
        f = parse_series("x1^3+x2^3+x3^3+x4^3+x5^3")
        line = LineSpec.from_text("s,-s,t,-t,0")
        assert dfm_surjective(f, line)
        tail = [parse_series(x, ("s",)) for x in ("0", "0", "s^2+s^3", "2*s^2", "s^4")]
        phi = curve_on_hypersurface(f, line.point, 8, tail=tail)
        out = extend_curve_to_surface(f, phi, line, 8)
        order = residual_order(f, out)
        assert order >= 11, order
        assert [c.truncate(8).terms for c in restrict_t_zero(out)] == [c.terms for c in phi]
        assert linear_part(out) == line
        return f"residual order >= {order}"

    _gate(5, "Fermat cubic cone germ lifting", 60, body)


def test_criterion_6_strict_transform():
    def body():
        g = blowup_chart_strict_transform(parse_series("x1^3+x2^3+x3^3+x4^3+x5^6"), 5)
        assert g.terms == parse_series("x1^3+x2^3+x3^3+x4^3+x5^3").terms
        return "chart 5 gives x1^3+x2^3+x3^3+x4^3+x5^3"

    _gate(6, "blowup chart strict transform", float("inf"), body)


def test_criterion_7_property_suites():
    def body():
        counts = run_suites(SEED + 7)
        total = sum(counts.values())
        assert total >= 10_000, total
        return f"{total} instances " + ", ".join(f"{k}={v}" for k, v in counts.items())

    _gate(7, "seeded property suites", 120, body)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
