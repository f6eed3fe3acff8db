"""Property checks shared by the hypothesis tests and the seeded acceptance run.

Each ``check_*`` function takes one sampled instance and raises
AssertionError on a violation.  ``sample_*`` functions draw instances from a
``random.Random``.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from sampling import random_cone
from toricnash import lattice as L
from toricnash.arcorder import leq
from toricnash.arcs import ArcFamily, TorusArc, in_witness_locus, monomial_arc, orbit_of_arc, semicontinuity_witness, valuation_of_arc
from toricnash.cones import Cone, contains, smallest_face_containing
from toricnash.germ import (
    LineSpec,
    curve_on_hypersurface,
    dfm_surjective,
    extend_curve_to_surface,
    jet_equations,
    linear_part,
    residual_order,
    restrict_t_zero,
)
from toricnash.series import TruncatedSeries, format_series, parse_series

PARAM = sympy.Symbol("c")


# ------------------------------------------------------------------ samplers


def point_in_cone(rng: random.Random, c: Cone, k: int = 3) -> tuple[int, ...]:
    v = (0,) * c.rank
    for r in c.rays:
        v = L.add(v, L.scale(rng.randint(0, k), r))
    return v


def sample_laurent(rng: random.Random, low: int, trunc: int) -> dict[int, Fraction]:
    comp = {low: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))}
    for k in range(low + 1, trunc):
        if rng.random() < 0.4:
            comp[k] = Fraction(rng.randint(-4, 4))
    return comp


def sample_arc(rng: random.Random, n: int, trunc: int = 8) -> TorusArc:
    return TorusArc(tuple(sample_laurent(rng, rng.randint(-2, 2), trunc) for _ in range(n)), trunc)


def sample_family(rng: random.Random, n: int, trunc: int = 5) -> ArcFamily:
    comps = []
    for _ in range(n):
        comp = {}
        for k in range(0, trunc):
            if rng.random() < 0.5:
                coeffs = [rng.randint(-2, 2) for _ in range(3)]
                comp[k] = sum(a * PARAM ** i for i, a in enumerate(coeffs))
        comps.append(comp)
    return ArcFamily(tuple(comps), trunc)


def sample_polynomial(rng: random.Random, variables, degree: int = 3, terms: int = 4) -> TruncatedSeries:
    n = len(variables)
    out = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(1, degree)):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = Fraction(rng.randint(-3, 3))
    return TruncatedSeries(tuple(variables), out)


def random_invertible(rng: random.Random, n: int) -> list[list[int]]:
    while True:
        a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if L.determinant(a) != 0:
            return a


def change_coordinates(f: TruncatedSeries, a) -> TruncatedSeries:
    """``g(y) = f(a y)``."""
    n = len(f.variables)
    subs = [
        TruncatedSeries(f.variables, {tuple(int(i == j) for i in range(n)): Fraction(a[k][j]) for j in range(n)})
        for k in range(n)
    ]
    return f.substitute(subs)


def pull_back_line(line: LineSpec, a) -> LineSpec:
    """The line ``a^-1 L`` in the new coordinates."""
    p = L.solve_rational(a, line.point)
    q = L.solve_rational(a, line.direction)
    return LineSpec.from_columns(p, q)


GERM_FIXTURES = [
    ("x1^3+x2^3+x3^3+x4^3+x5^3", "s,-s,t,-t,0"),
    ("x1*x2+x3*x4", "s,0,t,0"),
    ("x1^3+x2^3+x3^3+x4^3", "s,-s,t,-t"),
]


# ------------------------------------------------------------------ checks


def check_order_axioms(c: Cone, u, v, w) -> None:
    assert leq(c, u, u)
    if leq(c, u, v) and leq(c, v, u):
        assert u == v
    if leq(c, u, v) and leq(c, v, w):
        assert leq(c, u, w)


def check_valuation_additive(a: TorusArc, b: TorusArc) -> None:
    assert valuation_of_arc(a * b) == L.add(valuation_of_arc(a), valuation_of_arc(b))


def check_round_trip_and_orbit(c: Cone, v) -> None:
    arc = monomial_arc(v)
    assert valuation_of_arc(arc) == tuple(v)
    assert orbit_of_arc(c, arc).rays == smallest_face_containing(c, v).rays


def check_semicontinuity(fam: ArcFamily, v, c0: int) -> None:
    arc = fam.specialize(c0)
    orders = []
    for comp in arc.components:
        nonzero = [k for k in comp if k < arc.truncation_order]
        orders.append(min(nonzero) if nonzero else arc.truncation_order)
    below = all(o <= x for o, x in zip(orders, v))
    assert below == in_witness_locus(semicontinuity_witness(fam, v), c0)


def check_jet_coherence(f: TruncatedSeries, m: int) -> None:
    big = [format_series(e) for e in jet_equations(f, m)]
    small = [format_series(e) for e in jet_equations(f, m - 1)]
    assert big[:m] == small and len(big) == m + 1


def check_lattice_identities(m) -> None:
    h, u = L.hermite_normal_form(m)
    assert L.matmul(u, m) == tuple(tuple(r) for r in h) and abs(L.determinant(u)) == 1
    d, u, v = L.smith_normal_form(m)
    assert L.matmul(L.matmul(u, m), v) == tuple(tuple(r) for r in d)
    assert abs(L.determinant(u)) == 1 and abs(L.determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i])


def check_germ_instance(rng: random.Random, fixture: int, n_ord: int) -> None:
    """Random linear change of a surjective fixture, random higher-order
    terms and curve tail; the extension must satisfy its contract triple and
    every linear solve must succeed (asserted inside)."""
    text, line_text = GERM_FIXTURES[fixture]
    f0 = parse_series(text)
    line0 = LineSpec.from_text(line_text)
    n = len(f0.variables)
    a = random_invertible(rng, n)
    fm = change_coordinates(f0, a)
    line = pull_back_line(line0, a)
    assert dfm_surjective(fm, line) == dfm_surjective(f0, line0)
    m = fm.order
    higher = sample_polynomial(rng, fm.variables, degree=m + 2, terms=3)
    f = fm + TruncatedSeries(fm.variables, {e: c for e, c in higher.terms.items() if sum(e) > m})
    tail = [
        TruncatedSeries(("s",), {(k,): Fraction(rng.randint(-2, 2)) for k in range(2, 4)})
        for _ in range(n)
    ]
    phi = curve_on_hypersurface(f, line.point, n_ord, tail=tail)
    out = extend_curve_to_surface(f, phi, line, n_ord)
    assert residual_order(f, out) >= m + n_ord
    assert [c.terms for c in restrict_t_zero(out)] == [c.terms for c in phi]
    assert linear_part(out) == line


# ------------------------------------------------------------------ seeded runner


def run_suites(seed: int, scale: int = 1) -> dict[str, int]:
    """Run every property suite on seeded samples; returns instance counts."""
    rng = random.Random(seed)
    counts = dict.fromkeys(
        ["order_axioms", "valuation_additivity", "key_consistency", "semicontinuity",
         "jet_coherence", "lattice_identities", "germ_solvability"], 0
    )
    cones = [random_cone(rng, ranks=(2, 3, 4), extra=(0, 1, 2)) for _ in range(40)]
    for _ in range(4000 * scale):
        c = rng.choice(cones)
        check_order_axioms(c, *(point_in_cone(rng, c) for _ in range(3)))
        counts["order_axioms"] += 1
    for _ in range(2000 * scale):
        n = rng.randint(1, 4)
        check_valuation_additive(sample_arc(rng, n), sample_arc(rng, n))
        counts["valuation_additivity"] += 1
    for _ in range(2000 * scale):
        c = rng.choice(cones)
        check_round_trip_and_orbit(c, point_in_cone(rng, c, k=2))
        counts["key_consistency"] += 1
    for _ in range(800 * scale):
        n = rng.randint(1, 3)
        fam = sample_family(rng, n)
        v = tuple(rng.randint(0, 4) for _ in range(n))
        check_semicontinuity(fam, v, rng.randint(-3, 3))
        counts["semicontinuity"] += 1
    for _ in range(300 * scale):
        f = sample_polynomial(rng, ("x", "y", "z")[: rng.randint(1, 3)])
        if f.is_zero():
            f = TruncatedSeries(f.variables, {(1,) * len(f.variables): 1})
        check_jet_coherence(f, rng.randint(1, 3))
        counts["jet_coherence"] += 1
    for _ in range(1000 * scale):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        check_lattice_identities([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        counts["lattice_identities"] += 1
    for i in range(150 * scale):
        check_germ_instance(rng, i % len(GERM_FIXTURES), rng.randint(2, 5))
        counts["germ_solvability"] += 1
    return counts
