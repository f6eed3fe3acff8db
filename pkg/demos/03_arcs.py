"""Arcs through the torus and where their closed points land.

An arc is given by the pull-backs of the coordinate characters, each a
truncated Laurent series in t.  The vector of orders decides which torus
orbit contains the closed point, both on the singular variety and on any
resolution.
"""

import sympy

from toricnash.arcs import (
    ArcFamily,
    TorusArc,
    closed_point_in_singular_locus,
    in_witness_locus,
    lift_orbit,
    monomial_arc,
    orbit_of_arc,
    semicontinuity_witness,
    valuation_of_arc,
)
from toricnash.cones import make_cone
from toricnash.resolution import resolve

sigma = make_cone([(1, 0, 0), (0, 1, 0), (1, 1, 3)])
arc = TorusArc(({1: 1, 2: 1}, {1: 3, 3: -1}, {2: 1}), 6)
v = valuation_of_arc(arc)
print("valuation vector:", v)
print("orbit face:", orbit_of_arc(sigma, arc).rays)
print("closed point over the singular locus:", closed_point_in_singular_locus(sigma, arc))

fan, _ = resolve(sigma)
for w in [(1, 1, 1), (1, 1, 2), (2, 2, 3)]:
    lifted = lift_orbit(fan, monomial_arc(w))
    print(f"monomial arc {w} lifts into the orbit of {lifted.rays}")

# Orders can only jump up under specialization: the witness polynomials show
# exactly where.
c = sympy.Symbol("c")
family = ArcFamily(({1: 1}, {1: 1}, {1: c, 2: c - 1, 3: 1}), 5)
witness = semicontinuity_witness(family, (1, 1, 1))
print("\nwitness for the third coordinate:", [p.as_expr() for p in witness[2]])
for c0 in (0, 1, 2):
    print(f"c = {c0}: valuation {valuation_of_arc(family.specialize(c0))}, order <= (1,1,1): {in_witness_locus(witness, c0)}")
