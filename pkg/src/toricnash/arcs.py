"""Arcs whose generic point lies in the torus.

An arc is recorded by the pull-backs of the coordinate characters
``x_1, ..., x_n`` of the torus: n truncated Laurent series in ``t``.  The
order of ``x^u`` along the arc is ``<v, u>`` where ``v`` is the vector of
component orders, so ``v`` is the valuation vector of the arc.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .cones import Cone, Face, contains, is_regular, smallest_face_containing
from .lattice import LatticeVector
from .resolution import Fan


@dataclass(frozen=True)
class TorusArc:
    """n truncated Laurent series; coefficients of ``t^k`` are known for
    every ``k < truncation_order``."""

    components: tuple[Mapping[int, Any], ...]
    truncation_order: int

    def __post_init__(self):
        cleaned = tuple(
            {int(k): c for k, c in comp.items() if c != 0 and k < self.truncation_order}
            for comp in self.components
        )
        object.__setattr__(self, "components", cleaned)

    @property
    def rank(self) -> int:
        return len(self.components)

    def __mul__(self, other: "TorusArc") -> "TorusArc":
        va, vb = valuation_of_arc(self), valuation_of_arc(other)
        trunc = min(
            min(self.truncation_order + b, other.truncation_order + a) for a, b in zip(va, vb)
        )
        comps = []
        for a, b in zip(self.components, other.components):
            out: dict[int, Any] = {}
            for i, x in a.items():
                for j, y in b.items():
                    out[i + j] = out.get(i + j, 0) + x * y
            comps.append(out)
        return TorusArc(tuple(comps), trunc)


def _order(comp: Mapping[int, Any], truncation_order: int) -> int:
    nonzero = [k for k, c in comp.items() if c != 0 and k < truncation_order]
    if not nonzero:
        raise ValueError("order undetermined at this truncation")
    return min(nonzero)


def valuation_of_arc(a: TorusArc) -> LatticeVector:
    """Orders of the n components; pairs with ``u`` to give ``ord x^u``."""
    return tuple(_order(comp, a.truncation_order) for comp in a.components)


def monomial_arc(v: Sequence[int], truncation_order: int | None = None) -> TorusArc:
    """The arc ``x^u -> t^<v, u>``."""
    v = tuple(int(x) for x in v)
    if truncation_order is None:
        truncation_order = max(v) + 1
    return TorusArc(tuple({k: 1} for k in v), truncation_order)


def orbit_of_arc(c: Cone, a: TorusArc) -> Face:
    """The face ``tau`` with the closed point of ``a`` in ``orb(tau)``."""
    v = valuation_of_arc(a)
    if not contains(c, v):
        raise ValueError("arc does not extend to this chart")
    return smallest_face_containing(c, v)


def closed_point_in_singular_locus(c: Cone, a: TorusArc) -> bool:
    return not is_regular(orbit_of_arc(c, a))


def lift_orbit(f: Fan, a: TorusArc) -> Face:
    """Orbit of the lift of ``a`` to X(f): the cone of ``f`` whose relative
    interior contains the valuation vector.  Its ``parent`` is a maximal cone
    of ``f`` containing it."""
    v = valuation_of_arc(a)
    if not contains(f.ambient, v):
        raise ValueError("arc does not extend to this chart")
    for k in f.maximal_cones:
        if contains(k, v):
            return smallest_face_containing(k, v)
    raise AssertionError("fan does not cover its ambient cone")


@dataclass(frozen=True)
class ArcFamily:
    """Arcs depending polynomially on a parameter.

    ``components[j]`` maps an exponent of ``t`` to a polynomial in
    ``parameter``.
    """

    components: tuple[Mapping[int, Any], ...]
    truncation_order: int
    parameter: sympy.Symbol = sympy.Symbol("c")

    def coefficient(self, j: int, k: int) -> sympy.Poly:
        return sympy.Poly(sympy.sympify(self.components[j].get(k, 0)), self.parameter)

    def specialize(self, value) -> TorusArc:
        comps = tuple(
            {k: sympy.Rational(sympy.sympify(c).subs(self.parameter, value)) for k, c in comp.items()}
            for comp in self.components
        )
        return TorusArc(comps, self.truncation_order)


def semicontinuity_witness(fam: ArcFamily, v: Sequence[int]) -> list[list[sympy.Poly]]:
    """For each coordinate ``j`` the coefficient polynomials ``a_k`` of the
    j-th component for ``k`` up to ``v_j``.

    At a parameter value ``c0`` the arc has every component order ``<= v_j``
    exactly when each returned list has a member not vanishing at ``c0``,
    so the locus is a finite intersection of open sets.
    """
    out = []
    for j, vj in enumerate(v):
        if vj >= fam.truncation_order:
            raise ValueError("witness needs coefficients beyond the truncation order")
        keys = [k for k in fam.components[j] if k <= vj]
        start = min([0] + keys)
        out.append([fam.coefficient(j, k) for k in range(start, vj + 1)])
    return out


def in_witness_locus(witness: list[list[sympy.Poly]], value) -> bool:
    return all(any(p.eval(value) != 0 for p in polys) for polys in witness)


def parse_laurent(text: str, variable: str = "t") -> dict[int, Fraction]:
    """Parse a Laurent polynomial such as ``"t^-1 + 3*t^2 - t^3"``."""
    t = sympy.Symbol(variable)
    try:
        expr = sympy.expand(
            parse_expr(text, local_dict={variable: t}, transformations=standard_transformations + (convert_xor,))
        )
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise ValueError(f"cannot parse series {text!r}: {exc}") from None
    if expr.free_symbols - {t}:
        raise ValueError(f"series {text!r} may only involve {variable}")
    out: dict[int, Fraction] = {}
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        if rest == 1:
            k = 0
        else:
            base, k = rest.as_base_exp()
            if base != t or not k.is_Integer:
                raise ValueError(f"{term} is not a Laurent monomial in {variable}")
            k = int(k)
        if not coeff.is_Rational:
            raise ValueError(f"coefficient {coeff} is not rational")
        out[k] = out.get(k, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return {k: c for k, c in out.items() if c != 0}
