"""Formal germs on hypersurfaces with a cone-like tangent cone.

Given ``f = F_m + F_{m+1} + ...`` and a line ``L`` on the tangent cone
``F_m = 0``, a smooth formal curve through the origin with tangent direction
on ``L`` extends to a formal surface germ whose tangent plane is ``L`` as soon
as the differential ``dF_m`` maps linear sections of the normal directions
onto binary forms of degree ``m``.  The extension is built degree by degree
by solving one linear system per degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import inf
from typing import Sequence

from .series import (
    HomogeneousForm,
    TruncatedSeries,
    _one_like,
    field_element,
    parse_series,
    rank_over_field,
    solve_linear,
)

log = logging.getLogger(__name__)

Curve = tuple[TruncatedSeries, ...]


@dataclass(frozen=True)
class LineSpec:
    """``x_i = a_i s + b_i t``: rows ``(a_i, b_i)`` of an n x 2 matrix.

    The first column is the tangent direction ``z`` of the curve.
    """

    parametrization: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.parametrization)
        if any(len(r) != 2 for r in rows):
            raise ValueError("a line needs exactly two linear forms per coordinate")
        if rank_over_field([list(r) for r in rows]) != 2:
            raise ValueError("degenerate line: the two columns are linearly dependent")
        object.__setattr__(self, "parametrization", rows)

    @property
    def rank(self) -> int:
        return len(self.parametrization)

    @property
    def point(self) -> tuple:
        return tuple(r[0] for r in self.parametrization)

    @property
    def direction(self) -> tuple:
        return tuple(r[1] for r in self.parametrization)

    @classmethod
    def from_columns(cls, p: Sequence, q: Sequence) -> "LineSpec":
        return cls(tuple(zip(p, q)))

    @classmethod
    def from_text(cls, text: str, field: int | None = None) -> "LineSpec":
        """Parse ``"s,-s,t,-t,0"`` (each entry a linear form in s and t)."""
        rows = []
        for entry in text.split(","):
            form = parse_series(entry.strip() or "0", ("s", "t"), field)
            if form.degree not in (None, 1) or form.order not in (None, 1):
                raise ValueError(f"{entry!r} is not a linear form in s and t")
            rows.append((form.coefficient((1, 0)), form.coefficient((0, 1))))
        zero = field_element(0, field)
        return cls(tuple((a or zero, b or zero) for a, b in rows))

    def as_series(self, variables=("s", "t"), cap: int | None = None) -> Curve:
        return tuple(
            TruncatedSeries(tuple(variables), {(1, 0): a, (0, 1): b}, cap) for a, b in self.parametrization
        )


def multiplicity(f: TruncatedSeries) -> int:
    if f.is_zero():
        raise ValueError("the zero series has no multiplicity")
    return f.order


def homogeneous_decomposition(f: TruncatedSeries) -> dict[int, HomogeneousForm]:
    if f.is_zero():
        raise ValueError("the zero series has no homogeneous decomposition")
    degrees = sorted({sum(m) for m in f.terms})
    return {d: HomogeneousForm.of(f.homogeneous_part(d)) for d in degrees}


def tangent_cone(f: TruncatedSeries) -> HomogeneousForm:
    return HomogeneousForm.of(f.homogeneous_part(multiplicity(f)))


def _check_line(fm: TruncatedSeries, l: LineSpec) -> None:
    if l.rank != len(fm.variables):
        raise ValueError("line and form live in spaces of different dimension")


def line_on_cone(fm: TruncatedSeries, l: LineSpec) -> bool:
    _check_line(fm, l)
    return fm.substitute(l.as_series()).is_zero()


def completing_frame(l: LineSpec) -> list[list]:
    """Columns ``p, q, e_{j1}, e_{j2}, ...`` forming a basis, the standard
    vectors chosen greedily by index."""
    n = l.rank
    p, q = list(l.point), list(l.direction)
    one = next((x ** 0 for x in p + q if x != 0), 1)
    zero = one * 0
    cols = [p, q]
    for j in range(n):
        e = [zero] * n
        e[j] = one
        trial = cols + [e]
        if rank_over_field(trial) == len(trial):
            cols = trial
        if len(cols) == n:
            break
    return cols


def _normal_partials(fm: TruncatedSeries, l: LineSpec) -> list[TruncatedSeries]:
    """Derivatives of ``fm`` along the completing columns, restricted to L."""
    on_line = l.as_series()
    partials = [fm.diff(k).substitute(on_line) for k in range(len(fm.variables))]
    out = []
    for col in completing_frame(l)[2:]:
        total = TruncatedSeries.zero(("s", "t"))
        for k, a in enumerate(col):
            if a != 0:
                total = total + partials[k].scale(a)
        out.append(total)
    return out


def _binary_monomials(d: int) -> list[tuple[int, int]]:
    return [(d - a, a) for a in range(d + 1)]


def _bform(variables, exps, one) -> TruncatedSeries:
    return TruncatedSeries.monomial(variables, exps, one)


def _normal_system(normals: list[TruncatedSeries], m: int, r: int, one):
    """Matrix of ``(B_i) -> sum_i N_i B_i`` with ``B_i`` binary forms of
    degree ``r``, in the monomial basis of degree ``m - 1 + r`` forms."""
    target = _binary_monomials(m - 1 + r)
    index = {e: i for i, e in enumerate(target)}
    zero = one * 0
    columns = []
    for nrm in normals:
        for e in _binary_monomials(r):
            prod = nrm * _bform(("s", "t"), e, one)
            col = [zero] * len(target)
            for mono, c in prod.terms.items():
                col[index[mono]] = c
            columns.append(col)
    matrix = [[col[i] for col in columns] for i in range(len(target))]
    return matrix, target


def dfm_surjective(fm: TruncatedSeries, l: LineSpec) -> bool:
    """Rank test for ``(l_3..l_n) -> sum l_i dF_m/dy_i`` on the line."""
    if not line_on_cone(fm, l):
        raise ValueError("precondition failed: the line does not lie on the tangent cone")
    m = fm.order if not fm.is_zero() else 0
    one = _one_like(fm)
    normals = _normal_partials(fm, l)
    if not normals:
        return False
    matrix, target = _normal_system(normals, m, 1, one)
    return rank_over_field(matrix) == len(target)


def _point_value(g: TruncatedSeries, z: Sequence):
    return g.evaluate(list(z))


def curve_on_hypersurface(
    f: TruncatedSeries,
    z: Sequence,
    n_ord: int,
    tail: Sequence[TruncatedSeries] | None = None,
    pivot: int | None = None,
) -> Curve:
    """A formal curve ``phi(s) = z s + ...`` on ``f = 0``.

    ``tail`` prescribes higher-order terms; the pivot coordinate (by default
    the first one where ``grad F_m(z)`` is nonzero) is then corrected order by
    order.  The result satisfies ``f(phi) = 0 mod s^(n_ord + m)``.
    """
    n = len(f.variables)
    if len(z) != n:
        raise ValueError("direction has the wrong length")
    m = multiplicity(f)
    fm = tangent_cone(f)
    if _point_value(fm, z) != 0:
        raise ValueError("direction is not on the tangent cone")
    grad = [_point_value(fm.diff(k), z) for k in range(n)]
    if pivot is None:
        pivot = next((k for k, g in enumerate(grad) if g != 0), None)
        if pivot is None:
            raise ValueError("singular point of the tangent cone: gradient vanishes")
    elif grad[pivot] == 0:
        raise ValueError("pivot coordinate has zero gradient entry")

    phi = []
    for i in range(n):
        comp = TruncatedSeries(("s",), {(1,): z[i]}, n_ord)
        if tail is not None:
            extra = tail[i]
            if extra.order is not None and extra.order < 2:
                raise ValueError("curve tail must start in degree 2")
            comp = comp + extra.truncate(n_ord)
        phi.append(comp)

    g = grad[pivot]
    while True:
        res = f.substitute(phi)
        d = res.order
        if d is None:
            break
        assert d > m, "leading residual term survived"
        k = d - m + 1
        assert k <= n_ord
        coeff = -res.coefficient((d,)) / g
        phi[pivot] = phi[pivot] + TruncatedSeries(("s",), {(k,): coeff}, n_ord)
    return tuple(phi)


def _residual(f: TruncatedSeries, sub: Sequence[TruncatedSeries]):
    res = f.substitute(sub)
    if not res.is_zero():
        return res.order, "exact"
    if res.cap is None:
        return inf, "exact"
    return res.cap + 1, "exceeds_cap"


def residual_order(f: TruncatedSeries, sub: Sequence[TruncatedSeries]):
    """Order of ``f(sub)``.

    If the composite vanishes through its truncation cap ``c`` the declared
    lower bound ``c + 1`` is returned; ``math.inf`` for an exact zero.
    """
    return _residual(f, sub)[0]


def residual_report(f: TruncatedSeries, sub: Sequence[TruncatedSeries]) -> dict:
    value, kind = _residual(f, sub)
    if value == inf:
        return {"order": None, "kind": "exact_zero"}
    return {"order": value, "kind": kind}


def extend_curve_to_surface(f: TruncatedSeries, phi: Curve, l: LineSpec, n_ord: int) -> Curve:
    """Formal surface germ ``Phi(s, t)`` on ``f = 0`` through ``phi`` with
    tangent plane ``l``.

    ``Phi = phi(s) + t (q + sum_i A_i B_i)`` where the ``A_i`` are the
    completing frame columns and ``B_i`` binary forms found one degree at a
    time.  Free variables of each linear solve are set to zero.
    """
    n = len(f.variables)
    if len(phi) != n or l.rank != n:
        raise ValueError("curve, line and series disagree on the number of variables")
    m = multiplicity(f)
    fm = tangent_cone(f)
    if not line_on_cone(fm, l):
        raise ValueError("precondition failed: the line does not lie on the tangent cone")
    if not dfm_surjective(fm, l):
        raise ValueError("precondition failed: dF_m is not surjective along the line")
    for comp, a in zip(phi, l.point):
        if comp.coefficient((0,)) != 0 or comp.coefficient((1,)) != a:
            raise ValueError("precondition failed: curve tangent is not the first column of the line")
        if comp.cap is not None and comp.cap < n_ord:
            raise ValueError(f"curve is only known to order {comp.cap} < {n_ord}")
    phi = tuple(c.truncate(n_ord) for c in phi)
    if residual_order(f, phi) < m + n_ord:
        raise ValueError("precondition failed: curve does not lie on the hypersurface to the required order")

    one = _one_like(fm)
    frame = completing_frame(l)
    normal_cols = frame[2:]
    normals = _normal_partials(fm, l)
    st = ("s", "t")
    t = TruncatedSeries.monomial(st, (0, 1), one)

    def lift(c: TruncatedSeries) -> TruncatedSeries:
        return TruncatedSeries(st, {(e[0], 0): a for e, a in c.terms.items()}, n_ord)

    surface = [lift(phi[i]) + TruncatedSeries(st, {(0, 1): l.direction[i]}, n_ord) for i in range(n)]
    for r in range(1, n_ord):
        res = f.substitute(surface)
        top = res.homogeneous_part(m + r)
        assert res.order is None or res.order >= m + r, "residual dropped below the induction bound"
        assert all(e[1] >= 1 for e in top.terms), "residual is not divisible by t"
        if top.is_zero():
            continue
        matrix, target = _normal_system(normals, m, r, one)
        rhs = [-top.coefficient((e[0], e[1] + 1)) for e in target]
        sol = solve_linear(matrix, rhs)
        if sol is None:
            raise AssertionError(f"surjectivity hypothesis violated at degree {r}")
        log.debug("degree %d correction solved with %d unknowns", r, len(sol))
        monos = _binary_monomials(r)
        for i, col in enumerate(normal_cols):
            b = TruncatedSeries(st, {e: sol[i * len(monos) + j] for j, e in enumerate(monos)}, n_ord)
            if b.is_zero():
                continue
            tb = t * b
            for k, a in enumerate(col):
                if a != 0:
                    surface[k] = surface[k] + tb.scale(a)
    out = tuple(surface)
    assert residual_order(f, out) >= m + n_ord
    return out


def restrict_t_zero(surface: Curve) -> Curve:
    return tuple(
        TruncatedSeries(("s",), {(e[0],): c for e, c in comp.terms.items() if e[1] == 0}, comp.cap)
        for comp in surface
    )


def linear_part(surface: Curve) -> LineSpec:
    return LineSpec(tuple((c.coefficient((1, 0)), c.coefficient((0, 1))) for c in surface))


def jet_variables(variables: Sequence[str], m: int) -> tuple[str, ...]:
    return tuple(f"{v}_{j}" for j in range(m + 1) for v in variables)


def jet_equations(f: TruncatedSeries, m: int) -> list[TruncatedSeries]:
    """Coefficients of ``t^0..t^m`` in ``f(sum_j x_ij t^j)``."""
    if f.cap is not None:
        raise ValueError("jet equations need an exact polynomial")
    if m < 0:
        raise ValueError("jet order must be non-negative")
    n = len(f.variables)
    jv = jet_variables(f.variables, m)
    one = _one_like(f)
    # a jet is a list of m+1 coefficient polynomials
    gens = [
        [TruncatedSeries.gen(jv, j * n + i, one=one) for j in range(m + 1)] for i in range(n)
    ]

    def mul(a, b):
        out = [TruncatedSeries.zero(jv) for _ in range(m + 1)]
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j in range(m + 1 - i):
                out[i + j] = out[i + j] + x * b[j]
        return out

    unit = [TruncatedSeries.constant(jv, one)] + [TruncatedSeries.zero(jv) for _ in range(m)]
    powers = [{0: unit} for _ in range(n)]

    def power(i, e):
        if e not in powers[i]:
            powers[i][e] = mul(power(i, e - 1), gens[i])
        return powers[i][e]

    total = [TruncatedSeries.zero(jv) for _ in range(m + 1)]
    for mono, c in f.terms.items():
        term = [x.scale(c) for x in unit]
        for i, e in enumerate(mono):
            if e:
                term = mul(term, power(i, e))
        total = [a + b for a, b in zip(total, term)]
    return total


def chart_index(f: TruncatedSeries, chart: int | str) -> int:
    """0-based index of a chart given by 1-based position or variable name."""
    if isinstance(chart, str):
        if chart not in f.variables:
            raise ValueError(f"unknown chart variable {chart!r}")
        return f.variables.index(chart)
    if not 1 <= chart <= len(f.variables):
        raise ValueError(f"chart {chart} out of range 1..{len(f.variables)}")
    return chart - 1


def blowup_chart_strict_transform(f: TruncatedSeries, chart: int | str) -> TruncatedSeries:
    """Strict transform of ``f = 0`` in the chart where ``x_c`` generates the
    exceptional divisor: ``x_i <- x_c x_i`` for ``i != c``, then divide by the
    largest power of ``x_c``."""
    if f.cap is not None:
        raise ValueError("strict transforms need an exact polynomial")
    if f.coefficient((0,) * len(f.variables)) != 0:
        raise ValueError("polynomial does not vanish at the origin")
    if f.is_zero():
        raise ValueError("the zero polynomial has no strict transform")
    c = chart_index(f, chart)
    moved = {}
    for mono, a in f.terms.items():
        new = list(mono)
        new[c] = sum(mono)
        moved[tuple(new)] = a
    low = min(e[c] for e in moved)
    out = {}
    for mono, a in moved.items():
        new = list(mono)
        new[c] -= low
        out[tuple(new)] = a
    return TruncatedSeries(f.variables, out)

