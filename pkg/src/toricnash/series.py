"""Multivariate power series truncated in total degree.

Coefficients are exact: :class:`fractions.Fraction` by default, or elements
of a prime field ``GF(p)`` from sympy.  A series with ``cap = None`` is an
exact polynomial; otherwise every term of total degree ``<= cap`` is known
and nothing above it is stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Any, Iterable, Mapping, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import GF

Monomial = tuple[int, ...]


def field_element(x, p: int | None = None):
    """Coerce an int/Fraction/sympy rational into Q (``p=None``) or GF(p)."""
    if p is None:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, sympy.Rational):
            return Fraction(int(x.p), int(x.q))
        return Fraction(x)
    if p in (2, 3):
        raise ValueError("characteristic 2 and 3 are not supported")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not a prime")
    field = GF(p)
    if isinstance(x, sympy.Rational) and not isinstance(x, sympy.Integer):
        return field(int(x.p)) / field(int(x.q))
    if isinstance(x, Fraction):
        return field(x.numerator) / field(x.denominator)
    return field(int(x))


def _one_like(f: "TruncatedSeries"):
    """The unit of the coefficient field of ``f`` (int 1 if unknown)."""
    for c in f.terms.values():
        return c ** 0
    return 1


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class TruncatedSeries:
    variables: tuple[str, ...]
    terms: Mapping[Monomial, Any]
    cap: int | None = None

    def __post_init__(self):
        n = len(self.variables)
        clean = {}
        for mon, c in self.terms.items():
            mon = tuple(mon)
            if len(mon) != n:
                raise ValueError("exponent length does not match the variables")
            if c != 0 and (self.cap is None or sum(mon) <= self.cap):
                clean[mon] = c
        object.__setattr__(self, "terms", clean)

    # -- construction helpers
    @classmethod
    def zero(cls, variables, cap=None) -> "TruncatedSeries":
        return cls(tuple(variables), {}, cap)

    @classmethod
    def constant(cls, variables, value, cap=None) -> "TruncatedSeries":
        return cls(tuple(variables), {(0,) * len(variables): value}, cap)

    @classmethod
    def monomial(cls, variables, exps, coeff=1, cap=None) -> "TruncatedSeries":
        return cls(tuple(variables), {tuple(exps): coeff}, cap)

    @classmethod
    def gen(cls, variables, i, cap=None, one=1) -> "TruncatedSeries":
        exps = [0] * len(variables)
        exps[i] = 1
        return cls(tuple(variables), {tuple(exps): one}, cap)

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int | None:
        """Lowest total degree of a stored term (None for zero)."""
        return min((sum(m) for m in self.terms), default=None)

    @property
    def degree(self) -> int | None:
        return max((sum(m) for m in self.terms), default=None)

    def valuation_bound(self) -> float:
        """A lower bound for the true order, taking the cap into account."""
        low = self.order
        if low is None:
            return inf if self.cap is None else self.cap + 1
        return low if self.cap is None else min(low, self.cap + 1)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic
    def _check(self, other: "TruncatedSeries") -> None:
        if self.variables != other.variables:
            raise ValueError("series live in different rings")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.variables, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.variables, out, _min_cap(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.variables, {m: -c for m, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, {m: k * c for m, c in self.terms.items()}, self.cap)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        caps = []
        if self.cap is not None:
            caps.append(self.cap + other.valuation_bound())
        if other.cap is not None:
            caps.append(other.cap + self.valuation_bound())
        cap = min(caps) if caps else None
        if cap == inf:
            cap = None
        elif cap is not None:
            cap = int(cap)
        out: dict[Monomial, Any] = {}
        for ma, ca in self.terms.items():
            da = sum(ma)
            for mb, cb in other.terms.items():
                if cap is not None and da + sum(mb) > cap:
                    continue
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return TruncatedSeries(self.variables, out, cap)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = TruncatedSeries.constant(self.variables, _one_like(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self.terms, _min_cap(self.cap, cap))

    def homogeneous_part(self, d: int) -> "TruncatedSeries":
        if self.cap is not None and d > self.cap:
            raise ValueError(f"degree {d} lies beyond the truncation cap {self.cap}")
        return TruncatedSeries(self.variables, {m: c for m, c in self.terms.items() if sum(m) == d})

    def diff(self, i: int) -> "TruncatedSeries":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return TruncatedSeries(self.variables, out, None if self.cap is None else self.cap - 1)

    def map_coefficients(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, {m: fn(c) for m, c in self.terms.items()}, self.cap)

    def evaluate(self, point: Sequence):
        if self.cap is not None:
            raise ValueError("cannot evaluate a truncated series at a point")
        total = 0
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                term = term * x ** e
            total = total + term
        return total

    def substitute(self, subs: Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """Compose: replace the i-th variable by ``subs[i]``."""
        if len(subs) != len(self.variables):
            raise ValueError("need one substitution per variable")
        target = subs[0].variables
        one = _one_like(self)
        powers: list[dict[int, TruncatedSeries]] = [{0: TruncatedSeries.constant(target, one)} for _ in subs]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * subs[i]
            return cache[e]

        total = TruncatedSeries.zero(target)
        for m, c in self.terms.items():
            term = TruncatedSeries.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        if self.cap is not None:
            low = min(s.valuation_bound() for s in subs)
            if low == 0:
                raise ValueError("substituting series with constant terms into a truncated series")
            bound = (self.cap + 1) * low - 1
            total = total.truncate(int(bound)) if bound != inf else total
        return total

    def __str__(self) -> str:
        return format_series(self)


class HomogeneousForm(TruncatedSeries):
    """An exact polynomial all of whose terms have the same degree."""

    def __post_init__(self):
        super().__post_init__()
        if self.cap is not None:
            raise ValueError("homogeneous forms are exact polynomials")
        if len({sum(m) for m in self.terms}) > 1:
            raise ValueError("form is not homogeneous")

    @property
    def form_degree(self) -> int:
        return self.order if self.terms else 0

    @classmethod
    def of(cls, f: TruncatedSeries) -> "HomogeneousForm":
        return cls(f.variables, f.terms, None)


# ------------------------------------------------------------ text interface

_NAME = re.compile(r"([A-Za-z_]+)(\d*)$")


def _natural_key(name: str):
    m = _NAME.match(name)
    if not m:
        return (name, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def parse_series(
    text: str,
    variables: Iterable[str] | None = None,
    field: int | None = None,
    cap: int | None = None,
) -> TruncatedSeries:
    """Parse a polynomial such as ``"x1^3 + 2/3*x2*x5 - x4^2"``."""
    try:
        expr = parse_expr(text, transformations=standard_transformations + (convert_xor,), evaluate=True)
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
    if variables is None:
        variables = sorted((str(s) for s in expr.free_symbols), key=_natural_key)
    variables = tuple(variables)
    unknown = {str(s) for s in expr.free_symbols} - set(variables)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)} in {text!r}")
    syms = [sympy.Symbol(v) for v in variables]
    try:
        poly = sympy.Poly(expr, *syms, domain="QQ") if syms else None
    except sympy.PolynomialError as exc:
        raise ValueError(f"{text!r} is not a polynomial: {exc}") from None
    if poly is None:
        return TruncatedSeries.constant((), field_element(sympy.Rational(expr), field), cap)
    terms = {m: field_element(sympy.Rational(c), field) for m, c in poly.as_dict().items()}
    return TruncatedSeries(variables, terms, cap)


def _coeff_text(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    try:
        return str(int(c))
    except TypeError:
        return str(c)


def format_series(f: TruncatedSeries) -> str:
    if not f.terms:
        text = "0"
    else:
        parts = []
        for m in sorted(f.terms, key=lambda m: (sum(m), tuple(-x for x in m))):
            c = _coeff_text(f.terms[m])
            factors = [
                v if e == 1 else f"{v}^{e}" for v, e in zip(f.variables, m) if e
            ]
            if not factors:
                body = c
            elif c == "1":
                body = "*".join(factors)
            elif c == "-1":
                body = "-" + "*".join(factors)
            else:
                body = c + "*" + "*".join(factors)
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
    if f.cap is not None:
        text += f" + O({f.cap + 1})"
    return text


# --------------------------------------------------- linear algebra over a field


def solve_linear(a: list[list], b: list) -> list | None:
    """Solve ``a @ x = b`` over a field, free variables set to zero.

    Returns None if the system is inconsistent.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(a[i]) + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c] ** -1
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None
    zero = b[0] * 0 if b else 0
    x = [zero] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def rank_over_field(a: list[list]) -> int:
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c] ** -1
        m[r] = [x * inv for x in m[r]]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r
