"""Exact integer linear algebra on lattices.

Vectors are tuples of Python ints, matrices are tuples of row tuples.
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

#: Largest ambient lattice rank accepted by the cone constructors.
MAX_RANK = 6

LatticeVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


def vector(coords: Iterable[int]) -> LatticeVector:
    out = tuple(int(c) for c in coords)
    if not out:
        raise ValueError("lattice vectors must have positive rank")
    return out


def matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if not out or not out[0]:
        raise ValueError("matrix dimensions must be positive")
    if any(len(row) != len(out[0]) for row in out):
        raise ValueError("matrix rows have unequal lengths")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def check_rank(n: int) -> None:
    if n > MAX_RANK:
        raise ValueError(f"ambient rank {n} exceeds the configured cap {MAX_RANK}")


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> LatticeVector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> LatticeVector:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> LatticeVector:
    return tuple(k * x for x in a)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a))


def primitive_part(v: Sequence[int]) -> LatticeVector:
    """Divide ``v`` by the gcd of its coordinates.

    >>> primitive_part((0, -4, 6))
    (0, -2, 3)
    """
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f, p = a[i][c], a[r][c]
                a[i] = [x * p - y * f for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def solve_rational(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``a @ x = b`` over Q for a system with full column rank.

    Returns None when the system is inconsistent.
    """
    rows, cols = len(a), len(a[0])
    m = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None
    if len(pivots) != cols:
        raise ValueError("system does not have full column rank")
    return tuple(m[i][cols] for i in range(cols))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  ``h`` is in
    row echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)`` and zero rows sit at the bottom.
    """
    h = [list(row) for row in matrix(m)]
    rows, cols = len(h), len(h[0])
    u = [list(row) for row in identity(rows)]
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            g, x, y = _xgcd(h[r][c], h[i][c])
            a, b = h[r][c] // g, h[i][c] // g
            # [[x, y], [-b, a]] has determinant 1
            h[r], h[i] = (
                [x * p + y * q for p, q in zip(h[r], h[i])],
                [-b * p + a * q for p, q in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * p + y * q for p, q in zip(u[r], u[i])],
                [-b * p + a * q for p, q in zip(u[r], u[i])],
            )
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        p = h[r][c]
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return matrix(h), matrix(u)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(d, u, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular; the diagonal of ``d`` is non-negative and
    each nonzero entry divides the next.
    """
    d = [list(row) for row in matrix(m)]
    rows, cols = len(d), len(d[0])
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = d[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty |= d[i][t] != 0
            for j in range(t + 1, cols):
                q = d[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty |= d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return matrix(d), matrix(u), matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i])


def lattice_basis(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """A basis (as rows) of the saturated lattice ``span(rows) ∩ Z^n``."""
    d, u, v = smith_normal_form(rows)
    k = len(invariant_factors(rows))
    # rows span = rowspace(u^-1 d v^-1); the saturation is spanned by the
    # first k rows of v^-1.
    vinv = _unimodular_inverse(v)
    return tuple(vinv[i] for i in range(k))


def _unimodular_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return matrix([[int(x) for x in row] for row in out])


def integer_scaled(v: Sequence[Fraction]) -> LatticeVector:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive_part([int(Fraction(x) * den) for x in v])


def dual_extreme_rays(constraints: Sequence[Sequence[int]]) -> list[LatticeVector]:
    """Extreme rays of ``{x : <a, x> >= 0 for every a in constraints}``.

    Double description method with the combinatorial adjacency test.  The
    constraints must have full rank ``n`` so that the result is pointed.
    """
    a = [tuple(c) for c in constraints]
    n = len(a[0])
    basis_idx: list[int] = []
    for i in range(len(a)):
        if rank([a[j] for j in basis_idx] + [a[i]]) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == n:
            break
    if len(basis_idx) < n:
        raise ValueError("constraint system does not have full rank")

    # Initial simplicial cone: columns of B^-1, one per basis constraint.
    b = [a[i] for i in basis_idx]
    gens: list[LatticeVector] = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        gens.append(integer_scaled(solve_rational(b, e)))
    processed = list(basis_idx)
    zeros = [frozenset(i for i in processed if dot(a[i], g) == 0) for g in gens]

    for i in range(len(a)):
        if i in basis_idx:
            continue
        vals = [dot(a[i], g) for g in gens]
        pos = [k for k, x in enumerate(vals) if x > 0]
        neg = [k for k, x in enumerate(vals) if x < 0]
        zer = [k for k, x in enumerate(vals) if x == 0]
        new_gens = [gens[k] for k in pos + zer]
        new_zeros = [zeros[k] for k in pos] + [zeros[k] | {i} for k in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if any(k not in (p, q) and common <= zeros[k] for k in range(len(gens))):
                    continue
                g = primitive_part(sub(scale(vals[p], gens[q]), scale(vals[q], gens[p])))
                new_gens.append(g)
                new_zeros.append(common | {i})
        gens, zeros = new_gens, new_zeros
        processed.append(i)
    return sorted(set(gens))


def facet_normals(rays: Sequence[Sequence[int]]) -> list[LatticeVector]:
    """Primitive inner facet normals of the cone generated by ``rays``.

    The cone must be full-dimensional and strongly convex.  Output is
    lex-sorted.
    """
    rays = [vector(r) for r in rays]
    n = len(rays[0])
    if any(len(r) != n for r in rays):
        raise ValueError("rays have different ranks")
    check_rank(n)
    if rank(rays) < n:
        raise ValueError("not full-dimensional (unsupported)")
    normals = dual_extreme_rays(rays)
    if rank(normals) < n:
        raise ValueError("not strongly convex")
    return normals


def is_pointed(rays: Sequence[Sequence[int]]) -> bool:
    """Whether the cone generated by ``rays`` contains no line (any dimension)."""
    rays = [vector(r) for r in rays if any(r)]
    if not rays:
        return True
    basis = lattice_basis(rays)
    k = len(basis)
    bt = transpose(basis)
    coords = [integer_scaled(solve_rational(bt, r)) for r in rays]
    return rank(dual_extreme_rays(coords)) == k

