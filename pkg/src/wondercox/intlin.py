"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`;
nothing is ever converted to floating point.  Matrices are sequences of
rows, vectors are tuples.

Provided primitives:

* Smith normal form with unimodular transforms, and cokernels of integer
  relation matrices (:func:`smith_normal_form`, :func:`cokernel`);
* extremal rays of pointed rational cones by the double description
  method (:func:`extremal_rays`);
* LP feasibility by Fourier--Motzkin elimination (:func:`cone_contains`,
  :func:`strict_feasible`);
* enumeration of non-negative integer points of bounded polyhedra
  ``{x >= 0 : A x = b}`` (:func:`enumerate_nonneg_integer_solutions`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, PointednessError, RecessionError

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# small helpers


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(col) for col in zip(*m))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b)) if b else []
    ncols = len(b[0]) if b else 0
    if not bt:
        return tuple(tuple(0 for _ in range(ncols)) for _ in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    if any(len(row) != n for row in a):
        raise DimensionError("determinant of a non-square matrix")
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
    return sign * a[n - 1][n - 1]


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries (orientation kept)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector has no primitive form")
    return tuple(x // g for x in v)


def _integral(v: Sequence[Fraction]) -> Vector:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    if not any(ints):
        return tuple(ints)
    return primitive(ints)


def rref(rows: Sequence[Sequence[int | Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns the non-zero rows and pivot columns."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return len(rref(rows)[1])


def solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Solve ``sum_k x_k * columns[k] = target`` over Q.

    The columns must be linearly independent; returns the unique solution
    or ``None`` when the system is inconsistent.
    """
    dim = len(target)
    if any(len(c) != dim for c in columns):
        raise DimensionError("column length does not match target length")
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise DimensionError("columns are linearly dependent")
    x = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        x[p] = row[k]
    return tuple(x)


# ---------------------------------------------------------------------------
# Smith normal form and cokernels


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form of an integer matrix.

    Returns ``(factors, L, R)`` with ``L`` and ``R`` unimodular and
    ``L @ m @ R`` diagonal.  ``factors`` lists the non-zero diagonal
    entries; they are positive and each divides the next.  ``ncols`` is
    only needed when ``m`` has no rows.

    >>> smith_normal_form([[1, 0], [1, 2]])[0]
    (1, 2)
    """
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    n = len(a[0]) if a else (ncols or 0)
    if any(len(row) != n for row in a):
        raise DimensionError("ragged matrix")
    left = identity(nrows)
    right = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in a:
            row[dst] += f * row[src]
        for row in right:
            row[dst] += f * row[src]

    t = 0
    while t < min(nrows, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold an offending row into the pivot row
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(min(nrows, n)) if a[i][i])
    return factors, as_matrix(left), as_matrix(right)


@dataclass(frozen=True)
class AbelianPresentation:
    """A finitely generated abelian group ``Z^free_rank + sum Z/f``.

    ``generator_images[j]`` gives the image of the j-th original generator:
    ``free_rank`` integer coordinates followed by one residue per
    invariant factor.
    """

    free_rank: int
    invariant_factors: tuple[int, ...]
    generator_images: Matrix

    def __post_init__(self):
        f = self.invariant_factors
        if any(x <= 1 for x in f) or any(f[k + 1] % f[k] for k in range(len(f) - 1)):
            raise ValueError(f"invariant factors {f} do not form a divisibility chain")

    @property
    def torsion_order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors


def cokernel(relations: Sequence[Sequence[int]], d: int | None = None) -> AbelianPresentation:
    """The group ``Z^d / rowspace(relations)``."""
    rel = as_matrix(relations)
    if d is None:
        if not rel:
            raise DimensionError("d is required when there are no relations")
        d = len(rel[0])
    if any(len(r) != d for r in rel):
        raise DimensionError(f"relation rows must have length {d}")
    factors, _, right = smith_normal_form(rel, ncols=d)
    rk = len(factors)
    # x -> x @ right maps rowspace(rel) onto the span of f_k e_k.
    torsion_idx = [k for k in range(rk) if factors[k] > 1]
    free_idx = list(range(rk, d))
    images = []
    for j in range(d):
        row = right[j]
        images.append(
            tuple(row[k] for k in free_idx) + tuple(row[k] % factors[k] for k in torsion_idx)
        )
    return AbelianPresentation(
        free_rank=d - rk,
        invariant_factors=tuple(factors[k] for k in torsion_idx),
        generator_images=tuple(images),
    )


# ---------------------------------------------------------------------------
# Fourier--Motzkin feasibility


def _normalize(coeffs: Sequence[Fraction | int], rhs: Fraction | int) -> tuple[Vector, int]:
    """Scale ``coeffs . x <= rhs`` by a positive rational to primitive integer form."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


def _fm_project(ineqs, nvars: int, keep: int | None = None):
    """Eliminate variables from ``{x : C x <= d}``.

    ``ineqs`` holds ``(coeffs, rhs)`` pairs.  All variables except ``keep``
    are eliminated (all of them when ``keep`` is None).  Returns the
    surviving constraints, or ``None`` if a contradiction ``0 <= negative``
    was derived.  Chernikov's history rule discards redundant combinations.
    """
    current: dict[Vector, tuple[int, frozenset]] = {}
    for idx, (c, r) in enumerate(ineqs):
        c, r = _normalize(c, r)
        if not any(c):
            if r < 0:
                return None
            continue
        old = current.get(c)
        if old is None or r < old[0]:
            current[c] = (r, frozenset([idx]))
    order = [v for v in range(nvars) if v != keep]
    eliminated = 0
    remaining = set(order)
    while remaining:
        # cheapest variable first: fewest generated pairs
        def cost(v):
            pos = sum(1 for c in current if c[v] > 0)
            neg = sum(1 for c in current if c[v] < 0)
            return pos * neg - pos - neg

        v = min(sorted(remaining), key=cost)
        remaining.discard(v)
        eliminated += 1
        pos = [(c, r, h) for c, (r, h) in current.items() if c[v] > 0]
        neg = [(c, r, h) for c, (r, h) in current.items() if c[v] < 0]
        nxt: dict[Vector, tuple[int, frozenset]] = {
            c: (r, h) for c, (r, h) in current.items() if c[v] == 0
        }
        for cp, rp, hp in pos:
            for cn, rn, hn in neg:
                hist = hp | hn
                if len(hist) > eliminated + 1:
                    continue
                a, b = cp[v], -cn[v]
                coeffs = [b * x + a * y for x, y in zip(cp, cn)]
                c, r = _normalize(coeffs, b * rp + a * rn)
                if not any(c):
                    if r < 0:
                        return None
                    continue
                old = nxt.get(c)
                if old is None or r < old[0]:
                    nxt[c] = (r, hist)
        current = nxt
    return [(c, r) for c, (r, _) in current.items()]


def _eliminate_equalities(eqs, eq_rhs, ineqs, nvars):
    """Substitute the solution set of ``E x = e`` into ``C x <= d``.

    Returns ``(free_vars, pivots, reduced, new_ineqs)`` or ``None`` when the
    equalities are inconsistent.  ``new_ineqs`` is expressed in the free
    variables only; ``reduced[k]`` gives pivot ``pivots[k]`` as
    ``rhs - sum coeff * x_free``.
    """
    if eqs:
        red, pivots = rref([list(row) + [rhs] for row, rhs in zip(eqs, eq_rhs)])
        if nvars in pivots:
            return None
    else:
        red, pivots = [], []
    free = [v for v in range(nvars) if v not in pivots]
    # x_p = red[k][nvars] - sum_f red[k][f] x_f
    new = []
    for coeffs, rhs in ineqs:
        c = [Fraction(coeffs[f]) for f in free]
        r = Fraction(rhs)
        for k, p in enumerate(pivots):
            cp = coeffs[p]
            if cp:
                r -= cp * red[k][nvars]
                for fi, f in enumerate(free):
                    c[fi] -= cp * red[k][f]
        new.append((c, r))
    return free, pivots, red, new


def lp_feasible(nvars: int, eqs=(), eq_rhs=(), ineqs=()) -> bool:
    """Rational feasibility of ``{x : E x = e, C x <= d}`` (no sign constraints implied)."""
    sub = _eliminate_equalities(list(eqs), list(eq_rhs), list(ineqs), nvars)
    if sub is None:
        return False
    free, _, _, new = sub
    return _fm_project(new, len(free)) is not None


def _nonneg_rows(nvars):
    return [(tuple(-int(i == j) for j in range(nvars)), 0) for i in range(nvars)]


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class ConeZ:
    """A rational polyhedral cone given by integer generators."""

    generators: Matrix

    def __init__(self, generators: Iterable[Iterable[int]]):
        gens = as_matrix(generators)
        if gens:
            dim = len(gens[0])
            if any(len(g) != dim for g in gens):
                raise DimensionError("cone generators must share a dimension")
            if any(not any(g) for g in gens):
                raise ValueError("zero vector given as a cone generator")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int | None:
        return len(self.generators[0]) if self.generators else None


def _as_cone(c) -> ConeZ:
    return c if isinstance(c, ConeZ) else ConeZ(c)


def cone_contains(cone, v: Sequence[int]) -> bool:
    """Whether ``v`` is a non-negative rational combination of the generators."""
    c = _as_cone(cone)
    v = tuple(int(x) for x in v)
    if c.dim is not None and len(v) != c.dim:
        raise DimensionError(f"vector of length {len(v)} tested against a cone in dimension {c.dim}")
    if not any(v):
        return True
    gens = c.generators
    if not gens:
        return False
    n = len(gens)
    eqs = [tuple(g[i] for g in gens) for i in range(len(v))]
    return lp_feasible(n, eqs, v, _nonneg_rows(n))


def strict_feasible(a: Sequence[Sequence[int | Fraction]], strict_vars: Iterable[int], nvars: int | None = None) -> bool:
    """Is there rational ``x`` with ``x_j >= 1`` on ``strict_vars``, 0 elsewhere, and ``A x <= 0``?

    ``strict_vars`` are 0-based column indices.  By homogeneity this is the
    same as asking for positive integers ``x_j``.
    """
    s = sorted(set(strict_vars))
    if nvars is None:
        nvars = len(a[0]) if a else (max(s) + 1 if s else 0)
    if any(not 0 <= j < nvars for j in s):
        raise DimensionError("strict variable index out of range")
    rows = [(tuple(row[j] for j in s), 0) for row in a]
    rows += [(tuple(-int(i == k) for k in range(len(s))), -1) for i in range(len(s))]
    return _fm_project(rows, len(s)) is not None


def _double_description(rows: Sequence[Vector], k: int) -> list[Vector]:
    """Extreme rays of ``{y in Q^k : row . y >= 0 for all rows}``.

    ``rows`` must have rank ``k``, which makes the cone pointed.
    """
    # initial simplicial cone from k independent rows
    basis: list[int] = []
    for idx in range(len(rows)):
        if rank([rows[i] for i in basis + [idx]]) > len(basis):
            basis.append(idx)
            if len(basis) == k:
                break
    bmat = [rows[i] for i in basis]
    rays = []
    for j in range(k):
        e = [int(i == j) for i in range(k)]
        rays.append(_integral(solve_rational(transpose(bmat), e)))
    processed = list(basis)

    for idx in range(len(rows)):
        if idx in basis:
            continue
        a = rows[idx]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        plus = [i for i, s in enumerate(vals) if s > 0]
        minus = [i for i, s in enumerate(vals) if s < 0]
        zero = [i for i, s in enumerate(vals) if s == 0]
        tight = [
            frozenset(q for q in processed if sum(x * y for x, y in zip(rows[q], r)) == 0)
            for r in rays
        ]
        new = [rays[i] for i in plus + zero]
        for p in plus:
            for m in minus:
                common = tight[p] & tight[m]
                if rank([rows[q] for q in common]) != k - 2:
                    continue
                comb = [vals[p] * y - vals[m] * x for x, y in zip(rays[p], rays[m])]
                new.append(primitive(comb))
        rays = sorted(set(new))
        processed.append(idx)
    return rays


def extremal_rays(cone) -> list[Vector]:
    """Primitive generators of the extremal rays of a pointed cone.

    Works in the linear span of the generators (coordinates = the pivot
    columns of their row echelon form), computes the facet normals by
    double description, and keeps the generator directions lying on
    facets of rank ``dim - 1``.  Output is sorted lexicographically.

    >>> extremal_rays([(1, 0), (0, 1), (2, -2), (-1, 2)])
    [(-1, 2), (1, -1)]
    """
    c = _as_cone(cone)
    if not c.generators:
        return []
    dirs = sorted({primitive(g) for g in c.generators})
    _, pivots = rref(dirs)
    k = len(pivots)
    coords = [tuple(g[p] for p in pivots) for g in dirs]
    facets = _double_description(coords, k)
    if not facets or rank(facets) < k:
        raise PointednessError("the cone contains a line")
    out = []
    for g, x in zip(dirs, coords):
        on = [f for f in facets if sum(a * b for a, b in zip(f, x)) == 0]
        if rank(on) == k - 1:
            out.append(g)
    return sorted(out)


def is_pointed(cone) -> bool:
    try:
        extremal_rays(cone)
    except PointednessError:
        return False
    return True


# ---------------------------------------------------------------------------
# non-negative integer points


def enumerate_nonneg_integer_solutions(a: Sequence[Sequence[int]], b: Sequence[int], nvars: int | None = None) -> list[Vector]:
    """All integer ``x >= 0`` with ``A x = b``, sorted.

    Raises :class:`RecessionError` if ``{x >= 0 : A x = 0}`` is not ``{0}``
    (the solution set would then be unbounded or empty-but-unbounded).

    >>> enumerate_nonneg_integer_solutions([[1, 2]], [2])
    [(0, 1), (2, 0)]
    """
    a = as_matrix(a)
    b = tuple(int(x) for x in b)
    if nvars is None:
        if not a:
            raise DimensionError("nvars is required when A has no rows")
        nvars = len(a[0])
    if len(a) != len(b) or any(len(r) != nvars for r in a):
        raise DimensionError("shape mismatch between A and b")
    if nvars == 0:
        return [()] if not any(b) else []
    # recession cone check: x >= 0, A x = 0, sum x = 1 must be infeasible
    if lp_feasible(nvars, list(a) + [(1,) * nvars], [0] * len(a) + [1], _nonneg_rows(nvars)):
        raise RecessionError("the solution polyhedron has a non-zero recession direction")

    sub = _eliminate_equalities(list(a), list(b), _nonneg_rows(nvars), nvars)
    if sub is None:
        return []
    free, pivots, red, ineqs = sub
    nf = len(free)
    # exact integer box for the free variables
    lo, hi = [], []
    for fi in range(nf):
        proj = _fm_project(ineqs, nf, keep=fi)
        if proj is None:
            return []
        upper = [Fraction(r, c[fi]) for c, r in proj if c[fi] > 0]
        lower = [Fraction(r, c[fi]) for c, r in proj if c[fi] < 0]
        up = min(upper)
        low = max(lower) if lower else Fraction(0)
        lo.append(max(0, -((-low.numerator) // low.denominator)))
        hi.append(up.numerator // up.denominator)
        if lo[-1] > hi[-1]:
            return []

    # x_p = const_p - sum_f coef_pf x_f
    const = [red[k][nvars] for k in range(len(pivots))]
    coef = [[red[k][f] for f in free] for k in range(len(pivots))]

    def best_case(k, start):
        """Largest value the remaining free variables can add to pivot k."""
        total = Fraction(0)
        for fi in range(start, nf):
            c = -coef[k][fi]
            total += c * (hi[fi] if c > 0 else lo[fi])
        return total

    tails = [[best_case(k, s) for s in range(nf + 1)] for k in range(len(pivots))]
    out: list[Vector] = []
    x = [0] * nvars

    def rec(fi, partial):
        if any(partial[k] + tails[k][fi] < 0 for k in range(len(pivots))):
            return
        if fi == nf:
            for k, p in enumerate(pivots):
                val = partial[k]
                if val.denominator != 1 or val < 0:
                    return
                x[p] = int(val)
            out.append(tuple(x))
            return
        f = free[fi]
        for t in range(lo[fi], hi[fi] + 1):
            x[f] = t
            rec(fi + 1, [partial[k] - coef[k][fi] * t for k in range(len(pivots))])
        x[f] = 0

    rec(0, list(const))
    return sorted(out)
