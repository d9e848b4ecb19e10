"""Combinatorics of the total coordinate ring of a wonderful variety.

Covers the Pic-degrees of the canonical sections, the orbit poset of the
spectrum of the total coordinate ring, the order ``<=_X`` on weights, the
exponent matrix of pull-backs of the invariant generators, and the
type-A relation data of group compactifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from . import intlin
from .datum import SphericalDatum
from .divclass import boundary_class, color_class
from .errors import DimensionError, InconsistencyError, InvalidDatumError
from .rootsys import build_root_system, decompose_in_simple_roots, Weight


def generator_degrees(d: SphericalDatum) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Degrees of ``s_D`` (unit vectors) and of ``s_i`` (the boundary classes)."""
    return (
        [color_class(d, k) for k in range(d.n_colors)],
        [boundary_class(d, i) for i in range(d.rank)],
    )


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitLabel:
    colors: frozenset[int]
    boundary: frozenset[int]

    def sort_key(self):
        return (len(self.colors) + len(self.boundary), sorted(self.colors), sorted(self.boundary))

    def leq(self, other: "OrbitLabel") -> bool:
        return self.colors <= other.colors and self.boundary <= other.boundary


@dataclass(frozen=True)
class OrbitPoset:
    labels: tuple[OrbitLabel, ...]
    closure_order: tuple[tuple[int, int], ...]  # (a, b): labels[a] <= labels[b]
    q_image: tuple[frozenset[int], ...]

    def is_chain(self) -> bool:
        n = len(self.labels)
        rel = set(self.closure_order)
        return all((a, b) in rel or (b, a) in rel for a in range(n) for b in range(n))


def orbit_label_valid(d: SphericalDatum, colors: frozenset[int], boundary: frozenset[int]) -> bool:
    """Positive ``x_D`` on the chosen colors with ``sum x_D <D, gamma_i> <= 0`` for ``i`` outside ``boundary``."""
    if not colors:
        return True
    cols = sorted(colors)
    rows = [[d.colors[k].pairing[i] for k in cols] for i in range(d.rank) if i not in boundary]
    return intlin.strict_feasible(rows, range(len(cols)), nvars=len(cols))


def orbit_poset(d: SphericalDatum) -> OrbitPoset:
    labels = []
    for nc in range(d.n_colors + 1):
        for cs in combinations(range(d.n_colors), nc):
            for nb in range(d.rank + 1):
                for bs in combinations(range(d.rank), nb):
                    c, b = frozenset(cs), frozenset(bs)
                    if orbit_label_valid(d, c, b):
                        labels.append(OrbitLabel(c, b))
    labels.sort(key=OrbitLabel.sort_key)
    order = tuple(
        (a, b) for a in range(len(labels)) for b in range(len(labels)) if labels[a].leq(labels[b])
    )
    return OrbitPoset(tuple(labels), order, tuple(lab.boundary for lab in labels))


# ---------------------------------------------------------------------------
# the order <=_X


def root_coefficients(d: SphericalDatum, w: Sequence[int]):
    """Rational coefficients of ``w`` in the spherical roots, or None."""
    if len(w) != d.ambient.rank:
        raise DimensionError(f"weight of length {len(w)} for ambient rank {d.ambient.rank}")
    return intlin.solve_rational(d.spherical_roots, tuple(w))


def leq_X(d: SphericalDatum, lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``mu - lam`` is a non-negative integer combination of spherical roots."""
    diff = tuple(int(b) - int(a) for a, b in zip(lam, mu))
    if len(lam) != len(mu):
        raise DimensionError("weights of different lengths")
    coeffs = root_coefficients(d, diff)
    return coeffs is not None and all(c.denominator == 1 and c >= 0 for c in coeffs)


# ---------------------------------------------------------------------------
# pull-back exponents


def pullback_exponents(boundary_valuations: Sequence[Sequence[int]], r: int | None = None) -> tuple[tuple[int, ...], ...]:
    """``E[j][i] = -v_j(gamma_i)``: exponent of ``s_j`` in the pull-back of the i-th invariant generator."""
    vals = intlin.as_matrix(boundary_valuations)
    if r is not None and any(len(v) != r for v in vals):
        raise DimensionError(f"boundary valuations must have length {r}")
    if vals and len({len(v) for v in vals}) > 1:
        raise DimensionError("boundary valuations of different lengths")
    return tuple(tuple(-x for x in v) for v in vals)


def wonderful_self_valuations(d: SphericalDatum) -> tuple[tuple[int, ...], ...]:
    r = d.rank
    return tuple(tuple(-int(i == j) for j in range(r)) for i in range(r))


# ---------------------------------------------------------------------------
# type A


def _check_typeA(n: int, i: int, j: int) -> None:
    if n < 2 or not (1 <= i <= j <= n - 1):
        raise ValueError(f"need 1 <= i <= j <= n-1 with n >= 2, got n={n}, i={i}, j={j}")


def fundamental_sum(n: int, a: int, b: int) -> Weight:
    """``omega_a + omega_b`` for SL_n, with ``omega_0 = omega_n = 0``."""
    w = [0] * (n - 1)
    for k in (a, b):
        if 1 <= k <= n - 1:
            w[k - 1] += 1
    return tuple(w)


def tensor_fundamental_typeA(n: int, i: int, j: int) -> list[Weight]:
    """Highest weights of ``V(omega_i) (x) V(omega_j)`` for SL_n (all multiplicity one)."""
    _check_typeA(n, i, j)
    out = [
        fundamental_sum(n, ip, i + j - ip)
        for ip in range(0, i + 1)
        if j <= i + j - ip <= n
    ]
    return sorted(out)


def relation_data_typeA(n: int, i: int, j: int) -> list[tuple[Weight, tuple[int, ...]]]:
    """Pairs ``(lambda, (n_1..n_{n-1}))`` with ``omega_i + omega_j - lambda = sum n_k alpha_k``."""
    _check_typeA(n, i, j)
    rs = build_root_system(f"A{n - 1}")
    top = fundamental_sum(n, i, j)
    out = []
    for lam in tensor_fundamental_typeA(n, i, j):
        diff = tuple(a - b for a, b in zip(top, lam))
        exps = decompose_in_simple_roots(rs, diff)
        if exps is None:
            raise InconsistencyError(f"omega_{i} + omega_{j} - {lam} is not in the positive root monoid")
        out.append((lam, exps))
    return out


def binomial_dimension(n: int, i: int) -> int:
    return comb(n, i)


@dataclass(frozen=True)
class RootMonoidWitness:
    root: int  # 0-based spherical root index
    i: int
    j: int
    weight: Weight
    multiple: int


def root_monoid_check(d: SphericalDatum) -> list[RootMonoidWitness]:
    """For each spherical root, a tensor component witnessing it in the root monoid.

    Only for group compactifications of type A_{n-1}; tries the canonical
    witness ``i = j = k`` with ``lambda = 2 omega_k - alpha_k`` first.
    """
    factors = d.ambient.factors
    if len(factors) != 1 or factors[0][0] != "A" or d.module_dim_mode != "squared":
        raise InvalidDatumError("root_monoid_check needs a type-A group-compactification datum")
    n = factors[0][1] + 1
    out = []
    for k in range(d.rank):
        gamma = d.spherical_roots[k]
        found = None
        candidates = [(k + 1, k + 1)] + [(a, b) for a in range(1, n) for b in range(a, n) if (a, b) != (k + 1, k + 1)]
        for a, b in candidates:
            top = fundamental_sum(n, a, b)
            for lam in tensor_fundamental_typeA(n, a, b):
                diff = [x - y for x, y in zip(top, lam)]
                coeffs = intlin.solve_rational([gamma], diff)
                if coeffs is not None and coeffs[0].denominator == 1 and coeffs[0] > 0:
                    found = RootMonoidWitness(k, a, b, lam, int(coeffs[0]))
                    break
            if found:
                break
        if found is None:
            raise InconsistencyError(f"no tensor component witnesses spherical root {k + 1}")
        out.append(found)
    return out
