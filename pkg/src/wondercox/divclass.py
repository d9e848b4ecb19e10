"""Divisor classes on wonderful varieties.

Classes live in ``Pic(X) = Z^colors``.  The effective monoid is generated
by the unit color classes and the boundary classes; it can be strictly
smaller than the set of lattice points of the effective cone, so
effectivity is always decided by integer feasibility.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import intlin
from .datum import SphericalDatum
from .errors import DimensionError, InconsistencyError, InvalidDatumError, RecessionError
from .rootsys import build_root_system, diagram_automorphisms, weyl_dim, Weight

DivisorClass = tuple[int, ...]


def _check_index(d: SphericalDatum, i: int) -> None:
    if not 0 <= i < d.rank:
        raise IndexError(f"boundary index {i} out of range for rank {d.rank}")


def _check_class(d: SphericalDatum, c: Sequence[int]) -> DivisorClass:
    c = tuple(int(x) for x in c)
    if len(c) != d.n_colors:
        raise DimensionError(f"class of length {len(c)} for a datum with {d.n_colors} colors")
    return c


def boundary_class(d: SphericalDatum, i: int) -> DivisorClass:
    """``[X_i]`` in the color basis."""
    _check_index(d, i)
    return tuple(c.pairing[i] for c in d.colors)


def color_class(d: SphericalDatum, k: int) -> DivisorClass:
    return tuple(int(j == k) for j in range(d.n_colors))


def is_nef(c: Sequence[int]) -> bool:
    return all(x >= 0 for x in c)


def is_ample(c: Sequence[int]) -> bool:
    return all(x > 0 for x in c)


def is_fixed(d: SphericalDatum, i: int) -> bool:
    """A boundary divisor is fixed iff some color pairs negatively with its root."""
    _check_index(d, i)
    return any(c.pairing[i] < 0 for c in d.colors)


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class SectionDecomposition:
    summands: tuple[tuple[Weight, int], ...]
    total_dim: int

    @property
    def is_empty(self) -> bool:
        return not self.summands

    def as_dict(self) -> dict[Weight, int]:
        return dict(self.summands)


@lru_cache(maxsize=256)
def _exponent_witnesses(pairing: tuple[tuple[int, ...], ...], r: int):
    """For each ``i``, rational ``y >= 0`` with ``sum_D y_D <D, .> = e_i``, or None.

    Then ``b_i = sum_D y_D (P b)_D <= sum_D y_D c_D`` bounds every boundary
    exponent.  Found as a basic solution (Caratheodory), so only linearly
    independent sets of colors are tried.
    """
    nd = len(pairing)
    out = []
    for i in range(r):
        e = tuple(int(k == i) for k in range(r))
        found = None
        for size in range(1, min(nd, r) + 1):
            for sub in combinations(range(nd), size):
                y = intlin.solve_rational([pairing[k] for k in sub], e)
                if y is not None and all(v >= 0 for v in y):
                    found = [Fraction(0)] * nd
                    for k, v in zip(sub, y):
                        found[k] = v
                    break
            if found:
                break
        if found is None:
            return None
        out.append(tuple(found))
    return tuple(out)


def _section_solutions(d: SphericalDatum, c: DivisorClass, first_only: bool = False) -> list[tuple[int, ...]]:
    """Exponent vectors ``(a_D..., b_i...)`` of B-eigen monomials of degree ``c``.

    ``a_D = c_D - sum_i b_i <D, gamma_i>`` is a slack variable, so it is
    enough to enumerate ``b >= 0`` with ``P b <= c``.
    """
    nd, r = d.n_colors, d.rank
    pairing = d.pairing_matrix()
    wit = _exponent_witnesses(pairing, r)
    if wit is None:
        rows = [tuple(int(k == j) for k in range(nd)) + pairing[j] for j in range(nd)]
        try:
            return intlin.enumerate_nonneg_integer_solutions(rows, c, nvars=nd + r)
        except RecessionError as exc:
            raise InvalidDatumError(f"{d.name}: unbounded section enumeration ({exc})") from exc
    hi = []
    for y in wit:
        bound = sum((v * x for v, x in zip(y, c)), Fraction(0))
        if bound < 0:
            return []
        hi.append(bound.numerator // bound.denominator)
    # least amount boundary exponents i.. can still add to (P b)_D
    tail = [[sum(min(0, pairing[k][i] * hi[i]) for i in range(s, r)) for s in range(r + 1)] for k in range(nd)]
    out = []
    b = [0] * r

    def rec(i, load):
        if any(load[k] + tail[k][i] > c[k] for k in range(nd)):
            return False
        if i == r:
            out.append(tuple(c[k] - load[k] for k in range(nd)) + tuple(b))
            return first_only
        for t in range(hi[i] + 1):
            b[i] = t
            if rec(i + 1, [load[k] + pairing[k][i] * t for k in range(nd)]):
                return True
        b[i] = 0
        return False

    rec(0, [0] * nd)
    return sorted(out)


def decompose_sections(d: SphericalDatum, c: Sequence[int]) -> SectionDecomposition:
    """Highest weights (with multiplicity) of the module of sections of ``c``.

    Each solution of ``a_D + sum_i b_i <D, gamma_i> = c_D`` in non-negative
    integers is a monomial in the canonical sections; it contributes the
    highest weight ``sum_D a_D omega_D``.
    """
    c = _check_class(d, c)
    n = d.ambient.rank
    counts: Counter = Counter()
    for sol in _section_solutions(d, c):
        lam = tuple(sum(sol[j] * d.colors[j].omega[k] for j in range(d.n_colors)) for k in range(n))
        counts[lam] += 1
    summands = tuple(sorted(counts.items()))
    power = 2 if d.module_dim_mode == "squared" else 1
    total = sum(m * weyl_dim(d.ambient, lam) ** power for lam, m in summands)
    return SectionDecomposition(summands, total)


def is_effective(d: SphericalDatum, c: Sequence[int]) -> bool:
    c = _check_class(d, c)
    if is_nef(c):
        return True
    return bool(_section_solutions(d, c, first_only=True))


# ---------------------------------------------------------------------------
# effective cone


@dataclass(frozen=True)
class FixedBoundary:
    boundary: int

    def describe(self, d: SphericalDatum) -> str:
        return f"fixed boundary {d.boundary_names[self.boundary]}"


@dataclass(frozen=True)
class SchubertPullback:
    color: int

    def describe(self, d: SphericalDatum) -> str:
        return f"Schubert pull-back {d.colors[self.color].name}"


@dataclass(frozen=True)
class MixedRankOne:
    boundary: int
    color: int

    def describe(self, d: SphericalDatum) -> str:
        return f"mixed rank one {d.boundary_names[self.boundary]} ~ {d.colors[self.color].name}"


RayKind = FixedBoundary | SchubertPullback | MixedRankOne


@dataclass(frozen=True)
class ExtremalRay:
    direction: DivisorClass
    kind: RayKind


def effective_cone_generators(d: SphericalDatum) -> list[DivisorClass]:
    return [color_class(d, k) for k in range(d.n_colors)] + [boundary_class(d, i) for i in range(d.rank)]


def eff_extremal_rays(d: SphericalDatum) -> list[ExtremalRay]:
    """Extremal rays of the effective cone, each with its geometric type."""
    gens = [g for g in effective_cone_generators(d) if any(g)]
    if not gens:
        return []
    rays = intlin.extremal_rays(gens)
    out = []
    for ray in rays:
        bnd = [i for i in range(d.rank) if any(boundary_class(d, i)) and intlin.primitive(boundary_class(d, i)) == ray]
        col = [k for k in range(d.n_colors) if color_class(d, k) == ray]
        if len(bnd) > 1 or len(col) > 1:
            raise InconsistencyError(f"{d.name}: proportional generators on ray {ray}")
        if bnd and col:
            kind: RayKind = MixedRankOne(bnd[0], col[0])
        elif bnd:
            if not is_fixed(d, bnd[0]):
                raise InconsistencyError(
                    f"{d.name}: {d.boundary_names[bnd[0]]} spans a color-free extremal ray but is not fixed"
                )
            kind = FixedBoundary(bnd[0])
        elif col:
            kind = SchubertPullback(col[0])
        else:  # pragma: no cover - rays are always generator directions
            raise InconsistencyError(f"{d.name}: ray {ray} carries no generator")
        out.append(ExtremalRay(ray, kind))
    return out


def nef_generators(d: SphericalDatum) -> list[DivisorClass]:
    return [color_class(d, k) for k in range(d.n_colors)]


# ---------------------------------------------------------------------------
# automorphisms of group compactifications


@dataclass(frozen=True)
class AutReport:
    isolated_nodes: int
    residual_type: str
    identity_component: str
    component_generators: tuple[str, ...]
    diagram_automorphism_count: int

    def to_dict(self) -> dict:
        return {
            "isolated_nodes": self.isolated_nodes,
            "residual_type": self.residual_type,
            "identity_component": self.identity_component,
            "component_generators": list(self.component_generators),
            "diagram_automorphism_count": self.diagram_automorphism_count,
        }


def _is_group_datum(d: SphericalDatum) -> bool:
    rs = d.ambient
    r = rs.rank
    if d.rank != r or d.n_colors != r or d.module_dim_mode != "squared":
        return False
    for i in range(r):
        if d.spherical_roots[i] != rs.cartan[i]:
            return False
    for j, c in enumerate(d.colors):
        if c.omega != tuple(int(k == j) for k in range(r)):
            return False
        if c.pairing != tuple(rs.cartan[i][j] for i in range(r)):
            return False
    return True


def aut_report(d: SphericalDatum) -> AutReport:
    """Structure of the automorphism group of a group compactification.

    The ambient group splits as ``SL2^n x G'`` with ``G'`` free of ``SL2``
    factors; the identity component is ``PSL4^n x Ad(G') x Ad(G')``.
    """
    if not _is_group_datum(d):
        raise InvalidDatumError(f"{d.name!r} is not a group-compactification datum")
    factors = d.ambient.factors
    n = sum(1 for f in factors if f == ("A", 1))
    rest = [f for f in factors if f != ("A", 1)]
    residual = "x".join(f"{l}{k}" for l, k in rest)
    parts = []
    if n == 1:
        parts.append("PSL4")
    elif n > 1:
        parts.append(f"(PSL4)^{n}")
    if rest:
        parts += [f"Ad({residual})", f"Ad({residual})"]
    gens = []
    if n > 1:
        gens.append("swap of the two factors" if n == 2 else f"symmetric group S{n} permuting the {n} P3 factors")
    n_aut = 1
    if rest:
        gens.append("flip")
        n_aut = len(diagram_automorphisms(build_root_system(residual)))
        if n_aut > 1:
            gens.append(f"diagram automorphisms of {residual} ({n_aut} in total)")
    return AutReport(n, residual, " × ".join(parts), tuple(gens), n_aut)
