"""Class groups of spherical varieties from generators and relations.

Generators are ordered ``[X_1] .. [X_n]``, then the colors, then a basis of
the character group of the central torus.  Each basis vector ``lambda_k``
of the weight lattice gives the relation

    sum_i v_i(lambda_k) [X_i] + sum_D rho(v_D)(lambda_k) [D] - lambda_k|_C = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlin
from .datum import ClassDatum, SphericalDatum
from .errors import InconsistencyError


@dataclass(frozen=True)
class ClassGroupResult:
    presentation: intlin.AbelianPresentation
    relation_matrix: intlin.Matrix
    generator_labels: tuple[str, ...]

    @property
    def free_rank(self) -> int:
        return self.presentation.free_rank

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.presentation.invariant_factors


def relation_matrix(cd: ClassDatum, equivariant: bool = True) -> intlin.Matrix:
    c = cd.central_rank if equivariant else 0
    rows = []
    for k in range(cd.lattice_rank):
        row = [v[k] for v in cd.boundary_valuations] + [v[k] for v in cd.color_valuations]
        if c:
            row += [-x for x in cd.central_restriction[k]]
        rows.append(tuple(row))
    return tuple(rows)


def _labels(cd: ClassDatum, equivariant: bool) -> tuple[str, ...]:
    out = [f"X{i + 1}" for i in range(cd.n_boundary)] + [f"D{j + 1}" for j in range(cd.n_colors)]
    if equivariant:
        out += [f"chi{k + 1}" for k in range(cd.central_rank)]
    return tuple(out)


def _compute(cd: ClassDatum, equivariant: bool) -> ClassGroupResult:
    m = relation_matrix(cd, equivariant)
    ngens = cd.n_boundary + cd.n_colors + (cd.central_rank if equivariant else 0)
    pres = intlin.cokernel(m, ngens)
    if pres.free_rank != ngens - intlin.rank(m):
        raise InconsistencyError("free rank disagrees with the rank of the relation matrix")
    return ClassGroupResult(pres, m, _labels(cd, equivariant))


def class_group_equivariant(cd: ClassDatum) -> ClassGroupResult:
    return _compute(cd, True)


def class_group_plain(cd: ClassDatum) -> ClassGroupResult:
    return _compute(cd, False)


def export_class_datum(d: SphericalDatum) -> ClassDatum:
    """The class datum of a wonderful variety on the basis of spherical roots."""
    r = d.rank
    return ClassDatum(
        lattice_rank=r,
        boundary_valuations=tuple(tuple(-int(i == j) for j in range(r)) for i in range(r)),
        color_valuations=tuple(tuple(c.pairing) for c in d.colors),
        central_restriction=tuple(() for _ in range(r)),
    )


def toric_p1xp1() -> ClassDatum:
    """P1 x P1 as a toric variety under its own two-dimensional torus."""
    return ClassDatum(
        lattice_rank=2,
        boundary_valuations=((1, 0), (-1, 0), (0, 1), (0, -1)),
        color_valuations=(),
        central_restriction=((1, 0), (0, 1)),
    )


def so_standard_embedding(n: int = 4) -> ClassDatum:
    """Standard embedding of SO_{2n} under Spin_{2n} x Spin_{2n}.

    Weight lattice: the character lattice Z^n of a maximal torus of SO_{2n}
    (basis eps_1..eps_n).  Colors valuate as the simple coroots; boundary
    valuations are the negated primitive lattice generators of the rays
    through the fundamental coweights, which for the two spin nodes are
    twice the (half-integral) coweights.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    coweights = []
    for i in range(1, n - 1):
        coweights.append(tuple(int(k < i) for k in range(n)))
    coweights.append(tuple([1] * (n - 1) + [-1]))
    coweights.append(tuple([1] * n))
    coroots = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1)]
    coroots.append(tuple(int(k >= n - 2) for k in range(n)))
    return ClassDatum(
        lattice_rank=n,
        boundary_valuations=tuple(tuple(-x for x in w) for w in coweights),
        color_valuations=tuple(coroots),
        central_restriction=tuple(() for _ in range(n)),
    )
