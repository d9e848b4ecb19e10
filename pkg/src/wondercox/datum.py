"""Spherical data of wonderful varieties, and class data of spherical ones.

A :class:`SphericalDatum` stores the spherical roots and the colors of a
wonderful variety in fundamental-weight coordinates of the ambient root
system.  Valuations follow the convention

    rho(v_D)(gamma_i) = <D, gamma_i>,      v_i(gamma_j) = -delta_ij,

under which ``[X_i] = sum_D <D, gamma_i> [D]`` and the pull-back along the
identity is the identity.  Indices are 0-based in code; display names
(``X1``, ``D1``) are 1-based.
"""

from __future__ import annotations

import json
import hashlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Sequence

from . import intlin
from .errors import DescriptorError, SchemaError
from .rootsys import RootSystem, Weight, build_root_system, is_dominant, simple_root_weight_coords

DIM_MODES = ("simple", "squared")


@dataclass(frozen=True)
class Color:
    name: str
    omega: Weight
    pairing: tuple[int, ...]  # (<D, gamma_1>, ..., <D, gamma_r>)


@dataclass(frozen=True)
class ClassDatum:
    """Valuation data of a spherical variety on a basis of its weight lattice.

    ``boundary_valuations[i][k]`` is ``v_i(lambda_k)``,
    ``color_valuations[D][k]`` is ``rho(v_D)(lambda_k)`` and
    ``central_restriction[k]`` is ``lambda_k`` restricted to the central
    torus (length ``c``).
    """

    lattice_rank: int
    boundary_valuations: tuple[tuple[int, ...], ...]
    color_valuations: tuple[tuple[int, ...], ...]
    central_restriction: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.lattice_rank
        for label, rows in (("boundary_valuations", self.boundary_valuations), ("color_valuations", self.color_valuations)):
            for k, row in enumerate(rows):
                if len(row) != d:
                    raise SchemaError(f"expected length {d}, got {len(row)}", f"{label}[{k}]")
        if len(self.central_restriction) != d:
            raise SchemaError(f"expected {d} rows, got {len(self.central_restriction)}", "central_restriction")
        widths = {len(r) for r in self.central_restriction}
        if len(widths) > 1:
            raise SchemaError("rows have different lengths", "central_restriction")

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_valuations)

    @property
    def n_colors(self) -> int:
        return len(self.color_valuations)

    @property
    def central_rank(self) -> int:
        return len(self.central_restriction[0]) if self.central_restriction else 0


@dataclass(frozen=True)
class SphericalDatum:
    name: str
    ambient: RootSystem
    spherical_roots: tuple[Weight, ...]
    colors: tuple[Color, ...]
    module_dim_mode: str = "simple"
    boundary_names: tuple[str, ...] = ()
    class_datum: ClassDatum | None = field(default=None, compare=True)

    def __post_init__(self):
        if not self.boundary_names:
            object.__setattr__(self, "boundary_names", tuple(f"X{i + 1}" for i in range(self.rank)))

    @property
    def rank(self) -> int:
        return len(self.spherical_roots)

    @property
    def n_colors(self) -> int:
        return len(self.colors)

    @property
    def color_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.colors)

    def pairing_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Rows indexed by colors, columns by spherical roots."""
        return tuple(c.pairing for c in self.colors)

    def permute_colors(self, perm: Sequence[int]) -> "SphericalDatum":
        return replace(self, colors=tuple(self.colors[p] for p in perm))


# ---------------------------------------------------------------------------
# builders


def group_compactification(typespec) -> SphericalDatum:
    """The wonderful compactification of the adjoint group of the given type.

    Stored in a single copy of the weight lattice: ``gamma_i = alpha_i``,
    one color per node with ``omega = e_j`` and ``<D_j, gamma_i> =
    <alpha_i, alpha_j^vee>``; module dimensions are squared since the
    section modules are ``End(V(lambda))``.
    """
    rs = build_root_system(typespec)
    r = rs.rank
    gammas = tuple(simple_root_weight_coords(rs, i) for i in range(r))
    colors = tuple(
        Color(f"D{j + 1}", tuple(int(k == j) for k in range(r)), tuple(rs.cartan[i][j] for i in range(r)))
        for j in range(r)
    )
    return SphericalDatum(
        name=f"group compactification {rs.name}",
        ambient=rs,
        spherical_roots=gammas,
        colors=colors,
        module_dim_mode="squared",
    )


def sl3_incidence() -> SphericalDatum:
    """Rank-2 wonderful SL3-variety of incidences p1, p2 in d1 and p2 in d2.

    Colors are the pull-backs of the B-stable lines under the four
    projections; the boundary divisors are ``p1 = p2`` (root alpha_1) and
    ``d1 = d2`` (root alpha_2).
    """
    rs = build_root_system("A2")
    colors = (
        Color("Dp1", (1, 0), (1, 0)),
        Color("Dp2", (1, 0), (1, -1)),
        Color("Dd1", (0, 1), (-1, 1)),
        Color("Dd2", (0, 1), (0, 1)),
    )
    return SphericalDatum(
        name="SL3 incidence variety",
        ambient=rs,
        spherical_roots=((2, -1), (-1, 2)),
        colors=colors,
        module_dim_mode="simple",
        boundary_names=("X1", "X2"),
    )


BUILTIN_GROUP_TYPES = (
    "A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2", "A1xB2",
    "A1xA1xA1", "A4", "B4", "C4", "D4", "F4", "A2xA2", "A1xA1xA2",
)


def builtin_data(max_rank: int | None = None) -> dict[str, SphericalDatum]:
    out = {}
    for t in BUILTIN_GROUP_TYPES:
        d = group_compactification(t)
        out[t] = d
    out["sl3_incidence"] = sl3_incidence()
    if max_rank is not None:
        out = {k: v for k, v in out.items() if v.rank <= max_rank}
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def validate(d: SphericalDatum) -> ValidationReport:
    """Run the structural checks on a spherical datum.

    Never raises on a failing check; failures are report entries.
    """
    checks: list[Check] = []
    r, n = d.rank, d.ambient.rank

    shape = [f"colors[{k}].pairing" for k, c in enumerate(d.colors) if len(c.pairing) != r]
    shape += [f"colors[{k}].omega" for k, c in enumerate(d.colors) if len(c.omega) != n]
    shape += [f"spherical_roots[{i}]" for i, g in enumerate(d.spherical_roots) if len(g) != n]
    if len(d.boundary_names) != r:
        shape.append("boundary_names")
    checks.append(Check("shapes", not shape, ", ".join(shape)))
    if shape:
        return ValidationReport(tuple(checks))

    bad = []
    for i, gamma in enumerate(d.spherical_roots):
        total = [sum(c.pairing[i] * c.omega[k] for c in d.colors) for k in range(n)]
        if tuple(total) != tuple(gamma):
            bad.append(f"{d.boundary_names[i]}: sum <D,gamma> omega_D = {tuple(total)} != {tuple(gamma)}")
    checks.append(Check("weights identity", not bad, "; ".join(bad)))

    indep = intlin.rank(d.spherical_roots) == r
    checks.append(Check("spherical roots independent", indep, "" if indep else "spherical roots are linearly dependent"))

    nondom = [c.name for c in d.colors if not is_dominant(d.ambient, c.omega)]
    checks.append(Check("color weights dominant", not nondom, ", ".join(nondom)))

    rows = [c.pairing for c in d.colors if any(c.pairing)]
    missing = []
    for i in range(r):
        e = tuple(int(k == i) for k in range(r))
        if not rows or not intlin.cone_contains(rows, e):
            missing.append(d.boundary_names[i])
    checks.append(Check(
        "valuation cone opposite inside color cone",
        not missing,
        "" if not missing else "e_i not in the cone of color pairings for " + ", ".join(missing),
    ))

    if d.module_dim_mode not in DIM_MODES:
        checks.append(Check("module_dim_mode", False, repr(d.module_dim_mode)))
    if d.class_datum is not None and d.class_datum.n_colors != d.n_colors:
        checks.append(Check("class_datum colors", False, "class_datum color count differs from the datum"))
    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# JSON I/O

_TOP_KEYS = {"name", "ambient", "rank", "spherical_roots", "colors", "module_dim_mode", "boundary_names", "class_datum"}
_REQUIRED = _TOP_KEYS - {"class_datum"}
_COLOR_KEYS = {"name", "omega", "pairing"}
_CLASS_KEYS = {"lattice_rank", "boundary_valuations", "color_valuations", "central_restriction"}


def _int(x, path):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"expected an integer, got {x!r}", path)
    return x


def _str(x, path):
    if not isinstance(x, str):
        raise SchemaError(f"expected a string, got {x!r}", path)
    return x


def _list(x, path):
    if not isinstance(x, list):
        raise SchemaError(f"expected a list, got {type(x).__name__}", path)
    return x


def _intvec(x, path):
    return tuple(_int(v, f"{path}[{k}]") for k, v in enumerate(_list(x, path)))


def _intmat(x, path):
    return tuple(_intvec(row, f"{path}[{k}]") for k, row in enumerate(_list(x, path)))


def _keys(obj, allowed, required, path):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SchemaError(f"unknown keys {unknown}", path)
    missing = sorted(required - set(obj))
    if missing:
        raise SchemaError(f"missing keys {missing}", path)


def datum_from_dict(obj: dict) -> SphericalDatum:
    _keys(obj, _TOP_KEYS, _REQUIRED, "")
    name = _str(obj["name"], "name")
    try:
        ambient = build_root_system(_str(obj["ambient"], "ambient"))
    except DescriptorError as exc:
        raise SchemaError(str(exc), "ambient") from exc
    rank = _int(obj["rank"], "rank")
    gammas = _intmat(obj["spherical_roots"], "spherical_roots")
    if len(gammas) != rank:
        raise SchemaError(f"expected {rank} spherical roots, got {len(gammas)}", "spherical_roots")
    colors = []
    for k, c in enumerate(_list(obj["colors"], "colors")):
        label = c.get("name") if isinstance(c, dict) and isinstance(c.get("name"), str) else str(k)
        path = f"colors[{k}]"
        if isinstance(c, dict) and "pairing" not in c:
            raise SchemaError(f"color {label!r} has no 'pairing'", path)
        _keys(c, _COLOR_KEYS, _COLOR_KEYS, path)
        colors.append(Color(_str(c["name"], f"{path}.name"), _intvec(c["omega"], f"{path}.omega"), _intvec(c["pairing"], f"{path}.pairing")))
    mode = _str(obj["module_dim_mode"], "module_dim_mode")
    if mode not in DIM_MODES:
        raise SchemaError(f"must be one of {DIM_MODES}", "module_dim_mode")
    names = tuple(_str(s, f"boundary_names[{k}]") for k, s in enumerate(_list(obj["boundary_names"], "boundary_names")))
    if len(names) != rank:
        raise SchemaError(f"expected {rank} names, got {len(names)}", "boundary_names")
    cd = None
    if obj.get("class_datum") is not None:
        cobj = obj["class_datum"]
        _keys(cobj, _CLASS_KEYS, _CLASS_KEYS, "class_datum")
        cd = ClassDatum(
            lattice_rank=_int(cobj["lattice_rank"], "class_datum.lattice_rank"),
            boundary_valuations=_intmat(cobj["boundary_valuations"], "class_datum.boundary_valuations"),
            color_valuations=_intmat(cobj["color_valuations"], "class_datum.color_valuations"),
            central_restriction=_intmat(cobj["central_restriction"], "class_datum.central_restriction"),
        )
    return SphericalDatum(name, ambient, gammas, tuple(colors), mode, names, cd)


def class_datum_to_dict(cd: ClassDatum) -> dict:
    return {
        "lattice_rank": cd.lattice_rank,
        "boundary_valuations": [list(r) for r in cd.boundary_valuations],
        "color_valuations": [list(r) for r in cd.color_valuations],
        "central_restriction": [list(r) for r in cd.central_restriction],
    }


def datum_to_dict(d: SphericalDatum) -> dict[str, Any]:
    out: dict[str, Any] = {
        "name": d.name,
        "ambient": d.ambient.name,
        "rank": d.rank,
        "spherical_roots": [list(g) for g in d.spherical_roots],
        "colors": [{"name": c.name, "omega": list(c.omega), "pairing": list(c.pairing)} for c in d.colors],
        "module_dim_mode": d.module_dim_mode,
        "boundary_names": list(d.boundary_names),
    }
    if d.class_datum is not None:
        out["class_datum"] = class_datum_to_dict(d.class_datum)
    return out


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(d: SphericalDatum) -> str:
    return hashlib.sha256(canonical_json(datum_to_dict(d)).encode()).hexdigest()


def load(path) -> SphericalDatum:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return datum_from_dict(obj)


def save(d: SphericalDatum, path) -> None:
    Path(path).write_text(json.dumps(datum_to_dict(d), indent=2, sort_keys=True) + "\n")
