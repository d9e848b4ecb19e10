"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 datum validation failure,
3 engine-level inconsistency.  ``--json`` switches to canonical machine
output (sorted keys, no whitespace variation).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from . import clgroup, coxcomb, datum, divclass
from .errors import InconsistencyError, SchemaError, WondercoxError

EXIT_OK, EXIT_USAGE, EXIT_DATUM, EXIT_ENGINE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    input_digest: str
    payload: dict[str, Any]
    warnings: list[str] = field(default_factory=list)
    text: list[str] = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        obj = {
            "command": self.command,
            "input_digest": self.input_digest,
            "payload": self.payload,
            "warnings": self.warnings,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _args_digest(*args) -> str:
    return hashlib.sha256(datum.canonical_json(list(args)).encode()).hexdigest()


class _DatumInvalid(Exception):
    def __init__(self, report):
        self.report = report


def _load_valid(path: str) -> datum.SphericalDatum:
    try:
        d = datum.load(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    rep = datum.validate(d)
    if not rep.ok:
        raise _DatumInvalid(rep)
    return d


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _ray_dict(d, ray: divclass.ExtremalRay) -> dict:
    kind = ray.kind
    out = {"direction": list(ray.direction), "kind": type(kind).__name__}
    if hasattr(kind, "boundary"):
        out["boundary"] = d.boundary_names[kind.boundary]
    if hasattr(kind, "color"):
        out["color"] = d.colors[kind.color].name
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_validate(path: str) -> Report:
    try:
        d = datum.load(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    rep = datum.validate(d)
    text = [f"{d.name}: {'valid' if rep.ok else 'INVALID'}"]
    text += [f"  [{'ok' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else "") for c in rep.checks]
    report = Report("validate", datum.digest(d), rep.to_dict(), text=text)
    if not rep.ok:
        raise _DatumInvalid(report)
    return report


def cmd_group(typespec: str, out_path: str | None) -> Report:
    try:
        d = datum.group_compactification(typespec)
    except WondercoxError as exc:
        raise UsageError(str(exc)) from exc
    if out_path:
        datum.save(d, out_path)
    payload = datum.datum_to_dict(d)
    text = [f"{d.name}: rank {d.rank}, {d.n_colors} colors"]
    if out_path:
        text.append(f"written to {out_path}")
    return Report("group", datum.digest(d), payload, text=text)


def cmd_report(path: str) -> Report:
    d = _load_valid(path)
    boundary = [
        {"name": d.boundary_names[i], "class": list(divclass.boundary_class(d, i)), "fixed": divclass.is_fixed(d, i)}
        for i in range(d.rank)
    ]
    rays = divclass.eff_extremal_rays(d)
    payload = {
        "colors": list(d.color_names),
        "boundary": boundary,
        "nef_generators": [list(g) for g in divclass.nef_generators(d)],
        "eff_extremal_rays": [_ray_dict(d, r) for r in rays],
    }
    text = [f"{d.name}", f"colors: {', '.join(d.color_names)}", "boundary classes:"]
    for b in boundary:
        text.append(f"  {b['name']:<6} {_fmt_vec(b['class']):<20} {'fixed' if b['fixed'] else 'base-point-free'}")
    text.append("nef cone generators: " + ", ".join(_fmt_vec(g) for g in payload["nef_generators"]))
    text.append("extremal rays of the effective cone:")
    for r in rays:
        text.append(f"  {_fmt_vec(r.direction):<20} {r.kind.describe(d)}")
    return Report("report", datum.digest(d), payload, text=text)


def _class_arg(d, vec):
    if len(vec) != d.n_colors:
        raise UsageError(f"expected {d.n_colors} integers (colors {', '.join(d.color_names)}), got {len(vec)}")
    return tuple(vec)


def cmd_sections(path: str, vec) -> Report:
    d = _load_valid(path)
    c = _class_arg(d, vec)
    dec = divclass.decompose_sections(d, c)
    payload = {
        "class": list(c),
        "colors": list(d.color_names),
        "summands": [{"highest_weight": list(lam), "multiplicity": m} for lam, m in dec.summands],
        "total_dim": dec.total_dim,
        "module_dim_mode": d.module_dim_mode,
    }
    text = [f"sections of {_fmt_vec(c)} on {d.name}:"]
    if dec.is_empty:
        text.append("  (empty: no non-zero sections)")
    for lam, m in dec.summands:
        text.append(f"  V{_fmt_vec(lam)} x {m}")
    text.append(f"total dimension: {dec.total_dim}")
    return Report("sections", datum.digest(d), payload, text=text)


def cmd_effective(path: str, vec) -> Report:
    d = _load_valid(path)
    c = _class_arg(d, vec)
    eff = divclass.is_effective(d, c)
    payload = {"class": list(c), "effective": eff, "nef": divclass.is_nef(c), "ample": divclass.is_ample(c)}
    text = [f"{_fmt_vec(c)}: {'effective' if eff else 'not effective'}"]
    return Report("effective", datum.digest(d), payload, text=text)


def cmd_orbits(path: str) -> Report:
    d = _load_valid(path)
    poset = coxcomb.orbit_poset(d)

    def lab(l):
        return {"colors": sorted(d.colors[k].name for k in l.colors), "boundary": sorted(d.boundary_names[i] for i in l.boundary)}

    payload = {
        "labels": [lab(l) for l in poset.labels],
        "closure_order": [list(p) for p in poset.closure_order if p[0] != p[1]],
        "q_image": [sorted(d.boundary_names[i] for i in q) for q in poset.q_image],
        "count": len(poset.labels),
    }
    text = [f"{len(poset.labels)} orbits in the spectrum of the total coordinate ring of {d.name}:"]
    for k, l in enumerate(poset.labels):
        e = lab(l)
        text.append(f"  {k:>3}: colors {{{', '.join(e['colors'])}}}  boundary {{{', '.join(e['boundary'])}}}")
    return Report("orbits", datum.digest(d), payload, text=text)


def _group_dict(res: clgroup.ClassGroupResult) -> dict:
    p = res.presentation
    return {
        "free_rank": p.free_rank,
        "invariant_factors": list(p.invariant_factors),
        "generators": list(res.generator_labels),
        "generator_images": [list(r) for r in p.generator_images],
        "relation_matrix": [list(r) for r in res.relation_matrix],
    }


def _group_text(label, res) -> str:
    p = res.presentation
    parts = [f"Z^{p.free_rank}"] + [f"Z/{f}" for f in p.invariant_factors]
    return f"{label}: " + " + ".join(parts)


def cmd_classgroup(path: str) -> Report:
    d = _load_valid(path)
    warnings = []
    if d.class_datum is not None:
        cd = d.class_datum
    else:
        cd = clgroup.export_class_datum(d)
        warnings.append("no class_datum block; using the wonderful export of the datum")
    eq = clgroup.class_group_equivariant(cd)
    plain = clgroup.class_group_plain(cd)
    payload = {"equivariant": _group_dict(eq), "plain": _group_dict(plain)}
    text = [_group_text("Cl^G", eq), _group_text("Cl", plain)]
    return Report("classgroup", datum.digest(d), payload, warnings, text=text)


def cmd_tensorA(n: int, i: int, j: int) -> Report:
    try:
        weights = coxcomb.tensor_fundamental_typeA(n, i, j)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    from .rootsys import build_root_system, weyl_dim

    rs = build_root_system(f"A{n - 1}")
    dims = [weyl_dim(rs, w) for w in weights]
    payload = {"n": n, "i": i, "j": j, "summands": [{"highest_weight": list(w), "dim": k} for w, k in zip(weights, dims)]}
    text = [f"V(omega_{i}) x V(omega_{j}) for SL_{n}:"] + [f"  V{_fmt_vec(w)}  dim {k}" for w, k in zip(weights, dims)]
    return Report("tensorA", _args_digest("tensorA", n, i, j), payload, text=text)


def cmd_relationsA(n: int, i: int, j: int) -> Report:
    try:
        data = coxcomb.relation_data_typeA(n, i, j)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"n": n, "i": i, "j": j, "relations": [{"highest_weight": list(w), "exponents": list(e)} for w, e in data]}
    text = [f"relations for End(V(omega_{i})) End(V(omega_{j})) in SL_{n}:"]
    text += [f"  V{_fmt_vec(w)}  s^{_fmt_vec(e)}" for w, e in data]
    return Report("relationsA", _args_digest("relationsA", n, i, j), payload, text=text)


def cmd_autreport(path: str) -> Report:
    d = _load_valid(path)
    try:
        rep = divclass.aut_report(d)
    except WondercoxError as exc:
        raise UsageError(str(exc)) from exc
    text = [
        f"identity component: {rep.identity_component}",
        "component group generators: " + (", ".join(rep.component_generators) or "none"),
    ]
    return Report("autreport", datum.digest(d), rep.to_dict(), text=text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="canonical JSON output")
    p = _Parser(prog="wondercox", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a datum file")
    s.add_argument("path")
    s = sub.add_parser("group", parents=[common], help="build a group-compactification datum")
    s.add_argument("--type", required=True, dest="typespec")
    s.add_argument("--out")
    for name, helptext in (("report", "divisor and cone report"), ("orbits", "orbit poset"),
                           ("classgroup", "class groups"), ("autreport", "automorphism group report")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("path")
    for name in ("sections", "effective"):
        s = sub.add_parser(name, parents=[common], help=f"{name} of a divisor class")
        s.add_argument("path")
        s.add_argument("vec", nargs="+", type=int, metavar="c")
    for name in ("tensorA", "relationsA"):
        s = sub.add_parser(name, parents=[common], help="type-A tensor products of fundamental modules")
        for a in ("n", "i", "j"):
            s.add_argument(a, type=int)
    return p


def run(argv=None) -> tuple[int, str]:
    """Run the CLI and return ``(exit_code, stdout_text)``."""
    try:
        args = build_parser().parse_args(argv)
        as_json = getattr(args, "json", False)
        c = args.command
        if c == "validate":
            rep = cmd_validate(args.path)
        elif c == "group":
            rep = cmd_group(args.typespec, args.out)
        elif c in ("report", "orbits", "classgroup", "autreport"):
            rep = {"report": cmd_report, "orbits": cmd_orbits, "classgroup": cmd_classgroup, "autreport": cmd_autreport}[c](args.path)
        elif c == "sections":
            rep = cmd_sections(args.path, args.vec)
        elif c == "effective":
            rep = cmd_effective(args.path, args.vec)
        else:
            rep = (cmd_tensorA if c == "tensorA" else cmd_relationsA)(args.n, args.i, args.j)
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except SchemaError as exc:
        return EXIT_DATUM, f"error: invalid datum file: {exc}\n"
    except _DatumInvalid as exc:
        r = exc.report
        if isinstance(r, Report):
            return EXIT_DATUM, (r.to_json() if as_json else "\n".join(r.text)) + "\n"
        lines = ["error: datum failed validation"] + [f"  {c.name}: {c.detail}" for c in r.failures()]
        return EXIT_DATUM, "\n".join(lines) + "\n"
    except InconsistencyError as exc:
        return EXIT_ENGINE, f"error: inconsistency: {exc}\n"
    except WondercoxError as exc:
        return EXIT_ENGINE, f"error: {exc}\n"
    out = rep.to_json() if as_json else "\n".join(rep.text + [f"warning: {w}" for w in rep.warnings])
    return EXIT_OK, out + "\n"


def main(argv=None) -> int:
    code, text = run(argv)
    (sys.stdout if code == EXIT_OK or code == EXIT_DATUM else sys.stderr).write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
