"""Command-line front end.

Exit codes: 0 success, 1 the input is mathematically invalid (bad diagram,
bad cone, Reeb point not interior), 2 usage error (bad flags, unreadable or
malformed file, unsupported dimension). Rationals are printed as ``p/q``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import families
from .crepant import (
    UnsupportedDimensionError,
    crepant_filling_normals,
    filling_euler_characteristic,
    unimodular_triangulation,
)
from .formatting import parse_point, rational_str
from .reeb import NotInteriorError, cz_index_sequence, mean_euler_characteristic, mean_indices
from .render import render_svg
from .toric import (
    GoodCone,
    InvalidDiagramError,
    ToricDiagram,
    c1_is_zero,
    cone_from_json,
    cone_to_diagram,
    diagram_from_json,
    diffeo_type_dim5,
    fundamental_group,
    pi2_rank,
    validate_good_cone,
)
from .polytope import normalized_volume

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Invalid(Exception):
    def __init__(self, lines: List[str], payload: Optional[dict] = None):
        super().__init__("; ".join(lines))
        self.lines = lines
        self.payload = payload


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(payload: dict, compact: bool = False) -> str:
    if compact:
        return json.dumps(_jsonable(payload), ensure_ascii=False)
    return json.dumps(_jsonable(payload), indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# input


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _parse(fn, data, what):
    try:
        return fn(data)
    except InvalidDiagramError as exc:
        raise Invalid([f"{d.code}: {d.message}" for d in exc.diagnostics],
                      {"valid": False, "diagnostics": [{"code": d.code, "message": d.message} for d in exc.diagnostics]})
    except (KeyError, TypeError, ValueError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        raise UsageError(f"not a {what} file: {msg}") from None


def load_diagram(path: str) -> ToricDiagram:
    return _parse(diagram_from_json, _read_json(path), "diagram")


def load_cone(path: str) -> GoodCone:
    return _parse(cone_from_json, _read_json(path), "cone")


def _reeb(text: str, D: ToricDiagram):
    try:
        v = parse_point(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--reeb expects comma-separated rationals like 1/2,1/3, got {text!r}") from None
    if len(v) != D.dim:
        raise UsageError(f"--reeb has {len(v)} coordinates, the diagram is {D.dim}-dimensional")
    return v


def _diagram_json(D: ToricDiagram) -> dict:
    return {"dim": D.dim, "vertices": [list(v) for v in D.vertices]}


# ---------------------------------------------------------------------------
# commands; each returns (payload, human lines)


def diagram_summary(D: ToricDiagram) -> dict:
    pi1 = fundamental_group(D)
    out = {
        "valid": True,
        "n": D.dim,
        "d": D.n_vertices,
        "chi": mean_euler_characteristic(D),
        "pi1": str(pi1),
        "pi2_rank": pi2_rank(D),
        "diffeo_type": diffeo_type_dim5(D) if D.dim == 2 and pi1.is_trivial else None,
    }
    return out


def _summary_lines(s: dict) -> List[str]:
    lines = [
        "valid toric diagram",
        f"n: {s['n']}",
        f"d: {s['d']}",
        f"chi: {rational_str(s['chi'])}",
        f"pi1: {s['pi1']}",
        f"pi2 rank: {s['pi2_rank']}",
    ]
    if s["diffeo_type"]:
        lines.append(f"diffeomorphism type: {s['diffeo_type']}")
    return lines


def cmd_validate(args):
    data = _read_json(args.path)
    if isinstance(data, dict) and "normals" in data:
        return _cone_check(_parse(cone_from_json, data, "cone"))
    D = _parse(diagram_from_json, data, "diagram")
    s = diagram_summary(D)
    return s, _summary_lines(s)


def cmd_invariants(args):
    D = load_diagram(args.path)
    s = diagram_summary(D)
    lp = D.lattice_points
    pi1 = fundamental_group(D)
    payload = dict(s)
    payload.update({
        "vertices": [list(v) for v in D.vertices],
        "facets": [[list(D.vertices[i]) for i in f.vertex_indices] for f in D.facets],
        "normalized_volume": normalized_volume(D.polytope),
        "pi1_invariant_factors": list(pi1.invariant_factors),
        "lattice_points": {"boundary": lp.n_boundary, "interior": len(lp.interior), "total": len(lp.all)},
    })
    lines = _summary_lines(s) + [
        f"facets: {len(D.facets)}",
        f"normalized volume: {payload['normalized_volume']}",
        f"lattice points: {len(lp.all)} ({lp.n_boundary} boundary, {len(lp.interior)} interior)",
    ]
    if D.dim == 2:
        b = families.bounds_2d(D)
        pick = families.pick_identity(D)
        payload["pick"] = {"g": pick.interior, "b": pick.boundary, "area": pick.area, "holds": pick.holds}
        payload["bounds"] = {
            "d_equals_b": b.d_equals_b,
            "coleman": b.coleman,
            "coleman_tight": b.coleman_tight,
            "lower": b.lower,
            "lower_tight": b.lower_tight,
            "cor19": b.cor19,
        }
        lines += [
            f"pick: area {rational_str(pick.area)} = {pick.interior} + {pick.boundary}/2 - 1: {pick.holds}",
            f"coleman b <= 2g+10-d: {b.boundary} <= {2 * b.interior + 10 - b.d}: {b.coleman}",
            f"area >= 3(d-4)/2: {rational_str(b.area)} >= {rational_str(Fraction(3 * (b.d - 4), 2))}: {b.lower}",
            f"chi >= 3/2 (pi2 rank - 1): {b.cor19}",
        ]
    return payload, lines


def _check_iterates(n, order):
    if (n is not None and n < 0) or order < 1:
        raise UsageError("iterate count must be >= 0 and --order >= 1")


def _orbit_rows(D, v, facet):
    try:
        reports = mean_indices(D, v)
    except NotInteriorError as exc:
        raise Invalid([str(exc)], {"error": "not-interior", "message": str(exc)}) from None
    if facet is not None:
        if not 0 <= facet < len(reports):
            raise UsageError(f"--facet must be in 0..{len(reports) - 1}")
        return reports, [reports[facet]]
    return reports, reports


def cmd_mean_index(args):
    D = load_diagram(args.path)
    v = _reeb(args.reeb, D)
    _check_iterates(args.cz, args.order)
    reports, shown = _orbit_rows(D, v, args.facet)
    total = sum((r.inverse_mean_index for r in reports), Fraction(0))
    chi = mean_euler_characteristic(D)
    rows = []
    lines = [f"reeb point: ({', '.join(rational_str(x) for x in v)})"]
    for r in shown:
        row = {
            "facet": r.facet_index,
            "vertices": [list(p) for p in r.facet_vertices],
            "pyramid_normalized_volume": r.pyramid_normalized_volume,
            "mean_index": r.mean_index,
            "inverse_mean_index": r.inverse_mean_index,
            "eta": list(r.eta),
            "b": r.b,
        }
        line = (f"facet {r.facet_index} {[list(p) for p in r.facet_vertices]}: "
                f"Delta = {rational_str(r.mean_index)}, 1/Delta = {rational_str(r.inverse_mean_index)}")
        if args.cz is not None:
            seq = cz_index_sequence(D, v, r.facet_index, args.cz, args.order)
            row["cz"] = seq
            line += f", CZ = {seq}"
        rows.append(row)
        lines.append(line)
    payload = {
        "reeb": v,
        "facets": rows,
        "resonance_sum": total,
        "chi": chi,
        "resonance_holds": total == chi,
    }
    if args.cz is not None:
        payload["cz_order"] = args.order
    lines.append(f"sum 1/Delta = {rational_str(total)}, chi = {rational_str(chi)}, equal: {total == chi}")
    return payload, lines


def cmd_cz(args):
    D = load_diagram(args.path)
    v = _reeb(args.reeb, D)
    _check_iterates(args.n, args.order)
    reports, (r,) = _orbit_rows(D, v, args.facet)
    seq = cz_index_sequence(D, v, r.facet_index, args.n, args.order)
    payload = {
        "reeb": v,
        "facet": r.facet_index,
        "order": args.order,
        "mean_index": r.mean_index,
        "sequence": seq,
        "parity_ok": all((m - D.dim) % 2 == 0 for m in seq),
    }
    lines = [
        f"facet {r.facet_index}, order {args.order}, Delta = {rational_str(r.mean_index)}",
        "CZ: " + " ".join(str(m) for m in seq),
    ]
    return payload, lines


def cmd_filling(args):
    D = load_diagram(args.path)
    try:
        T = unimodular_triangulation(D)
    except UnsupportedDimensionError as exc:
        raise UsageError(str(exc)) from None
    chi = mean_euler_characteristic(D)
    if T is None:
        pts = D.lattice_points.all
        payload = {
            "exists": False,
            "chi": chi,
            "normalized_volume": normalized_volume(D.polytope),
            "lattice_points": [list(p) for p in pts],
        }
        lines = [
            "no crepant toric filling",
            f"lattice points: {[list(p) for p in pts]}",
            f"normalized volume {payload['normalized_volume']}: no unimodular triangulation on these points",
        ]
        return payload, lines
    fchi = filling_euler_characteristic(T, D)
    normals = crepant_filling_normals(D, T)
    payload = {
        "exists": True,
        "triangulation": T.to_json(),
        "filling_chi": fchi,
        "chi": chi,
        "filling_chi_equals_twice_chi": fchi == 2 * chi,
        "normals": [list(u) for u in normals],
        "regularity_checked": False,
    }
    lines = [
        f"crepant toric filling with {T.n_simplices} simplices",
        f"filling chi: {fchi} (2 chi = {rational_str(2 * chi)})",
        "normals: " + " ".join("(" + ",".join(map(str, u)) + ")" for u in normals),
        "note: regularity of the triangulation is not checked",
    ]
    return payload, lines


def _family_spec(args) -> families.FamilySpec:
    params = {}
    for key in ("p", "k", "n", "clips"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.normals is not None:
        try:
            params["normals"] = [list(map(int, r)) for r in json.loads(args.normals)]
        except (json.JSONDecodeError, TypeError, ValueError):
            raise UsageError("--normals expects a JSON list of integer lists") from None
    try:
        return families.FamilySpec(args.family, params)
    except families.FamilyError as exc:
        raise UsageError(str(exc)) from None


def cmd_family(args):
    spec = _family_spec(args)
    D = families.generate(spec)
    if args.chi:
        chi = families.family_chi_formula(spec)
        assert chi == mean_euler_characteristic(D)
        return {"family": spec.family, "params": spec.params, "chi": chi}, [rational_str(chi)]
    payload = _diagram_json(D)
    return payload, [dumps(payload, compact=True)]


def cmd_search(args):
    try:
        lo, hi = (int(x) for x in args.box.split(","))
    except ValueError:
        raise UsageError("--box expects LO,HI") from None
    try:
        res = families.min_volume_search(args.d, (lo, hi), collect_all=args.all)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "d": res.d,
        "box": [lo, hi],
        "area": res.area,
        "witness": [list(p) for p in res.witness] if res.witness else None,
        "minimal_within_box_only": True,
    }
    if args.all:
        payload["minima"] = [[list(p) for p in m] for m in res.minima]
    if res.area is None:
        return payload, [f"no toric {res.d}-gon with vertices in [{lo},{hi}]^2"]
    lines = [
        f"minimal area among toric {res.d}-gons in [{lo},{hi}]^2: {rational_str(res.area)}",
        f"witness: {[list(p) for p in res.witness]}",
    ]
    if args.all:
        lines.append(f"minimizers: {len(res.minima)}")
    return payload, lines


def _cone_check(C: GoodCone):
    rep = validate_good_cone(C)
    nu = c1_is_zero(C) if rep.good else None
    payload = {
        "good": rep.good,
        "rays": [list(r) for r in rep.rays],
        "diagnostics": [{"code": d.code, "message": d.message} for d in rep.diagnostics],
        "c1_zero": nu is not None,
        "c1_covector": list(nu) if nu is not None else None,
    }
    if not rep.good:
        raise Invalid([f"{d.code}: {d.message}" for d in rep.diagnostics], payload)
    lines = [
        "good cone",
        f"rays: {[list(r) for r in rep.rays]}",
        f"first Chern class zero: {nu is not None}" + (f" (covector {list(nu)})" if nu is not None else ""),
    ]
    return payload, lines


def cmd_cone_check(args):
    return _cone_check(load_cone(args.path))


def cmd_cone_to_diagram(args):
    C = load_cone(args.path)
    rep = validate_good_cone(C)
    if not rep.good:
        raise Invalid([f"{d.code}: {d.message}" for d in rep.diagnostics])
    if c1_is_zero(C) is None:
        msg = "first Chern class is nonzero: no toric diagram"
        raise Invalid([msg], {"error": "nonzero-c1", "message": msg})
    D, A = cone_to_diagram(C)
    payload = {"diagram": _diagram_json(D), "transform": [list(r) for r in A]}
    lines = [dumps(_diagram_json(D), compact=True), "transform: " + str([list(r) for r in A])]
    return payload, lines


def cmd_render(args):
    D = load_diagram(args.path)
    if D.dim != 2:
        raise UsageError(f"render needs a 2-dimensional diagram, got dimension {D.dim}")
    v = _reeb(args.reeb, D) if args.reeb is not None else None
    try:
        svg = render_svg(D, v)
    except NotInteriorError as exc:
        raise Invalid([str(exc)]) from None
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        return {"written": args.output}, [f"wrote {args.output}"]
    return None, svg


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no human-readable output")

    parser = argparse.ArgumentParser(
        prog="toricreeb",
        description="Exact invariants of Gorenstein toric contact manifolds from their toric diagrams.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("validate", cmd_validate, "check a diagram or cone file")
    p.add_argument("path", help="JSON file, or - for stdin")

    p = add("invariants", cmd_invariants, "volume, chi, homotopy data and planar bounds")
    p.add_argument("path")

    p = add("mean-index", cmd_mean_index, "mean indices of the facet orbits for a Reeb point")
    p.add_argument("path")
    p.add_argument("--reeb", required=True, help='interior point, e.g. "1/2,1/3"')
    p.add_argument("--facet", type=int)
    p.add_argument("--cz", type=int, metavar="N", help="also list CZ indices of the first N iterates")
    p.add_argument("--order", type=int, default=1, help="order of the orbit class in pi1 (default 1)")

    p = add("cz", cmd_cz, "Conley-Zehnder indices of iterates of one facet orbit")
    p.add_argument("path")
    p.add_argument("--reeb", required=True)
    p.add_argument("--facet", type=int, required=True)
    p.add_argument("--n", type=int, default=10, help="number of iterates (default 10)")
    p.add_argument("--order", type=int, default=1)

    p = add("filling", cmd_filling, "crepant toric filling from a unimodular triangulation")
    p.add_argument("path")

    p = add("family", cmd_family, "generate a diagram family member")
    p.add_argument("family", choices=families.FAMILIES)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--clips", type=int)
    p.add_argument("--normals", help="JSON list of primitive normals (monotone_prequant)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--emit", action="store_true", help="print the diagram JSON (default)")
    mode.add_argument("--chi", action="store_true", help="print the closed-form chi")

    p = add("search-min-volume", cmd_search, "minimal-area toric d-gon inside a box")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--box", default="-2,2", help="LO,HI (default -2,2)")
    p.add_argument("--all", action="store_true", help="list every minimizer")

    p = add("cone-check", cmd_cone_check, "check the good-cone conditions")
    p.add_argument("path")

    p = add("cone-to-diagram", cmd_cone_to_diagram, "toric diagram of a cone with zero first Chern class")
    p.add_argument("path")

    p = add("render", cmd_render, "SVG picture of a 2-D diagram")
    p.add_argument("path")
    p.add_argument("--reeb")
    p.add_argument("-o", "--output")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    quiet = getattr(args, "quiet", False)
    try:
        payload, lines = args.func(args)
    except UsageError as exc:
        if not quiet:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Invalid as exc:
        if as_json:
            print(dumps(exc.payload or {"valid": False, "diagnostics": exc.lines}))
        if not quiet:
            for line in exc.lines:
                print(f"invalid: {line}", file=sys.stderr)
        return EXIT_INVALID
    if isinstance(lines, str):
        sys.stdout.write(lines)
    elif as_json:
        print(dumps(payload))
    elif not quiet:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
