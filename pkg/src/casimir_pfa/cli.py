"""Command-line front end: ``casimir-pfa {planar,force,corr,table1,validate}``.

Exit codes: 0 success, 1 validation or numerical failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from functools import partial
from pathlib import Path

from . import __version__
from . import oracle as O
from . import planar as P
from . import shapes as S
from . import validation as V
from .config import RunConfig, build_geometries, load_config
from .curves import ForceCurve
from .errors import ConfigurationError, DomainError, NumericalError, UnsupportedVariantError, ValidationError
from .providers import PowerLaw, SampledEnergy, StackEnergy, power_law_exponent, provider_for_stack

__all__ = ["main", "cmd_planar", "cmd_force", "cmd_corr", "cmd_summary", "cmd_validate", "LABELS"]

#: (scaled-gap definition, scaled force) per geometry
LABELS = {
    "sphere_substrate": ("x = z/R", "R*F"),
    "sphere_sphere": ("x = z/2R", "8R*F"),
    "oblate_substrate": ("x = z/B", "B*F/gamma^2"),
    "prolate_substrate": ("x = z/A", "A*gamma^2*F"),
    "oblate_oblate": ("x = z/2B", "8B*F/gamma^2"),
    "prolate_prolate": ("x = z/2A", "8A*gamma^2*F"),
    "cylinder_substrate": ("x = z/R", "R^2*F/L"),
    "cylinder_cylinder": ("x = z/2R", "8R^2*F/L"),
    "standing_cylinder": ("x = z/R", "R*F"),
    "cube_straight": ("x = z/L", "L*F"),
    "cube_tilted": ("x = z/L", "L*F"),
    "cone_pointed": ("x = z/L", "L*F/tan(alpha)^2"),
    "cone_spherical_tip": ("x = z/R", "R*F"),
    "wings_thick": ("x = z/L", "L*F"),
    "wings_thin": ("x = z/L", "L*F"),
}

_PLANAR_DEFAULTS = {"sweep": {"min": 1, "max": 100, "points": 25, "abscissa": "z"}}


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return [fn(v) for v in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _num(v) -> str:
    return repr(float(v))


def _base_metadata(cfg: RunConfig) -> dict:
    meta = {
        "version": __version__,
        "quad_tol": _num(cfg.quad_tol),
        "stack": " | ".join(cfg.stack_names),
    }
    used = dict.fromkeys(cfg.stack_names)
    for name in used:
        meta[f"material.{name}"] = repr(cfg.materials[name])
    if len(cfg.stack_names) == 5:
        meta["d2"] = _num(cfg.stack.d2)
        meta["d4"] = _num(cfg.stack.d4)
    return meta


def cmd_planar(cfg: RunConfig) -> ForceCurve:
    """``E_p(w)`` of the configured stack over the sweep grid."""
    grid = cfg.sweep.grid()
    vals = _map(partial(P.energy_per_area, cfg.stack, quad_tol=cfg.quad_tol), grid, cfg.sweep.jobs)
    extra = {}
    if cfg.output.local_exponent:
        ep = StackEnergy(cfg.stack, cfg.quad_tol)
        extra["local_exponent"] = _map(partial(_safe_exponent, ep), grid, cfg.sweep.jobs)
    curve = ForceCurve("w [nm]", "E_p [eV/nm^2]", grid, vals, [cfg.quad_tol] * len(grid), extra, _base_metadata(cfg))
    return curve.magnitude() if cfg.output.magnitude else curve


def _safe_exponent(ep, w):
    try:
        return P.local_exponent(ep, w)
    except NumericalError:
        return math.nan


def _provider(cfg: RunConfig, geoms, grid_z):
    """Energy provider for a force run and its relative accuracy."""
    kind = cfg.provider.get("kind", "stack")
    if kind == "power_law":
        try:
            C = float(cfg.provider.get("C", "1"))
            zeta = float(cfg.provider.get("zeta", "2"))
        except ValueError as exc:
            raise ConfigurationError(f"provider: {exc}") from None
        return PowerLaw(C, zeta), 0.0, f"power_law C={_num(C)} zeta={_num(zeta)}"
    if kind != "stack":
        raise ConfigurationError(f"provider.kind must be stack or power_law, got {kind!r}")
    if cfg.stack.is_three_region:
        return provider_for_stack(cfg.stack, cfg.quad_tol), cfg.quad_tol, "stack (w^-2 exact)"
    reach = max(_reach(g) for g in geoms)
    lo, hi = 0.5 * min(grid_z), 2.0 * (max(grid_z) + reach)
    points = int(cfg.provider.get("points", "96"))
    ep = SampledEnergy(StackEnergy(cfg.stack, cfg.quad_tol), lo, hi, points)
    return ep, max(cfg.quad_tol, ep.error_estimate), f"stack (sampled, {points} points on [{lo:.6g}, {hi:.6g}] nm)"


def _reach(g) -> float:
    """Largest gap increase across the object's surface."""
    lengths = [getattr(g, f.name) for f in fields(g) if f.name in ("R", "L", "A", "B")]
    return 2.0 * sum(lengths)


def _geom_metadata(g, universal: bool) -> dict:
    meta = {"geometry": g.kind}
    for f in fields(g):
        v = getattr(g, f.name)
        if f.name == "alpha":
            meta["alpha"] = _num(v)
            meta["alpha_deg"] = format(math.degrees(v), ".10g")
        elif f.name == "gamma":
            meta["gamma"] = _num(v)
        elif universal:
            meta[f"{f.name}/scale"] = _num(v / g.scale)
        else:
            meta[f"{f.name} [nm]"] = _num(v)
    return meta


def _force_point(g, ep, z):
    return S.full_force(g, z, ep)


def cmd_force(cfg: RunConfig, compare_oracle: bool = False) -> list[ForceCurve]:
    """One force curve per configured geometry (angle lists give batches)."""
    geoms = build_geometries(cfg.geometry)
    universal = cfg.output.universal
    use_x = cfg.sweep.abscissa == "x"
    grid = cfg.sweep.grid()
    all_z = [v * g.scale if use_x else v for g in geoms for v in grid]
    ep, rel_err, ep_desc = _provider(cfg, geoms, all_z)
    curves = []
    for g in geoms:
        zs = [v * g.scale if use_x else v for v in grid]
        forces = _map(partial(_force_point, g, ep), zs, cfg.sweep.jobs)
        extra = {}
        if compare_oracle:
            prof = O.profile_from_geometry(g)
            ref = [O.force(prof, z, ep, cfg.oracle_tol) for z in zs]
            extra["oracle_rel_dev"] = [abs(f - r) / abs(r) if r else 0.0 for f, r in zip(forces, ref)]
        meta = _base_metadata(cfg)
        # only a w^-2 energy makes the scaled curve independent of absolute size
        meta.update(_geom_metadata(g, universal and power_law_exponent(ep) == 2))
        meta["provider"] = ep_desc
        if compare_oracle:
            meta["oracle_tol"] = _num(cfg.oracle_tol)
        xlab, ylab = LABELS[g.kind]
        if universal:
            absc = [z / g.scale for z in zs]
            vals = [g.multiplier * f for f in forces]
            kinds = (xlab, f"{ylab} [eV]")
        else:
            absc, vals, kinds = zs, forces, ("z [nm]", "F [eV/nm]")
        curve = ForceCurve(kinds[0], kinds[1], absc, vals, [rel_err] * len(zs), extra, meta)
        curves.append(curve.magnitude() if cfg.output.magnitude else curve)
    return curves


def cmd_corr(cfg: RunConfig) -> list[ForceCurve]:
    """Correction factor and its lowest-order term against the scaled gap."""
    out = []
    for g in build_geometries(cfg.geometry):
        xs = cfg.sweep.grid()
        extra = {}
        try:
            extra["epsilon_leading"] = [S.epsilon_leading(g, x) for x in xs]
        except UnsupportedVariantError:
            pass
        meta = {"version": __version__, **_geom_metadata(g, True)}
        out.append(ForceCurve(LABELS[g.kind][0], "correction", xs, [S.correction(g, x) for x in xs], [0.0] * len(xs), extra, meta))
    return out


_PFA_TEXT = {
    "sphere_substrate": "2 pi R E_p(z)",
    "sphere_sphere": "pi R E_p(z)",
    "oblate_substrate": "2 pi B gamma^2 E_p(z)",
    "prolate_substrate": "2 pi A gamma^-2 E_p(z)",
    "oblate_oblate": "pi B gamma^2 E_p(z)",
    "prolate_prolate": "pi A gamma^-2 E_p(z)",
    "cylinder_substrate": "(3 pi/4) L sqrt(2R/z) E_p(z)",
    "cylinder_cylinder": "(3 pi/4) L sqrt(R/z) E_p(z)",
    "standing_cylinder": "2 pi R^2 E_p(z)/z",
    "cube_straight": "2 L^2 E_p(z)/z",
    "cube_tilted": "L E_p(z)/(sin(alpha) cos(alpha))",
    "cone_pointed": "2 pi tan(alpha)^2 z E_p(z)",
    "wings_thick": "2 L cot(alpha) E_p(z)",
}


def cmd_summary(x: float = 1e-3) -> list[dict]:
    """Closed-form summary for every geometry with a tabulated correction."""
    rows = []
    for g in V.reference_geometries():
        if g.kind not in _PFA_TEXT:
            continue
        c = S.correction(g, x)
        eps = S.epsilon_leading(g, x)
        rows.append(
            {
                "geometry": g.kind,
                "scaled_gap": LABELS[g.kind][0],
                "scaled_force": LABELS[g.kind][1],
                "pfa_force": _PFA_TEXT[g.kind],
                "alpha_deg": format(math.degrees(g.alpha), ".10g") if hasattr(g, "alpha") else "",
                "x": _num(x),
                "correction": _num(c),
                "epsilon_leading": _num(eps),
                "ratio": _num((c - 1.0) / eps) if eps else "",
            }
        )
    return rows


def cmd_validate(only=None, tables=(), config=None) -> list[V.Check]:
    checks = []
    if config is not None:
        try:
            load_config(config)
        except (ConfigurationError, ValidationError) as exc:
            checks.append(V.Check("config", str(config), False, str(exc)))
    return checks + V.run_checks(only, tables)


# -- output ------------------------------------------------------------------


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _curve_paths(path: str | None, curves):
    if path is None or len(curves) == 1:
        return [path] * len(curves)
    p = Path(path)
    return [str(p.with_name(f"{p.stem}_alpha{c.metadata['alpha_deg']}{p.suffix}")) for c in curves]


def _write_curves(curves, cfg: RunConfig):
    paths = _curve_paths(cfg.output.path, curves)
    for c, p in zip(curves, paths):
        _emit(c.to_json() if cfg.output.format == "json" else c.to_csv(), p)


def _write_rows(rows, fmt, path):
    if fmt == "json":
        _emit(json.dumps(rows, indent=2) + "\n", path)
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), path)


# -- argument parsing ----------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI run configuration")
    common.add_argument("--param", action="append", default=[], metavar="K=V", help="override, e.g. R=50 or sweep.points=40")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--magnitude", action="store_true", help="write |value| instead of signed values")

    ap = argparse.ArgumentParser(prog="casimir-pfa", description="Extended-PFA van der Waals forces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("planar", parents=[common], help="energy per area of a layer stack")
    p.add_argument("--local-exponent", action="store_true", help="add the local power-law exponent column")

    f = sub.add_parser("force", parents=[common], help="force curve for a geometry")
    f.add_argument("--geometry", help="geometry kind, e.g. sphere_substrate")
    f.add_argument("--compare-oracle", action="store_true", help="add the deviation from numerical PFA")

    c = sub.add_parser("corr", parents=[common], help="correction factor against the scaled gap")
    c.add_argument("--geometry")

    t = sub.add_parser("table1", parents=[common], help="closed forms and expansions for all geometries")
    t.add_argument("--x", type=float, default=1e-3, help="scaled gap for the expansion check")

    v = sub.add_parser("validate", parents=[common], help="run the self-checks")
    v.add_argument("--only", action="append", choices=sorted(V.GROUPS), help="restrict to a check group")
    v.add_argument("--table", action="append", default=[], help="material table to check")
    return ap


def _overrides(args) -> list[str]:
    ov = list(args.param)
    if getattr(args, "geometry", None):
        ov.append(f"geometry.kind={args.geometry}")
    if args.out:
        ov.append(f"output.path={args.out}")
    if args.format:
        ov.append(f"output.format={args.format}")
    if args.magnitude:
        ov.append("output.magnitude=true")
    if getattr(args, "local_exponent", False):
        ov.append("output.local_exponent=true")
    return ov


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "validate":
            checks = cmd_validate(args.only, args.table, args.config)
            for chk in checks:
                print(chk.line())
            bad = sum(c.fatal for c in checks)
            print(f"{len(checks) - bad}/{len(checks)} checks without unexpected failure")
            return 1 if bad else 0
        if args.command == "table1":
            fmt = args.format or "csv"
            _write_rows(cmd_summary(args.x), fmt, args.out)
            return 0
        defaults = _PLANAR_DEFAULTS if args.command == "planar" else None
        cfg = load_config(args.config, _overrides(args), defaults)
        if args.command == "planar":
            _write_curves([cmd_planar(cfg)], cfg)
        elif args.command == "force":
            _write_curves(cmd_force(cfg, args.compare_oracle), cfg)
        else:
            _write_curves(cmd_corr(cfg), cfg)
        return 0
    except (ConfigurationError, DomainError, UnsupportedVariantError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
