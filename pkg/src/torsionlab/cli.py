"""Command-line front end: ``torsionlab <command> ...``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 reference
mismatch (``example``).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import warnings

import numpy as np

from . import cone, golden, maps, order, orbits, scan, spectral, twist
from .config import DEFAULTS, Tolerances
from .errors import NumericalError, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_MISMATCH = 0, 2, 3, 4


# -- input helpers --------------------------------------------------------------

def _load_json(source: str, what: str):
    """Parse ``source`` as inline JSON when it starts with ``{``, else as a file path."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {what} {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid {what} JSON: {exc}") from exc


def _floats(text: str, what: str) -> list:
    try:
        return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError as exc:
        raise ValidationError(f"bad {what}: {text!r}") from exc


def _point(text: str) -> tuple:
    v = _floats(text, "point")
    if len(v) != 2:
        raise ValidationError(f"a point needs two numbers, got {text!r}")
    return tuple(v)


def _tolerances(pairs) -> Tolerances:
    if not pairs:
        return DEFAULTS
    names = {f.name: f.type for f in dataclasses.fields(Tolerances)}
    over = {}
    for item in pairs:
        key, _, val = item.partition("=")
        if key not in names or not val:
            raise ValidationError(f"bad --tol {item!r}; known: {', '.join(sorted(names))}")
        try:
            over[key] = int(val) if isinstance(getattr(DEFAULTS, key), int) else float(val)
        except ValueError as exc:
            raise ValidationError(f"bad --tol value {item!r}") from exc
    try:
        return dataclasses.replace(DEFAULTS, **over)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _clean(obj):
    """Make ``obj`` strict-JSON serializable (numpy scalars, NaN and inf become plain values)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def _emit_json(obj, out) -> None:
    json.dump(_clean(obj), out, indent=2)
    out.write("\n")


def _map(args) -> maps.MapDef:
    return maps.MapDef.from_dict(_load_json(args.map, "map"))


def _orbit(source: str) -> orbits.PeriodicOrbit:
    return orbits.PeriodicOrbit.from_dict(_load_json(source, "orbit"))


def _checked_orbit(m, source):
    """Load an orbit file and rebuild momenta and residual under ``m``."""
    o = _orbit(source)
    return orbits.orbit_from_config(m, o.p, o.config)


# -- commands -------------------------------------------------------------------

def cmd_cone(args, out, tol):
    m = _map(args)
    if args.surface:
        if args.n < 2:
            raise ValidationError("--n must be >= 2")
        xs = np.linspace(args.xmin, args.xmax, args.n)
        ys = np.linspace(args.ymin, args.ymax, args.n)
        scan.write_csv(out, ["x", "y", "delta"], cone.delta_surface(m, xs, ys).tolist())
        return EXIT_OK
    if args.grid is not None:
        if args.grid < 8:
            raise ValidationError("--grid must be >= 8")
        tol = dataclasses.replace(tol, cone_grid=args.grid)
    _emit_json(cone.classify_sf(m, tol=tol).to_dict(), out)
    return EXIT_OK


def cmd_orbit_find(args, out, tol):
    m = _map(args)
    if args.seed is not None:
        o = orbits.refine_from_point(m, args.p, args.q, _point(args.seed),
                                     allow_multiple=args.allow_multiple, tol=tol)
        _emit_json(o.to_dict(), out)
    elif args.line is not None:
        found = orbits.symmetric_seed_scan(m, args.p, args.q, args.line, (args.ymin, args.ymax),
                                           args.samples, tol=tol)
        _emit_json([o.to_dict() for o in found], out)
    else:
        _emit_json(orbits.minimizing_orbit(m, args.p, args.q, tol=tol).to_dict(), out)
    return EXIT_OK


def cmd_orbit_iterate(args, out, tol):
    m = _map(args)
    if args.n < 1:
        raise ValidationError("-n must be >= 1")
    traj = maps.iterate(m, _point(args.seed), args.n)
    scan.write_csv(out, ["n", "x", "y"], [[k, float(x), float(y)] for k, (x, y) in enumerate(traj)])
    return EXIT_OK


def cmd_spectral(args, out, tol):
    m = _map(args)
    o = _checked_orbit(m, args.orbit)
    if o.q < 2:
        raise ValidationError("spectral needs q >= 2")
    H = spectral.hessian_config(m, o)
    eh = spectral.eigenvalues_sym(H)
    ehm = spectral.eigenvalues_sym(spectral.companion_minus(H))
    zt = spectral.default_zero_tol(eh, tol.morse_zero_rel)
    I, has_zero = spectral.morse_index(eh, zt)
    Ip, _ = spectral.morse_index(ehm, zt)
    _emit_json({"alpha": H.alpha, "beta": H.beta, "eig_H": eh, "eig_Hminus": ehm,
                "morse_I": I, "morse_Iprime": Ip, "has_zero": has_zero}, out)
    return EXIT_OK


def cmd_twist(args, out, tol):
    m = _map(args)
    o = _checked_orbit(m, args.orbit)
    rep = twist.classify_twist(m, o, oracle_periods=args.oracle, tol=tol)
    _emit_json(rep.to_dict(), out)
    return EXIT_OK


def cmd_order(args, out, tol):
    m = _map(args)
    o = _checked_orbit(m, args.orbit)
    mn = _checked_orbit(m, args.minimizer) if args.minimizer else None
    _emit_json(order.order_report(o, mn, tol=tol).to_dict(), out)
    return EXIT_OK


def cmd_scan(args, out, tol):
    family = _map(args)
    if args.grid:
        grid = _floats(args.grid, "grid")
    else:
        if args.steps < 1:
            raise ValidationError("--steps must be >= 1")
        grid = np.linspace(args.eps_min, args.eps_max, args.steps + 1).tolist()
    if args.seed_orbit:
        seed = _orbit(args.seed_orbit).config
    elif args.seed_config:
        seed = _floats(args.seed_config, "seed config")
    else:
        m0 = family.with_epsilon(grid[0])
        seed = orbits.minimizing_orbit(m0, args.p, args.q, tol=tol).config
    res = scan.scan_epsilon(family, args.p, args.q, seed, grid, orbit_id=args.id,
                            allow_multiple=args.allow_multiple, tol=tol)
    if args.csv:
        rows = [[r.epsilon, r.orbit_id, r.status, r.trace, r.residue,
                 "" if r.twist is None else str(r.twist), r.dyn_type or "",
                 "" if r.birkhoff is None else r.birkhoff, r.delta_min, r.jump]
                for r in res.rows]
        scan.write_csv(out, ["epsilon", "orbit_id", "status", "trace", "residue", "twist",
                             "dyn_type", "birkhoff", "delta_min", "jump"], rows)
    else:
        _emit_json(res.to_dict(), out)
    return EXIT_OK


def cmd_example(args, out, tol):
    fixtures = golden.load_fixtures()
    rep = golden.run_example(args.n, fixtures, oracle_periods=args.oracle, tol=tol)
    if args.json:
        _emit_json(rep.to_dict(), out)
    else:
        out.write(rep.summary() + "\n")
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def cmd_portrait(args, out, tol):
    m = _map(args)
    if args.seeds_file:
        seeds = [_point(line) for line in open(args.seeds_file, encoding="utf-8")
                 if line.strip() and not line.lstrip().startswith("#")]
    else:
        seeds = [_point(s) for s in (args.seeds or "").split(";") if s.strip()]
    if args.iterations < 1:
        raise ValidationError("--iterations must be >= 1")
    scan.phase_portrait(m, seeds, args.iterations, out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torsionlab",
                                 description="Periodic orbits and twist numbers of standard-like maps.")
    ap.add_argument("--tol", action="append", metavar="NAME=VALUE",
                    help="override a numerical tolerance (repeatable)")
    ap.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_map(p):
        p.add_argument("--map", required=True, help="map JSON file or inline JSON object")
        return p

    p = with_map(sub.add_parser("cone", help="1-cone function and folding regions"))
    p.add_argument("--grid", type=int)
    p.add_argument("--surface", action="store_true", help="emit an (x, y, delta) CSV grid")
    p.add_argument("--xmin", type=float, default=-0.5)
    p.add_argument("--xmax", type=float, default=0.5)
    p.add_argument("--ymin", type=float, default=-0.5)
    p.add_argument("--ymax", type=float, default=0.5)
    p.add_argument("--n", type=int, default=101)
    p.set_defaults(func=cmd_cone)

    po = sub.add_parser("orbit", help="find or iterate orbits")
    osub = po.add_subparsers(dest="orbit_command", required=True)
    p = with_map(osub.add_parser("find", help="refine a (p,q) orbit"))
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--seed", help="phase point x0,y0 to iterate and refine")
    p.add_argument("--line", type=int, choices=range(4), help="symmetry line index to scan")
    p.add_argument("--ymin", type=float, default=0.0)
    p.add_argument("--ymax", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--allow-multiple", action="store_true")
    p.set_defaults(func=cmd_orbit_find)
    p = with_map(osub.add_parser("iterate", help="CSV of an iterated phase point"))
    p.add_argument("--seed", required=True, help="x0,y0")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_orbit_iterate)

    for name, func, helptext in (("spectral", cmd_spectral, "Hessian spectra and Morse indices"),
                                 ("twist", cmd_twist, "twist number classification"),
                                 ("order", cmd_order, "cyclic order and Aubry crossings")):
        p = with_map(sub.add_parser(name, help=helptext))
        p.add_argument("--orbit", required=True, help="orbit JSON file or inline JSON")
        if name == "twist":
            p.add_argument("--oracle", type=int, help="also run the winding oracle for N periods")
        if name == "order":
            p.add_argument("--minimizer", help="minimizer orbit JSON for crossing and gap counts")
        p.set_defaults(func=func)

    p = with_map(sub.add_parser("scan", help="continue an orbit in epsilon"))
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--seed-orbit", help="orbit JSON at the first grid value")
    p.add_argument("--seed-config", help="comma-separated configuration x0,...,x_{q-1}")
    p.add_argument("--eps-min", type=float, default=0.01)
    p.add_argument("--eps-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=99)
    p.add_argument("--grid", help="explicit comma-separated epsilon grid")
    p.add_argument("--id", default="branch")
    p.add_argument("--allow-multiple", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("example", help="reproduce a bundled reference example")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_example)

    p = with_map(sub.add_parser("portrait", help="phase portrait CSV"))
    p.add_argument("--seeds", help="semicolon-separated points x,y;x,y")
    p.add_argument("--seeds-file", help="file with one x,y point per line")
    p.add_argument("--iterations", type=int, required=True)
    p.set_defaults(func=cmd_portrait)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        tol = _tolerances(args.tol)
        if args.output:
            out = open(args.output, "w", encoding="utf-8", newline="")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return args.func(args, out, tol)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
