"""``normalfield`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain or parse error,
3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from ..disturbance import curvature_relation, load_model
from ..ellipsoid import default_config_text, load_config, parse_config
from ..errors import NormalFieldError
from ..harmonic import CartesianPoint, HarmonicCoord, to_cartesian
from .geodetic import geodetic_to_cartesian
from .records import QUANTITIES, fmt, grid_columns, grid_row, point_record
from .verify import all_passed, format_report, random_points, run_verification

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str, n: int | None, what: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(values) != n:
        raise UsageError(f"{what}: expected {n} values, got {len(values)}")
    if not all(math.isfinite(v) for v in values):
        raise UsageError(f"{what}: values must be finite")
    return values


def _range(text: str, what: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"{what}: expected A:B:STEP, got {text!r}")
    start, stop, step = _floats(",".join(parts), 3, what)
    if not step > 0:
        raise UsageError(f"{what}: step must be positive")
    if stop < start:
        raise UsageError(f"{what}: empty range {text!r}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(n)]


def _params(args):
    if args.ellipsoid is None:
        return parse_config(default_config_text(), source="grs80.cfg")
    return load_config(args.ellipsoid)


def _point_from_args(params, args) -> CartesianPoint:
    given = [x for x in (args.xyz, args.geodetic, args.harmonic) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --xyz, --geodetic, --harmonic")
    if args.xyz is not None:
        return CartesianPoint(*_floats(args.xyz, 3, "--xyz"))
    if args.geodetic is not None:
        lat, lon, h = _floats(args.geodetic, 3, "--geodetic")
        if abs(lat) > 90:
            raise UsageError("--geodetic: latitude must lie in [-90, 90]")
        return geodetic_to_cartesian(params, math.radians(lat), math.radians(lon), h)
    u, beta, lam = _floats(args.harmonic, 3, "--harmonic")
    return to_cartesian(params, HarmonicCoord(u, beta, lam))


def _write_table(columns, rows, fmt_name: str, out) -> None:
    if fmt_name == "json":
        payload = [{c: float(fmt(v)) for c, v in zip(columns, row)} for row in rows]
        out.write(json.dumps(payload, indent=1) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def cmd_point(args, out) -> int:
    params = _params(args)
    p = _point_from_args(params, args)
    rec = point_record(params, p, args.units)
    _write_table(list(rec), [list(rec.values())], args.format, out)
    return EXIT_OK


def _grid_worker(params, quantities, units, key):
    lat, lon, h = key
    try:
        return grid_row(params, lat, lon, h, quantities, units)
    except NormalFieldError as exc:
        raise NormalFieldError(f"grid point lat={lat!r} lon={lon!r} h={h!r}: {exc}") from None


def cmd_grid(args, out) -> int:
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    if not quantities:
        raise UsageError("--quantities: at least one quantity is required")
    unknown = [q for q in quantities if q not in QUANTITIES]
    if unknown:
        raise UsageError(f"--quantities: unknown {', '.join(unknown)}; choose from {', '.join(QUANTITIES)}")
    lats = _range(args.lat, "--lat")
    lons = _range(args.lon, "--lon")
    heights = _floats(args.heights, None, "--heights")
    if not heights:
        raise UsageError("--heights: at least one height is required")
    if any(abs(x) > 90 for x in lats):
        raise UsageError("--lat: latitudes must lie in [-90, 90]")
    params = _params(args)
    keys = [(lat, lon, h) for lat in lats for lon in lons for h in heights]
    work = partial(_grid_worker, params, tuple(quantities), args.units)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            # map() yields in submission order, keeping output deterministic
            rows = list(pool.map(work, keys, chunksize=max(1, len(keys) // (4 * args.jobs))))
    else:
        rows = [work(k) for k in keys]
    columns = grid_columns(quantities)
    if args.out:
        buf = io.StringIO()
        _write_table(columns, rows, args.format, buf)
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
    else:
        _write_table(columns, rows, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    params = _params(args)
    if args.xyz is not None:
        points = [CartesianPoint(*_floats(args.xyz, 3, "--xyz"))]
    else:
        points = random_points(params, args.seed, args.count)
    results = run_verification(params, points)
    out.write(format_report(results, len(points)))
    return EXIT_OK if all_passed(results) else EXIT_VERIFY


def loglog_slope(scales, residuals) -> float:
    """Least-squares slope of log|residual| against log(scale); NaN if any residual is zero."""
    r = np.abs(np.asarray(residuals, dtype=float))
    if len(scales) < 2 or not np.all(r > 0):
        return float("nan")
    return float(np.polyfit(np.log(np.asarray(scales, dtype=float)), np.log(r), 1)[0])


def cmd_curvrel(args, out) -> int:
    params = _params(args)
    lat, lon, h = _floats(args.geodetic, 3, "--geodetic")
    scales = _floats(args.scales, None, "--scales")
    if not scales or not all(s > 0 for s in scales):
        raise UsageError("--scales: need one or more positive multipliers")
    model = load_model(params, args.model)
    p = geodetic_to_cartesian(params, math.radians(lat), math.radians(lon), h)
    rows = []
    residuals = []
    for s in scales:
        rep = curvature_relation(params, model.scaled(s), p)
        rows.append([s, rep.lhs, rep.rhs, rep.residual, rep.deflection])
        residuals.append(rep.residual)
    slope = loglog_slope(scales, residuals)
    columns = ["scale", "lhs", "rhs", "residual", "deflection"]
    if args.format == "json":
        payload = {
            "rows": [{c: float(fmt(v)) for c, v in zip(columns, row)} for row in rows],
            "loglog_slope": None if math.isnan(slope) else float(fmt(slope)),
        }
        out.write(json.dumps(payload, indent=1) + "\n")
    else:
        _write_table(columns, rows, "csv", out)
        out.write(f"# loglog_slope {fmt(slope) if not math.isnan(slope) else 'nan'}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="normalfield", description="Normal gravity field gradients and curvatures.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--ellipsoid", help="ellipsoid config file (default: bundled GRS80)")

    pp = sub.add_parser("point", help="evaluate every quantity at one point")
    common(pp)
    pp.add_argument("--xyz", help="X,Y,Z in meters")
    pp.add_argument("--geodetic", help="LAT,LON,H in degrees and meters")
    pp.add_argument("--harmonic", help="U,BETA,LAMBDA in meters and radians")
    pp.add_argument("--units", choices=("si", "eotvos"), default="si")
    pp.add_argument("--format", choices=("csv", "json"), default="csv")
    pp.set_defaults(func=cmd_point)

    pg = sub.add_parser("grid", help="evaluate selected quantities on a lat/lon/height grid")
    common(pg)
    pg.add_argument("--lat", required=True, help="A:B:STEP in degrees, inclusive")
    pg.add_argument("--lon", required=True, help="A:B:STEP in degrees, inclusive")
    pg.add_argument("--heights", required=True, help="H1,H2,... in meters")
    pg.add_argument("--quantities", required=True, help=",".join(QUANTITIES))
    pg.add_argument("--units", choices=("si", "eotvos"), default="si")
    pg.add_argument("--format", choices=("csv", "json"), default="csv")
    pg.add_argument("--jobs", type=int, default=1, help="worker processes")
    pg.add_argument("--out", help="output file (default: stdout)")
    pg.set_defaults(func=cmd_grid)

    pv = sub.add_parser("verify", help="run the invariant suite at pseudo-random points")
    common(pv)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--count", type=int, default=50)
    pv.add_argument("--xyz", help="verify at this single point instead of random ones")
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("curvrel", help="normal-vs-actual Gauss curvature relation under mass scaling")
    common(pc)
    pc.add_argument("--model", required=True, help="point-mass file: 'mu x y z' per line")
    pc.add_argument("--geodetic", required=True, help="LAT,LON,H in degrees and meters")
    pc.add_argument("--scales", default="1,2,4")
    pc.add_argument("--format", choices=("csv", "json"), default="csv")
    pc.set_defaults(func=cmd_curvrel)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"normalfield: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NormalFieldError, OSError) as exc:
        print(f"normalfield: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
