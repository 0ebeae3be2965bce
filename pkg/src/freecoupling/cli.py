"""Command-line runner for bound maps, mode scans and spectra.

A run is described by a YAML file::

    command: bound_sweep
    parameters:
      lambda: 1550nm
      material: {type: nondispersive, chi: 11}
      region: {type: half_space}
      beta: {start: 0.05, stop: 0.95, num: 91}
      d: {start: 10nm, stop: 300nm, num: 30, spacing: log}
      L: 1lam
    output: {path: bound.csv, format: csv}
    quadrature: {relative_tolerance: 1.0e-9}
    parallelism: {workers: 1}

Lengths carry a unit suffix: ``lam`` (free-space wavelengths), ``m`` or
``nm``; bare numbers are read as wavelengths. Everything is converted to
wavelengths before any computation.

Exit codes: 0 on success, 2 for an invalid configuration, 3 for a numerical
failure (the message names the offending grid point).
"""
from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import os
import re
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np
import yaml

from . import __version__
from .bounds import coupling_bound, max_interaction_length
from .errors import ConfigError, FreeCouplingError, GridPointError, NoModeError
from .materials import Drude, Lorentz, LossyPoint, NonDispersive
from .modes import (
    HollowCoreConfig,
    MetalHoleConfig,
    coupling_from_imported_mode,
    coupling_from_mode,
    read_mode_profile,
    solve_hollow_core,
    solve_metal_hole_all,
)
from .numerics import QuadratureSpec
from .physics import electron_from_beta, evanescent_scales
from .plotting import emit_plot, heatmap_svg, line_svg, scatter_svg
from .regions import Annulus, CylinderExterior, HalfSpace, TwoSidedSlot, geometric_factor
from .spectra import DispersionModel, SpectrumMode, n_eff_closed, n_eff_numeric, spectrum_density

WORKERS_ENV = "FREECOUPLING_WORKERS"
FORMATS = ("csv", "json", "svg")
_LENGTH_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(lam|nm|m)?\s*$")


# ----------------------------------------------------------- parsing


def parse_length(value, lambda_m: Optional[float]) -> float:
    """Length in wavelengths from ``"30nm"``, ``"1e-6m"``, ``"0.02lam"`` or a bare number."""
    if isinstance(value, bool):
        raise ConfigError(f"invalid length {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    m = _LENGTH_RE.match(str(value))
    if not m:
        raise ConfigError(f"invalid length {value!r}; use a number with suffix lam, m or nm")
    x, unit = float(m.group(1)), m.group(2) or "lam"
    if unit == "lam":
        return x
    if lambda_m is None:
        raise ConfigError(f"length {value!r} is metric but no 'lambda' is given")
    return x * (1e-9 if unit == "nm" else 1.0) / lambda_m


def parse_metres(value) -> float:
    """Physical length in metres; requires an ``m`` or ``nm`` suffix."""
    m = _LENGTH_RE.match(str(value))
    if not m or m.group(2) not in ("m", "nm"):
        raise ConfigError(f"{value!r} must be a metric length (suffix m or nm)")
    return float(m.group(1)) * (1e-9 if m.group(2) == "nm" else 1.0)


def _number(value, name):
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(x):
        raise ConfigError(f"{name} must be finite")
    return x


def parse_values(spec, name, convert: Callable = None) -> List[float]:
    """A scalar, a list, or ``{start, stop, num, spacing}`` as a list of floats."""
    convert = convert or (lambda v: _number(v, name))
    if isinstance(spec, dict):
        unknown = set(spec) - {"start", "stop", "num", "spacing"}
        if unknown or not {"start", "stop", "num"} <= set(spec):
            raise ConfigError(f"range {name} needs start, stop, num (and optional spacing)")
        a, b = convert(spec["start"]), convert(spec["stop"])
        n = spec["num"]
        if not isinstance(n, int) or n < 1:
            raise ConfigError(f"{name}.num must be a positive integer")
        spacing = spec.get("spacing", "linear")
        if spacing == "linear":
            return [float(v) for v in np.linspace(a, b, n)]
        if spacing == "log":
            if a <= 0 or b <= 0:
                raise ConfigError(f"log range {name} needs positive bounds")
            return [float(v) for v in np.geomspace(a, b, n)]
        raise ConfigError(f"{name}.spacing must be 'linear' or 'log'")
    if isinstance(spec, list):
        if not spec:
            raise ConfigError(f"{name} list is empty")
        return [convert(v) for v in spec]
    return [convert(spec)]


def parse_material(spec):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError("material needs a 'type'")
    kind = spec["type"]
    try:
        if kind == "nondispersive":
            return NonDispersive(_number(spec["chi"], "chi"))
        if kind == "lorentz":
            return Lorentz(_number(spec["eps_B"], "eps_B"), _number(spec["omega_p"], "omega_p"),
                           _number(spec["omega_0"], "omega_0"))
        if kind == "drude":
            return Drude(_number(spec["omega_p"], "omega_p"))
        if kind == "lossy":
            return LossyPoint(_number(spec["chi_re"], "chi_re"), _number(spec["chi_im"], "chi_im"))
    except KeyError as exc:
        raise ConfigError(f"material {kind} lacks {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"invalid material: {exc}") from None
    raise ConfigError(f"unknown material type {kind!r}")


def make_region(spec, d, lambda_m):
    """Region of the given type at distance ``d`` (wavelengths)."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError("region needs a 'type'")
    kind = spec["type"]
    try:
        if kind == "half_space":
            return HalfSpace(d)
        if kind == "two_sided_slot":
            return TwoSidedSlot(d, _number(spec.get("duty", 1.0), "duty"))
        if kind == "cylinder_exterior":
            return CylinderExterior(d)
        if kind == "annulus":
            if "d2" not in spec:
                raise ConfigError("annulus needs d2")
            return Annulus(d, parse_length(spec["d2"], lambda_m))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid region: {exc}") from None
    raise ConfigError(f"unknown region type {kind!r}")


def _betas(spec):
    betas = parse_values(spec, "beta")
    if any(not (0.0 < b < 1.0) for b in betas):
        raise ConfigError("beta values must lie in (0, 1)")
    return betas


def _require(params, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise ConfigError(f"missing parameters: {missing}")


# ------------------------------------------------------------ commands
# Each command turns its parameters into a list of grid points (plain dicts)
# plus a shared context, and a point function maps one point to output rows.


def _lambda_m(params):
    return parse_metres(params["lambda"]) if "lambda" in params else None


def _sigma(params, lam):
    return parse_length(params["sigma"], lam) if params.get("sigma") is not None else None


def _plan_geo_map(p):
    _require(p, "region", "beta", "d")
    lam = _lambda_m(p)
    ctx = {"region": p["region"], "lambda_m": lam, "sigma": _sigma(p, lam)}
    betas = _betas(p["beta"])
    ds = parse_values(p["d"], "d", lambda v: parse_length(v, lam))
    for d in ds:
        make_region(p["region"], d, lam)
    pts = [{"beta": b, "d_over_lambda": d} for d in ds for b in betas]
    return ["beta", "d_over_lambda", "g_geo_sq"], pts, ctx


def _run_geo_map(pt, ctx, spec):
    region = make_region(ctx["region"], pt["d_over_lambda"], ctx["lambda_m"])
    sc = evanescent_scales(electron_from_beta(pt["beta"]))
    g = geometric_factor(region, sc, ctx["sigma"], spec)
    return [[pt["beta"], pt["d_over_lambda"], g.value]]


def _bound_ctx(p):
    _require(p, "material", "region", "beta", "d")
    lam = _lambda_m(p)
    material = parse_material(p["material"])
    if isinstance(material, LossyPoint):
        raise ConfigError("bound commands need a lossless material")
    omega_m = p.get("omega_m")
    if isinstance(material, (Lorentz, Drude)):
        if omega_m is None:
            raise ConfigError("Lorentz and Drude materials need omega_m (same unit as omega_p)")
        omega_m = _number(omega_m, "omega_m")
    return lam, {"material": material, "region": p["region"], "lambda_m": lam, "sigma": _sigma(p, lam),
                 "omega_m": omega_m, "L": parse_length(p.get("L", "1lam"), lam)}


def _plan_bound_sweep(p):
    lam, ctx = _bound_ctx(p)
    betas = _betas(p["beta"])
    ds = parse_values(p["d"], "d", lambda v: parse_length(v, lam))
    for d in ds:
        make_region(p["region"], d, lam)
    pts = [{"beta": b, "d_over_lambda": d} for d in ds for b in betas]
    cols = ["beta", "d_over_lambda", "L_over_lambda", "material_factor", "g_geo_sq", "g_ub_sq", "g_ub"]
    return cols, pts, ctx


def _run_bound(pt, ctx, spec):
    region = make_region(ctx["region"], pt["d_over_lambda"], ctx["lambda_m"])
    sig = ctx["sigma"]
    electron = electron_from_beta(pt["beta"], sig, "lambda") if sig is not None else electron_from_beta(pt["beta"])
    b = coupling_bound(ctx["material"], region, electron, 1.0, ctx["L"], spec, omega_m=ctx["omega_m"])
    return [[pt["beta"], pt["d_over_lambda"], ctx["L"], b.material.value, b.geo.value, b.g_ub_sq, b.g_ub]]


def _hollow_d2_values(d, eps, num):
    chi = eps - 1.0
    lo = d + 0.1 / math.sqrt(eps)
    hi = d + 1.0 / math.sqrt(chi)
    if hi <= lo:
        return [lo]
    return [float(v) for v in np.geomspace(lo, hi, num)]


def _plan_hollow_core_scan(p):
    _require(p, "chi", "d")
    lam = _lambda_m(p)
    chis = parse_values(p["chi"], "chi")
    if any(c <= 0 for c in chis):
        raise ConfigError("chi must be positive")
    ds = parse_values(p["d"], "d", lambda v: parse_length(v, lam))
    d2_spec = p.get("d2", {"rule": "auto", "num": 61})
    pts = []
    for chi in chis:
        for d in ds:
            if isinstance(d2_spec, dict) and d2_spec.get("rule") == "auto":
                num = d2_spec.get("num", 61)
                if not isinstance(num, int) or num < 1:
                    raise ConfigError("d2.num must be a positive integer")
                d2s = _hollow_d2_values(d, 1.0 + chi, num)
            else:
                d2s = parse_values(d2_spec, "d2", lambda v: parse_length(v, lam))
            pts += [{"chi": chi, "d_over_lambda": d, "d2_over_lambda": d2} for d2 in d2s if d2 > d]
    cols = ["chi", "d_over_lambda", "d2_over_lambda", "kz_over_k", "beta_match", "n_roots", "g_sq_per_L", "ratio"]
    return cols, pts, {"n_scan": int(p.get("n_scan", 400))}


def _run_hollow_core(pt, ctx, spec):
    cfg = HollowCoreConfig(pt["d_over_lambda"], pt["d2_over_lambda"], 1.0 + pt["chi"], ctx["n_scan"])
    try:
        mode = solve_hollow_core(cfg)
    except NoModeError:
        return []
    c = coupling_from_mode(mode, spec)
    return [[pt["chi"], pt["d_over_lambda"], pt["d2_over_lambda"], mode.k_z, mode.beta_match, mode.n_roots,
             c.g_sq_per_length, c.ratio]]


def _plan_metal_hole_scan(p):
    _require(p, "d", "omega_p_over_omega")
    lam = _lambda_m(p)
    ds = parse_values(p["d"], "d", lambda v: parse_length(v, lam))
    wps = parse_values(p["omega_p_over_omega"], "omega_p_over_omega")
    pts = [{"d_over_lambda": d, "omega_p_over_omega": w} for d in ds for w in wps]
    cols = ["d_over_lambda", "omega_p_over_omega", "kz_over_k", "beta_match", "g_sq_per_L", "ratio"]
    return cols, pts, {"n_scan": int(p.get("n_scan", 400))}


def _run_metal_hole(pt, ctx, spec):
    try:
        modes = solve_metal_hole_all(MetalHoleConfig(pt["d_over_lambda"], pt["omega_p_over_omega"], ctx["n_scan"]))
    except NoModeError:
        return []
    rows = []
    for m in modes:
        c = coupling_from_mode(m, spec)
        rows.append([pt["d_over_lambda"], pt["omega_p_over_omega"], m.k_z, m.beta_match, c.g_sq_per_length, c.ratio])
    return rows


def _plan_imported_mode(p):
    _require(p, "profile", "beta")
    lam = _lambda_m(p)
    path = p["profile"]
    if not os.path.isfile(path):
        raise ConfigError(f"profile file {path!r} not found")
    ctx = {"profile": path, "lambda_m": lam, "region": p.get("region"),
           "material": parse_material(p["material"]) if "material" in p else None,
           "position": [parse_length(v, lam) for v in p["position"]] if "position" in p else None}
    if ctx["region"] is not None and "d" not in ctx["region"]:
        raise ConfigError("region for the ratio needs d")
    pts = [{"beta": b} for b in _betas(p["beta"])]
    return ["beta", "g_sq_per_L", "ratio"], pts, ctx


def _run_imported(pt, ctx, spec):
    profile = read_mode_profile(ctx["profile"])
    region = None
    if ctx["region"] is not None:
        region = make_region(ctx["region"], parse_length(ctx["region"]["d"], ctx["lambda_m"]), ctx["lambda_m"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        c = coupling_from_imported_mode(profile, electron_from_beta(pt["beta"]), ctx["position"], region,
                                        ctx["material"], spec)
    return [[pt["beta"], c.g_sq_per_length, c.ratio if c.ratio is not None else float("nan")]]


def _plan_spectrum(p):
    _require(p, "modes", "v", "omega")
    if not isinstance(p["modes"], list) or not p["modes"]:
        raise ConfigError("modes must be a non-empty list")
    try:
        modes = [SpectrumMode(*(_number(m[k], k) for k in ("omega_m", "gamma_d", "k_m", "L", "g_m_sq")))
                 for m in p["modes"]]
    except KeyError as exc:
        raise ConfigError(f"spectrum mode lacks {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"invalid spectrum mode: {exc}") from None
    pts = [{"omega": w} for w in parse_values(p["omega"], "omega")]
    return ["omega", "density"], pts, {"modes": modes, "v": _number(p["v"], "v")}


def _run_spectrum(pt, ctx, spec):
    return [[pt["omega"], spectrum_density(ctx["modes"], pt["omega"], ctx["v"])]]


def _plan_neff(p):
    _require(p, "model", "v", "L")
    m = p["model"]
    try:
        model = DispersionModel(*(_number(m.get(k, 0.0), k) for k in ("k0", "omega0", "v_g", "d2w_dk2", "d3w_dk3")))
    except AttributeError:
        raise ConfigError("model must be a mapping") from None
    pts = [{"L": L} for L in parse_values(p["L"], "L")]
    return ["L", "n_eff_numeric", "n_eff_closed", "regime"], pts, {"model": model, "v": _number(p["v"], "v")}


def _run_neff(pt, ctx, spec):
    numeric = n_eff_numeric(ctx["model"], ctx["v"], pt["L"])
    try:
        closed = n_eff_closed(ctx["model"], ctx["v"], pt["L"])
        value, regime = closed.value, closed.regime
    except ValueError:
        value, regime = float("nan"), "ambiguous"
    return [[pt["L"], numeric, value, regime]]


def _plan_lmax(p):
    _require(p, "beta", "sigma", "d", "lambda")
    lam = parse_metres(p["lambda"])
    ctx = {"lambda_m": lam, "sigma_m": parse_metres(p["sigma"]), "d_m": parse_metres(p["d"]),
           "material": parse_material(p["material"]) if "material" in p else None,
           "omega_m": _number(p["omega_m"], "omega_m") if "omega_m" in p else None}
    pts = [{"beta": b} for b in _betas(p["beta"])]
    return ["beta", "theta", "L_max_m", "L_max_over_lambda", "ultimate_g_ub_sq"], pts, ctx


def _run_lmax(pt, ctx, spec):
    e = electron_from_beta(pt["beta"], ctx["sigma_m"], "m")
    r = max_interaction_length(e, ctx["d_m"], ctx["lambda_m"], ctx["material"], None, spec, ctx["omega_m"])
    ult = r.ultimate_g_ub_sq if r.ultimate_g_ub_sq is not None else float("nan")
    return [[pt["beta"], r.theta, r.L_max, r.L_max_over_lambda, ult]]


COMMANDS: Dict[str, tuple] = {
    "geo_map": (_plan_geo_map, _run_geo_map),
    "bound": (_plan_bound_sweep, _run_bound),
    "bound_sweep": (_plan_bound_sweep, _run_bound),
    "hollow_core_scan": (_plan_hollow_core_scan, _run_hollow_core),
    "metal_hole_scan": (_plan_metal_hole_scan, _run_metal_hole),
    "imported_mode": (_plan_imported_mode, _run_imported),
    "spectrum": (_plan_spectrum, _run_spectrum),
    "neff": (_plan_neff, _run_neff),
    "lmax": (_plan_lmax, _run_lmax),
}

UNITS = {
    "d_over_lambda": "lambda", "d2_over_lambda": "lambda", "L_over_lambda": "lambda", "L_max_m": "m",
    "L_max_over_lambda": "lambda", "theta": "rad", "g_sq_per_L": "per wavelength of length",
}


# ----------------------------------------------------------- execution


def load_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a mapping")
    return cfg


def _quadrature(cfg, tolerance):
    q = dict(cfg.get("quadrature") or {})
    unknown = set(q) - {"relative_tolerance", "absolute_floor", "max_subdivisions"}
    if unknown:
        raise ConfigError(f"unknown quadrature keys {sorted(unknown)}")
    if tolerance is not None:
        q["relative_tolerance"] = tolerance
    try:
        return QuadratureSpec(**{k: (int(v) if k == "max_subdivisions" else float(v)) for k, v in q.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid quadrature settings: {exc}") from None


def _workers(cfg, override):
    if override is not None:
        w = override
    else:
        par = cfg.get("parallelism", {})
        w = par.get("workers") if isinstance(par, dict) else par
        if w is None:
            env = os.environ.get(WORKERS_ENV)
            w = int(env) if env else 1
    if not isinstance(w, int) or w < 1:
        raise ConfigError("workers must be a positive integer")
    return w


def _call_point(args):
    command, pt, ctx, spec = args
    try:
        return "ok", COMMANDS[command][1](pt, ctx, spec)
    except Exception as exc:  # reported with the grid point by the parent
        return "error", f"{type(exc).__name__}: {exc}"


def execute(cfg: dict, workers: int = 1, tolerance: Optional[float] = None):
    """Validate ``cfg`` and evaluate every grid point.

    Returns ``(columns, rows, effective_config)``. Rows follow the grid order
    regardless of the number of workers.
    """
    command = cfg.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"command must be one of {sorted(COMMANDS)}, got {command!r}")
    params = cfg.get("parameters")
    if not isinstance(params, dict):
        raise ConfigError("parameters must be a mapping")
    spec = _quadrature(cfg, tolerance)
    columns, points, ctx = COMMANDS[command][0](params)
    if not points:
        raise ConfigError("the parameter grid is empty")
    jobs = [(command, pt, ctx, spec) for pt in points]
    if workers == 1:
        results = map(_call_point, jobs)
        results = list(results)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_call_point, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    rows = []
    for pt, (status, value) in zip(points, results):
        if status == "error":
            raise GridPointError(pt, RuntimeError(value))
        rows.extend(value)
    effective = copy.deepcopy(cfg)
    effective["quadrature"] = {"relative_tolerance": spec.relative_tolerance,
                               "absolute_floor": spec.absolute_floor,
                               "max_subdivisions": spec.max_subdivisions}
    return columns, rows, effective


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12g}"


def write_csv(path, columns, rows, effective):
    buf = io.StringIO()
    buf.write(f"# freecoupling {__version__}\n")
    for line in yaml.safe_dump(effective, sort_keys=True).splitlines():
        buf.write(f"# {line}\n")
    buf.write("# units: " + ", ".join(f"{c}={UNITS.get(c, '1')}" for c in columns) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def write_json(path, columns, rows, effective):
    def conv(v):
        if isinstance(v, str):
            return v
        x = float(f"{float(v):.12g}")
        return x if math.isfinite(x) else None

    doc = {"version": __version__, "config": effective, "columns": columns,
           "rows": [[conv(v) for v in r] for r in rows]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def write_svg(path, command, columns, rows):
    if not rows:
        raise ConfigError("nothing to plot: the run produced no rows")
    data = {c: np.array([r[j] for r in rows], dtype=object) for j, c in enumerate(columns)}
    num = {c: v.astype(float) for c, v in data.items() if c != "regime"}
    if command == "geo_map":
        heatmap_svg(num["beta"], num["d_over_lambda"], num["g_geo_sq"], path, "beta", "d / lambda", "g_geo^2",
                    logz=True)
    elif command in ("bound", "bound_sweep"):
        if len(set(num["d_over_lambda"])) > 1 and len(set(num["beta"])) > 1:
            heatmap_svg(num["beta"], num["d_over_lambda"], num["g_ub"], path, "beta", "d / lambda", "g_ub",
                        logz=True)
        else:
            line_svg(num["beta"], {"g_ub": num["g_ub"]}, path, "beta", "g_ub")
    elif command == "hollow_core_scan":
        scatter_svg(num["beta_match"], num["ratio"], path, num["chi"], num["d_over_lambda"], "beta", "|g| / g_ub",
                    "chi", logc=True)
    elif command == "metal_hole_scan":
        scatter_svg(num["beta_match"], num["ratio"], path, num["d_over_lambda"], None, "beta", "|g| / g_ub",
                    "d / lambda", logc=True)
    else:
        x = columns[0]
        ys = {c: num[c] for c in columns[1:] if c in num and np.any(np.isfinite(num[c]))}
        line_svg(num[x], ys, path, x, "value")


def _run(args) -> int:
    cfg = load_config(args.config)
    workers = _workers(cfg, args.workers)
    out_cfg = cfg.get("output") or {}
    fmt = args.format or out_cfg.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}")
    path = args.out or out_cfg.get("path")
    if not path:
        raise ConfigError("no output path: set output.path or pass --out")
    if args.tolerance is not None and not (0.0 < args.tolerance <= 1e-3):
        raise ConfigError("--tolerance must lie in (0, 1e-3]")
    columns, rows, effective = execute(cfg, workers, args.tolerance)
    effective.setdefault("output", {})
    effective["output"] = {"path": str(path), "format": fmt}
    if fmt == "csv":
        write_csv(path, columns, rows, effective)
    elif fmt == "json":
        write_json(path, columns, rows, effective)
    else:
        write_svg(path, cfg["command"], columns, rows)
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def _plot(args) -> int:
    emit_plot(args.csv, args.kind, args.x, args.y, args.out, args.z, args.size, args.logx, args.logy, args.logz,
              args.title or "")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freecoupling", description="Free-electron/photon coupling bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="evaluate a YAML run configuration")
    run.add_argument("--config", required=True, help="YAML configuration file")
    run.add_argument("--out", help="output path (overrides output.path)")
    run.add_argument("--format", choices=FORMATS, help="output format (overrides output.format)")
    run.add_argument("--workers", type=int, help=f"worker processes (default: config, then ${WORKERS_ENV}, then 1)")
    run.add_argument("--tolerance", type=float, help="relative quadrature tolerance")
    run.set_defaults(func=_run)
    plot = sub.add_parser("plot", help="render a CSV result as SVG")
    plot.add_argument("--csv", required=True)
    plot.add_argument("--kind", choices=("heatmap", "scatter", "line"), required=True)
    plot.add_argument("--x", required=True)
    plot.add_argument("--y", required=True, help="column (comma-separated list for line plots)")
    plot.add_argument("--z", help="value column (heatmap) or colour column (scatter)")
    plot.add_argument("--size", help="marker-size column (scatter)")
    plot.add_argument("--logx", action="store_true")
    plot.add_argument("--logy", action="store_true")
    plot.add_argument("--logz", action="store_true")
    plot.add_argument("--title")
    plot.add_argument("--out", required=True)
    plot.set_defaults(func=_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except GridPointError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except FreeCouplingError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
