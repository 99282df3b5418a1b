"""Command-line interface: dataset generation, verification suites, and
transform application.

Output files are deterministic: fixed float formatting (17 significant
digits), LF line endings, UTF-8, no timestamps.  Verification reports stream
as JSON lines on stdout with a human summary on stderr; exit code 0 means
every check passed, 1 means a check or runtime failure, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from formpreserve import contours, verify, wavefields, wigner
from formpreserve.numerics import Grid1D, SampledWaveFunction
from formpreserve.transform import (
    SingularMapError,
    berry_balazs_params,
    free_ho_params,
    identity_params,
    map_coords,
    senitzky_params,
    transform_potential,
    transform_wavefunction,
)

WAVE_HEADER = ["x", "t", "re", "im", "abs2"]
WIGNER_HEADER = ["x", "p", "w"]
CURVE_HEADER = ["curve_id", "vertex_id", "x", "p"]
TRANSFORM_HEADER = ["xprime", "tprime", "re", "im", "abs2", "vprime"]

_ALLOWED_PARAMS = {
    "airy_beam": {"B", "x_min", "x_max"},
    "senitzky": {"n", "a", "phi0", "omega", "x_min", "x_max"},
    "dispersing": {"n", "v0", "x0", "omega", "x_min", "x_max"},
    "wigner_field": {"state", "n", "t", "extent", "omega", "a", "phi0", "v0", "x0"},
    "level_curves": {"preset", "B", "a", "phi0", "omega", "level_frac"},
    "ellipse_family": {"n", "level_frac"},
    "transform": {"B", "a", "phi0", "omega", "v0", "x0", "x_min", "x_max"},
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_path: str = ""
    fmt: str = "csv"

    def __post_init__(self):
        allowed = _ALLOWED_PARAMS.get(self.command)
        if allowed is not None:
            unknown = set(self.params) - allowed
            if unknown:
                raise ConfigError(f"unknown parameter(s) for {self.command}: {sorted(unknown)}")
        for key in ("omega", "B", "extent"):
            if key in self.params and float(self.params[key]) <= 0:
                raise ConfigError(f"parameter {key} must be positive")
        if "a" in self.params and float(self.params["a"]) < 0:
            raise ConfigError("parameter a must be non-negative")
        if "n" in self.params and int(self.params["n"]) < 0:
            raise ConfigError("parameter n must be >= 0")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")

    def get(self, key, default):
        value = self.params.get(key, default)
        if isinstance(default, int) and not isinstance(default, bool):
            return int(value)
        if isinstance(default, float):
            return float(value)
        return value


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_rows(path: str, header: list, rows, fmt: str):
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    else:
        payload = {
            "columns": header,
            "rows": [
                [float(_fmt(v)) if isinstance(v, float) else v for v in row] for row in rows
            ],
        }
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")


def _wave_rows(fn, grid: Grid1D, times):
    rows = []
    for t in times:
        vals = np.asarray(fn(grid.points, float(t)), dtype=complex)
        for x, v in zip(grid.points, vals):
            rows.append((float(x), float(t), float(v.real), float(v.imag), float(abs(v) ** 2)))
    return rows


def _curve_rows(curves_by_id):
    rows = []
    for cid, pts in curves_by_id:
        for vid, (x, p) in enumerate(pts):
            rows.append((int(cid), int(vid), float(x), float(p)))
    return rows


def cmd_generate(config: RunConfig) -> int:
    kind = config.params.pop("kind")
    times = config.params.pop("times", [0.0])
    grid_n = int(config.params.pop("grid_n", 1024))
    config.params.pop("tol", None)
    cfg = RunConfig(command=kind, params=config.params, output_path=config.output_path, fmt=config.fmt)

    if kind == "airy_beam":
        B = cfg.get("B", 1.0)
        grid = Grid1D(cfg.get("x_min", -15.0), cfg.get("x_max", 5.0), grid_n)
        rows = _wave_rows(lambda x, t: wavefields.airy_beam(x, t, B=B), grid, times)
        write_rows(cfg.output_path, WAVE_HEADER, rows, cfg.fmt)
    elif kind == "senitzky":
        omega = cfg.get("omega", 1.0)
        path = wavefields.ClassicalPath.harmonic(cfg.get("a", 1.0), cfg.get("phi0", 0.0), omega)
        n = cfg.get("n", 0)
        grid = Grid1D(cfg.get("x_min", -8.0), cfg.get("x_max", 8.0), grid_n)
        rows = _wave_rows(
            lambda x, t: wavefields.senitzky_wf(n, x, t, path, omega), grid, times
        )
        write_rows(cfg.output_path, WAVE_HEADER, rows, cfg.fmt)
    elif kind == "dispersing":
        omega = cfg.get("omega", 1.0)
        n = cfg.get("n", 0)
        v0, x0 = cfg.get("v0", 0.0), cfg.get("x0", 0.0)
        grid = Grid1D(cfg.get("x_min", -20.0), cfg.get("x_max", 20.0), grid_n)
        rows = _wave_rows(
            lambda x, t: wavefields.dispersing_free_state(n, x, t, v0=v0, x0=x0, omega=omega),
            grid,
            times,
        )
        write_rows(cfg.output_path, WAVE_HEADER, rows, cfg.fmt)
    elif kind == "wigner_field":
        field_obj = _named_wigner_field(cfg, grid_n)
        rows = []
        for i, x in enumerate(field_obj.grid.x_axis.points):
            for j, p in enumerate(field_obj.grid.p_axis.points):
                rows.append((float(x), float(p), float(field_obj.values[i, j])))
        write_rows(cfg.output_path, WIGNER_HEADER, rows, cfg.fmt)
    elif kind == "level_curves":
        _generate_level_curves(cfg, times, grid_n)
    elif kind == "ellipse_family":
        _generate_ellipse_family(cfg, times, grid_n)
    else:
        raise ConfigError(f"unknown generate kind {kind!r}")
    return 0


def _named_wigner_field(cfg: RunConfig, grid_n: int):
    state = cfg.get("state", "ho")
    omega = cfg.get("omega", 1.0)
    n = cfg.get("n", 0)
    t = cfg.get("t", 0.0)
    extent = cfg.get("extent", 8.0)
    x_axis = Grid1D(-extent, extent, grid_n)
    p_axis = Grid1D(-extent, extent, min(grid_n, 512))
    if state == "ho":
        fn = lambda x, tt: wavefields.ho_eigenstate(n, x, tt, omega)
    elif state == "senitzky":
        path = wavefields.ClassicalPath.harmonic(cfg.get("a", 1.0), cfg.get("phi0", 0.0), omega)
        fn = lambda x, tt: wavefields.senitzky_wf(n, x, tt, path, omega)
    elif state == "dispersing":
        fn = lambda x, tt: wavefields.dispersing_free_state(
            n, x, tt, v0=cfg.get("v0", 0.0), x0=cfg.get("x0", 0.0), omega=omega
        )
    else:
        raise ConfigError(f"unknown wigner state {state!r}")
    psi = SampledWaveFunction(x_axis, fn(x_axis.points, t), t=t)
    return wigner.wigner_transform(psi, p_axis)


def _markers_path(out_path: str) -> str:
    return out_path + ".markers.csv" if not out_path.endswith(".json") else out_path + ".markers.json"


def _generate_level_curves(cfg: RunConfig, times, grid_n: int):
    preset = cfg.get("preset", "berry_balazs")
    level_frac = cfg.get("level_frac", math.exp(-1.0))
    curves_out = []
    markers_out = []
    if preset == "berry_balazs":
        B = cfg.get("B", 1.0)
        base = verify.windowed_airy_wigner(0.0, B)
        level = 0.75 * float(np.max(base.values))
        marker_ps = (-1.414, -1.0, 0.0, 1.0, 1.414)
        base_curves = wigner.extract_level_curves(base, level)
        principal = max(base_curves, key=len).points
        seeds = []
        for pm in marker_ps:
            idx = int(np.argmin(np.abs(principal[:, 1] - pm)))
            seeds.append(principal[idx])
        for k, t in enumerate(times):
            field_t = verify.windowed_airy_wigner(float(t), B)
            for c_idx, curve in enumerate(wigner.extract_level_curves(field_t, level)):
                curves_out.append((k * 100 + c_idx, curve.points))
            # free flow advects markers by (p t, 0)
            markers_out.append(
                (k * 100, [(x0 + p0 * float(t), p0) for x0, p0 in seeds])
            )
    elif preset == "senitzky":
        omega = cfg.get("omega", 1.0)
        amp = cfg.get("a", 1.25)
        phi0 = cfg.get("phi0", 0.87)
        path = wavefields.ClassicalPath.harmonic(amp, phi0, omega)
        x_axis = Grid1D(-7.0, 7.0, max(grid_n, 512))
        p_axis = Grid1D(-7.0, 7.0, 512)
        for k, t in enumerate(times):
            psi = SampledWaveFunction(
                x_axis, wavefields.senitzky_wf(0, x_axis.points, float(t), path, omega), t=float(t)
            )
            field_t = wigner.wigner_transform(psi, p_axis)
            level = level_frac * float(np.max(field_t.values))
            curve = max(wigner.extract_level_curves(field_t, level), key=len)
            curves_out.append((k * 100, curve.points))
            centre = np.array([path.q(float(t)), path.q_dot(float(t))])
            cx, cp, radius = contours.fit_circle(curve.points)
            angles = [0.35 + i * math.pi / 2 - omega * float(t) for i in range(4)]
            markers_out.append(
                (
                    k * 100,
                    [
                        (centre[0] + radius * math.cos(a), centre[1] + radius * math.sin(a))
                        for a in angles
                    ],
                )
            )
        # dashed guide circle traced by the centres, one synthetic closed curve
        thetas = np.linspace(0.0, 2 * math.pi, 96, endpoint=False)
        guide = [(amp * math.cos(th), amp * math.sin(th)) for th in thetas]
        curves_out.append((-1, np.asarray(guide)))
    else:
        raise ConfigError(f"unknown level_curves preset {preset!r}")
    write_rows(cfg.output_path, CURVE_HEADER, _curve_rows(curves_out), cfg.fmt)
    write_rows(
        _markers_path(cfg.output_path), CURVE_HEADER, _curve_rows(markers_out), cfg.fmt
    )


def _generate_ellipse_family(cfg: RunConfig, times, grid_n: int):
    n = cfg.get("n", 0)
    level_frac = cfg.get("level_frac", math.exp(-1.0))
    ax = Grid1D(-6.0, 6.0, min(grid_n, 512))
    grid = wigner.PhaseSpaceGrid(ax, ax)
    curves_out = []
    markers_out = []
    seed_angles = [math.pi / 4 + k * math.pi / 2 for k in range(4)]
    for k, wt in enumerate(times):
        field_t = wigner.PhaseSpaceField.from_function(
            lambda x, p: wigner.free_disperse_wigner(n, x, p, float(wt), 1.0), grid
        )
        level = level_frac / math.pi
        curve = max(wigner.extract_level_curves(field_t, level), key=len)
        curves_out.append((k * 100, curve.points))
        markers_out.append(
            (
                k * 100,
                [
                    (math.cos(a) + float(wt) * math.sin(a), math.sin(a))
                    for a in seed_angles
                ],
            )
        )
    write_rows(cfg.output_path, CURVE_HEADER, _curve_rows(curves_out), cfg.fmt)
    write_rows(
        _markers_path(cfg.output_path), CURVE_HEADER, _curve_rows(markers_out), cfg.fmt
    )


_PARAM_PRESETS = {
    "identity": lambda cfg: identity_params(),
    "berry_balazs": lambda cfg: berry_balazs_params(cfg.get("B", 1.0)),
    "senitzky": lambda cfg: senitzky_params(
        cfg.get("a", 1.0), cfg.get("phi0", 0.0), cfg.get("omega", 1.0)
    ),
    "free_ho": lambda cfg: free_ho_params(
        cfg.get("v0", 0.0), cfg.get("x0", 0.0), cfg.get("omega", 1.0)
    ),
}


def _seed_state(name: str, cfg: RunConfig):
    omega = cfg.get("omega", 1.0)
    B = cfg.get("B", 1.0)
    if name == "airy_eigenstate":
        return (
            lambda x, t: wavefields.airy_stationary_state(x, t, B=B),
            wavefields.Potential1D.linear(B**3 / 2.0),
        )
    if name == "linear_gaussian":
        slope = B**3 / 2.0
        return (
            lambda x, t: wavefields.linear_potential_gaussian(x, t, slope=slope),
            wavefields.Potential1D.linear(slope),
        )
    if name.startswith("ho") and name[2:].isdigit():
        n = int(name[2:])
        return (
            lambda x, t: wavefields.ho_eigenstate(n, x, t, omega),
            wavefields.Potential1D.harmonic(omega),
        )
    raise ConfigError(f"unknown seed state {name!r}")


def cmd_transform(config: RunConfig) -> int:
    preset = config.params.pop("preset")
    state = config.params.pop("state")
    times = config.params.pop("times", [0.0])
    grid_n = int(config.params.pop("grid_n", 512))
    cfg = RunConfig(
        command="transform", params=config.params, output_path=config.output_path, fmt=config.fmt
    )
    if preset not in _PARAM_PRESETS:
        raise ConfigError(f"unknown preset {preset!r}")
    params = _PARAM_PRESETS[preset](cfg)
    seed, potential = _seed_state(state, cfg)
    grid = Grid1D(cfg.get("x_min", -10.0), cfg.get("x_max", 10.0), grid_n)
    rows = []
    for t in times:
        x_prime, t_prime = map_coords(params, grid.points, float(t))
        psi_prime = transform_wavefunction(params, seed, x_prime, t_prime)
        v_prime = transform_potential(params, potential, grid.points, float(t))
        for xp, vp, psi in zip(np.atleast_1d(x_prime), np.atleast_1d(v_prime), np.atleast_1d(psi_prime)):
            rows.append(
                (
                    float(xp),
                    float(t_prime),
                    float(psi.real),
                    float(psi.imag),
                    float(abs(psi) ** 2),
                    float(vp),
                )
            )
    write_rows(cfg.output_path, TRANSFORM_HEADER, rows, cfg.fmt)
    return 0


def cmd_verify(suite: str, out_path: str = "") -> int:
    reports = verify.run_suite(suite)
    lines = [json.dumps(r.to_json_dict(), sort_keys=True) for r in reports]
    for line in lines:
        print(line)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    n_pass = sum(r.passed for r in reports)
    for r in reports:
        marker = "PASS" if r.passed else "FAIL"
        print(
            f"{marker} {r.name}: metric {r.metric:.3e} vs tolerance {r.tolerance:.1e}"
            f" ({r.runtime_ms} ms)",
            file=sys.stderr,
        )
    print(f"{n_pass}/{len(reports)} checks passed", file=sys.stderr)
    return 0 if n_pass == len(reports) else 1


def _parse_kv(items):
    params = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def _load_config(path):
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formpreserve",
        description="Generate, transform, and verify form-preserving wave and phase-space data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write wave/Wigner/level-curve datasets")
    gen.add_argument("--kind", required=True, choices=sorted(set(_ALLOWED_PARAMS) - {"transform"}))
    gen.add_argument("--out", required=True)
    gen.add_argument("--format", default="csv", choices=("csv", "json"))
    gen.add_argument("--grid-n", type=int, default=1024)
    gen.add_argument("--times", default="0.0", help="comma-separated time stamps")
    gen.add_argument("--config", default="", help="JSON file with extra parameters")
    gen.add_argument("--param", action="append", help="key=value parameter", default=[])
    gen.add_argument("--tol", type=float, default=None, help="unused for generation; accepted for symmetry")

    ver = sub.add_parser("verify", help="run property suites, JSON-line reports on stdout")
    ver.add_argument("--suite", default="all", choices=("transforms", "wigner", "moyal", "fields3d", "all"))
    ver.add_argument("--out", default="", help="also write the JSON lines here")

    tra = sub.add_parser("transform", help="apply a named transformation to a seed state")
    tra.add_argument("--preset", required=True)
    tra.add_argument("--state", required=True)
    tra.add_argument("--out", required=True)
    tra.add_argument("--format", default="csv", choices=("csv", "json"))
    tra.add_argument("--grid-n", type=int, default=512)
    tra.add_argument("--times", default="0.0")
    tra.add_argument("--config", default="")
    tra.add_argument("--param", action="append", default=[])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.suite, args.out)
        params = _load_config(args.config)
        params.update(_parse_kv(args.param))
        times = [float(s) for s in str(args.times).split(",") if s != ""]
        if args.command == "generate":
            params["kind"] = args.kind
            params["times"] = times
            params["grid_n"] = args.grid_n
            config = RunConfig("generate", params, args.out, args.format)
            return cmd_generate(config)
        if args.command == "transform":
            params["preset"] = args.preset
            params["state"] = args.state
            params["times"] = times
            params["grid_n"] = args.grid_n
            config = RunConfig("transform_cmd", params, args.out, args.format)
            return cmd_transform(config)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except SingularMapError as exc:
        print(f"singular transformation: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
