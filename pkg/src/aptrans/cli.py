"""Command-line front end.

Every flag has a config-file equivalent: plain ``key = value`` lines in a
flat dotted namespace (``aptrans dump-config`` prints the effective
configuration in exactly that format, and reloading the dump reproduces
it).  Flags win over the config file, which wins over defaults.

Exit codes: 0 success, 2 configuration error, 3 numerical blow-up,
4 I/O error.  On blow-up the diagnostics and the last density are still
written and a machine-readable ``blowup step=<k> t=<t>`` line goes to
stdout.  ``AP_OUTDIR`` is the fallback output directory.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

import numpy as np

from . import stability
from .angular import gauss_nodes
from .errors import BlowupError
from .grid import atomic_write_text, write_plane_csv
from .harness import ap_limit_check, run_convergence_table
from .scenarios import SCENARIOS
from .solver import run


class ConfigError(Exception):
    pass


# key, type tag, default, help
CONFIG_SPEC = [
    ("scenario", "str", "gauss", "benchmark name: " + ", ".join(sorted(SCENARIOS))),
    ("n", "int", 64, "grid cells per axis"),
    ("epsilon", "float?", None, "mean free path (default: scenario value)"),
    ("t_final", "float?", None, "end time (default: scenario value)"),
    ("phi", "float?", None, "relaxation parameter override (default: stability formula)"),
    ("dt", "float?", None, "time step override (default: CFL formula)"),
    ("safety", "float", 0.9, "CFL safety factor in (0, 1]"),
    ("blowup_factor", "float", 1e6, "declare blow-up when max|rho| exceeds this multiple of its initial value"),
    ("angular.n_points", "int", 16, "quadrature points per quadrant"),
    ("snapshot_times", "floats", (), "comma-separated times at which to dump the density"),
    ("outdir", "str?", None, "output directory (fallback: $AP_OUTDIR, then '.')"),
    ("two_material.geometry", "str?", None, "absorber geometry file for the two-material case"),
    ("n_list", "ints", (16, 32, 64), "grids for the convergence sweep"),
    ("epsilon_list", "floats", (1e-2,), "mean free paths for the convergence sweep"),
    ("reference", "str", "auto", "convergence reference: auto | exact | finest"),
    ("ref_n", "int?", None, "reference grid size (implies a finest-grid reference)"),
    ("stability.epsilon_list", "floats", (1.0, 1e-2), "epsilons for the stability map"),
    ("stability.h_list", "floats", (1e-2,), "mesh widths for the stability map"),
    ("stability.sigma_s", "float", 1.0, "scattering cross section for the stability map"),
    ("stability.sigma_a", "float", 0.0, "absorption cross section for the stability map"),
    ("stability.n_theta", "int", 4096, "mode angles per stability scan"),
]

_TYPES = {k: t for k, t, _, _ in CONFIG_SPEC}
_DEFAULTS = {k: d for k, _, d, _ in CONFIG_SPEC}


def _parse_value(key: str, text: str):
    tag = _TYPES[key]
    text = text.strip()
    if tag.endswith("?") and text == "":
        return None
    try:
        if tag in ("int", "int?"):
            return int(text)
        if tag in ("float", "float?"):
            return float(text)
        if tag == "ints":
            return tuple(int(v) for v in text.split(",") if v.strip()) if text else ()
        if tag == "floats":
            return tuple(float(v) for v in text.split(",") if v.strip()) if text else ()
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {text!r} ({exc})") from None
    return text


def _format_value(key: str, value) -> str:
    if value is None:
        return ""
    if isinstance(value, tuple):
        return ",".join(repr(v) if isinstance(v, float) else str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def read_config_file(path: str) -> dict:
    cfg = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
                key, _, val = line.partition("=")
                key = key.strip()
                if key not in _TYPES:
                    raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
                cfg[key] = _parse_value(key, val)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return cfg


def dump_config_text(cfg: dict) -> str:
    return "".join(f"{k} = {_format_value(k, cfg[k])}\n" for k, _, _, _ in CONFIG_SPEC)


def _flag(key: str) -> str:
    return "--" + key.replace(".", "-").replace("_", "-")


def _add_config_flags(parser: argparse.ArgumentParser):
    for key, _tag, _default, help_text in CONFIG_SPEC:
        parser.add_argument(_flag(key), dest=key.replace(".", "__"),
                            default=None, metavar="V", help=help_text)
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="key = value config file (flags win)")


def effective_config(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS)
    if args.config:
        cfg.update(read_config_file(args.config))
    for key in _TYPES:
        raw = getattr(args, key.replace(".", "__"), None)
        if raw is not None:
            cfg[key] = _parse_value(key, raw)
    return cfg


def _outdir(cfg: dict) -> str:
    out = cfg["outdir"] or os.environ.get("AP_OUTDIR") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _build_scenario(cfg: dict):
    name = cfg["scenario"]
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r}; pick one of {sorted(SCENARIOS)}")
    if name == "two_material" and cfg["two_material.geometry"]:
        scn = SCENARIOS[name](cfg["two_material.geometry"])
    else:
        scn = SCENARIOS[name]()
    if cfg["epsilon"] is not None:
        if cfg["epsilon"] <= 0:
            raise ConfigError("epsilon must be positive")
        scn = scn.with_epsilon(cfg["epsilon"])
    if cfg["t_final"] is not None:
        scn = dataclasses.replace(scn, t_final=cfg["t_final"])
    return scn


def _write_density(outdir: str, tag: str, rho, g):
    write_plane_csv(os.path.join(outdir, f"{tag}_vertex.csv"), rho.vertex, "vertex", g)
    write_plane_csv(os.path.join(outdir, f"{tag}_center.csv"), rho.center, "center", g)


def _write_diagnostics(path: str, rows):
    lines = ["step,t,dt,mass,max_rho"]
    lines += [f"{r.step},{r.t!r},{r.dt!r},{r.mass!r},{r.max_rho!r}" for r in rows]
    atomic_write_text(path, "\n".join(lines) + "\n")


def cmd_run(cfg: dict) -> int:
    scn = _build_scenario(cfg)
    snapshots = tuple(sorted(cfg["snapshot_times"]))
    t_final = cfg["t_final"] if cfg["t_final"] is not None else scn.t_final
    if any(ts > t_final for ts in snapshots):
        raise ConfigError("snapshot times must not exceed t_final")
    g = scn.grid(cfg["n"])
    dirs = gauss_nodes(cfg["angular.n_points"])
    outdir = _outdir(cfg)
    try:
        result = run(scn, g, dirs, t_final, dt=cfg["dt"], phi=cfg["phi"],
                     safety=cfg["safety"], snapshot_times=snapshots,
                     blowup_factor=cfg["blowup_factor"])
    except BlowupError as err:
        partial = getattr(err, "partial", None)
        if partial is not None:
            _write_diagnostics(os.path.join(outdir, "diagnostics.csv"), partial.diagnostics)
            _write_density(outdir, "rho_final", partial.state.density(), g)
        print(f"blowup step={err.step} t={err.time!r}")
        return 3
    _write_diagnostics(os.path.join(outdir, "diagnostics.csv"), result.diagnostics)
    _write_density(outdir, "rho_final", result.state.density(), g)
    for ts, rho in result.snapshots.items():
        _write_density(outdir, f"rho_t{ts:g}", rho, g)
    last = result.diagnostics[-1]
    print(f"done scenario={scn.name} N={cfg['n']} epsilon={scn.epsilon!r} "
          f"t={last.t!r} steps={last.step} mass={last.mass!r} max_rho={last.max_rho!r}")
    return 0


def cmd_converge(cfg: dict) -> int:
    scn = _build_scenario(cfg)
    if not cfg["n_list"]:
        raise ConfigError("empty N list")
    if cfg["ref_n"] is not None:
        reference = cfg["ref_n"]
    elif cfg["reference"] == "exact":
        reference = "exact"
    elif cfg["reference"] == "finest":
        reference = max(cfg["n_list"])
    elif cfg["reference"] == "auto":
        reference = "auto"
    else:
        raise ConfigError(f"unknown reference {cfg['reference']!r}")
    rows = run_convergence_table(
        scn, cfg["n_list"], cfg["epsilon_list"], reference=reference,
        n_points=cfg["angular.n_points"], safety=cfg["safety"],
        t_final=cfg["t_final"])
    outdir = _outdir(cfg)
    lines = ["scenario,epsilon,N,branch,error,order_vs_prev"]
    for r in rows:
        order = "" if r["order_vs_prev"] is None else repr(r["order_vs_prev"])
        lines.append(f"{r['scenario']},{r['epsilon']!r},{r['N']},{r['branch']},"
                     f"{r['error']!r},{order}")
        print(f"eps={r['epsilon']:<8g} N={r['N']:<4d} {r['branch']:<10s} "
              f"error={r['error']:.6e}"
              + (f" order={r['order_vs_prev']:.3f}" if r["order_vs_prev"] else ""))
    atomic_write_text(os.path.join(outdir, "convergence.csv"), "\n".join(lines) + "\n")
    return 0


def cmd_stability(cfg: dict) -> int:
    outdir = _outdir(cfg)
    n_theta = cfg["stability.n_theta"]
    sigma_s = cfg["stability.sigma_s"]
    sigma_a = cfg["stability.sigma_a"]
    thetas = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    map_lines = ["epsilon,h,dt,phi,theta,radius"]
    verdict_lines = ["epsilon,h,dt,phi,conditions_ok,stable,passed,worst_theta,worst_radius"]
    for eps in cfg["stability.epsilon_list"]:
        for h in cfg["stability.h_list"]:
            sigma_t = sigma_s + eps**2 * sigma_a
            dt = stability.numerics_timestep(eps, h, sigma_t, sigma_a, cfg["safety"])
            phi = cfg["phi"] if cfg["phi"] is not None else stability.phi_upper_bound(eps, h, sigma_t)
            radii = stability.spectral_radius_scan(eps, sigma_s, sigma_a, dt, h, phi, thetas)
            for th, rad in zip(thetas, radii):
                map_lines.append(f"{eps!r},{h!r},{dt!r},{phi!r},"
                                 f"{float(th)!r},{float(rad)!r}")
            rep = stability.certify_proposition(eps, sigma_s, sigma_a, dt, h, phi, n_theta)
            verdict_lines.append(
                f"{eps!r},{h!r},{dt!r},{phi!r},{rep.conditions_ok},{rep.stable},"
                f"{rep.passed},{rep.worst_theta!r},{rep.worst_radius!r}")
            print(f"eps={eps:<10g} h={h:<8g} phi={phi:<12g} "
                  f"worst_radius={rep.worst_radius:.12f} passed={rep.passed}")
    atomic_write_text(os.path.join(outdir, "stability_map.csv"), "\n".join(map_lines) + "\n")
    atomic_write_text(os.path.join(outdir, "stability_verdicts.csv"),
                      "\n".join(verdict_lines) + "\n")
    return 0


def cmd_ap_check(cfg: dict) -> int:
    scn = _build_scenario(cfg)
    eps = cfg["epsilon"] if cfg["epsilon"] is not None else scn.epsilon
    report = ap_limit_check(scn, cfg["n"], eps, t_final=cfg["t_final"],
                            n_points=cfg["angular.n_points"], safety=cfg["safety"])
    outdir = _outdir(cfg)
    lines = ["solver,step,t,mass"]
    lines += [f"transport,{k},{t!r},{m!r}" for (k, t, m) in report.ap_mass]
    lines += [f"diffusion,{k},{t!r},{m!r}" for (k, t, m) in report.diffusion_mass]
    atomic_write_text(os.path.join(outdir, "ap_mass.csv"), "\n".join(lines) + "\n")
    g = scn.with_epsilon(eps).grid(cfg["n"])
    _write_density(outdir, "rho_ap", report.ap_density, g)
    _write_density(outdir, "rho_diffusion", report.diffusion_density, g)
    print(f"rel_l2 = {report.rel_l2!r}")
    return 0


def cmd_dump_config(cfg: dict) -> int:
    sys.stdout.write(dump_config_text(cfg))
    return 0


COMMANDS = {
    "run": (cmd_run, "advance a scenario and write diagnostics + densities"),
    "converge": (cmd_converge, "grid-refinement error/order table"),
    "stability": (cmd_stability, "von Neumann radius maps and certification"),
    "ap-check": (cmd_ap_check, "compare the AP solver against the diffusion reference"),
    "dump-config": (cmd_dump_config, "print the effective configuration"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aptrans",
        description="Asymptotic-preserving staggered-grid transport solver")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _add_config_flags(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = effective_config(args)
        return COMMANDS[args.command][0](cfg)
    except BlowupError as err:
        print(f"blowup step={err.step} t={err.time!r}")
        return 3
    except (ConfigError, ValueError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
