"""Batch command-line front end.

Usage::

    falsevac COMMAND [CONFIG] [--section.key VALUE ...]

``CONFIG`` is a flat ``key = value`` file with dotted section prefixes
(``potential.lambda = 2.0``); ``#`` starts a comment. Command-line
``--key value`` pairs override file entries. Results are written to
``output.dir``.

Exit codes: 0 success, 2 configuration or precondition error, 3 numerical
failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import lattice, potentials, solitons, wavefunctional
from .errors import ConvergenceError, PreconditionError
from .euclidean import (SpacetimeConfig, energy_functional, euclidean_action_2d,
                        lagrangian_bound, reduced_action)
from .lattice import DeltaPair, FieldConfig, Grid

COMMANDS = ("kink", "minima", "action", "overlap", "delta-demo", "sweep")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

REFERENCE_DELTA_N = 2.0 * math.sqrt(math.pi)

# key -> (type, default)
SCHEMA: dict[str, tuple[type, object]] = {
    "potential.family": (str, "quartic"),
    "potential.lambda": (float, 2.0),
    "potential.a": (float, 1.0),
    "potential.tilt": (float, 0.0),
    "potential.c_a": (float, 1.0),
    "potential.c_b": (float, 0.0),
    "potential.phi_c": (float, 0.0),
    "potential.phi0": (float, 0.0),
    "potential.c0": (float, 1.0),
    "potential.c1": (float, 0.0),
    "grid.x_min": (float, -10.0),
    "grid.x_max": (float, 10.0),
    "grid.n": (int, 4001),
    "minima.bracket_min": (float, -1.0),
    "minima.bracket_max": (float, 2.0 * math.pi + 1.0),
    "action.mode": (str, "static"),
    "action.profile": (str, "kink"),
    "action.t_p": (float, 1.0),
    "action.bound": (bool, False),
    "action.q_abs": (float, 0.0),
    "tau.min": (float, 0.0),
    "tau.max": (float, 1.0),
    "tau.n": (int, 11),
    "delta.l_sep": (float, 10.0),
    "delta.n_min": (float, 0.5),
    "delta.n_max": (float, 8.0),
    "delta.n_count": (int, 16),
    "sweep.eps_min": (float, 0.01),
    "sweep.eps_max": (float, 0.1),
    "sweep.eps_step": (float, 0.01),
    "sweep.workers": (int, 1),
    "output.dir": (str, "."),
}

FAMILIES = ("quartic", "sine-gordon", "taylor")
ACTION_MODES = ("static", "reduced", "spacetime")


class ConfigError(Exception):
    """Malformed or inconsistent run configuration."""


def _coerce(key: str, raw) -> object:
    kind = SCHEMA[key][0]
    text = str(raw).strip()
    try:
        if kind is bool:
            low = text.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if kind is int:
            val = float(text)
            if val != int(val):
                raise ValueError(text)
            return int(val)
        if kind is float:
            val = float(text)
            if not math.isfinite(val):
                raise ValueError(text)
            return val
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {text!r} as {kind.__name__}") from None
    return text


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    entries = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        entries[key] = value
    return entries


def resolve_config(entries: dict[str, str]) -> dict[str, object]:
    """Validate keys, coerce values and fill defaults."""
    unknown = sorted(set(entries) - set(SCHEMA))
    if unknown:
        raise ConfigError(f"unknown configuration key(s): {', '.join(unknown)}")
    cfg = {key: default for key, (_, default) in SCHEMA.items()}
    for key, raw in entries.items():
        cfg[key] = _coerce(key, raw)
    if cfg["potential.family"] not in FAMILIES:
        raise ConfigError(f"potential.family: expected one of {FAMILIES}, "
                          f"got {cfg['potential.family']!r}")
    if cfg["action.mode"] not in ACTION_MODES:
        raise ConfigError(f"action.mode: expected one of {ACTION_MODES}, "
                          f"got {cfg['action.mode']!r}")
    return cfg


def _build_spec(cfg: dict, tilt: float | None = None) -> potentials.PotentialSpec:
    family = cfg["potential.family"]
    t = cfg["potential.tilt"] if tilt is None else tilt
    try:
        if family == "quartic":
            return potentials.QuarticDoubleWell(cfg["potential.lambda"], cfg["potential.a"], t)
        if family == "sine-gordon":
            return potentials.DrivenSineGordon(cfg["potential.c_a"], cfg["potential.c_b"],
                                               cfg["potential.phi_c"], t)
        return potentials.TaylorQuartic(cfg["potential.phi0"], cfg["potential.c0"],
                                        cfg["potential.c1"])
    except PreconditionError as exc:
        raise ConfigError(f"potential: {exc}") from None


def _build_grid(cfg: dict, prefix: str = "grid") -> Grid:
    lo, hi, n = (("tau.min", "tau.max", "tau.n") if prefix == "tau"
                 else ("grid.x_min", "grid.x_max", "grid.n"))
    try:
        return Grid(cfg[lo], cfg[hi], cfg[n])
    except PreconditionError as exc:
        raise ConfigError(f"{prefix}: {exc}") from None


def _bracket(cfg: dict) -> tuple[float, float]:
    return cfg["minima.bracket_min"], cfg["minima.bracket_max"]


# -- deterministic serialisation ---------------------------------------------

def _json_scalar(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return json.dumps(x)
        text = format(x, ".17g")
        return text if any(c in text for c in ".en") else text + ".0"
    return json.dumps(str(x), ensure_ascii=False)


def to_json(obj, indent: int = 0) -> str:
    """JSON text with sorted keys and 17 significant digits for floats."""
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {to_json(obj[k], indent + 2)}"
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{to_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _json_scalar(obj)


def _write_json(path: Path, payload: dict, cfg: dict) -> None:
    body = dict(payload)
    body["config"] = cfg
    path.write_text(to_json(body) + "\n", encoding="utf-8")


def _write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format(float(v), ".12g") for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


# -- commands ----------------------------------------------------------------

def cmd_kink(cfg: dict, out: Path) -> None:
    sol = solitons.solve_kink(_build_spec(cfg), _build_grid(cfg))
    lattice.write_csv(sol.profile, out / "kink_profile.csv")
    _write_json(out / "kink.json", sol.summary(), cfg)


def cmd_minima(cfg: dict, out: Path) -> None:
    vac = potentials.find_minima(_build_spec(cfg), _bracket(cfg))
    _write_json(out / "minima.json", vac.as_dict(), cfg)


def _action_profile(cfg: dict, spec, grid: Grid) -> FieldConfig:
    source = cfg["action.profile"]
    if source == "kink":
        return solitons.solve_kink(spec, grid).profile
    if source in ("false-vacuum", "true-vacuum"):
        vac = potentials.find_minima(spec, _bracket(cfg))
        phi = vac.phi_false if source == "false-vacuum" else vac.phi_true
        return FieldConfig(grid, np.full(grid.n, phi))
    return lattice.read_csv(source)


def cmd_action(cfg: dict, out: Path) -> None:
    spec = _build_spec(cfg)
    profile = _action_profile(cfg, spec, _build_grid(cfg))
    mode = cfg["action.mode"]
    if mode == "static":
        report = energy_functional(spec, profile)
    elif mode == "reduced":
        report = reduced_action(spec, profile, cfg["action.t_p"])
    else:
        report = euclidean_action_2d(spec, SpacetimeConfig.static(_build_grid(cfg, "tau"),
                                                                  profile))
    payload = report.as_dict()
    if cfg["action.bound"]:
        payload["bound"] = lagrangian_bound(spec, profile, q_abs=cfg["action.q_abs"],
                                            bracket=_bracket(cfg)).as_dict()
    _write_json(out / "action.json", payload, cfg)


def _overlap_point(cfg: dict, tilt: float | None = None) -> dict:
    spec = _build_spec(cfg, tilt)
    if not isinstance(spec, potentials.DrivenSineGordon):
        raise ConfigError("potential.family: overlap and sweep need 'sine-gordon'")
    grid = _build_grid(cfg)
    vac = potentials.find_minima(spec, _bracket(cfg))
    psi_i, psi_f = wavefunctional.vacuum_states(spec, grid, _bracket(cfg))
    log_ov = wavefunctional.log_overlap(psi_i, psi_f)
    return {"phi_F": vac.phi_false, "phi_T": vac.phi_true, "gap": vac.gap,
            "alpha": potentials.gap_to_stiffness(vac.gap),
            "overlap": min(1.0, math.exp(log_ov)), "log_overlap": log_ov}


def cmd_overlap(cfg: dict, out: Path) -> None:
    _write_json(out / "overlap.json", _overlap_point(cfg), cfg)


def delta_demo_rows(l_sep: float, n_min: float, n_max: float, n_count: int) -> list[tuple]:
    """Rows (N, computed, closed_form, paper_value_flag); N = 2 sqrt(pi) is always included."""
    if not (0 < n_min <= n_max) or n_count < 1:
        raise ConfigError("delta: need 0 < n_min <= n_max and n_count >= 1")
    ns = sorted(set(np.linspace(n_min, n_max, n_count).tolist()) | {REFERENCE_DELTA_N})
    rows = []
    for n in ns:
        pair = DeltaPair.auto(n, l_sep)
        rows.append((n, lattice.wall_gradient_energy(pair),
                     lattice.wall_gradient_energy_closed_form(n, l_sep),
                     1.0 if n == REFERENCE_DELTA_N else 0.0))
    return rows


def cmd_delta_demo(cfg: dict, out: Path) -> None:
    if not cfg["delta.l_sep"] > 0:
        raise ConfigError("delta.l_sep: must be > 0")
    rows = delta_demo_rows(cfg["delta.l_sep"], cfg["delta.n_min"], cfg["delta.n_max"],
                           cfg["delta.n_count"])
    _write_csv(out / "delta_demo.csv", ["N", "computed", "closed_form", "paper_value_flag"],
               rows)


def sweep_tilts(eps_min: float, eps_max: float, eps_step: float) -> list[float]:
    if not (eps_step > 0 and 0 < eps_min <= eps_max):
        raise ConfigError("sweep: need eps_step > 0 and 0 < eps_min <= eps_max")
    count = int(math.floor((eps_max - eps_min) / eps_step + 1e-9)) + 1
    return [eps_min + k * eps_step for k in range(count)]


def cmd_sweep(cfg: dict, out: Path) -> None:
    tilts = sweep_tilts(cfg["sweep.eps_min"], cfg["sweep.eps_max"], cfg["sweep.eps_step"])
    workers = max(1, cfg["sweep.workers"])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        points = list(pool.map(lambda e: _overlap_point(cfg, e), tilts))
    rows = [(e, p["phi_F"], p["phi_T"], p["gap"], p["alpha"], p["log_overlap"])
            for e, p in zip(tilts, points)]
    _write_csv(out / "sweep.csv", ["epsilon", "phi_F", "phi_T", "gap", "alpha", "log_overlap"],
               rows)


HANDLERS = {"kink": cmd_kink, "minima": cmd_minima, "action": cmd_action,
            "overlap": cmd_overlap, "delta-demo": cmd_delta_demo, "sweep": cmd_sweep}


def run(command: str, cfg: dict) -> int:
    """Execute ``command`` on a resolved configuration; returns the exit code."""
    try:
        out = Path(cfg["output.dir"])
        out.mkdir(parents=True, exist_ok=True)
        HANDLERS[command](cfg, out)
    except (ConfigError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _parse_overrides(extra: list[str]) -> dict[str, str]:
    overrides = {}
    i = 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(extra):
                raise ConfigError(f"--{key}: missing value")
            value = extra[i + 1]
            i += 2
        overrides[key] = value
    return overrides


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="falsevac",
        description="Kinks, vacua, Euclidean actions and vacuum overlaps in 1-D.",
        epilog="Override any configuration key with --section.key VALUE.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("config", nargs="?", help="key = value configuration file")
    args, extra = parser.parse_known_args(argv)
    try:
        entries = {}
        if args.config:
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                print(f"I/O error: {exc}", file=sys.stderr)
                return EXIT_IO
            entries = parse_config_text(text, args.config)
        entries.update(_parse_overrides(extra))
        cfg = resolve_config(entries)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(args.command, cfg)


if __name__ == "__main__":
    sys.exit(main())
