"""Batch front end: JSON experiment configs in, CSV/JSON results out.

Subcommands:
    pattern <config>   simulate one configuration, write pattern.csv + meta.json
    sweep <config>     randomized duality verification, write sweep.csv + summary.json
    verify             run the full acceptance suite

Exit codes: 0 success (all requested checks pass), 1 a check failed,
2 config/schema error, 3 numeric error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from .duality import (
    BOUND_SLACK,
    duality_lhs_three,
    duality_lhs_two,
    sweep_duality,
)
from .fringe import NoFringesError, extract_visibility, visibility_bound
from .presets import PRESET_NAMES, preset_states
from .states import DetectorConfig, DetectorState
from .uqsd import distinguishability
from .wavepacket import sample_pattern, three_slit, two_slit

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Config validation failure; the message carries the offending field path."""


def _fail(path, message):
    raise ConfigError(f"{path}: {message}")


def _require(cfg, key, kind, path, default=None, required=False):
    if key not in cfg:
        if required:
            _fail(f"{path}.{key}", "missing required field")
        return default
    value = cfg[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        _fail(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}, "
                               f"got {type(value).__name__}")
    return value


def load_config(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"$: not valid JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("$: top level must be an object")
    version = _require(cfg, "version", int, "$", required=True)
    if version != SCHEMA_VERSION:
        _fail("$.version", f"unsupported schema version {version}")
    return cfg


def _parse_amplitude(entry, path):
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if (isinstance(entry, list) and len(entry) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                    for v in entry)):
        return complex(entry[0], entry[1])
    _fail(path, "amplitude must be a number or a [re, im] pair")


def _parse_detector(cfg, n_slits, priors):
    spec = _require(cfg, "detector", dict, "$", required=True)
    has_preset = "preset" in spec
    has_states = "states" in spec
    if has_preset == has_states:
        _fail("$.detector", "give exactly one of 'preset' and 'states'")
    if has_preset:
        name = _require(spec, "preset", str, "$.detector", required=True)
        if name not in PRESET_NAMES:
            _fail("$.detector.preset", f"unknown preset {name!r}; "
                                       f"choose from {PRESET_NAMES}")
        try:
            states = preset_states(name, n_slits)
        except ValueError as exc:
            _fail("$.detector.preset", str(exc))
    else:
        raw = _require(spec, "states", list, "$.detector", required=True)
        if len(raw) != n_slits:
            _fail("$.detector.states", f"expected {n_slits} states, got {len(raw)}")
        states = []
        for i, vec in enumerate(raw):
            if not isinstance(vec, list) or not vec:
                _fail(f"$.detector.states[{i}]", "state must be a nonempty list")
            amps = [_parse_amplitude(v, f"$.detector.states[{i}][{k}]")
                    for k, v in enumerate(vec)]
            try:
                states.append(DetectorState(np.array(amps)))
            except ValueError as exc:
                _fail(f"$.detector.states[{i}]", str(exc))
    try:
        return DetectorConfig(tuple(states), priors)
    except ValueError as exc:
        raise ConfigError(f"$.priors: {exc}") from exc


def _parse_priors(cfg, n_slits):
    raw = cfg.get("priors", "equal")
    if raw == "equal":
        return np.full(n_slits, 1.0 / n_slits)
    if not isinstance(raw, list):
        _fail("$.priors", "expected 'equal' or a list of numbers")
    if len(raw) != n_slits:
        _fail("$.priors", f"expected {n_slits} entries, got {len(raw)}")
    for i, v in enumerate(raw):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            _fail(f"$.priors[{i}]", "expected a number")
    return np.asarray(raw, dtype=float)


def _parse_geometry(cfg, n_slits):
    spacing = _require(cfg, "spacing", dict, "$", required=True)
    width = _require(cfg, "epsilon", float, "$", default=1.0)
    mass = _require(cfg, "mass", float, "$", default=1.0)
    hbar = _require(cfg, "hbar", float, "$", default=1.0)
    time = _require(cfg, "time", float, "$")
    sigma_over_d = _require(cfg, "sigma_over_d", float, "$")
    if (time is None) == (sigma_over_d is None):
        _fail("$", "give exactly one of 'time' and 'sigma_over_d'")
    kwargs = dict(width=width, mass=mass, hbar=hbar,
                  time=time, sigma_over_d=sigma_over_d)
    try:
        if n_slits == 3:
            if "d" in spacing:
                d = _require(spacing, "d", float, "$.spacing", required=True)
                return three_slit(d, d, **kwargs)
            l1 = _require(spacing, "l1", float, "$.spacing", required=True)
            l2 = _require(spacing, "l2", float, "$.spacing", required=True)
            return three_slit(l1, l2, **kwargs)
        d = _require(spacing, "d", float, "$.spacing", required=True)
        return two_slit(d, **kwargs)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"$.spacing: {exc}") from exc


def _parse_grid(cfg):
    grid = _require(cfg, "grid", dict, "$", default={})
    spp = _require(grid, "samples_per_period", int, "$.grid", default=64)
    window = grid.get("window_periods", [0.25, 3.25])
    if (not isinstance(window, list) or len(window) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                       for v in window)):
        _fail("$.grid.window_periods", "expected [low, high] in fringe periods")
    return spp, (float(window[0]), float(window[1]))


def _format_number(value) -> str:
    return f"{value:.17g}"


def _write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _json_ready(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _write_json(path: Path, payload: dict):
    payload = {k: _json_ready(v) for k, v in payload.items()}
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def run_pattern(config_path, out_dir=".", fmt="csv", seed=None) -> dict:
    """Simulate one experiment config; write pattern data plus meta.json."""
    cfg = load_config(config_path)
    n_slits = _require(cfg, "n_slits", int, "$", required=True)
    if n_slits not in (2, 3):
        _fail("$.n_slits", "must be 2 or 3")
    priors = _parse_priors(cfg, n_slits)
    det = _parse_detector(cfg, n_slits, priors)
    geom = _parse_geometry(cfg, n_slits)
    spp, window_periods = _parse_grid(cfg)

    period = geom.fringe_period
    window = (window_periods[0] * period, window_periods[1] * period)
    pattern = sample_pattern(geom, det, window=window, samples_per_period=spp)

    try:
        report = extract_visibility(pattern, fringe_index=1)
        v, fringes_found = report.v, True
    except NoFringesError:
        v, fringes_found = 0.0, False

    d_q = distinguishability(det)
    bound = visibility_bound(det)
    lhs = duality_lhs_three(v, d_q) if n_slits == 3 else duality_lhs_two(v, d_q)
    satisfied = lhs <= 1.0 + BOUND_SLACK

    out = Path(out_dir)
    if fmt == "csv":
        rows = [",".join((_format_number(x), _format_number(y)))
                for x, y in zip(pattern.xs, pattern.intensities)]
        _write_text(out / "pattern.csv", "\n".join(["x,intensity", *rows]) + "\n")
    else:
        _write_json(out / "pattern.json", {
            "x": [float(x) for x in pattern.xs],
            "intensity": [float(y) for y in pattern.intensities],
        })
    meta = {
        "n_slits": n_slits,
        "n_beams": pattern.n_beams,
        "sigma": pattern.sigma,
        "omega": math.sqrt(pattern.omega_sq),
        "fringe_period": pattern.fringe_period,
        "d_q": d_q,
        "visibility_bound": bound,
        "v": v,
        "fringes_found": fringes_found,
        "duality_lhs": lhs,
        "bound_satisfied": satisfied,
    }
    _write_json(out / "meta.json", meta)
    return meta


def run_sweep(config_path, out_dir=".", fmt="csv", seed=None) -> dict:
    """Run a randomized duality sweep config; write sweep rows plus summary.json."""
    cfg = load_config(config_path)
    n_configs = _require(cfg, "n_configs", int, "$", required=True)
    if n_configs < 1:
        _fail("$.n_configs", "must be >= 1")
    cfg_seed = _require(cfg, "seed", int, "$", required=True)
    if seed is not None:
        cfg_seed = seed
    mode = _require(cfg, "geometry_mode", str, "$", default="equal")
    if mode not in ("equal", "unequal"):
        _fail("$.geometry_mode", "must be 'equal' or 'unequal'")
    sigma_over_d = _require(cfg, "sigma_over_d", float, "$", default=200.0)
    base_spacing = _require(cfg, "base_spacing", float, "$", default=100.0)
    spp = _require(cfg, "samples_per_period", int, "$", default=64)
    equal_priors = _require(cfg, "equal_priors", bool, "$", default=False)
    nonnegative = cfg.get("nonnegative_states")
    if nonnegative is not None and not isinstance(nonnegative, bool):
        _fail("$.nonnegative_states", "expected a boolean")

    reports = sweep_duality(
        n_configs, cfg_seed, mode,
        sigma_over_d=sigma_over_d,
        base_spacing=base_spacing,
        equal_priors=equal_priors,
        nonnegative_states=nonnegative,
        samples_per_period=spp,
    )

    unequal = mode == "unequal"
    header = ["index", "d_q", "v", "lhs", "slack", "satisfied"]
    if unequal:
        header.append("v_equal")
    rows = []
    for i, r in enumerate(reports):
        row = [str(i), _format_number(r.d_q), _format_number(r.v),
               _format_number(r.lhs), _format_number(r.slack),
               "true" if r.bound_satisfied else "false"]
        if unequal:
            row.append(_format_number(r.v_equal))
        rows.append(",".join(row))

    out = Path(out_dir)
    if fmt == "csv":
        _write_text(out / "sweep.csv", "\n".join([",".join(header), *rows]) + "\n")
    else:
        _write_json(out / "sweep.json", {"rows": [dict(zip(header, r.split(",")))
                                                  for r in rows]})

    slacks = np.array([r.slack for r in reports])
    violations = int(sum(not r.bound_satisfied for r in reports))
    summary = {
        "n_configs": n_configs,
        "geometry_mode": mode,
        "seed": cfg_seed,
        "violations": violations,
        "min_slack": float(slacks.min()),
        "slack_quantiles": {
            "q00": float(np.quantile(slacks, 0.0)),
            "q25": float(np.quantile(slacks, 0.25)),
            "q50": float(np.quantile(slacks, 0.5)),
            "q75": float(np.quantile(slacks, 0.75)),
            "q100": float(np.quantile(slacks, 1.0)),
        },
    }
    if unequal:
        summary["pairs_out_of_order"] = int(
            sum(not (r.v < r.v_equal) for r in reports)
        )
    _write_json(out / "summary.json", summary)
    return summary


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trislit",
        description="Multi-slit interference with a quantum which-path detector",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out-dir", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="tabular output format")

    pat = sub.add_parser("pattern", help="simulate one configuration")
    pat.add_argument("config", help="JSON experiment config")
    add_common(pat)

    swp = sub.add_parser("sweep", help="randomized duality verification sweep")
    swp.add_argument("config", help="JSON sweep config")
    add_common(swp)

    sub.add_parser("verify", help="run the full acceptance suite")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            results = acceptance.run_acceptance()
            return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED
        if args.command == "pattern":
            meta = run_pattern(args.config, args.out_dir, args.format, args.seed)
            return EXIT_OK if meta["bound_satisfied"] else EXIT_CHECK_FAILED
        summary = run_sweep(args.config, args.out_dir, args.format, args.seed)
        clean = summary["violations"] == 0 and summary.get("pairs_out_of_order", 0) == 0
        return EXIT_OK if clean else EXIT_CHECK_FAILED
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
