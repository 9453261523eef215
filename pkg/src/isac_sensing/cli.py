"""Command-line front end: ``isac-sensing {dist,cfar,ardcp,validate,replay}``.

Densities on the command line are in BSs/km^2. Every output directory gets
a ``manifest.txt`` that ``replay`` turns back into the same run.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, fields
from pathlib import Path

import numpy as np

from . import __version__, cfar, coverage, interference, inversion, montecarlo, specials, validation
from .params import (KM2_PER_M2, NetworkParams, ValidationError, check, load_config,
                     namespaced, params_from_mapping, parse_config_text)
from .point_field import BudgetError

CSV_SCHEMA = 1
EXIT_OK, EXIT_CONFIG, EXIT_UNDEFINED, EXIT_NUMERICAL, EXIT_VALIDATION = 0, 2, 3, 4, 5

_MC_KEYS = {f.name: f.type for f in fields(montecarlo.McConfig)}
_INV_KEYS = {f.name for f in fields(inversion.InversionConfig)}


class ConfigError(ValueError):
    pass


# -- inputs ------------------------------------------------------------------

def _parse_mc(raw):
    out = {}
    for key, value in raw.items():
        if key not in _MC_KEYS:
            raise ConfigError(f"unknown config key 'mc.{key}'")
        if key == "guard_mode":
            out[key] = value
        elif key == "shell_ratio" and value.lower() == "none":
            out[key] = None
        elif key in ("trials", "seed", "chunk_size", "workers"):
            out[key] = int(float(value))
        else:
            out[key] = float(value)
    return out


def _parse_inversion(raw):
    out = {}
    for key, value in raw.items():
        if key not in _INV_KEYS:
            raise ConfigError(f"unknown config key 'inversion.{key}'")
        if key == "omega_max" and value.lower() == "none":
            out[key] = None
        elif key == "max_subdivisions":
            out[key] = int(float(value))
        else:
            out[key] = float(value)
    return out


def resolve_config(args, raw=None):
    """Layer defaults < config file < ``--set`` < dedicated flags.

    Returns the merged flat key=value mapping plus the parsed objects.
    """
    merged = dict(raw) if raw is not None else {}
    if getattr(args, "config", None):
        merged.update(load_config(args.config))
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        merged[key.strip()] = value.strip()
    if getattr(args, "seed", None) is not None:
        merged["mc.seed"] = str(args.seed)
    if getattr(args, "mc_trials", None) is not None:
        merged["mc.trials"] = str(int(args.mc_trials))
    if getattr(args, "workers", None) is not None:
        merged["mc.workers"] = str(args.workers)
    if getattr(args, "guard_mode", None) is not None:
        merged["mc.guard_mode"] = args.guard_mode
    params = params_from_mapping(merged)
    mc_raw = _parse_mc(namespaced(merged, "mc"))
    inv = inversion.InversionConfig(**_parse_inversion(namespaced(merged, "inversion")))
    return merged, params, mc_raw, inv


def mc_config(mc_raw):
    """McConfig when Monte Carlo was requested, else None. Refuses to run without a seed."""
    trials = mc_raw.get("trials", 0)
    if not trials:
        return None
    if "seed" not in mc_raw:
        raise ConfigError("Monte Carlo output requested but no seed given (use --seed)")
    return montecarlo.McConfig(**mc_raw)


def _densities(args, params):
    if not args.lambda_b:
        return [params.lambda_B]
    return [v / KM2_PER_M2 for v in args.lambda_b]


# -- outputs -----------------------------------------------------------------

def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_manifest(out, args, merged, params, outputs):
    lines = {
        "csv_schema": CSV_SCHEMA,
        "version": __version__,
        "command": args.command,
        "lambda_B_m2": repr(params.lambda_B),
        "lambda_B_km2": repr(params.lambda_B * KM2_PER_M2),
        "seed": merged.get("mc.seed", ""),
        "outputs": ",".join(outputs),
    }
    for key, value in vars(args).items():
        if key in ("config", "set", "out", "func", "command", "seed", "mc_trials", "workers", "guard_mode"):
            continue
        lines[f"arg.{key}"] = json.dumps(value)
    for key, value in asdict(params).items():
        lines[f"config.{key}"] = repr(value)
    for key, value in sorted(merged.items()):
        if key.startswith(("mc.", "inversion.")):
            lines[f"config.{key}"] = value
    text = "".join(f"{k} = {v}\n" for k, v in lines.items())
    (Path(out) / "manifest.txt").write_text(text, encoding="utf-8")


# -- commands ----------------------------------------------------------------

def _guarded_models(params):
    r_c = montecarlo.guard_radius(params)
    return r_c, {
        "stable": interference.stable_params_noncoop(params),
        "tsd": interference.tsd_params_coop(params, r_c),
        "sia": interference.SiaParams(params.lambda_B, params.alpha_c, r_c),
    }


def cmd_dist(args, merged, params, mc_raw, inv, out):
    cfg = mc_config(mc_raw)
    kinds = ["stable", "tsd", "sia"] if args.model == "all" else [args.model]
    outputs, summary = [], []
    for lam in _densities(args, params):
        p = check(params.with_(lambda_B=lam))
        r_c, models = _guarded_models(p)
        k1 = interference.campbell_cumulant(1, p, r_c)
        grid = k1 * np.geomspace(args.grid_min, args.grid_max, args.grid_points)
        columns = {f"ccdf_{k}": models[k].ccdf(grid, inv) for k in kinds}
        record = {"lambda_B_m2": lam, "lambda_B_km2": lam * KM2_PER_M2,
                  "guard_radius": r_c, "kappa1": k1}
        if cfg is not None:
            cooperative = kinds != ["stable"]
            draws = montecarlo.sample_interference_batch(p, cfg, cooperative)
            emp = montecarlo.empirical_ccdf(draws, grid)
            columns["ccdf_mc"] = emp
            columns["mc_stderr"] = np.sqrt(emp * (1 - emp) / draws.size)
            # the stable law describes unguarded draws, the other two guarded ones
            for k in (kinds if not cooperative else [k for k in kinds if k != "stable"]):
                record[f"ks_{k}"] = montecarlo.ks_distance(emp, columns[f"ccdf_{k}"])
        name = f"dist_lambda_km2_{lam * KM2_PER_M2:g}.csv"
        header = ["x"] + list(columns)
        write_csv(out / name, header, zip(grid, *columns.values()))
        outputs.append(name)
        summary.append(record)
        print(f"lambda_B = {lam:g} /m^2 ({lam * KM2_PER_M2:g} /km^2): wrote {name}"
              + "".join(f", {k} {v:.4f}" for k, v in record.items() if k.startswith("ks_")))
    header = list(summary[0])
    write_csv(out / "dist_summary.csv", header, ([r.get(h) for h in header] for r in summary))
    outputs.append("dist_summary.csv")
    return outputs


def cmd_cfar(args, merged, params, mc_raw, inv, out):
    cfg = mc_config(mc_raw)
    r_c, models = _guarded_models(params)
    res = cfar.resolve_cfar(args.p_frame, params, models[args.model], r_c, inv)
    row = asdict(res)
    row.update(model=args.model, guard_radius=r_c)
    if cfg is not None:
        est = montecarlo.mc_false_alarm_rate(params, res.eta, cfg)
        row.update(p_bin_mc=est.value, mc_stderr=est.std_error)
    for key, value in row.items():
        print(f"{key:>18} = {value}")
    write_csv(out / "cfar.csv", list(row), [list(row.values())])
    return ["cfar.csv"]


_SWEEP_FIELD = {"lambda_b": "lambda_B", "h_b": "h_B", "n_c": "N_c"}


def _sweep_point(params, sweep, value):
    if sweep == "t_r":
        return params
    if sweep == "lambda_b":
        value = value / KM2_PER_M2
    elif sweep == "n_c":
        value = int(value)
    return check(params.with_(**{_SWEEP_FIELD[sweep]: value}))


def cmd_ardcp(args, merged, params, mc_raw, inv, out):
    cfg = mc_config(mc_raw)
    if args.sweep == "t_r" and args.p_frame is not None:
        raise ConfigError("--p-frame cannot be combined with a t_r sweep")
    rows = []
    for value in args.values:
        p = _sweep_point(params, args.sweep, value)
        if args.sweep == "t_r":
            t_r = value
        elif args.p_frame is not None:
            r_c, models = _guarded_models(p)
            t_r = cfar.resolve_cfar(args.p_frame, p, models["tsd"], r_c, inv).t_r
        else:
            t_r = args.t_r
        analytic = coverage.ardcp(t_r, p, args.mode)
        row = [value, t_r, analytic]
        if cfg is not None:
            est = montecarlo.mc_ardcp(p, t_r, cfg)
            gap = est.value / analytic - 1 if analytic > 0 else math.nan
            row += [est.value, est.std_error, gap]
        rows.append(row)
        print("  ".join(f"{v:.6g}" for v in row))
    header = ["sweep_value", "t_r", "ardcp_analytic"]
    if cfg is not None:
        header += ["ardcp_mc", "mc_stderr", "rel_gap"]
    write_csv(out / "ardcp.csv", header, rows)
    return ["ardcp.csv"]


def cmd_validate(args, merged, params, mc_raw, inv, out):
    only = args.only or None
    results = validation.run_acceptance(args.level, only=only)
    summary = {
        "level": args.level,
        "passed": all(r.passed for r in results),
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                      "detail": r.detail, "seconds": r.seconds, "metrics": r.metrics}
                     for r in results],
    }
    (out / "validation_summary.json").write_text(
        json.dumps(summary, indent=2, default=float) + "\n", encoding="utf-8")
    failed = [r for r in results if not r.passed]
    if failed:
        print("failed: " + ", ".join(f"{r.number} ({r.name})" for r in failed))
    args.exit_code = EXIT_VALIDATION if failed else EXIT_OK
    return ["validation_summary.json"]


# -- parser ------------------------------------------------------------------

def _add_common(p, mc=True):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config key")
    p.add_argument("--out", default="out", help="output directory (default: ./out)")
    if mc:
        p.add_argument("--seed", type=int, help="Monte Carlo seed (required when trials > 0)")
        p.add_argument("--mc-trials", type=float, help="Monte Carlo trials; 0 disables")
        p.add_argument("--workers", type=int, help="worker processes for Monte Carlo chunks")
        p.add_argument("--guard-mode", choices=montecarlo.GUARD_MODES)


def build_parser():
    parser = argparse.ArgumentParser(prog="isac-sensing", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="interference CCDF curves")
    _add_common(p)
    p.add_argument("--model", choices=["stable", "tsd", "sia", "all"], default="all")
    p.add_argument("--lambda-b", type=float, nargs="+", metavar="BS_PER_KM2")
    p.add_argument("--grid-min", type=float, default=0.05, help="grid start, in units of the mean")
    p.add_argument("--grid-max", type=float, default=20.0)
    p.add_argument("--grid-points", type=int, default=80)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("cfar", help="resolve the CFAR threshold chain")
    _add_common(p)
    p.add_argument("--p-frame", type=float, default=0.1)
    p.add_argument("--model", choices=["stable", "tsd", "sia"], default="tsd")
    p.set_defaults(func=cmd_cfar)

    p = sub.add_parser("ardcp", help="coverage probability sweeps")
    _add_common(p)
    p.add_argument("--sweep", choices=["lambda_b", "h_b", "n_c", "t_r"], required=True)
    p.add_argument("--values", type=float, nargs="+", required=True,
                   help="sweep grid (lambda_b in BSs/km^2)")
    p.add_argument("--t-r", type=float, default=10.0, help="SIR threshold for non-t_r sweeps")
    p.add_argument("--p-frame", type=float, help="derive T_r per point from this frame CFAR")
    p.add_argument("--mode", choices=[m.value for m in coverage.CoverageMode],
                   default=coverage.CoverageMode.LAPLACE_CORRECTED.value)
    p.set_defaults(func=cmd_ardcp)

    p = sub.add_parser("validate", help="run the acceptance checks")
    _add_common(p, mc=False)
    p.add_argument("--level", choices=sorted(validation.TRIALS), default="fast")
    p.add_argument("--only", type=int, nargs="+", choices=sorted(validation.CRITERIA))
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", required=True)
    return parser


def _load_replay(ns, parser):
    raw = parse_config_text(Path(ns.manifest).read_text(encoding="utf-8"))
    command = raw["command"]
    args = parser.parse_args([command, "--out", ns.out] + (
        ["--sweep", "t_r", "--values", "1"] if command == "ardcp" else []))
    for key, value in raw.items():
        if key.startswith("arg."):
            setattr(args, key[4:], json.loads(value))
    config = {k[len("config."):]: v for k, v in raw.items() if k.startswith("config.")}
    return args, config


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    base = None
    try:
        if args.command == "replay":
            args, base = _load_replay(args, parser)
        merged, params, mc_raw, inv = resolve_config(args, base)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        outputs = args.func(args, merged, params, mc_raw, inv, out)
        write_manifest(out, args, merged, params, outputs)
    except (ValidationError, ConfigError, OSError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (cfar.InfiniteMeanError, interference.DivergentCumulantError) as exc:
        print(f"undefined quantity: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (ArithmeticError, BudgetError, specials.ConvergenceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return getattr(args, "exit_code", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
