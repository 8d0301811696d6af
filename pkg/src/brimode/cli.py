"""Command-line interface.

Exit statuses: 0 success, 2 configuration/spec errors (bad config file,
unknown keys or identifiers, invalid parameters), 3 numerical/physical
precondition errors (singular steady state, instability, non-convergence).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import closedform, darkbright, ledger
from .config import apply_overrides, load_config
from .dynamics import IntegratorConfig, integrate, settle
from .errors import (BrimodeError, ConfigError, ConstraintError, IntegrationError,
                     ParameterError, SettleError, SingularSteadyStateError)
from .steady import ModeAmplitudes, residual, solve_steady_numeric, stability_report
from .sweep import FIGURE_IDS, OBSERVABLES, SweepSpec, figure_dataset, run_sweep

_CONFIG_ERRORS = (ConfigError, ParameterError)
_NUMERIC_ERRORS = (SingularSteadyStateError, ConstraintError, IntegrationError, SettleError)


def _add_common(parser):
    parser.add_argument("--config", help="parameter file ([physical]/[system] sections)")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="tabular output format")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a [system] key (repeatable)")
    parser.add_argument("--points", type=int, default=None, help="sweep grid points")
    parser.add_argument("--t-max", type=float, default=None, dest="t_max",
                        help="integration horizon (units of 1/kappa1)")
    parser.add_argument("--quiet", action="store_true", help="suppress the report")
    parser.add_argument("--debug", action="store_true", help="verbose diagnostics")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="brimode",
        description="Steady-state and time-domain solvers for phonon-mediated "
                    "optical mode conversion")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("steady", "solve the steady state and report intensities and efficiency"),
            ("figure", "emit the dataset behind a reference figure"),
            ("sweep", "run a one-parameter sweep of selected observables"),
            ("dynamics", "integrate the equations of motion and export the trajectory"),
            ("darkbright", "rotated-frame coefficients and steady amplitudes"),
            ("ledger", "write the printed-vs-corrected reconciliation document")):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "figure":
            p.add_argument("figure_id", choices=FIGURE_IDS)
        if name == "sweep":
            p.add_argument("--param", required=True, help="swept parameter name")
            p.add_argument("--start", type=float, required=True)
            p.add_argument("--stop", type=float, required=True)
            p.add_argument("--observables", default="i1,i2",
                           help=f"comma list from {','.join(OBSERVABLES)}")
        if name == "dynamics":
            p.add_argument("--initial", nargs=3, default=["0", "0", "0"],
                           metavar=("A1", "A2", "B"),
                           help="initial complex amplitudes, e.g. 1+0j 0 0")
            p.add_argument("--settle", action="store_true",
                           help="relax from the zero state until the steady-state "
                                "residual converges (requires a stable system)")
    return parser


def _load_system(args):
    if not args.config:
        raise ConfigError("--config is required for this command")
    _, system = load_config(args.config)
    overrides = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key] = value
    return apply_overrides(system, overrides)


def _out_dir(args) -> Path:
    path = Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _say(args, text):
    if not args.quiet:
        print(text)


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_steady(args) -> int:
    params = _load_system(args)
    amps = solve_steady_numeric(params, warn_unstable=False)
    report = stability_report(params)
    i1_num, i2_num = abs(amps.a1) ** 2, abs(amps.a2) ** 2
    i1_cf = closedform.intensity_mode1_closed(params)
    i2_cf = closedform.intensity_mode2_closed(params)
    eta = closedform.conversion_efficiency(params)
    res = residual(params, amps)

    def rel(a, b):
        return abs(a - b) / max(abs(a), abs(b), 1e-300)

    record = {
        "a1": [amps.a1.real, amps.a1.imag],
        "a2": [amps.a2.real, amps.a2.imag],
        "b": [amps.b.real, amps.b.imag],
        "i1_numeric": i1_num, "i1_closed": i1_cf, "i1_rel_dev": rel(i1_num, i1_cf),
        "i2_numeric": i2_num, "i2_closed": i2_cf, "i2_rel_dev": rel(i2_num, i2_cf),
        "eta": eta, "residual": res, "stability_margin": report.margin,
        "stable": bool(report.is_stable),
    }
    out = _out_dir(args)
    if args.format == "json":
        path = out / "steady.json"
        with open(path, "w") as fh:
            json.dump(record, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        path = out / "steady.csv"
        with open(path, "w") as fh:
            fh.write("quantity,value\n")
            for key in sorted(record):
                value = record[key]
                if isinstance(value, list):
                    fh.write(f"{key}_re,{_fmt(value[0])}\n{key}_im,{_fmt(value[1])}\n")
                else:
                    fh.write(f"{key},{_fmt(float(value))}\n")
    _say(args, f"a1 = {amps.a1:.6g}\na2 = {amps.a2:.6g}\nb  = {amps.b:.6g}")
    _say(args, f"i1 numeric/closed: {i1_num:.9g} / {i1_cf:.9g} (rel dev {rel(i1_num, i1_cf):.2e})")
    _say(args, f"i2 numeric/closed: {i2_num:.9g} / {i2_cf:.9g} (rel dev {rel(i2_num, i2_cf):.2e})")
    _say(args, f"eta = {eta:.9g}")
    _say(args, f"stability margin = {report.margin:+.6g} ({'stable' if report.is_stable else 'UNSTABLE'})")
    _say(args, f"wrote {path}")
    return 0


def _argmax_info(result, name):
    values = np.asarray(result.columns[name], dtype=float)
    grid = np.asarray(result.columns[result.spec.parameter], dtype=float)
    finite = np.isfinite(values)
    if not finite.any():
        return None
    idx = int(np.nanargmax(np.where(finite, values, -np.inf)))
    return {"at": float(grid[idx]), "value": float(values[idx])}


def cmd_figure(args) -> int:
    results = figure_dataset(args.figure_id, points=args.points)
    out = _out_dir(args)
    manifest = {"figure": args.figure_id, "curves": []}
    for result in results:
        name = f"{args.figure_id}_{result.label.replace('=', '').replace('.', 'p')}.csv"
        path = out / name
        with open(path, "w") as fh:
            result.write_csv(fh)
        observable = result.observable_names[0]
        values = [v for v in result.columns[observable] if np.isfinite(v)]
        curve = {
            "label": result.label,
            "observable": observable,
            "csv": name,
            "points": result.spec.points,
            "parameters": result.to_json_dict()["base"],
            "meta": result.meta,
            "peak": _argmax_info(result, observable),
            "monotone_increasing": bool(all(b > a for a, b in zip(values, values[1:]))),
            "monotone_decreasing": bool(all(b < a for a, b in zip(values, values[1:]))),
            "n_unstable": sum(1 for f in result.columns["flag"] if f == "unstable"),
            "n_singular": sum(1 for f in result.columns["flag"] if f == "singular"),
        }
        manifest["curves"].append(curve)
        _say(args, f"wrote {path}")
    manifest_path = out / f"{args.figure_id}_manifest.json"
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _say(args, f"wrote {manifest_path}")
    return 0


def cmd_sweep(args) -> int:
    params = _load_system(args)
    observables = [o.strip() for o in args.observables.split(",") if o.strip()]
    spec = SweepSpec(parameter=args.param, start=args.start, stop=args.stop,
                     points=args.points or 150)
    result = run_sweep(params, spec, observables)
    out = _out_dir(args)
    if args.format == "json":
        path = out / "sweep.json"
        with open(path, "w") as fh:
            result.write_json(fh)
    else:
        path = out / "sweep.csv"
        with open(path, "w") as fh:
            result.write_csv(fh)
    _say(args, f"wrote {path}")
    return 0


def cmd_dynamics(args) -> int:
    params = _load_system(args)
    try:
        initial = ModeAmplitudes(*(complex(s) for s in args.initial))
    except ValueError as exc:
        raise ConfigError(f"--initial expects complex numbers: {exc}") from exc
    if args.settle:
        amps = settle(params)
        out = _out_dir(args)
        path = out / "settled.json"
        with open(path, "w") as fh:
            json.dump({
                "a1": [amps.a1.real, amps.a1.imag],
                "a2": [amps.a2.real, amps.a2.imag],
                "b": [amps.b.real, amps.b.imag],
                "residual": residual(params, amps),
            }, fh, indent=2, sort_keys=True)
            fh.write("\n")
        _say(args, f"settled: a1 = {amps.a1:.6g}, a2 = {amps.a2:.6g}, b = {amps.b:.6g}")
        _say(args, f"wrote {path}")
        return 0
    t_max = args.t_max if args.t_max is not None else 200.0
    config = IntegratorConfig(t_max=t_max)
    trajectory = integrate(params, initial, config)
    out = _out_dir(args)
    path = out / "trajectory.csv"
    with open(path, "w") as fh:
        fh.write("t,a1_re,a1_im,a2_re,a2_im,b_re,b_im\n")
        for t, row in zip(trajectory.times, trajectory.states):
            cells = [t, row[0].real, row[0].imag, row[1].real, row[1].imag,
                     row[2].real, row[2].imag]
            fh.write(",".join(_fmt(c) for c in cells) + "\n")
    final_res = residual(params, trajectory.final)
    _say(args, f"{len(trajectory)} points to t = {trajectory.times[-1]:.6g}")
    _say(args, f"final-state residual = {final_res:.6e}")
    _say(args, f"wrote {path}")
    return 0


def cmd_darkbright(args) -> int:
    params = _load_system(args)
    coeffs = darkbright.coefficients(params)
    state = darkbright.steady_dark_bright(params)
    amps = solve_steady_numeric(params, warn_unstable=False)
    reference = darkbright.transform(amps, params.g1, params.g2)
    dev = max(abs(state.a_b - reference.a_b) / max(abs(reference.a_b), 1e-300),
              abs(state.a_d - reference.a_d) / max(abs(reference.a_d), 1e-300))
    record = {
        "coefficients": {k: getattr(coeffs, k) for k in (
            "delta_d", "delta_b", "g_bd", "g_12", "g1_tilde", "g2_tilde",
            "a_1", "a_2", "g_tilde")},
        "a_bright": [state.a_b.real, state.a_b.imag],
        "a_dark": [state.a_d.real, state.a_d.imag],
        "pop_bright": abs(state.a_b) ** 2,
        "pop_dark": abs(state.a_d) ** 2,
        "crosscheck_rel_dev": dev,
        "stability_margin": stability_report(params).margin,
    }
    out = _out_dir(args)
    path = out / "darkbright.json"
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _say(args, f"|a_B|^2 = {record['pop_bright']:.9g}, |a_D|^2 = {record['pop_dark']:.9g}")
    _say(args, f"closed-form vs transformed-numeric rel dev = {dev:.2e}")
    _say(args, f"wrote {path}")
    return 0


def cmd_ledger(args) -> int:
    document = ledger.render_markdown()
    out = _out_dir(args)
    path = out / "TYPO_LEDGER.md"
    path.write_text(document)
    _say(args, f"wrote {path} ({len(document.splitlines())} lines)")
    return 0


_COMMANDS = {
    "steady": cmd_steady,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
    "dynamics": cmd_dynamics,
    "darkbright": cmd_darkbright,
    "ledger": cmd_ledger,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BrimodeError as exc:
        if args.debug:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
