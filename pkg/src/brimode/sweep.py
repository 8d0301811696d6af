"""One-parameter sweeps and the datasets behind each reference figure.

Every observable is computed from the canonical numeric steady-state
solver.  Rows where the drift matrix is singular are flagged
``singular`` and carry no observable values; rows where the system is
linearly unstable are flagged ``unstable`` and carry the algebraic
steady-state values (needed by the cross-check suite), with the flag
marking them as physically unreachable.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .darkbright import transform
from .errors import ConfigError, ParameterError, SingularSteadyStateError
from .params import SystemParams, coupling_from_cooperativity, validate
from .steady import solve_steady_numeric, stability_report

PARAMETERS = ("c2", "g2", "c1", "g1", "gamma_m", "delta2", "g_m", "alpha_p")
OBSERVABLES = ("i1", "i2", "eta", "pop_bright", "pop_dark", "margin")

FIGURE_IDS = ("fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5")

_DEFAULT_C2_RANGE = (0.1, 15.0)
_DEFAULT_POINTS = 150

# Shared caption parameters of the intensity/efficiency figures.
_EMISSION_BASE = dict(
    delta2=0.9, omega_m=1.242, delta1=0.9 - 1.242, kappa2=2.0,
    g_m=0.025, g1=0.4, g2=0.0, gamma_m=0.3)
# Caption parameters of the bright/dark population figure.
_POPULATION_BASE = dict(
    delta2=0.0, omega_m=1.242, delta1=-1.242, kappa2=1.0,
    g_m=0.025, g1=0.6, g2=0.0, gamma_m=0.2)


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for a single swept parameter (linear scale)."""

    parameter: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        v = []
        if self.parameter not in PARAMETERS:
            v.append(f"parameter in {PARAMETERS} (got {self.parameter!r})")
        if not self.start < self.stop:
            v.append("start < stop")
        if self.points < 2:
            v.append("points >= 2")
        if self.scale != "linear":
            v.append("scale == 'linear'")
        if v:
            raise ParameterError(v)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass
class SweepResult:
    """Columns of one sweep: parameter value, observables, margin, flag."""

    spec: SweepSpec
    base: SystemParams
    columns: dict
    label: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def observable_names(self) -> list:
        reserved = {self.spec.parameter, "margin", "flag"}
        return [k for k in self.columns if k not in reserved]

    def write_csv(self, fileobj) -> None:
        """Header then one row per grid point; flagged-singular cells are empty."""
        names = [self.spec.parameter] + self.observable_names + ["margin", "flag"]
        writer = csv.writer(fileobj, lineterminator="\n")
        writer.writerow(names)
        n = len(self.columns[self.spec.parameter])
        for i in range(n):
            row = []
            for name in names:
                value = self.columns[name][i]
                if name == "flag":
                    row.append(value)
                elif isinstance(value, float) and not np.isfinite(value):
                    row.append("")
                else:
                    row.append(repr(float(value)))
            writer.writerow(row)

    def to_json_dict(self) -> dict:
        def clean(seq):
            return [None if isinstance(x, float) and not np.isfinite(x) else x for x in seq]

        return {
            "spec": {"parameter": self.spec.parameter, "start": self.spec.start,
                     "stop": self.spec.stop, "points": self.spec.points,
                     "scale": self.spec.scale},
            "base": {k: getattr(self.base, k) for k in (
                "delta1", "delta2", "omega_m", "kappa1", "kappa2", "gamma_m",
                "g_m", "g1", "g2", "kappa1_ext", "kappa2_ext", "alpha_p")},
            "label": self.label,
            "meta": self.meta,
            "columns": {k: (list(v) if k == "flag" else clean([float(x) for x in v]))
                        for k, v in self.columns.items()},
        }

    def write_json(self, fileobj) -> None:
        json.dump(self.to_json_dict(), fileobj, indent=2, sort_keys=True)
        fileobj.write("\n")


def _apply_parameter(base: SystemParams, name: str, value: float) -> SystemParams:
    if name == "c2":
        return base.replace(g2=coupling_from_cooperativity(value, base.gamma_m, base.kappa2))
    if name == "c1":
        return base.replace(g1=coupling_from_cooperativity(value, base.gamma_m, base.kappa1))
    return base.replace(**{name: value})


def run_sweep(base: SystemParams, spec: SweepSpec, observables) -> SweepResult:
    """Evaluate the requested observables over the grid.

    ``observables`` is any iterable drawn from ``OBSERVABLES``.  Rows
    evaluate independently of each other; the result is in grid order.
    """
    validate(base)
    requested = [o for o in OBSERVABLES if o in set(observables)]
    unknown = set(observables) - set(OBSERVABLES)
    if unknown:
        raise ConfigError(f"unknown observable(s): {', '.join(sorted(unknown))}")

    grid = spec.grid()
    columns = {spec.parameter: list(grid)}
    for name in requested:
        columns[name] = []
    if "margin" not in columns:
        columns["margin"] = []
    columns["flag"] = []

    for value in grid:
        params = _apply_parameter(base, spec.parameter, float(value))
        report = stability_report(params)
        margin = report.margin
        flag = "" if report.is_stable else "unstable"
        row = {}
        try:
            amps = solve_steady_numeric(params, warn_unstable=False)
        except SingularSteadyStateError:
            flag = "singular"
            amps = None
        for name in requested:
            if name == "margin":
                row[name] = margin
                continue
            if amps is None:
                row[name] = float("nan")
                continue
            try:
                if name == "i1":
                    row[name] = abs(amps.a1) ** 2
                elif name == "i2":
                    row[name] = abs(amps.a2) ** 2
                elif name == "eta":
                    row[name] = params.kappa2_ext * abs(amps.a2) ** 2 / params.alpha_p ** 2
                else:
                    db = transform(amps, params.g1, params.g2)
                    row[name] = abs(db.a_b) ** 2 if name == "pop_bright" else abs(db.a_d) ** 2
            except (ArithmeticError, ParameterError):
                # undefined observable at this point (e.g. eta at zero pump,
                # populations at zero couplings): flagged, no value
                row[name] = float("nan")
                flag = flag or "singular"
        if any(not np.isfinite(v) for v in row.values()) and not flag:
            flag = "singular"
        for name in requested:
            columns[name].append(float(row[name]))
        if "margin" not in requested:
            columns["margin"].append(float(margin))
        columns["flag"].append(flag)

    return SweepResult(spec=spec, base=base, columns=columns)


def _normalize_panel(results: list, names: tuple) -> None:
    """Pump-normalize then max-normalize the named columns across a panel."""
    for result in results:
        for name in names:
            if name in result.columns:
                scale = result.base.alpha_p ** 2
                result.columns[name] = [v / scale for v in result.columns[name]]
                result.meta["pump_normalized"] = True
    peak = max(
        (v for r in results for name in names if name in r.columns
         for v in r.columns[name] if np.isfinite(v)),
        default=0.0)
    if peak > 0.0:
        for result in results:
            for name in names:
                if name in result.columns:
                    result.columns[name] = [v / peak for v in result.columns[name]]
            result.meta["max_normalization"] = peak


def figure_dataset(figure: str, points: int | None = None) -> list:
    """Sweep results (one per plotted curve) for a reference-figure identifier."""
    if figure not in FIGURE_IDS:
        raise ConfigError(f"unknown figure id '{figure}' (known: {', '.join(FIGURE_IDS)})")

    if figure == "fig5":
        n = points or 100
        base = SystemParams(**_POPULATION_BASE)
        spec = SweepSpec(parameter="g2", start=0.05, stop=1.2, points=n)
        results = []
        for observable, label in (("pop_bright", "bright"), ("pop_dark", "dark")):
            result = run_sweep(base, spec, {observable})
            result.label = label
            results.append(result)
        _normalize_panel(results, ("pop_bright", "pop_dark"))
        return results

    n = points or _DEFAULT_POINTS
    spec = SweepSpec(parameter="c2", start=_DEFAULT_C2_RANGE[0],
                     stop=_DEFAULT_C2_RANGE[1], points=n)
    observable = {"fig2a": "i1", "fig2b": "i2", "fig3a": "i1",
                  "fig3b": "i2", "fig4a": "eta", "fig4b": "eta"}[figure]
    if figure in ("fig2a", "fig2b", "fig4a"):
        curves = [({"gamma_m": 0.30}, "gamma_m=0.30"), ({"gamma_m": 0.45}, "gamma_m=0.45")]
    else:
        # cooperativity-1 comparison: g1 = 0.3 and 0.4 give C1 = 1.2 and 2.13
        curves = [({"g1": 0.3}, "C1=1.2"), ({"g1": 0.4}, "C1=2.13")]

    results = []
    for changes, label in curves:
        base = SystemParams(**{**_EMISSION_BASE, **changes})
        result = run_sweep(base, spec, {observable})
        result.label = label
        results.append(result)
    if observable in ("i1", "i2"):
        _normalize_panel(results, (observable,))
    return results
