"""Command-line front end: simulate one config, sweep a parameter, or
validate a config file.

Exit codes: 0 success, 2 configuration error, 3 accuracy failure,
4 filesystem error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
import warnings as _warnings
from pathlib import Path

import numpy as np

from .config import (MODEL_NAMES, SimulationConfig, load_config,
                     validate_config)
from .errors import AccuracyError, AccuracyWarning, ConfigError
from .filtering import FilterPair, JointAmplitudeMatrix, filtered_jta
from .grids import build_temporal_grid
from .jta import DiagonalJTA, jta_general, jta_linear, jta_simple, jta_sinc
from .metrics import (compute_pair_metrics, pair_probability,
                      schmidt_mode_count, validate_low_excitation)
from .pump import check_free_carrier_regime, phi_max
from .spectral import jta_to_jsa, marginal_spectrum

_SWEEP_PARAMETERS = ("phi_max", "lambda", "mu", "sigma_t", "delta_beta0")


def build_diagonal_jta(cfg: SimulationConfig, literal_z: bool = False) -> DiagonalJTA:
    """Evaluate the configured model on the config's grid."""
    if cfg.model == "linear":
        return jta_linear(cfg.pump, cfg.waveguide, cfg.grid)
    if cfg.model == "simple_sxpm":
        return jta_simple(cfg.pump, cfg.waveguide, cfg.grid)
    if cfg.model == "sinc":
        return jta_sinc(cfg.pump, cfg.waveguide, cfg.grid)
    if cfg.model == "general_quadrature":
        return jta_general(cfg.pump, cfg.waveguide, cfg.grid, literal_z=literal_z)
    raise ConfigError(f"model: unknown model {cfg.model!r}")


def _coordinates(grid) -> np.ndarray:
    return grid.tau if hasattr(grid, "tau") else grid.omega


def export_matrix(matrix: JointAmplitudeMatrix, path, fmt: str = "coords") -> list[Path]:
    """Write a joint-amplitude matrix to CSV.

    ``coords`` writes one long table (row_coord, col_coord, re, im) in
    row-major order. ``polar`` writes two sibling grid-layout files,
    ``<stem>_magnitude.csv`` and ``<stem>_phase.csv``. Floats use repr so a
    read-back round trip is exact. Returns the paths written.
    """
    path = Path(path)
    cs = _coordinates(matrix.grid_s)
    ci = _coordinates(matrix.grid_i)
    vals = matrix.values
    if fmt == "coords":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["row_coord", "col_coord", "re", "im"])
            for j in range(len(cs)):
                rcoord = repr(float(cs[j]))
                row = vals[j]
                for k in range(len(ci)):
                    writer.writerow([rcoord, repr(float(ci[k])),
                                     repr(float(row[k].real)),
                                     repr(float(row[k].imag))])
        return [path]
    if fmt == "polar":
        mag_path = path.with_name(path.stem + "_magnitude.csv")
        phase_path = path.with_name(path.stem + "_phase.csv")
        header = ["coord"] + [repr(float(c)) for c in ci]
        for out_path, table in ((mag_path, np.abs(vals)),
                                (phase_path, np.angle(vals))):
            with open(out_path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(header)
                for j in range(len(cs)):
                    writer.writerow([repr(float(cs[j]))]
                                    + [repr(float(x)) for x in table[j]])
        return [mag_path, phase_path]
    raise ValueError(f"unknown export format {fmt!r}")


def read_matrix_coords(path):
    """Read back a ``coords`` CSV as (row_coords, col_coords, complex matrix)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))[1:]
    n_rows = len({r[0] for r in rows})
    n_cols = len(rows) // n_rows
    row_coords = np.array([float(rows[j * n_cols][0]) for j in range(n_rows)])
    col_coords = np.array([float(rows[k][1]) for k in range(n_cols)])
    values = np.array([float(r[2]) + 1j * float(r[3]) for r in rows])
    return row_coords, col_coords, values.reshape(n_rows, n_cols)


def _write_marginal(path, omega: np.ndarray, spectrum: np.ndarray) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["detuning", "intensity"])
        for w, s in zip(omega, spectrum):
            writer.writerow([repr(float(w)), repr(float(s))])


def _evaluate(cfg: SimulationConfig, conjugated: bool, literal_z: bool):
    """Run the model + metrics pipeline; returns (diag, matrix, metrics, warnings)."""
    diag = build_diagonal_jta(cfg, literal_z=literal_z)
    filters = FilterPair(cfg.signal_filter, cfg.idler_filter)
    notes: list[str] = []
    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always", AccuracyWarning)
        matrix = filtered_jta(diag, filters)
        pm = compute_pair_metrics(diag, filters, conjugated=conjugated,
                                  matrix=matrix, verify_resolution=True)
    notes.extend(str(w.message) for w in caught
                 if issubclass(w.category, AccuracyWarning))
    zero_pump = pm.schmidt_weights is None
    if zero_pump:
        notes.append("zero pump power: conditional quantities are undefined")
    elif pm.nu is None and not filters.signal.is_gaussian:
        notes.append("nu: undefined without a signal filter")
    if not pm.low_excitation_ok:
        eta_phys = (pm.eta if conjugated
                    else pair_probability(diag, filters, conjugated=True))
        notes.append(validate_low_excitation(eta_phys)[1])
    return diag, matrix, pm, notes


def _regime_report(cfg: SimulationConfig):
    if cfg.regime_check is None:
        return None, None
    rc = cfg.regime_check
    result = check_free_carrier_regime(rc.photon_energy, rc.sigma_FCA,
                                       rc.T0, rc.I0, threshold=rc.threshold)
    note = None
    if not result.passed:
        note = (f"free-carrier check failed: ratio {result.ratio:.6g} "
                f"is below threshold {rc.threshold:.6g}")
    return result, note


def _metrics_document(cfg: SimulationConfig, pm, notes: list[str],
                      regime_result, args) -> dict:
    lam, mu = FilterPair(cfg.signal_filter, cfg.idler_filter).ratios(cfg.pump)
    weights = (None if pm.schmidt_weights is None
               else [float(w) for w in pm.schmidt_weights[:16]])
    n99 = (None if pm.schmidt_weights is None
           else schmidt_mode_count(pm.schmidt_weights))
    doc = {
        "model": cfg.model,
        "phi_max": phi_max(cfg.pump, cfg.waveguide),
        "lambda": lam,
        "mu": mu,
        "eta": pm.eta,
        "purity": pm.purity,
        "nu": pm.nu,
        "n_schmidt_modes_99": n99,
        "schmidt_weights": weights,
        "low_excitation_ok": pm.low_excitation_ok,
        "regime_check": (None if regime_result is None else
                         {"ratio": float(regime_result.ratio)
                          if math.isfinite(regime_result.ratio) else "inf",
                          "passed": regime_result.passed}),
        "grid": {"n_points": cfg.grid.n_points, "dt": cfg.grid.dt,
                 "span_sigmas": cfg.span_sigmas},
        "flags": {"as_printed_eq9": args.as_printed_eq9,
                  "non_conjugated_eta": args.non_conjugated_eta},
        "warnings": notes,
    }
    if pm.eta_imag is not None:
        doc["eta_imag"] = pm.eta_imag
    return doc


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config, grid_points=args.grid_points,
                      span_sigmas=args.span_sigmas)
    _, matrix, pm, notes = _evaluate(cfg, conjugated=not args.non_conjugated_eta,
                                     literal_z=args.as_printed_eq9)
    regime_result, regime_note = _regime_report(cfg)
    if regime_note:
        notes.append(regime_note)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    export_matrix(matrix, out / "jta.csv", "coords")
    export_matrix(matrix, out / "jta.csv", "polar")
    jsa = jta_to_jsa(matrix)
    export_matrix(jsa, out / "jsa.csv", "coords")
    export_matrix(jsa, out / "jsa.csv", "polar")
    for axis, name in (("signal", "marginal_signal.csv"),
                       ("idler", "marginal_idler.csv")):
        sgrid = jsa.grid_s if axis == "signal" else jsa.grid_i
        _write_marginal(out / name, sgrid.omega, marginal_spectrum(jsa, axis=axis))

    doc = _metrics_document(cfg, pm, notes, regime_result, args)
    with open(out / "metrics.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")

    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    print(f"wrote metrics and matrices to {out}")
    return 0


def _load_sweep_spec(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"line {exc.lineno} column {exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("sweep root: expected a JSON object")
    errors = []
    param = raw.get("parameter")
    if param not in _SWEEP_PARAMETERS:
        errors.append(f"sweep.parameter: expected one of {', '.join(_SWEEP_PARAMETERS)}, "
                      f"got {param!r}")
    has_values = "values" in raw
    has_range = any(k in raw for k in ("start", "stop", "count"))
    values: list[float] = []
    if has_values and has_range:
        errors.append("sweep.values: give either values or start/stop/count, not both")
    elif has_values:
        vs = raw["values"]
        if (not isinstance(vs, list) or not vs
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                           for v in vs)):
            errors.append("sweep.values: expected a nonempty list of numbers")
        else:
            values = [float(v) for v in vs]
    elif has_range:
        missing = [k for k in ("start", "stop", "count") if k not in raw]
        if missing:
            errors.append(f"sweep.{missing[0]}: missing required value")
        else:
            count = raw["count"]
            if not isinstance(count, int) or isinstance(count, bool) or count < 2:
                errors.append("sweep.count: expected an integer >= 2")
            else:
                values = list(np.linspace(float(raw["start"]),
                                          float(raw["stop"]), count))
    else:
        errors.append("sweep.values: missing (give values or start/stop/count)")
    if values and any(b <= a for a, b in zip(values, values[1:])):
        errors.append("sweep.values: must be strictly increasing")
    models = raw.get("models")
    if models is None:
        errors.append("sweep.models: missing required value")
    elif (not isinstance(models, list) or not models
          or not all(isinstance(m, str) for m in models)):
        errors.append("sweep.models: expected a nonempty list of model names")
    else:
        for m in models:
            if m not in MODEL_NAMES:
                errors.append(f"sweep.models: unknown model {m!r}")
    for key in raw:
        if key not in {"parameter", "values", "start", "stop", "count", "models"}:
            errors.append(f"sweep.{key}: unknown key")
    if errors:
        errors = sorted(errors)
        raise ConfigError("invalid sweep:\n  " + "\n  ".join(errors),
                          violations=errors)
    return param, values, list(models)


def _sweep_variant(cfg: SimulationConfig, param: str, value: float,
                   model: str) -> SimulationConfig:
    """One point of a sweep: re-derive pump/waveguide/filters and the grid."""
    pump, wg = cfg.pump, cfg.waveguide
    signal, idler = cfg.signal_filter, cfg.idler_filter
    if param == "phi_max":
        scale = wg.gamma * wg.length
        if not scale > 0:
            raise ConfigError("sweep over phi_max needs gamma * length > 0")
        if value < 0:
            raise ConfigError("sweep.values: phi_max must be nonnegative")
        pump = dataclasses.replace(pump, P0=value / scale)
    elif param == "lambda":
        if not value > 0:
            raise ConfigError("sweep.values: lambda must be positive")
        signal = dataclasses.replace(signal, shape="gaussian",
                                     sigma_f=pump.sigma_w / value)
    elif param == "mu":
        if not value > 0:
            raise ConfigError("sweep.values: mu must be positive")
        idler = dataclasses.replace(idler, shape="gaussian",
                                    sigma_f=pump.sigma_w / value)
    elif param == "sigma_t":
        if not value > 0:
            raise ConfigError("sweep.values: sigma_t must be positive")
        pump = dataclasses.replace(pump, sigma_t=value)
    elif param == "delta_beta0":
        wg = dataclasses.replace(wg, delta_beta0=value)
    grid = build_temporal_grid(pump, [signal, idler],
                               span_sigmas=cfg.span_sigmas,
                               n_points=cfg.grid.n_points)
    variant = dataclasses.replace(cfg, pump=pump, waveguide=wg,
                                  signal_filter=signal, idler_filter=idler,
                                  grid=grid, model=model)
    violations = validate_config(variant)
    if violations:
        raise ConfigError("invalid configuration:\n  " + "\n  ".join(violations),
                          violations=violations)
    return variant


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config, grid_points=args.grid_points,
                      span_sigmas=args.span_sigmas)
    param, values, models = _load_sweep_spec(args.sweep)
    conjugated = not args.non_conjugated_eta

    header = [param, "model", "eta"]
    if args.non_conjugated_eta:
        header.append("eta_imag")
    header += ["purity", "nu", "n_schmidt_modes_99", "warnings"]

    rows = []
    for value in values:
        for model in models:
            variant = _sweep_variant(cfg, param, value, model)
            _, _, pm, notes = _evaluate(variant, conjugated=conjugated,
                                        literal_z=args.as_printed_eq9)
            n99 = (schmidt_mode_count(pm.schmidt_weights)
                   if pm.schmidt_weights is not None else None)
            row = [repr(float(value)), model, repr(pm.eta)]
            if args.non_conjugated_eta:
                row.append("" if pm.eta_imag is None else repr(pm.eta_imag))
            row += ["" if pm.purity is None else repr(pm.purity),
                    "" if pm.nu is None else repr(pm.nu),
                    "" if n99 is None else str(n99),
                    "; ".join(notes)]
            rows.append(row)

    out = Path(args.out)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {len(rows)} sweep rows to {out}")
    return 0


def _cmd_validate(args) -> int:
    cfg = load_config(args.config, grid_points=args.grid_points,
                      span_sigmas=args.span_sigmas)
    regime_result, regime_note = _regime_report(cfg)
    print("configuration ok")
    if regime_result is not None:
        ratio = ("inf" if math.isinf(regime_result.ratio)
                 else f"{regime_result.ratio:.6g}")
        status = "passed" if regime_result.passed else "FAILED"
        print(f"free-carrier regime check: ratio {ratio} ({status})")
    if regime_note:
        print(f"warning: {regime_note}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-points", type=int, default=None,
                        help="override the number of temporal grid points")
    common.add_argument("--span-sigmas", type=float, default=None,
                        help="override the half-width of the grid in pulse widths")
    common.add_argument("--as-printed-eq9", action="store_true",
                        help="use the literal z coordinate in the saturable "
                             "pump-depletion denominator instead of the "
                             "loss-corrected effective length")
    common.add_argument("--non-conjugated-eta", action="store_true",
                        help="report the non-conjugated pair-probability "
                             "variant (complex; real and imaginary parts)")

    parser = argparse.ArgumentParser(
        prog="sfwmsim",
        description="Photon-pair generation by spontaneous four-wave mixing: "
                    "joint temporal amplitudes, filtering, and pair metrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="run one config and write metrics + matrices")
    p_sim.add_argument("--config", required=True, help="path to a JSON config")
    p_sim.add_argument("--out", required=True, help="output directory")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="sweep one parameter across one or more models")
    p_sweep.add_argument("--config", required=True, help="path to a JSON config")
    p_sweep.add_argument("--sweep", required=True, help="path to a JSON sweep spec")
    p_sweep.add_argument("--out", required=True, help="output CSV file")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", parents=[common],
                           help="check a config and report every violation")
    p_val.add_argument("--config", required=True, help="path to a JSON config")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        if exc.violations:
            print("configuration invalid:", file=sys.stderr)
            for violation in exc.violations:
                print(f"  {violation}", file=sys.stderr)
        else:
            print(f"configuration invalid: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"accuracy failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"filesystem error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
