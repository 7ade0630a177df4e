"""Command-line front end: scenario sweeps, scans, pulse runs and validation.

Subcommands
-----------
sweep         steady-state transmissions versus a swept parameter
squeeze-scan  isolation and insertion loss versus the squeezing parameter
transistor    gain map over signal flux and detuning
pulse         cascaded single-photon run, time series plus integrated report
validate      closed-form / moment-solver / Fock-solver cross checks

A single JSON document configures a run; unknown keys are rejected.  CSV
output uses 12 significant digits, '.' decimals and CRLF line endings, so a
given configuration reproduces byte-identical files.  Exit codes: 0 success,
2 configuration error, 3 numerical or tolerance failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import device as dev
from .analytic import transistor_gain, transmissions
from .cascade import PulseSpec, run_pulse
from .device import DeviceParams, PumpSpec
from .errors import ConfigError, ParameterError, SolverError
from .metrics import circulator_fidelity, insertion_loss_db
from .moments import transmissions_from_moments
from .simulate import fock_transmissions

THREADS_ENV = "SQUEEZERING_THREADS"

_DEVICE_FIELDS = {f.name for f in dataclasses.fields(DeviceParams)}
_PUMP_FIELDS = {f.name for f in dataclasses.fields(PumpSpec)}
_PULSE_FIELDS = {f.name for f in dataclasses.fields(PulseSpec)}

_TOP_KEYS = {"preset", "overrides", "sweep", "out", "solver", "sv_cancelled",
             "squeeze_rule_coeff", "delta_grid", "g_over_kappa_a"}

_SWEEP_KEYS = {"axis", "start", "stop", "step"}

# scan evaluation detuning and pump-detuning rule coefficient per scenario
_SCAN_DEFAULTS = {"NMS": (0.0, 10.0), "MRS": (2.62, 30.0)}


@dataclass
class RunConfig:
    preset: str = "NMS"
    overrides: dict[str, Any] = field(default_factory=dict)
    sweep: dict[str, Any] | None = None
    out: str | None = None
    solver: str = "analytic"
    sv_cancelled: bool = True
    squeeze_rule_coeff: float | None = None
    delta_grid: dict[str, Any] | None = None
    g_over_kappa_a: float = 1e-3


def _load_config(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}")
        if not isinstance(raw, dict):
            raise ConfigError("config document must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig(**raw)
    if args.preset:
        cfg.preset = args.preset
    if args.out:
        cfg.out = args.out
    if cfg.preset not in ("NMS", "MRS", "LN-chip", "custom"):
        raise ConfigError(f"unknown preset {cfg.preset!r}")
    if not isinstance(cfg.overrides, dict):
        raise ConfigError("overrides must be an object")
    bad = set(cfg.overrides) - _DEVICE_FIELDS - _PUMP_FIELDS - _PULSE_FIELDS
    if bad:
        raise ConfigError(f"unknown override keys: {sorted(bad)}")
    if cfg.solver not in ("analytic", "moments", "fock", "cascade"):
        raise ConfigError(f"unknown solver {cfg.solver!r}")
    if cfg.sweep is not None:
        if not isinstance(cfg.sweep, dict):
            raise ConfigError("sweep must be an object")
        missing = _SWEEP_KEYS - set(cfg.sweep)
        extra = set(cfg.sweep) - _SWEEP_KEYS
        if missing or extra:
            raise ConfigError(f"sweep needs exactly keys {sorted(_SWEEP_KEYS)}")
    return cfg


def _device_params(cfg: RunConfig) -> DeviceParams:
    over = {k: v for k, v in cfg.overrides.items() if k in _DEVICE_FIELDS}
    if "alpha_in" in over and isinstance(over["alpha_in"], list):
        over["alpha_in"] = complex(*over["alpha_in"])
    if cfg.preset in ("NMS", "LN-chip"):
        return dev.nms_params().replace(**over)
    if cfg.preset == "MRS":
        return dev.mrs_params().replace(**over)
    try:
        return DeviceParams(**over)
    except TypeError as exc:
        raise ConfigError(f"custom preset needs the full device parameter set: {exc}")


def _pulse_spec(cfg: RunConfig) -> PulseSpec:
    over = {k: v for k, v in cfg.overrides.items() if k in _PULSE_FIELDS}
    if "dims" in over:
        over["dims"] = tuple(over["dims"])
    return PulseSpec(**over)


def _sweep_grid(cfg: RunConfig, default_axis: str) -> tuple[str, np.ndarray]:
    if cfg.sweep is None:
        raise ConfigError("this command needs a sweep block")
    axis = str(cfg.sweep["axis"])
    start, stop, step = (float(cfg.sweep[k]) for k in ("start", "stop", "step"))
    if step <= 0:
        raise ConfigError("sweep step must be positive")
    if stop <= start:
        raise ConfigError("sweep range is empty or degenerate")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    grid = start + step * np.arange(n)
    if axis != default_axis and axis not in _DEVICE_FIELDS:
        raise ConfigError(f"sweep axis {axis!r} names no parameter")
    return axis, grid


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0"
    return format(float(x), ".12g")


def _write_csv(path: str | None, header: Sequence[str], rows: Iterable[Sequence[float]]):
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _thread_count(args: argparse.Namespace) -> int:
    env = os.environ.get(THREADS_ENV)
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {env!r}")
        if n >= 1:
            return n
        raise ConfigError(f"{THREADS_ENV} must be >= 1")
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        return args.threads
    return 1


def _pool_map(fn, items, threads: int) -> list:
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands

def cmd_sweep(cfg: RunConfig, threads: int) -> int:
    params = _device_params(cfg)
    if cfg.sweep is None:
        cfg.sweep = {"axis": "Delta_a", "start": -6.0, "stop": 6.0, "step": 0.01}
    axis, grid = _sweep_grid(cfg, "Delta_a")
    lock_delta_b = axis == "Delta_a" and "Delta_b" not in cfg.overrides

    def point(value: float) -> DeviceParams:
        changes = {axis: float(value)}
        if lock_delta_b:
            changes["Delta_b"] = float(value)
        return params.replace(**changes)

    header = [axis.lower(), "T12", "T12_sv", "T21", "T23", "eta_db"]
    numeric = cfg.solver in ("moments", "fock")
    if numeric:
        header += [f"T12_{cfg.solver}", f"T21_{cfg.solver}", f"T23_{cfg.solver}"]

    def row(value: float):
        p = point(value)
        ts = transmissions(p)
        out = [value, ts.T12, ts.T12_sv, ts.T21, ts.T23, ts.eta_db]
        if cfg.solver == "moments":
            num = transmissions_from_moments(p, noise_on=not cfg.sv_cancelled)
            out += [num.T12 if not cfg.sv_cancelled else num.T12_sv, num.T21, num.T23]
        elif cfg.solver == "fock":
            fw = fock_transmissions(p, "forward", noise_on=not cfg.sv_cancelled, certify=False)
            bw = fock_transmissions(p, "backward", certify=False)
            out += [fw.through, bw.through, bw.drop]
        return out

    rows = _pool_map(row, grid, threads)
    _write_csv(cfg.out, header, rows)
    return 0


def cmd_squeeze_scan(cfg: RunConfig, threads: int) -> int:
    params = _device_params(cfg)
    if cfg.sweep is None:
        cfg.sweep = {"axis": "r_p", "start": 0.0, "stop": 1.5, "step": 0.01}
    axis, grid = _sweep_grid(cfg, "r_p")
    if axis != "r_p":
        raise ConfigError("squeeze-scan sweeps the axis 'r_p'")
    delta_default, coeff_default = _SCAN_DEFAULTS.get(cfg.preset, (params.Delta_a, 10.0))
    coeff = cfg.squeeze_rule_coeff if cfg.squeeze_rule_coeff is not None else coeff_default
    delta = cfg.overrides.get("Delta_a", delta_default)

    def row(r_p: float):
        beta = math.tanh(2 * r_p)
        delta_p_b = coeff * math.sinh(r_p)
        omega_p = beta * delta_p_b
        p = params.replace(Omega_p=omega_p, Delta_p_b=delta_p_b,
                           Delta_a=float(delta), Delta_b=float(delta))
        ts = transmissions(p)
        return [r_p, ts.eta_db, insertion_loss_db(ts.T12_sv)]

    rows = _pool_map(row, grid, threads)
    _write_csv(cfg.out, ["r_p", "eta_db", "L_db"], rows)
    return 0


def cmd_transistor(cfg: RunConfig, threads: int) -> int:
    params = _device_params(cfg)
    if cfg.sweep is None:
        cfg.sweep = {"axis": "alpha_sq", "start": 1e7, "stop": 1e8, "step": 1e7}
    axis, alpha_grid = _sweep_grid(cfg, "alpha_sq")
    if axis != "alpha_sq":
        raise ConfigError("transistor sweeps the axis 'alpha_sq' (photon flux per kappa_a)")
    if cfg.delta_grid is not None:
        missing = {"start", "stop", "step"} - set(cfg.delta_grid)
        if missing or set(cfg.delta_grid) - {"start", "stop", "step"}:
            raise ConfigError("delta_grid needs exactly the keys start, stop, step")
        d0, d1, ds = (float(cfg.delta_grid[k]) for k in ("start", "stop", "step"))
        if ds <= 0 or d1 <= d0:
            raise ConfigError("delta_grid range is empty or degenerate")
        deltas = d0 + ds * np.arange(int(math.floor((d1 - d0) / ds + 1e-9)) + 1)
    else:
        deltas = np.array([params.Delta_a])
    pump = PumpSpec(g=cfg.g_over_kappa_a, kappa_p=2 * params.kappa_a,
                    kappa_ex2_p=2 * params.kappa_ex2, omega_p=1.0)

    def row(delta: float):
        p = params.replace(Delta_a=float(delta), Delta_b=float(delta))
        return [[delta, x, transistor_gain(p, pump, float(x))] for x in alpha_grid]

    blocks = _pool_map(row, deltas, threads)
    _write_csv(cfg.out, ["delta_a", "alpha_sq", "G"], [r for blk in blocks for r in blk])
    return 0


def cmd_pulse(cfg: RunConfig, threads: int) -> int:
    params = _device_params(cfg)
    spec = _pulse_spec(cfg)
    fw, bw = _pool_map(
        lambda d: run_pulse(params, spec, d, sv_cancelled=cfg.sv_cancelled),
        ["forward", "backward"], threads)
    report = circulator_fidelity(fw.T_integrated, bw.T_integrated, bw.T_drop)
    header = ["t", "flux_in_fw", "flux_out_fw", "flux_drop_fw",
              "flux_in_bw", "flux_out_bw", "flux_drop_bw"]
    rows = np.column_stack([fw.t_grid, fw.flux_in, fw.flux_out, fw.flux_drop,
                            bw.flux_in, bw.flux_out, bw.flux_drop])
    _write_csv(cfg.out, header, rows.tolist())
    print(f"T12_integrated = {fw.T_integrated:.6f}")
    print(f"T21_integrated = {bw.T_integrated:.6e}")
    print(f"T23_integrated = {bw.T_drop:.6f}")
    print(f"fidelity F = {report.F:.6f}")
    print(f"avg insertion loss = {report.L_avg_db:.4f} dB")
    print(f"conservation residual fw/bw = {fw.conservation_residual:.2e} "
          f"/ {bw.conservation_residual:.2e}")
    return 0


# validation tolerances: closed form vs moment solver, closed form vs Fock
VALIDATE_MOMENT_RTOL = 1e-10
VALIDATE_FOCK_RTOL = 1e-3


def cmd_validate(cfg: RunConfig, threads: int) -> int:
    params = _device_params(cfg)
    if "alpha_in" not in cfg.overrides and cfg.preset != "custom":
        params = params.replace(alpha_in=0.3)
    noise_on = not cfg.sv_cancelled
    ts = transmissions(params)
    mom = transmissions_from_moments(params, noise_on=noise_on)
    pairs = [(ts.T12 if noise_on else ts.T12_sv, mom.T12 if noise_on else mom.T12_sv),
             (ts.T21, mom.T21), (ts.T23, mom.T23)]
    # transmissions are order-1 quantities; guard the denominator so that
    # float cancellation at a critically coupled dip (T21 ~ 1e-9) is judged
    # on the device scale, not against the vanishing channel itself
    dev_m = max(abs(a - b) / max(abs(a), abs(b), 1.0) for a, b in pairs)
    fw = fock_transmissions(params, "forward", noise_on=noise_on)
    bw = fock_transmissions(params, "backward")
    t12_ref = ts.T12 if noise_on else ts.T12_sv
    dev_f = max(
        abs(fw.through - t12_ref) / abs(t12_ref),
        abs(bw.through - ts.T21) / max(abs(ts.T21), 1e-6),
        abs(bw.drop - ts.T23) / abs(ts.T23),
    )
    ok_m = dev_m <= VALIDATE_MOMENT_RTOL
    ok_f = dev_f <= VALIDATE_FOCK_RTOL
    print(f"analytic vs moments : max rel deviation {dev_m:.3e} "
          f"(tol {VALIDATE_MOMENT_RTOL:g}) {'PASS' if ok_m else 'FAIL'}")
    print(f"analytic vs Fock    : max rel deviation {dev_f:.3e} "
          f"(tol {VALIDATE_FOCK_RTOL:g}) {'PASS' if ok_f else 'FAIL'} "
          f"dims={fw.dims}")
    return 0 if (ok_m and ok_f) else 3


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="squeezering",
        description="Directionally squeezed coupled-ring nonreciprocity simulations",
    )
    parser.add_argument("command", choices=["sweep", "squeeze-scan", "transistor",
                                            "pulse", "validate"])
    parser.add_argument("--config", help="path to a JSON run configuration")
    parser.add_argument("--out", help="output CSV path (default: stdout)")
    parser.add_argument("--preset", help="parameter preset: NMS, MRS, LN-chip or custom")
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker threads for sweep points (env {THREADS_ENV} overrides)")
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        threads = _thread_count(args)
        handler = {
            "sweep": cmd_sweep,
            "squeeze-scan": cmd_squeeze_scan,
            "transistor": cmd_transistor,
            "pulse": cmd_pulse,
            "validate": cmd_validate,
        }[args.command]
        return handler(cfg, threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, SolverError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
