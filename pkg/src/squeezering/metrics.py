"""Device figures of merit: isolation, insertion loss, bandwidth, circulator
fidelity and transistor gain maps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import T21_FLOOR, transistor_gain, transmissions
from .device import DeviceParams, PumpSpec
from .errors import ParameterError

__all__ = [
    "isolation_db",
    "insertion_loss_db",
    "avg_insertion_loss_db",
    "BandwidthResult",
    "bandwidth",
    "CirculatorReport",
    "circulator_fidelity",
    "gain_map",
]


def isolation_db(t12sv: float, t21: float) -> float:
    """Isolation ratio 10 log10(T12_sv / T21), +inf below the T21 floor."""
    if t12sv <= 0:
        raise ParameterError("forward transmission must be positive")
    if t21 < 0:
        raise ParameterError("backward transmission must be >= 0")
    if t21 < T21_FLOOR:
        return math.inf
    return 10.0 * math.log10(t12sv / t21)


def insertion_loss_db(t: float) -> float:
    """Insertion loss -10 log10(T) of one channel."""
    if not 0 < t <= 1:
        raise ParameterError(f"transmission must lie in (0, 1], got {t}")
    return -10.0 * math.log10(t)


def avg_insertion_loss_db(t12: float, t23: float) -> float:
    """Average circulator insertion loss -10 log10((T12 + T23)/2)."""
    for t in (t12, t23):
        if not 0 < t <= 1:
            raise ParameterError(f"transmission must lie in (0, 1], got {t}")
    return -10.0 * math.log10(0.5 * (t12 + t23))


@dataclass(frozen=True)
class BandwidthResult:
    """Contiguous detuning window around the scan center meeting a threshold."""

    width: float
    lower: float
    upper: float
    reached: bool


def _eta(params: DeviceParams, delta: float) -> float:
    ts = transmissions(params.replace(Delta_a=delta, Delta_b=delta))
    return ts.eta_db


def bandwidth(
    params: DeviceParams,
    eta_threshold_db: float,
    scan_center: float,
    scan_halfwidth: float,
    *,
    grid_step: float = 1e-3,
    refine_tol: float = 1e-5,
) -> BandwidthResult:
    """Width of the contiguous Delta_a window containing `scan_center` where
    the isolation stays at or above the threshold.

    Both signal detunings move together (Delta_a = Delta_b).  The window is
    located on a uniform grid and its edges are bisected to `refine_tol`.
    Returns width 0 with ``reached=False`` when the center misses the
    threshold.
    """
    if eta_threshold_db <= 0:
        raise ParameterError("threshold must be positive")
    if scan_halfwidth <= 0 or grid_step <= 0:
        raise ParameterError("scan halfwidth and grid step must be positive")
    n = int(round(2 * scan_halfwidth / grid_step)) + 1
    grid = np.linspace(scan_center - scan_halfwidth, scan_center + scan_halfwidth, n)
    ok = np.array([_eta(params, x) >= eta_threshold_db for x in grid])
    center_idx = int(np.argmin(np.abs(grid - scan_center)))
    if not ok[center_idx]:
        return BandwidthResult(0.0, scan_center, scan_center, False)
    lo_idx = center_idx
    while lo_idx > 0 and ok[lo_idx - 1]:
        lo_idx -= 1
    hi_idx = center_idx
    while hi_idx < n - 1 and ok[hi_idx + 1]:
        hi_idx += 1

    def bisect(inside: float, outside: float) -> float:
        while abs(outside - inside) > refine_tol:
            mid = 0.5 * (inside + outside)
            if _eta(params, mid) >= eta_threshold_db:
                inside = mid
            else:
                outside = mid
        return 0.5 * (inside + outside)

    lower = grid[lo_idx] if lo_idx == 0 else bisect(grid[lo_idx], grid[lo_idx] - grid_step)
    upper = grid[hi_idx] if hi_idx == n - 1 else bisect(grid[hi_idx], grid[hi_idx] + grid_step)
    return BandwidthResult(float(upper - lower), float(lower), float(upper), True)


@dataclass(frozen=True)
class CirculatorReport:
    """Average routing fidelity and insertion loss of the quasi-circulator."""

    F: float
    L_avg_db: float
    entries: dict[str, float]


def circulator_fidelity(t12: float, t21: float, t23: float) -> CirculatorReport:
    """Fidelity of the measured routing against the ideal map 1->2, 2->3.

    Rows of the transmission matrix are indexed by input port: row 1 holds
    the channel 1->2, row 2 holds 2->1 and 2->3.  Each row is normalized by
    its total before comparing with the ideal matrix in the trace overlap
    F = Tr[T_norm T_id^T] / Tr[T_id T_id^T]; row normalization makes F
    insensitive to uniform loss in a row.
    """
    if min(t12, t21, t23) < 0:
        raise ParameterError("transmissions must be >= 0")
    row1 = t12
    row2 = t21 + t23
    if row1 <= 0 or row2 <= 0:
        raise ParameterError("each input port needs a positive total transmission")
    f = 0.5 * (t12 / row1 + t23 / row2)
    # the row normalization makes F meaningful for arbitrarily scaled rows,
    # but the insertion loss only exists for genuine transmissions
    if 0 < t12 <= 1 and 0 < t23 <= 1:
        l_avg = avg_insertion_loss_db(t12, t23)
    else:
        l_avg = math.nan
    return CirculatorReport(F=float(f), L_avg_db=float(l_avg),
                            entries={"T12": t12, "T21": t21, "T23": t23})


def gain_map(
    params: DeviceParams,
    pump: PumpSpec,
    alpha_in_grid,
    delta_a_grid,
) -> np.ndarray:
    """Transistor gain on the product grid, rows indexed by Delta_a and
    columns by |alpha_in|^2 (kappa_a units)."""
    alphas = np.asarray(alpha_in_grid, dtype=float)
    deltas = np.asarray(delta_a_grid, dtype=float)
    if alphas.size == 0 or deltas.size == 0:
        raise ParameterError("grids must be non-empty")
    out = np.empty((deltas.size, alphas.size))
    for i, d in enumerate(deltas):
        p = params.replace(Delta_a=float(d), Delta_b=float(d))
        for k, x in enumerate(alphas):
            out[i, k] = transistor_gain(p, pump, float(x))
    return out
