"""Closed-form steady-state transmissions and derived transistor gain.

These expressions are the exact steady state of the second-order moment
system, so they double as the oracle for the master-equation numerics.
The through port obeys ``a_out = a_in - sqrt(2 kex1) a`` and the drop port
``b_out = sqrt(2 kex2) b``; transmissions are output flux over input flux.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .device import DeviceParams, PumpSpec, SqueezeFrame, pump_power, squeeze_frame
from .errors import ParameterError

__all__ = [
    "TransmissionSet",
    "transmissions",
    "noise_photons",
    "forward_drop_flux",
    "transistor_gain",
    "transistor_gain_general",
    "T21_FLOOR",
]

# below this backward transmission the isolation ratio saturates to +inf
T21_FLOOR = 1e-300


@dataclass(frozen=True)
class TransmissionSet:
    """Steady-state port transmissions of one operating point.

    T12, T21, T23
        Forward through (noise included), backward through, backward drop.
    T12_sv
        Forward through with the pump noise cancelled by a matched
        squeezed-vacuum drive; equals the large-signal limit of T12.
    N_noise
        Pump-induced noise photons referred to the signal mode.
    """

    T12: float
    T21: float
    T23: float
    T12_sv: float
    N_noise: float

    @property
    def eta_db(self) -> float:
        """Isolation ratio 10 log10(T12_sv / T21); +inf below the T21 floor."""
        if self.T21 < T21_FLOOR:
            return math.inf
        return 10.0 * math.log10(self.T12_sv / self.T21)


def _through(J: float, kappa_a: float, kappa_b: float, kappa_ex1: float,
             Delta_a: float, Delta_b: float) -> float:
    zeta = kappa_a * kappa_b - 2 * kappa_b * kappa_ex1 - Delta_a * Delta_b
    lam = ((kappa_a - 2 * kappa_ex1) ** 2 + Delta_a**2) * (kappa_b**2 + Delta_b**2)
    g = _mode_det(J, kappa_a, kappa_b, Delta_a, Delta_b)
    return (J**4 + 2 * zeta * J**2 + lam) / g


def _mode_det(J: float, kappa_a: float, kappa_b: float, Delta_a: float, Delta_b: float) -> float:
    return (
        J**4
        + 2 * J**2 * (kappa_a * kappa_b - Delta_a * Delta_b)
        + (kappa_a**2 + Delta_a**2) * (kappa_b**2 + Delta_b**2)
    )


def noise_photons(params: DeviceParams, frame: SqueezeFrame | None = None) -> float:
    """Pump-noise photon number in the signal mode,
    kappa_b (kappa_a + kappa_b) sinh^2(r_p) J_s^2 / Q_s."""
    if frame is None:
        frame = squeeze_frame(params)
    ka, kb = params.kappa_a, params.kappa_b
    kab = ka + kb
    d_ab = params.Delta_a - frame.Delta_b_s
    q_s = frame.J_s**2 * kab**2 + ka * kb * (kab**2 + d_ab**2)
    return kb * kab * frame.N_p * frame.J_s**2 / q_s


def forward_drop_flux(params: DeviceParams, noise_on: bool = False) -> float:
    """Squeezed-picture output flux 2 kex2 <bs+ bs> / |alpha_in|^2 at the
    drop side for forward input.  Diagnostic only; the lab-frame forward
    drop port is not modelled as a transmission channel."""
    if params.alpha_in == 0:
        raise ParameterError("forward_drop_flux needs alpha_in != 0")
    frame = squeeze_frame(params)
    ka, kb = params.kappa_a, params.kappa_b
    g_s = _mode_det(frame.J_s, ka, kb, params.Delta_a, frame.Delta_b_s)
    n_b = 2 * params.kappa_ex1 * abs(params.alpha_in) ** 2 * frame.J_s**2 / g_s
    if noise_on:
        kab = ka + kb
        d_ab = params.Delta_a - frame.Delta_b_s
        occ = (frame.J_s**2 * kab + ka * (kab**2 + d_ab**2)) / (kab * frame.J_s**2)
        n_b += occ * noise_photons(params, frame)
    return 2 * params.kappa_ex2 * n_b / abs(params.alpha_in) ** 2


def transmissions(params: DeviceParams) -> TransmissionSet:
    """Evaluate all steady-state transmissions at one operating point.

    Forward quantities use the squeezed-frame pair (J_s, Delta_b_s); the
    backward direction uses the bare pair (J, Delta_b).  The noise-included
    T12 needs alpha_in != 0; with alpha_in = 0 it is reported equal to
    T12_sv (zero-noise limit).
    """
    frame = squeeze_frame(params)
    ka, kb, kex1, kex2 = params.kappa_a, params.kappa_b, params.kappa_ex1, params.kappa_ex2
    t12_sv = _through(frame.J_s, ka, kb, kex1, params.Delta_a, frame.Delta_b_s)
    t21 = _through(params.J, ka, kb, kex1, params.Delta_a, params.Delta_b)
    g_bw = _mode_det(params.J, ka, kb, params.Delta_a, params.Delta_b)
    t23 = 4 * kex1 * kex2 * params.J**2 / g_bw
    n_noise = noise_photons(params, frame)
    if params.alpha_in != 0:
        t12 = t12_sv + 2 * kex1 * n_noise / abs(params.alpha_in) ** 2
    else:
        t12 = t12_sv
    return TransmissionSet(T12=t12, T21=t21, T23=t23, T12_sv=t12_sv, N_noise=n_noise)


def _delta_t(params: DeviceParams) -> float:
    """Pump on/off transmission contrast at the operating point.

    The off state sets Omega_p = 0, making the forward path identical to the
    backward formula.  Uses the noise-free transmissions (large-signal limit).
    """
    on = transmissions(params)
    off = transmissions(params.replace(Omega_p=0.0))
    return on.T12_sv - off.T12_sv


def transistor_gain(params: DeviceParams, pump: PumpSpec, P_in_photon_flux: float) -> float:
    """Transistor gain G = 2 kex2 g^2 |alpha_in|^2 DT / (kappa_a^2 Omega_p^2).

    `pump.g` must be expressed in the same units as the device rates
    (kappa_a units).  `P_in_photon_flux` is |alpha_in|^2 in kappa_a units.
    G is exactly linear in the signal flux at fixed pump.  The unpumped
    device switches nothing, so Omega_p = 0 returns 0.
    """
    if params.Omega_p < 0:
        raise ParameterError("Omega_p must be >= 0")
    if params.Omega_p == 0:
        return 0.0
    dt = _delta_t(params)
    return (
        2 * params.kappa_ex2 * pump.g**2 * P_in_photon_flux * dt
        / (params.kappa_a**2 * params.Omega_p**2)
    )


def transistor_gain_general(params: DeviceParams, pump: PumpSpec, P_in_photon_flux: float) -> float:
    """Gain from the power ratio, G = (P_in / P_p) DT, with
    P_in = hbar omega_in |alpha_in|^2 / (2 pi) and omega_in = omega_p / 2.

    Agrees with :func:`transistor_gain` when kappa_p = 2 kappa_a and
    kappa_ex2_p = 2 kappa_ex2 hold in `pump`.
    """
    if params.Omega_p < 0:
        raise ParameterError("Omega_p must be >= 0")
    if params.Omega_p == 0:
        return 0.0
    dt = _delta_t(params)
    from .device import HBAR

    omega_in = pump.omega_p / 2
    p_in = HBAR * omega_in * P_in_photon_flux / (2 * math.pi)
    p_p = pump_power(params.Omega_p, pump)
    return p_in / p_p * dt
