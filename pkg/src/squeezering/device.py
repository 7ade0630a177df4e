"""Two-resonator device parameterization and model construction.

A signal resonator (mode ``a``) couples to a second resonator that is
parametrically pumped in one circulation direction only.  Forward input sees
the squeezed mode ``b_s`` with an exponentially enhanced coupling ``J_s`` and
a shifted detuning; backward input sees the bare mode ``b`` with the bare
coupling ``J``.  All rates and detunings are expressed in units of the signal
resonator linewidth ``kappa_a`` unless stated otherwise; only the pump-power
mapping works in laboratory units.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .fock import FockOperator, FockSpace, destroy
from .liouville import Dissipator

__all__ = [
    "DeviceParams",
    "SqueezeFrame",
    "PumpSpec",
    "squeeze_frame",
    "device_space",
    "hamiltonian_forward_squeezed",
    "hamiltonian_backward",
    "decay_dissipators",
    "noise_dissipators",
    "squeezed_vacuum_residual",
    "pump_strength",
    "pump_power",
    "nms_params",
    "mrs_params",
    "ln_chip_pump",
    "LN_KAPPA_A",
    "LN_KAPPA_EX2",
    "PRESETS",
]

HBAR = 1.054571817e-34  # J s

RWA_MARGIN_FACTOR = 10.0


@dataclass(frozen=True)
class DeviceParams:
    """All device rates and detunings, in units of ``kappa_a``.

    kappa_a, kappa_b
        Total amplitude decay rates of the two resonators.
    kappa_ex1, kappa_ex2
        External (waveguide) decay rates; bounded by the totals.
    J
        Bare inter-resonator coupling.
    Omega_p, theta_p
        Parametric pump strength and phase.
    Delta_p_b
        Pump-frame detuning of the pumped resonator, omega_b - omega_p/2.
    Delta_a, Delta_b
        Signal detunings omega_{a,b} - omega_in.
    alpha_in
        Coherent drive amplitude in units of sqrt(kappa_a).
    """

    kappa_ex1: float
    kappa_ex2: float
    J: float
    Omega_p: float
    Delta_p_b: float
    kappa_a: float = 1.0
    kappa_b: float = 1.0
    theta_p: float = 0.0
    Delta_a: float = 0.0
    Delta_b: float = 0.0
    alpha_in: complex = 1.0 + 0.0j

    def __post_init__(self):
        for name in ("kappa_a", "kappa_b", "kappa_ex1", "kappa_ex2", "J", "Omega_p"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")
        if self.kappa_ex1 > self.kappa_a * (1 + 1e-12):
            raise ParameterError("kappa_ex1 cannot exceed kappa_a")
        if self.kappa_ex2 > self.kappa_b * (1 + 1e-12):
            raise ParameterError("kappa_ex2 cannot exceed kappa_b")
        object.__setattr__(self, "alpha_in", complex(self.alpha_in))

    def replace(self, **changes) -> "DeviceParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class SqueezeFrame:
    """Derived quantities of the squeezing (Bogoliubov) transformation.

    beta = Omega_p / Delta_p_b drives everything: the squeezing parameter is
    r_p = ln((1+beta)/(1-beta)) / 4, the coupling is enhanced to
    J_s = cosh(r_p) J and the pump-frame detuning of the squeezed mode is
    Delta_p_bs = Delta_p_b sqrt(1-beta^2).  N_p and M_p are the thermal and
    anomalous bath moments of the pump-induced noise.  `rwa_margin` is
    (Delta_p_a + Delta_p_bs) / (sinh(r_p) J); the counter-rotating terms that
    were dropped are safe when it is large, and `rwa_flag` is set when it
    falls below 10.
    """

    beta: float
    r_p: float
    J_s: float
    Delta_p_bs: float
    Delta_in: float
    Delta_b_s: float
    N_p: float
    M_p: complex
    rwa_margin: float
    rwa_flag: bool


def squeeze_frame(params: DeviceParams) -> SqueezeFrame:
    """Evaluate the squeezed-frame quantities for `params`.

    Raises
    ------
    ParameterError
        If beta = Omega_p/Delta_p_b >= 1 (parametric instability threshold),
        or if Omega_p > 0 with a non-positive Delta_p_b.
    """
    if params.Omega_p == 0:
        beta = 0.0
    else:
        if params.Delta_p_b <= 0:
            raise ParameterError("Delta_p_b must be positive when the pump is on")
        beta = params.Omega_p / params.Delta_p_b
    if beta >= 1:
        raise ParameterError(
            f"beta = Omega_p/Delta_p_b = {beta:.4f} >= 1: squeezing transformation undefined "
            "(beyond the parametric instability threshold)"
        )
    if beta == 0:
        # identity transformation, bit-identical to the bare parameters so the
        # unpumped device is reciprocal down to the last ulp
        return SqueezeFrame(
            beta=0.0, r_p=0.0, J_s=params.J, Delta_p_bs=params.Delta_p_b,
            Delta_in=params.Delta_p_b - params.Delta_b, Delta_b_s=params.Delta_b,
            N_p=0.0, M_p=0.0 + 0.0j, rwa_margin=math.inf, rwa_flag=False,
        )
    r_p = 0.25 * math.log((1 + beta) / (1 - beta))
    ch, sh = math.cosh(r_p), math.sinh(r_p)
    J_s = ch * params.J
    Delta_p_bs = params.Delta_p_b * math.sqrt(1 - beta * beta)
    Delta_in = params.Delta_p_b - params.Delta_b
    Delta_b_s = Delta_p_bs - Delta_in
    N_p = sh * sh
    M_p = complex(np.exp(1j * params.theta_p) * ch * sh)
    Delta_p_a = params.Delta_a + Delta_in
    counter = sh * params.J
    rwa_margin = math.inf if counter == 0 else (Delta_p_a + Delta_p_bs) / counter
    return SqueezeFrame(
        beta=beta,
        r_p=r_p,
        J_s=J_s,
        Delta_p_bs=Delta_p_bs,
        Delta_in=Delta_in,
        Delta_b_s=Delta_b_s,
        N_p=N_p,
        M_p=M_p,
        rwa_margin=rwa_margin,
        rwa_flag=rwa_margin < RWA_MARGIN_FACTOR,
    )


def device_space(dim_a: int, dim_b: int, forward: bool) -> FockSpace:
    """Two-mode space for the device; the second label records the picture."""
    return FockSpace((dim_a, dim_b), ("a", "bs" if forward else "b"))


def _drive_term(space: FockSpace, kappa_ex1: float, alpha_in: complex) -> np.ndarray:
    a = destroy(space, 0).matrix
    ad = a.conj().T
    return 1j * math.sqrt(2 * kappa_ex1) * (alpha_in * ad - np.conj(alpha_in) * a)


def hamiltonian_forward_squeezed(
    params: DeviceParams, frame: SqueezeFrame, space: FockSpace
) -> FockOperator:
    """Forward-input Hamiltonian in the squeezed frame.

    H = Delta_a a+a + i sqrt(2 kex1)(alpha a+ - alpha* a)
        + Delta_b_s bs+bs + J_s (a+ bs + bs+ a)
    """
    if space.n_modes != 2:
        raise ParameterError("device space must have exactly two modes")
    a = destroy(space, 0).matrix
    b = destroy(space, 1).matrix
    ad, bd = a.conj().T, b.conj().T
    h = (
        params.Delta_a * (ad @ a)
        + frame.Delta_b_s * (bd @ b)
        + frame.J_s * (ad @ b + bd @ a)
        + _drive_term(space, params.kappa_ex1, params.alpha_in)
    )
    return FockOperator(space, h)


def hamiltonian_backward(params: DeviceParams, space: FockSpace) -> FockOperator:
    """Backward-input Hamiltonian: the bare pair with coupling J."""
    if space.n_modes != 2:
        raise ParameterError("device space must have exactly two modes")
    a = destroy(space, 0).matrix
    b = destroy(space, 1).matrix
    ad, bd = a.conj().T, b.conj().T
    h = (
        params.Delta_a * (ad @ a)
        + params.Delta_b * (bd @ b)
        + params.J * (ad @ b + bd @ a)
        + _drive_term(space, params.kappa_ex1, params.alpha_in)
    )
    return FockOperator(space, h)


def decay_dissipators(params: DeviceParams, space: FockSpace) -> list[Dissipator]:
    """Plain vacuum decay of both modes, sqrt(kappa_a) a and sqrt(kappa_b) b."""
    return [
        Dissipator(math.sqrt(params.kappa_a) * destroy(space, 0)),
        Dissipator(math.sqrt(params.kappa_b) * destroy(space, 1)),
    ]


def noise_dissipators(
    frame: SqueezeFrame, space: FockSpace, kappa_b: float = 1.0
) -> list[Dissipator]:
    """Pump-induced thermalization of the squeezed mode.

    The four weighted terms N_p L[o], N_p L[o+], -M_p L'[o], -M_p* L'[o+]
    with o = sqrt(kappa_b) b_s.  Empty when r_p = 0.
    """
    if frame.r_p == 0:
        return []
    o = math.sqrt(kappa_b) * destroy(space, 1)
    return [
        Dissipator(o, "standard", frame.N_p),
        Dissipator(o, "conjugate-standard", frame.N_p),
        Dissipator(o, "anomalous", -frame.M_p),
        Dissipator(o, "anomalous-conjugate", -np.conj(frame.M_p)),
    ]


def squeezed_vacuum_residual(
    r_p: float, theta_p: float, r_e: float, theta_e: float
) -> tuple[float, complex]:
    """Effective bath moments (N_e_s, M_e_s) of the squeezed mode when the
    resonator is driven by an external squeezed vacuum (r_e, theta_e).

    Both vanish at the matching point r_e = r_p, theta_e + theta_p = pi
    (mod 2 pi); r_e = 0 returns the bare pump moments (N_p, M_p).
    """
    if r_p < 0 or r_e < 0:
        raise ParameterError("squeezing parameters must be >= 0")
    cp, sp_ = math.cosh(r_p), math.sinh(r_p)
    ce, se = math.cosh(r_e), math.sinh(r_e)
    phase = theta_p + theta_e
    n_es = cp * cp * se * se + sp_ * sp_ * ce * ce + 0.5 * math.sinh(2 * r_p) * math.sinh(
        2 * r_e
    ) * math.cos(phase)
    m_es = (
        np.exp(1j * theta_p)
        * (sp_ * ce + np.exp(-1j * phase) * cp * se)
        * (cp * ce + np.exp(1j * phase) * sp_ * se)
    )
    return float(n_es), complex(m_es)


@dataclass(frozen=True)
class PumpSpec:
    """Laboratory-unit description of the parametric pump path.

    g : single-photon nonlinear coupling (rad/s)
    kappa_p, kappa_ex2_p : total and external decay of the pump mode (rad/s)
    Delta_p_c : pump detuning omega_c - omega_p (rad/s)
    omega_p : pump angular frequency (rad/s)
    P_p : pump optical power (W)
    """

    g: float
    kappa_p: float
    kappa_ex2_p: float
    omega_p: float
    Delta_p_c: float = 0.0
    P_p: float = 0.0

    def __post_init__(self):
        if self.kappa_p < 0 or self.kappa_ex2_p < 0:
            raise ParameterError("pump decay rates must be >= 0")
        if self.kappa_ex2_p > self.kappa_p * (1 + 1e-12):
            raise ParameterError("kappa_ex2_p cannot exceed kappa_p")
        if self.g < 0 or self.omega_p <= 0 or self.P_p < 0:
            raise ParameterError("need g >= 0, omega_p > 0, P_p >= 0")


def pump_strength(spec: PumpSpec) -> tuple[float, float]:
    """Squeezing strength and phase produced by the pump drive.

    The pump mode is eliminated at mean-field level:
    alpha_p = sqrt(2 pi P_p / hbar omega_p),
    <c>_ss = sqrt(2 kappa_ex2_p) alpha_p / (i Delta_p_c + kappa_p),
    Omega_p e^{-i theta_p} = 2 g <c>_ss.

    Returns (Omega_p in rad/s, theta_p in radians).
    """
    if spec.kappa_p <= 0:
        raise ParameterError("kappa_p must be positive")
    alpha_p = math.sqrt(2 * math.pi * spec.P_p / (HBAR * spec.omega_p))
    c_ss = math.sqrt(2 * spec.kappa_ex2_p) * alpha_p / (1j * spec.Delta_p_c + spec.kappa_p)
    amp = 2 * spec.g * c_ss
    return float(abs(amp)), float(-np.angle(amp)) + 0.0


def pump_power(omega_p_strength: float, spec: PumpSpec) -> float:
    """Pump power in watts required for a squeezing strength Omega_p (rad/s).

    Assumes a resonant pump (Delta_p_c = 0):
    P_p = hbar omega_p kappa_p^2 Omega_p^2 / (16 pi g^2 kappa_ex2_p).
    """
    if spec.g == 0:
        raise ParameterError("pump_power needs g > 0")
    if spec.kappa_ex2_p == 0:
        raise ParameterError("pump_power needs kappa_ex2_p > 0")
    return (
        HBAR
        * spec.omega_p
        * spec.kappa_p**2
        * omega_p_strength**2
        / (16 * math.pi * spec.g**2 * spec.kappa_ex2_p)
    )


# ---------------------------------------------------------------------------
# presets

def nms_params(alpha_in: complex = 1.0, Delta_a: float = 0.0, Delta_b: float | None = None) -> DeviceParams:
    """Normal-mode-splitting operating point: J below the linewidth, strong pump."""
    if Delta_b is None:
        Delta_b = Delta_a
    return DeviceParams(
        kappa_ex1=0.99, kappa_ex2=0.99, J=0.99, Omega_p=10.0, Delta_p_b=10.3,
        Delta_a=Delta_a, Delta_b=Delta_b, alpha_in=alpha_in,
    )


def mrs_params(alpha_in: complex = 1.0, Delta_a: float = 2.62, Delta_b: float | None = None) -> DeviceParams:
    """Mode-resonance-shift operating point: J well above the linewidth."""
    if Delta_b is None:
        Delta_b = Delta_a
    return DeviceParams(
        kappa_ex1=0.99, kappa_ex2=0.99, J=2.8, Omega_p=13.0, Delta_p_b=15.0,
        Delta_a=Delta_a, Delta_b=Delta_b, alpha_in=alpha_in,
    )


# thin-film lithium niobate chip numbers (rad/s)
LN_KAPPA_A = 2 * math.pi * 2.42e9
LN_KAPPA_EX2 = 2 * math.pi * 2.40e9


def ln_chip_pump(P_p: float = 0.0) -> PumpSpec:
    """Pump path of the lithium niobate chip: g/2pi = 2.35 MHz, resonant pump
    at 386.8 THz, pump-mode rates twice the signal-mode rates."""
    return PumpSpec(
        g=2 * math.pi * 2.35e6,
        kappa_p=2 * LN_KAPPA_A,
        kappa_ex2_p=2 * LN_KAPPA_EX2,
        omega_p=2 * math.pi * 386.8e12,
        Delta_p_c=0.0,
        P_p=P_p,
    )


PRESETS = {
    "NMS": nms_params,
    "MRS": mrs_params,
}
