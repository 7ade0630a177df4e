"""Exact steady state of the second-order moment (Langevin) system.

The device is quadratic, so the equations of motion for
{<a>, <b>, <a+b>, <b+b>, <a+a>} close and their steady state is a linear
solve.  In the forward direction the pump noise enters only through the
constant source term Psi_noise = 2 sinh^2(r_p) kappa_b in the <b+b> equation;
it is absent backward and removed forward by the matched squeezed vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import TransmissionSet, noise_photons
from .device import DeviceParams, squeeze_frame
from .errors import ParameterError, SolverError

__all__ = ["MomentSet", "moments_steady", "through_transmission", "drop_transmission",
           "transmissions_from_moments"]


@dataclass(frozen=True)
class MomentSet:
    """Steady-state operator means of one propagation direction."""

    direction: str
    mean_a: complex
    mean_b: complex
    adag_b: complex
    n_a: float
    n_b: float
    psi_noise: float


def _effective_pair(params: DeviceParams, direction: str, noise_on: bool):
    if direction == "forward":
        frame = squeeze_frame(params)
        psi = 2 * frame.N_p * params.kappa_b if noise_on else 0.0
        return frame.J_s, frame.Delta_b_s, psi
    if direction == "backward":
        return params.J, params.Delta_b, 0.0
    raise ParameterError(f"direction must be 'forward' or 'backward', got {direction!r}")


def moments_steady(params: DeviceParams, direction: str, noise_on: bool = True) -> MomentSet:
    """Solve the closed moment system in steady state.

    Psi_noise is included only for direction="forward" with noise_on=True;
    noise_on=False models the matched squeezed-vacuum drive.
    """
    j, delta_b, psi = _effective_pair(params, direction, noise_on)
    ka, kb, kex1 = params.kappa_a, params.kappa_b, params.kappa_ex1
    al = params.alpha_in
    drive = math.sqrt(2 * kex1)

    first = np.array([[1j * params.Delta_a + ka, 1j * j], [1j * j, 1j * delta_b + kb]], dtype=complex)
    try:
        mean_a, mean_b = np.linalg.solve(first, np.array([drive * al, 0.0], dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SolverError("first-moment system is singular") from exc

    # unknowns: x = <a+b>, y = <a b+>, n_b, n_a
    d_ab = params.Delta_a - delta_b
    kab = ka + kb
    second = np.array(
        [
            [1j * d_ab - kab, 0.0, 1j * j, -1j * j],
            [0.0, -1j * d_ab - kab, -1j * j, 1j * j],
            [1j * j, -1j * j, -2 * kb, 0.0],
            [-1j * j, 1j * j, 0.0, -2 * ka],
        ],
        dtype=complex,
    )
    rhs = np.array(
        [
            -drive * np.conj(al) * mean_b,
            -drive * al * np.conj(mean_b),
            -psi,
            -drive * (al * np.conj(mean_a) + np.conj(al) * mean_a),
        ],
        dtype=complex,
    )
    try:
        x, y, n_b, n_a = np.linalg.solve(second, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError("second-moment system is singular") from exc
    if abs(np.conj(x) - y) > 1e-10 * max(1.0, abs(x)) or abs(n_a.imag) > 1e-10 or abs(n_b.imag) > 1e-10:
        raise SolverError("moment solution violates conjugation symmetry")
    return MomentSet(
        direction=direction,
        mean_a=complex(mean_a),
        mean_b=complex(mean_b),
        adag_b=complex(x),
        n_a=float(n_a.real),
        n_b=float(n_b.real),
        psi_noise=psi,
    )


def through_transmission(m: MomentSet, params: DeviceParams) -> float:
    """|a_out|^2 flux over input flux via a_out = a_in - sqrt(2 kex1) a."""
    al = params.alpha_in
    if al == 0:
        raise ParameterError("through transmission needs alpha_in != 0")
    drive = math.sqrt(2 * params.kappa_ex1)
    flux = abs(al) ** 2 - drive * 2 * np.real(np.conj(al) * m.mean_a) + 2 * params.kappa_ex1 * m.n_a
    return float(flux / abs(al) ** 2)


def drop_transmission(m: MomentSet, params: DeviceParams) -> float:
    """Drop-port flux 2 kex2 <b+b> over input flux."""
    if params.alpha_in == 0:
        raise ParameterError("drop transmission needs alpha_in != 0")
    return float(2 * params.kappa_ex2 * m.n_b / abs(params.alpha_in) ** 2)


def transmissions_from_moments(params: DeviceParams, noise_on: bool = True) -> TransmissionSet:
    """Full transmission set computed through the moment solver.

    Runs the forward direction twice (with and without Psi_noise) and the
    backward direction once; mirrors the closed-form evaluation route.
    """
    fw = moments_steady(params, "forward", noise_on=noise_on)
    fw_sv = fw if not noise_on else moments_steady(params, "forward", noise_on=False)
    bw = moments_steady(params, "backward", noise_on=False)
    return TransmissionSet(
        T12=through_transmission(fw, params),
        T21=through_transmission(bw, params),
        T23=drop_transmission(bw, params),
        T12_sv=through_transmission(fw_sv, params),
        N_noise=noise_photons(params),
    )
