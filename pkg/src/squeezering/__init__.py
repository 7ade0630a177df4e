"""Directionally squeezed coupled-microring nonreciprocity simulations.

Parametrically pumping one circulation direction of a ring resonator
squeezes that mode, enhancing its coupling to a partner ring and shifting
its resonance; counter-propagating signals therefore see different devices.
This package provides the closed-form steady-state transmissions, the exact
moment solver, truncated-Fock master-equation numerics (including the
pump-noise dissipators and their squeezed-vacuum cancellation), cascaded
single-photon pulse transport, and the derived isolator / quasi-circulator /
optical-transistor figures of merit.
"""

from .analytic import (
    TransmissionSet,
    forward_drop_flux,
    noise_photons,
    transistor_gain,
    transistor_gain_general,
    transmissions,
)
from .cascade import PulseResult, PulseSpec, kappa_ex0, run_pulse
from .device import (
    DeviceParams,
    PumpSpec,
    SqueezeFrame,
    decay_dissipators,
    device_space,
    hamiltonian_backward,
    hamiltonian_forward_squeezed,
    ln_chip_pump,
    mrs_params,
    nms_params,
    noise_dissipators,
    pump_power,
    pump_strength,
    squeeze_frame,
    squeezed_vacuum_residual,
)
from .errors import ConfigError, ParameterError, SolverError
from .fock import (
    DensityMatrix,
    FockOperator,
    FockSpace,
    create,
    destroy,
    fock_dm,
    identity,
    number,
    vacuum_dm,
)
from .liouville import (
    Dissipator,
    Liouvillian,
    build_liouvillian,
    steady_state,
    time_evolve,
)
from .metrics import (
    BandwidthResult,
    CirculatorReport,
    avg_insertion_loss_db,
    bandwidth,
    circulator_fidelity,
    gain_map,
    insertion_loss_db,
    isolation_db,
)
from .moments import MomentSet, moments_steady, transmissions_from_moments
from .simulate import FockSteadyResult, choose_truncation, fock_transmissions

__version__ = "0.1.0"
