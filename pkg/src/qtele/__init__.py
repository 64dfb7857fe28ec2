"""Thermal two-qubit Heisenberg XXX + DM teleportation with an accelerated input qubit."""

from .complexlin import DimensionMismatch, NotHermitian, NotPSD
from .measures import (
    CLASSICAL_FIDELITY,
    QuadratureSpec,
    average_fidelity_closed,
    average_fidelity_inertial,
    average_fidelity_quadrature,
    classical_crossing,
    teleport_fidelity,
    uhlmann_fidelity,
    wootters_concurrence,
)
from .rindler import InputParams, input_concurrence, input_density, input_state, r_from_acceleration
from .spin_model import ModelParams, ParamError, hamiltonian, spectrum, thermal_state
from .teleport import apply_channel, channel_probs, output_concurrence, output_density_closed

__version__ = "0.1.0"
