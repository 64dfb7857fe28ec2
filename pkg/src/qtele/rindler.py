"""Input state carried by a uniformly accelerated qubit.

The accelerated qubit's Minkowski mode is split into a region-I Rindler mode
(the one the observer can access) and a region-II mode that is traced out.
Three-mode vectors use the factor order (partner qubit, region I, region II),
each factor in the (|1>, |0>) basis order of :mod:`qtele.complexlin`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexlin import ket
from .spin_model import ParamError

R_MAX = math.pi / 4
_SLACK = 1e-12


@dataclass(frozen=True)
class InputParams:
    """Amplitude ``theta``, phase ``phi`` and acceleration parameter ``r`` (radians)."""

    theta: float
    phi: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        for name, hi in (("theta", math.pi), ("phi", 2 * math.pi), ("r", R_MAX)):
            value = getattr(self, name)
            if not math.isfinite(value) or not -_SLACK <= value <= hi + _SLACK:
                raise ParamError(f"{name} must lie in [0, {hi:.6g}], got {value!r}")


def check_r(r: float) -> float:
    if not math.isfinite(r) or not -_SLACK <= r <= R_MAX + _SLACK:
        raise ParamError(f"r must lie in [0, {R_MAX:.6g}], got {r!r}")
    return r


def r_from_acceleration(omega: float, a: float, c: float = 1.0) -> float:
    """Acceleration parameter of a fermionic mode of frequency ``omega``.

    Solves ``cos r = (exp(-2 pi omega c / a) + 1)^(-1/2)``; the result lies in
    ``[0, pi/4)``.
    """
    for name, value in (("omega", omega), ("a", a), ("c", c)):
        if not value > 0:
            raise ParamError(f"{name} must be > 0, got {value!r}")
    return math.acos((math.exp(-2 * math.pi * omega * c / a) + 1.0) ** -0.5)


def input_state(p: InputParams) -> np.ndarray:
    """Three-mode pure state of the inertial partner and the accelerated qubit."""
    one, zero = ket("1"), ket("0")

    def k3(a, b, c):
        return np.kron(np.kron(a, b), c)

    ct = math.cos(p.theta / 2)
    st = math.sin(p.theta / 2)
    return (
        ct * math.cos(p.r) * k3(one, zero, zero)
        + ct * math.sin(p.r) * k3(one, one, one)
        + np.exp(1j * p.phi) * st * k3(zero, one, zero)
    )


def trace_out_last(psi: np.ndarray) -> np.ndarray:
    """Reduced 4x4 density matrix of an 8-component three-mode pure state."""
    m = np.asarray(psi, dtype=np.complex128).reshape(4, 2)
    return m @ m.conj().T


def _input_density(theta, phi, r) -> np.ndarray:
    theta, phi, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (theta, phi, r)))
    c2 = np.cos(theta / 2) ** 2
    rho = np.zeros(theta.shape + (4, 4), dtype=np.complex128)
    rho[..., 0, 0] = c2 * np.sin(r) ** 2
    rho[..., 1, 1] = c2 * np.cos(r) ** 2
    rho[..., 1, 2] = 0.5 * np.sin(theta) * np.cos(r) * np.exp(-1j * phi)
    rho[..., 2, 1] = np.conj(rho[..., 1, 2])
    rho[..., 2, 2] = np.sin(theta / 2) ** 2
    return rho


def input_density(p: InputParams) -> np.ndarray:
    """Two-qubit state left after tracing out the region-II mode."""
    return _input_density(p.theta, p.phi, p.r)


def input_concurrence(p: InputParams) -> float:
    return math.sin(p.theta) * math.cos(p.r)
