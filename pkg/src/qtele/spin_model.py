"""Two-qubit Heisenberg XXX model with a z-axis Dzyaloshinski-Moriya term."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .complexlin import X, Y, Z, hermitian_eig, ket, kron, matrix_exp_hermitian


class ParamError(ValueError):
    """A physical parameter lies outside its admissible domain."""


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``J``, DM strength ``D`` and temperature ``T`` (k = 1)."""

    J: float
    D: float
    T: float

    def __post_init__(self):
        for name in ("J", "D", "T"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParamError(f"{name} must be finite, got {value!r}")
        if self.T <= 0:
            raise ParamError(f"T must be > 0, got {self.T!r}")

    @property
    def beta(self) -> float:
        return 1.0 / self.T

    @property
    def delta(self) -> float:
        return 2.0 * self.J * math.sqrt(1.0 + self.D**2)

    @property
    def alpha(self) -> float:
        return math.atan(self.D)

    @property
    def Z(self) -> float:
        """Partition function; may overflow to ``inf`` at very low T."""
        b, J = self.beta, self.J
        return 2.0 * math.exp(-b * J / 2) * (1.0 + math.exp(b * J) * math.cosh(b * self.delta / 2))

    @property
    def log_Z(self) -> float:
        energies = np.array([lvl.energy for lvl in spectrum(self)])
        x = -self.beta * energies
        top = x.max()
        return float(top + math.log(np.exp(x - top).sum()))


class Level(NamedTuple):
    energy: float
    vector: np.ndarray


def hamiltonian(p: ModelParams) -> np.ndarray:
    """Assemble H = J/2 [XX + YY + ZZ + D (XY - YX)] from Pauli products."""
    h = kron(X, X) + kron(Y, Y) + kron(Z, Z) + p.D * (kron(X, Y) - kron(Y, X))
    return 0.5 * p.J * h


def spectrum(p: ModelParams) -> list[Level]:
    """Analytic eigenpairs, ordered as |00>, |11>, |+>, |->."""
    root = p.J * math.sqrt(1.0 + p.D**2)
    phase = np.exp(1j * p.alpha)
    plus = (ket("01") + phase * ket("10")) / math.sqrt(2)
    minus = (ket("01") - phase * ket("10")) / math.sqrt(2)
    return [
        Level(p.J / 2, ket("00")),
        Level(p.J / 2, ket("11")),
        Level(root - p.J / 2, plus),
        Level(-root - p.J / 2, minus),
    ]


def thermal_state(p: ModelParams) -> np.ndarray:
    """Gibbs state e^{-beta H}/Z in closed X-shaped form.

    The Boltzmann weights are shifted by the ground energy before
    exponentiation so that low temperatures do not overflow.
    """
    e00, _, e_plus, e_minus = (lvl.energy for lvl in spectrum(p))
    b = p.beta
    e_min = min(e00, e_plus, e_minus)
    w_corner = math.exp(-b * (e00 - e_min))
    w_plus = math.exp(-b * (e_plus - e_min))
    w_minus = math.exp(-b * (e_minus - e_min))
    z = 2 * w_corner + w_plus + w_minus

    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = rho[3, 3] = w_corner / z
    rho[1, 1] = rho[2, 2] = 0.5 * (w_plus + w_minus) / z
    rho[1, 2] = 0.5 * np.exp(1j * p.alpha) * (w_plus - w_minus) / z
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def thermal_state_oracle(p: ModelParams) -> np.ndarray:
    """Brute-force Gibbs state from the matrix exponential of -beta H."""
    h = hamiltonian(p)
    e_min = hermitian_eig(h).eigenvalues[0]
    g = matrix_exp_hermitian(-p.beta * (h - e_min * np.eye(4)))
    return g / np.trace(g).real
