"""Entanglement and fidelity measures for the teleportation chain."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexlin import Y, as_matrix, kron, psd_sqrt, singular_values
from .rindler import InputParams, _input_density, check_r
from .spin_model import ModelParams, ParamError
from .teleport import _output_density

#: Best average fidelity reachable with classical communication alone.
CLASSICAL_FIDELITY = 2.0 / 3.0

_YY = kron(Y, Y)

# Pure inputs leave roundoff-sized eigenvalues in the stored matrix whose
# square roots (~1e-8) would otherwise leak into the fidelity.
FIDELITY_RANK_RTOL = 1e-14


def wootters_concurrence(rho) -> float | np.ndarray:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit state.

    The ``l_i`` are the square roots, in decreasing order, of the
    eigenvalues of ``rho @ rho_tilde`` with ``rho_tilde = (Y x Y) rho* (Y x Y)``.
    They equal the singular values of ``sqrt(rho) sqrt(rho_tilde)``, which is
    how they are computed here: it avoids taking square roots of eigenvalues
    that sit at roundoff level. Accepts a stack of states.
    """
    root = psd_sqrt(rho)
    flipped_root = _YY @ np.conj(root) @ _YY
    lam = singular_values(root @ flipped_root)
    c = np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])
    return float(c) if c.ndim == 0 else c


def x_state_concurrence(rho) -> float:
    """Concurrence of an X-shaped state from its entries."""
    rho = as_matrix(rho)
    d = rho.diagonal().real
    inner = abs(rho[1, 2]) - math.sqrt(max(d[0] * d[3], 0.0))
    outer = abs(rho[0, 3]) - math.sqrt(max(d[1] * d[2], 0.0))
    return 2.0 * max(0.0, inner, outer)


def uhlmann_fidelity(a, b) -> float | np.ndarray:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(a) b sqrt(a)))**2``; broadcasts over stacks.

    The trace of that square root is the sum of singular values of
    ``sqrt(a) sqrt(b)``.
    """
    root_a = psd_sqrt(a, FIDELITY_RANK_RTOL)
    root_b = psd_sqrt(b, FIDELITY_RANK_RTOL)
    f = np.sum(singular_values(root_a @ root_b), axis=-1) ** 2
    return float(f) if f.ndim == 0 else f


def teleport_fidelity(m: ModelParams, p: InputParams) -> float:
    """Fidelity between the accelerated input state and its teleported copy."""
    return uhlmann_fidelity(_input_density(p.theta, p.phi, p.r), _output_density(m, p.theta, p.phi, p.r))


@dataclass(frozen=True)
class QuadratureSpec:
    n_theta: int = 64
    n_phi: int = 64

    def __post_init__(self):
        if self.n_theta < 16 or self.n_phi < 16:
            raise ParamError(f"quadrature needs at least 16 nodes per axis, got {self}")


def sphere_nodes(q: QuadratureSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes and weights for averaging over the Bloch sphere.

    Gauss-Legendre in theta on [0, pi] (the sin(theta) Jacobian is folded into
    the weights) and equispaced nodes in phi. The weights sum to one.
    """
    x, w = np.polynomial.legendre.leggauss(q.n_theta)
    theta = 0.5 * math.pi * (x + 1.0)
    w_theta = 0.5 * math.pi * w * np.sin(theta)
    phi = 2.0 * math.pi * np.arange(q.n_phi) / q.n_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    weights = np.multiply.outer(w_theta, np.full(q.n_phi, 2.0 * math.pi / q.n_phi)) / (4.0 * math.pi)
    return tt, pp, weights


def average_fidelity_quadrature(
    m: ModelParams,
    r: float,
    q: QuadratureSpec = QuadratureSpec(),
    *,
    assume_phi_invariant: bool = False,
) -> float:
    """Average of :func:`teleport_fidelity` over the input amplitude and phase.

    ``assume_phi_invariant`` evaluates one phi column only and scales; it is
    faster but takes the phase covariance of the fidelity for granted.
    """
    check_r(r)
    tt, pp, weights = sphere_nodes(q)
    if assume_phi_invariant:
        tt, pp = tt[:, :1], np.zeros_like(tt[:, :1])
        weights = weights.sum(axis=1, keepdims=True)
    f = uhlmann_fidelity(_input_density(tt, pp, r), _output_density(m, tt, pp, r))
    return math.fsum((weights * f).ravel())


def _eq_terms(m: ModelParams):
    b, J, D, d = m.beta, m.J, m.D, m.delta
    try:
        e2 = math.exp(2 * J * b)
        ej = math.exp(J * b)
        ch2 = math.cosh(b * d / 2)
        chd = math.cosh(b * d)
        k2 = (1 + ej * ch2) ** 2
    except OverflowError:
        raise ParamError(f"closed form overflows double precision at J={J}, D={D}, T={m.T}") from None
    return D * D, e2, ej, ch2, chd, k2


def average_fidelity_closed(m: ModelParams, r: float) -> float:
    """Closed-form average fidelity for an accelerated input, evaluated term by term."""
    check_r(r)
    D2, e2, ej, ch2, chd, k2 = _eq_terms(m)
    c2r, c4r = math.cos(2 * r), math.cos(4 * r)
    bracket = (
        e2 * (15 + 11 * D2 + 4 * (2 + D2) * c2r) * chd
        + 7 * e2
        + 11 * D2 * e2
        + 4 * D2 * e2 * c2r
        + 2 * (1 + D2) * e2 * c4r * ch2**2
        + 8 * ej * (1 + D2) * (2 + c2r) * ch2 * math.sin(r) ** 2
        + 16 * (1 + D2) * math.cos(r) ** 2
    )
    value = bracket / (48 * (1 + D2) * k2)
    if not math.isfinite(value):
        raise ParamError(f"closed form overflows double precision at J={m.J}, D={m.D}, T={m.T}")
    return value


def average_fidelity_inertial(m: ModelParams) -> float:
    """Closed-form average fidelity with no acceleration."""
    D2, e2, ej, ch2, chd, k2 = _eq_terms(m)
    value = (2 * (1 + D2) + e2 * (1 + 2 * D2 + (3 + 2 * D2) * chd)) / (6 * (1 + D2) * k2)
    if not math.isfinite(value):
        raise ParamError(f"closed form overflows double precision at J={m.J}, D={m.D}, T={m.T}")
    return value


def classical_crossing(J: float = 1.0, D: float = 0.0, lo: float = 0.01, hi: float = 2.0,
                       tol: float = 1e-6) -> tuple[float, float] | None:
    """Bracket ``[T_lo, T_hi]`` (width <= ``tol``) where the inertial average
    fidelity crosses the classical value 2/3, or ``None`` if it does not on
    ``[lo, hi]``.
    """
    def gap(T):
        return average_fidelity_inertial(ModelParams(J, D, T)) - CLASSICAL_FIDELITY

    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo == 0:
        return lo, lo
    if g_lo * g_hi > 0:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = gap(mid)
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return lo, hi
