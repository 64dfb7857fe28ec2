import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from qtele import measures
from qtele.complexlin import kron, Y
from qtele.rindler import InputParams, input_density
from qtele.spin_model import ModelParams, ParamError
from qtele.teleport import output_concurrence, output_density_closed
from strategies import accels, couplings, density, dm, phis, temps, thetas


def _fidelity_scipy(a, b):
    ra = scipy.linalg.sqrtm(a)
    return np.trace(scipy.linalg.sqrtm(ra @ b @ ra)).real ** 2


def _concurrence_eig(rho):
    tilde = kron(Y, Y) @ rho.conj() @ kron(Y, Y)
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(rho @ tilde).real)[::-1], 0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


@settings(max_examples=100, deadline=None)
@given(density(), density())
def test_uhlmann_matches_scipy_on_full_rank(a, b):
    f = measures.uhlmann_fidelity(a, b)
    assert -1e-12 <= f <= 1 + 1e-12
    assert abs(f - _fidelity_scipy(a, b)) < 1e-8
    assert abs(f - measures.uhlmann_fidelity(b, a)) < 1e-10


@settings(max_examples=100, deadline=None)
@given(density())
def test_concurrence_matches_eigenvalue_route(rho):
    assert abs(measures.wootters_concurrence(rho) - _concurrence_eig(rho)) < 1e-7


@settings(max_examples=100, deadline=None)
@given(couplings, dm, temps, thetas, phis, accels)
def test_output_concurrence_three_ways(J, D, T, theta, phi, r):
    m, p = ModelParams(J, D, T), InputParams(theta, phi, r)
    rho = output_density_closed(m, p)
    closed = output_concurrence(m, p)
    assert abs(closed - measures.x_state_concurrence(rho)) < 1e-10
    assert abs(closed - measures.wootters_concurrence(rho)) < 1e-10


def test_fidelity_of_pure_states_is_overlap():
    a = input_density(InputParams(0.7, 0.2, 0.0))
    b = input_density(InputParams(1.9, 1.1, 0.0))
    overlap = abs(np.trace(a @ b))
    assert abs(measures.uhlmann_fidelity(a, b) - overlap) < 1e-12
    assert abs(measures.uhlmann_fidelity(a, a) - 1) < 1e-12


def test_bell_state_concurrence_is_one():
    rho = input_density(InputParams(math.pi / 2, 0.3, 0.0))
    assert abs(measures.wootters_concurrence(rho) - 1) < 1e-12


def test_sphere_weights():
    tt, pp, w = measures.sphere_nodes(measures.QuadratureSpec(20, 24))
    assert abs(w.sum() - 1) < 1e-14
    # <cos^2 theta> over the sphere is 1/3
    assert abs((w * np.cos(tt) ** 2).sum() - 1 / 3) < 1e-14


def test_quadrature_reproduces_inertial_closed_form():
    for m in (ModelParams(1.0, 0.0, 0.3), ModelParams(-1.0, 2.0, 0.5), ModelParams(0.5, 1.0, 2.0)):
        quad = measures.average_fidelity_quadrature(m, 0.0, measures.QuadratureSpec(32, 32))
        assert abs(quad - measures.average_fidelity_inertial(m)) < 1e-10


def test_quadrature_converges():
    m = ModelParams(1.0, 1.0, 0.5)
    coarse = measures.average_fidelity_quadrature(m, 0.5, measures.QuadratureSpec(32, 32))
    fine = measures.average_fidelity_quadrature(m, 0.5)
    assert abs(coarse - fine) < 1e-12


def test_phi_shortcut_agrees():
    m = ModelParams(1.0, 2.0, 0.5)
    q = measures.QuadratureSpec(24, 24)
    full = measures.average_fidelity_quadrature(m, 0.4, q)
    fast = measures.average_fidelity_quadrature(m, 0.4, q, assume_phi_invariant=True)
    assert abs(full - fast) < 1e-12


def test_closed_forms_at_r0_agree():
    for J in (-2.0, 1.0):
        for D in (0.0, 3.0):
            m = ModelParams(J, D, 0.2)
            assert abs(measures.average_fidelity_closed(m, 0.0) - measures.average_fidelity_inertial(m)) < 1e-12


def test_limits():
    assert abs(measures.average_fidelity_inertial(ModelParams(1.0, 0.0, 1e6)) - 0.25) < 1e-5
    assert abs(measures.average_fidelity_inertial(ModelParams(1.0, 0.0, 0.01)) - 1) < 1e-6


def test_classical_crossing_bracket():
    lo, hi = measures.classical_crossing()
    assert hi - lo <= 1e-6
    assert 0.834 < lo < 0.8341
    assert measures.classical_crossing(-1.0, 0.0) is None


def test_overflow_is_reported():
    with pytest.raises(ParamError, match="overflows"):
        measures.average_fidelity_inertial(ModelParams(2.0, 4.0, 1e-3))


def test_quadrature_spec_minimum():
    with pytest.raises(ParamError):
        measures.QuadratureSpec(8, 64)
