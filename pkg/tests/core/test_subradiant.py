import math

import numpy as np
import pytest

from core.entanglement import concurrence_trajectory
from core.general import evolve_exact
from core.oracle import evolve_rk4
from core.subradiant import (
    DIRECT_FORM_LIMIT,
    exact_omega,
    _survival_amplitude,
    survival_amplitude,
    survival_amplitude_derivative,
    amplitudes_subradiant,
    decompose_super_sub,
    asymptotic_amplitudes,
    evolve_subradiant)
from core.system import params_from_ratios, initial_state_from_s_phi, initial_state_from_amplitudes
from model.config import IntegratorConfig
from model.exception import ScenarioMismatchException, NegativeTimeException, ZeroCouplingException


def test_survival_amplitude_at_zero() -> None:
    for rabi, delta in [(0.1, 0.0), (10.0, 0.7), (0.5, 0.5), (1.0, 50.0)]:
        params = params_from_ratios(rabi, delta, delta, 0.6)
        assert survival_amplitude(0.0, params) == 1
        assert survival_amplitude_derivative(0.0, params) == 0

    params = params_from_ratios(0.1, 0.0, 0.0, 1.0)
    assert isinstance(survival_amplitude(1.0, params), complex)
    assert survival_amplitude(np.array([0.0, 1.0]), params).shape == (2,)


def test_survival_amplitude_without_coupling() -> None:
    params = params_from_ratios(0.0, 0.7, 0.7, 0.6)
    times = np.linspace(0, 100, 11)
    assert np.max(np.abs(survival_amplitude(times, params) - 1)) < 1e-9


def test_survival_amplitude_branch_invariance() -> None:
    params = params_from_ratios(0.1, 0.7, 0.7, 1.0)
    kappa = complex(1.0, -0.7)
    omega = exact_omega(params)
    times = np.linspace(0, 200, 401)
    value, slope = _survival_amplitude(times, kappa, omega, params.rabi)
    other_value, other_slope = _survival_amplitude(times, kappa, -omega, params.rabi)
    assert np.max(np.abs(value - other_value)) < 1e-12
    assert np.max(np.abs(slope - other_slope)) < 1e-12


def test_survival_amplitude_continuous_across_forms() -> None:
    params = params_from_ratios(0.1, 0.0, 0.0, 1.0)
    switch = 2 * DIRECT_FORM_LIMIT / abs(exact_omega(params).real)
    before, after = survival_amplitude(np.array([switch * (1 - 1e-12), switch * (1 + 1e-12)]), params)
    assert abs(before - after) < 1e-9


def test_survival_amplitude_matches_rk4() -> None:
    # a fully coupled qubit 1 starting excited has c1(t) = E(t)
    params = params_from_ratios(0.1, 0.0, 0.0, 1.0)
    init = initial_state_from_amplitudes(1.0, 0.0)
    grid = np.linspace(0, 10, 101)
    trajectory = evolve_rk4(init, params, IntegratorConfig(dt=1e-3, max_time=10.0), grid)
    assert np.max(np.abs(trajectory.c1 - survival_amplitude(grid, params))) < 1e-8
    assert np.max(np.abs(trajectory.c2)) == 0


def test_survival_amplitude_derivative() -> None:
    params = params_from_ratios(1.0, 0.5, 0.5, 0.8)
    times = np.linspace(0, 10, 10001)
    numeric = np.gradient(survival_amplitude(times, params), times, edge_order=2)
    assert np.max(np.abs(numeric - survival_amplitude_derivative(times, params))) < 1e-5

    # closed form of the derivative away from t = 0
    omega = exact_omega(params)
    kappa = complex(1.0, -0.5)
    s_plus, s_minus = (-kappa + omega) / 2, (-kappa - omega) / 2
    t = 7.0
    expected = -(params.rabi ** 2 / omega) * (np.exp(s_plus * t) - np.exp(s_minus * t))
    assert abs(survival_amplitude_derivative(t, params) - expected) < 1e-12


@pytest.mark.parametrize('r_1', [0.2, 1 / math.sqrt(2), math.sqrt(3) / 2])
def test_subradiant_state_is_frozen(r_1: float) -> None:
    params = params_from_ratios(0.1, 0.7, 0.7, r_1)
    init = initial_state_from_amplitudes(params.r_2, -params.r_1)
    grid = np.linspace(0, 1000, 101)
    c1, c2 = amplitudes_subradiant(grid, init, params)
    assert np.max(np.abs(c1 - params.r_2)) < 1e-12
    assert np.max(np.abs(c2 + params.r_1)) < 1e-12

    concurrence = concurrence_trajectory(evolve_subradiant(grid, init, params))
    assert np.max(np.abs(concurrence - 2 * params.r_1 * params.r_2)) < 1e-9


def test_decoupled_qubit_keeps_its_amplitude() -> None:
    params = params_from_ratios(1.0, 0.3, 0.3, 0.0)
    init = initial_state_from_s_phi(0.2, 1.0)
    c1, _ = amplitudes_subradiant(np.linspace(0, 50, 51), init, params)
    assert np.max(np.abs(c1 - init.c01)) < 1e-14


def test_decompose_super_sub() -> None:
    params = params_from_ratios(0.1, 0.0, 0.0, math.sqrt(3) / 2)
    init = initial_state_from_s_phi(0.3, 0.4)
    decomposition = decompose_super_sub(init, params)
    assert abs(decomposition.beta_plus) ** 2 + abs(decomposition.beta_minus) ** 2 == pytest.approx(1.0)

    bright = decompose_super_sub(initial_state_from_amplitudes(params.r_1, params.r_2), params)
    assert bright.beta_plus == pytest.approx(1.0)
    assert abs(bright.beta_minus) < 1e-15


def test_asymptotic_amplitudes() -> None:
    params = params_from_ratios(0.1, 0.0, 0.0, math.sqrt(3) / 2)
    init = initial_state_from_s_phi(1.0, 0.0)
    c1_inf, c2_inf = asymptotic_amplitudes(init, params)
    assert 2 * abs(c1_inf) * abs(c2_inf) == pytest.approx(3 * math.sqrt(3) / 8)

    c1, c2 = amplitudes_subradiant(1e4, init, params)
    assert abs(c1 - c1_inf) < 1e-10
    assert abs(c2 - c2_inf) < 1e-10

    with pytest.raises(ZeroCouplingException):
        asymptotic_amplitudes(init, params_from_ratios(0.0, 0.0, 0.0, 0.5))


def test_closed_form_errors() -> None:
    params = params_from_ratios(0.1, -0.5, 0.9, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    with pytest.raises(ScenarioMismatchException, match="delta_1 == delta_2"):
        survival_amplitude(1.0, params)
    with pytest.raises(ScenarioMismatchException):
        evolve_subradiant(np.linspace(0, 1, 3), init, params)
    with pytest.raises(NegativeTimeException):
        survival_amplitude(-1.0, params_from_ratios(0.1, 0.0, 0.0, 0.6))


def test_evolve_subradiant_dissipates_through_the_cavity() -> None:
    # d/dt (|c1|^2 + |c2|^2 + |b|^2) = -2 lambda |b|^2
    params = params_from_ratios(1.0, 0.5, 0.5, 0.8)
    init = initial_state_from_s_phi(0.4, 0.9)
    times = np.linspace(0, 20, 20001)
    trajectory = evolve_subradiant(times, init, params)
    assert trajectory.solver == 'closed'
    norm = trajectory.total_norm()
    assert np.all(np.diff(norm) <= 1e-12)
    slope = np.gradient(norm, times, edge_order=2)
    assert np.max(np.abs(slope + 2 * np.abs(trajectory.b) ** 2)) < 1e-5

    exact = evolve_exact(times[::100], init, params)
    assert np.max(np.abs(exact.b - trajectory.b[::100])) < 1e-10


def test_evolve_subradiant_without_coupling() -> None:
    params = params_from_ratios(0.0, 0.0, 0.0, 0.6)
    init = initial_state_from_s_phi(0.2, 0.0)
    trajectory = evolve_subradiant(np.linspace(0, 10, 11), init, params)
    assert np.all(trajectory.b == 0)
    assert np.max(np.abs(trajectory.c1 - init.c01)) < 1e-12
