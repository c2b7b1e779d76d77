import math

import numpy as np
import pytest
from scipy.linalg import expm

from core.general import evolve_exact
from core.oracle import rk4_step, evolve_rk4, evolve_volterra, integrate, _substeps
from core.subradiant import evolve_subradiant
from core.system import params_from_ratios, initial_state_from_s_phi, initial_state_from_amplitudes
from model.config import IntegratorConfig, IntegrationMethod, default_step
from model.exception import StepTooLargeException, InvalidScenarioException


def test_rk4_step_matches_exponential_to_fourth_order() -> None:
    m = np.array([[-0.5, 1j], [1j, -1.0]])
    y = np.array([1.0, 0.0], dtype=complex)
    for h in (0.1, 0.05):
        step = rk4_step(y, h, lambda v: m @ v)
        assert np.max(np.abs(step - expm(m * h) @ y)) < h ** 5

    identity = np.eye(2, dtype=complex)
    step_map = rk4_step(identity, 0.1, lambda v: m @ v)
    assert np.allclose(step_map @ y, rk4_step(y, 0.1, lambda v: m @ v))


def test_substeps() -> None:
    assert _substeps(0.1, 0.01) == 10
    assert _substeps(0.1, 0.03) == 4
    assert _substeps(0.001, 0.01) == 1


def test_rk4_without_coupling() -> None:
    params = params_from_ratios(0.0, 0.3, -0.4, 0.6)
    init = initial_state_from_s_phi(0.2, 0.7)
    trajectory = evolve_rk4(init, params, IntegratorConfig(dt=1e-3, max_time=5.0))
    assert trajectory.times[-1] == pytest.approx(5.0)
    assert np.max(np.abs(np.abs(trajectory.c1) - abs(init.c01))) < 1e-12
    assert np.max(np.abs(np.abs(trajectory.c2) - abs(init.c02))) < 1e-12
    assert np.all(trajectory.b == 0)


def test_rk4_keeps_the_dark_state() -> None:
    params = params_from_ratios(1.0, 0.5, 0.5, 0.6)
    init = initial_state_from_amplitudes(params.r_2, -params.r_1)
    trajectory = evolve_rk4(init, params, IntegratorConfig(dt=1e-3), np.linspace(0, 20, 21))
    assert np.max(np.abs(trajectory.c1 - params.r_2)) < 1e-12
    assert np.max(np.abs(trajectory.c2 + params.r_1)) < 1e-12


def test_rk4_against_exact_in_good_cavity() -> None:
    params = params_from_ratios(10.0, -0.5, 0.9, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    grid = np.linspace(0, 5, 501)
    oracle = evolve_rk4(init, params, IntegratorConfig(dt=1e-4), grid)
    exact = evolve_exact(grid, init, params)
    assert oracle.solver == 'rk4'
    assert np.max(np.abs(oracle.c1 - exact.c1)) < 1e-7
    assert np.max(np.abs(oracle.c2 - exact.c2)) < 1e-7


def test_rk4_converges_at_fourth_order() -> None:
    params = params_from_ratios(1.0, -0.5, 0.9, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    grid = np.linspace(0, 5, 6)
    exact = evolve_exact(grid, init, params)
    errors = []
    for dt in (0.01, 0.005):
        oracle = evolve_rk4(init, params, IntegratorConfig(dt=dt), grid)
        errors.append(np.max(np.abs(oracle.c1 - exact.c1)))
    assert 12 < errors[0] / errors[1] < 20


def test_rk4_norm_never_grows() -> None:
    params = params_from_ratios(2.0, -1.0, 1.5, 0.8)
    init = initial_state_from_s_phi(-0.3, 1.2)
    trajectory = evolve_rk4(init, params, IntegratorConfig(dt=1e-3, max_time=10.0))
    assert np.all(np.diff(trajectory.total_norm()) <= 1e-9)


def test_step_too_large() -> None:
    params = params_from_ratios(10.0, 50.0, 50.0, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    with pytest.raises(StepTooLargeException, match="exceeds"):
        evolve_rk4(init, params, IntegratorConfig(dt=1e-3, max_time=1.0))
    with pytest.raises(StepTooLargeException):
        evolve_volterra(init, params, IntegratorConfig(dt=-1.0))


def test_volterra_without_coupling() -> None:
    params = params_from_ratios(0.0, 0.3, -0.4, 0.6)
    init = initial_state_from_s_phi(0.2, 0.7)
    trajectory = evolve_volterra(init, params, IntegratorConfig(dt=1e-2), np.linspace(0, 2, 11))
    assert np.max(np.abs(trajectory.c1 - init.c01)) < 1e-14
    assert np.max(np.abs(trajectory.c2 - init.c02)) < 1e-14
    assert trajectory.b is None


def test_volterra_against_rk4_at_resonance() -> None:
    params = params_from_ratios(1.0, 0.0, 0.0, 0.6)
    init = initial_state_from_s_phi(0.5, 0.3)
    grid = np.linspace(0, 5, 51)
    volterra = evolve_volterra(init, params, IntegratorConfig(dt=1e-3), grid)
    oracle = evolve_rk4(init, params, IntegratorConfig(dt=1e-3), grid)
    assert volterra.solver == 'volterra'
    assert np.max(np.abs(volterra.c1 - oracle.c1)) < 1e-5
    assert np.max(np.abs(volterra.c2 - oracle.c2)) < 1e-5


def test_volterra_against_closed_form() -> None:
    params = params_from_ratios(0.1, 0.7, 0.7, math.sqrt(3) / 2)
    init = initial_state_from_s_phi(0.0, 0.0)
    grid = np.linspace(0, 20, 41)
    volterra = evolve_volterra(init, params, IntegratorConfig(dt=5e-3), grid)
    closed = evolve_subradiant(grid, init, params)
    assert np.max(np.abs(volterra.c1 - closed.c1)) < 1e-5
    assert np.max(np.abs(volterra.c2 - closed.c2)) < 1e-5


def test_volterra_with_unequal_frequencies() -> None:
    params = params_from_ratios(0.5, -0.5, 0.9, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    grid = np.linspace(0, 5, 11)
    volterra = evolve_volterra(init, params, IntegratorConfig(dt=1e-3), grid)
    exact = evolve_exact(grid, init, params)
    assert np.max(np.abs(volterra.c1 - exact.c1)) < 1e-5
    assert np.max(np.abs(volterra.c2 - exact.c2)) < 1e-5


def test_volterra_converges_at_second_order() -> None:
    params = params_from_ratios(1.0, -0.5, 0.9, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    grid = np.linspace(0, 2, 11)
    exact = evolve_exact(grid, init, params)
    errors = []
    for dt in (0.01, 0.005):
        volterra = evolve_volterra(init, params, IntegratorConfig(dt=dt), grid)
        errors.append(np.max(np.abs(volterra.c1 - exact.c1)))
    assert 3 < errors[0] / errors[1] < 5


def test_volterra_needs_uniform_grid() -> None:
    params = params_from_ratios(1.0, 0.0, 0.0, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    with pytest.raises(InvalidScenarioException, match="uniform"):
        evolve_volterra(init, params, IntegratorConfig(dt=1e-3), np.array([0.0, 0.1, 0.3]))


def test_integrate_dispatches_on_method() -> None:
    params = params_from_ratios(1.0, 0.0, 0.0, 0.6)
    init = initial_state_from_s_phi(0.0, 0.0)
    grid = np.linspace(0, 1, 11)
    assert integrate(init, params, IntegratorConfig(dt=1e-3), grid).solver == 'rk4'
    config = IntegratorConfig(dt=1e-3, method=IntegrationMethod.VOLTERRA_TRAPEZOID)
    assert integrate(init, params, config, grid).solver == 'volterra'


@pytest.mark.parametrize('rabi', [0.1, 1.0, 10.0])
@pytest.mark.parametrize('delta', [0.0, 0.7, 10.0, 50.0])
def test_oracles_against_exact_on_regime_grid(rabi: float, delta: float) -> None:
    params = params_from_ratios(rabi, delta, delta, math.sqrt(3) / 2)
    init = initial_state_from_s_phi(0.3, 0.5)
    grid = np.linspace(0, 20, 201)
    exact = evolve_exact(grid, init, params)

    oracle = evolve_rk4(init, params, IntegratorConfig(dt=default_step(params)), grid)
    assert np.max(np.abs(oracle.c1 - exact.c1)) < 1e-7
    assert np.max(np.abs(oracle.c2 - exact.c2)) < 1e-7

    volterra = evolve_volterra(init, params, IntegratorConfig(dt=min(default_step(params), 5e-5)), grid)
    assert np.max(np.abs(volterra.c1 - exact.c1)) < 1e-5
    assert np.max(np.abs(volterra.c2 - exact.c2)) < 1e-5
