"""
Brute-force integrators used to cross-check the closed-form and spectral solvers
"""

import logging
from typing import Callable, Dict, Optional

import numpy as np

from core.general import generator_matrix, rotating_frame_frequency, to_lab_amplitudes
from core.system import correlation_function
from model.config import IntegratorConfig, IntegrationMethod
from model.exception import InvalidScenarioException
from model.state import SystemParams, InitialState, Trajectory

UNIFORM_GRID_TOLERANCE = 1e-9


def rk4_step(y: np.ndarray, h: float, rhs: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """
    One classical Runge-Kutta step for an autonomous system dy/dt = rhs(y)
    :param y: State; a matrix of column states is stepped column by column
    :param h: Step
    :param rhs: Right-hand side
    :return: State after one step
    """
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _substeps(spacing: float, dt: float) -> int:
    return max(1, int(np.ceil(spacing / dt - 1e-9)))


def _output_grid(config: IntegratorConfig, t_grid) -> np.ndarray:
    if t_grid is not None:
        return np.asarray(t_grid, dtype=float)
    n = _substeps(config.max_time, config.dt)
    return np.linspace(0.0, config.max_time, n + 1)


def evolve_rk4(
        init: InitialState,
        params: SystemParams,
        config: IntegratorConfig,
        t_grid=None) -> Trajectory:
    """
    Fixed-step RK4 on the pseudomode system, in the frame rotating at the mean detuning.
    Each output interval is split into the fewest equal substeps no longer than config.dt.
    :param init: Initial state
    :param params: System parameters
    :param config: Step and, without t_grid, the integration time
    :param t_grid: Optional output grid starting at 0
    :return: Trajectory including the pseudomode amplitude
    """
    config.validate(params)
    times = _output_grid(config, t_grid)
    m = generator_matrix(params).shifted(rotating_frame_frequency(params))

    def rhs(y: np.ndarray) -> np.ndarray:
        return m @ y

    # the step map of a linear system is a fixed matrix; build it once per step size
    step_maps: Dict[float, np.ndarray] = {}
    segment_maps: Dict[tuple, np.ndarray] = {}
    identity = np.eye(3, dtype=complex)
    y = np.empty((3, times.size), dtype=complex)
    y[:, 0] = init.as_vector()
    for k, spacing in enumerate(np.diff(times)):
        n = _substeps(spacing, config.dt)
        h = spacing / n
        key = (float(h), n)
        if key not in segment_maps:
            if key[0] not in step_maps:
                step_maps[key[0]] = rk4_step(identity, h, rhs)
            segment_maps[key] = np.linalg.matrix_power(step_maps[key[0]], n)
        y[:, k + 1] = segment_maps[key] @ y[:, k]

    logging.info("RK4 integrated %d output points with dt=%g", times.size, config.dt)
    c1, c2, b = to_lab_amplitudes(times, y, params)
    return Trajectory(times, c1, c2, b=b, solver='rk4')


def _uniform_spacing(times: np.ndarray) -> float:
    if times.size < 2:
        raise InvalidScenarioException("Volterra integration needs at least two grid points")
    spacing = np.diff(times)
    if np.max(np.abs(spacing - spacing[0])) > UNIFORM_GRID_TOLERANCE * max(1.0, times[-1]):
        raise InvalidScenarioException("Volterra integration needs a uniform time grid")
    return float(spacing[0])


def evolve_volterra(
        init: InitialState,
        params: SystemParams,
        config: IntegratorConfig,
        t_grid=None) -> Trajectory:
    """
    Trapezoidal discretization of the integro-differential amplitude equations
        dc_j/dt = -int_0^t f(t - t1) e^{i delta_j (t - t1)} u_j(t1) dt1
    with u_1 = a1^2 c1 + a1 a2 e^{-i delta_21 t1} c2 and u_2 = a1 a2 e^{i delta_21 t1} c1 + a2^2 c2.
    The Lorentzian kernel is a single exponential, so each trapezoid history sum follows
    from the previous one in one multiplication. No pseudomode amplitude is produced.
    :param init: Initial state
    :param params: System parameters
    :param config: Step and, without t_grid, the integration time
    :param t_grid: Optional uniform output grid starting at 0
    :return: Trajectory
    """
    config.validate(params)
    times = _output_grid(config, t_grid)
    spacing = _uniform_spacing(times)
    ratio = _substeps(spacing, config.dt)
    h = spacing / ratio
    n_steps = ratio * (times.size - 1)
    fine = h * np.arange(n_steps + 1)

    kernel = correlation_function(fine, params)
    kernel_1 = (kernel * np.exp(1j * params.delta_1 * fine)).tolist()
    kernel_2 = (kernel * np.exp(1j * params.delta_2 * fine)).tolist()
    phases = np.exp(-1j * params.delta_21 * fine).tolist()
    decay_1 = complex(np.exp((-params.lambda_ + 1j * params.delta_1) * h))
    decay_2 = complex(np.exp((-params.lambda_ + 1j * params.delta_2) * h))

    # scalar arithmetic keeps the per-step cost low on long grids
    w_sq = params.w_weight ** 2
    a_11, a_12, a_22 = params.alpha_1 ** 2, params.alpha_1 * params.alpha_2, params.alpha_2 ** 2
    g_11, g_12, g_22 = w_sq * a_11, w_sq * a_12, w_sq * a_22
    quarter = 0.25 * h * h
    half = 0.5 * h
    d_11, d_22 = 1.0 + quarter * g_11, 1.0 + quarter * g_22

    c_1, c_2 = init.c01, init.c02
    u_1 = a_11 * c_1 + a_12 * c_2
    u_2 = a_12 * c_1 + a_22 * c_2
    u_1_start, u_2_start = u_1, u_2
    sum_1 = sum_2 = slope_1 = slope_2 = 0j
    out_1, out_2 = [c_1], [c_2]

    for n in range(n_steps):
        # sum_j = sum_{k<=n} f_j((n+1-k) h) u_j(k h)
        sum_1 = decay_1 * (sum_1 + kernel_1[0] * u_1)
        sum_2 = decay_2 * (sum_2 + kernel_2[0] * u_2)
        known_1 = -h * (sum_1 - 0.5 * kernel_1[n + 1] * u_1_start)
        known_2 = -h * (sum_2 - 0.5 * kernel_2[n + 1] * u_2_start)
        ph = phases[n + 1]
        b_12, b_21 = g_12 * ph, g_12 * ph.conjugate()
        rhs_1 = c_1 + half * (slope_1 + known_1)
        rhs_2 = c_2 + half * (slope_2 + known_2)
        det = d_11 * d_22 - quarter * quarter * b_12 * b_21
        c_1, c_2 = ((d_22 * rhs_1 - quarter * b_12 * rhs_2) / det,
                    (d_11 * rhs_2 - quarter * b_21 * rhs_1) / det)
        slope_1 = known_1 - half * (g_11 * c_1 + b_12 * c_2)
        slope_2 = known_2 - half * (b_21 * c_1 + g_22 * c_2)
        u_1 = a_11 * c_1 + a_12 * ph * c_2
        u_2 = a_12 * ph.conjugate() * c_1 + a_22 * c_2
        if (n + 1) % ratio == 0:
            out_1.append(c_1)
            out_2.append(c_2)

    logging.info("Volterra integrated %d steps with h=%g", n_steps, h)
    return Trajectory(times, np.array(out_1), np.array(out_2), solver='volterra')


def integrate(
        init: InitialState,
        params: SystemParams,
        config: IntegratorConfig,
        t_grid: Optional[np.ndarray] = None) -> Trajectory:
    """
    Run the oracle selected by config.method
    """
    if config.method is IntegrationMethod.VOLTERRA_TRAPEZOID:
        return evolve_volterra(init, params, config, t_grid)
    return evolve_rk4(init, params, config, t_grid)
