"""
Closed-form dynamics for qubits with equal transition frequencies.

The state psi_- = r_2|10> - r_1|01> is decoupled from the cavity; its orthogonal
partner psi_+ = r_1|10> + r_2|01> decays with the survival amplitude E(t).
"""

from typing import Tuple

import numpy as np

from model.exception import ScenarioMismatchException, NegativeTimeException, ZeroCouplingException
from model.state import SystemParams, InitialState, SuperSubDecomposition, Trajectory

# |Re(Omega)| t / 2 above which cosh/sinh are replaced by the factored exponentials
DIRECT_FORM_LIMIT = 30.0
SERIES_LIMIT = 1e-4


def _check_subradiant(params: SystemParams) -> None:
    if not params.is_subradiant:
        raise ScenarioMismatchException(
            f"closed form needs delta_1 == delta_2, got delta_21={params.delta_21!r}")


def _check_times(t) -> np.ndarray:
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise NegativeTimeException("evaluation times must be non-negative")
    return times


def exact_omega(params: SystemParams) -> complex:
    """
    Omega = sqrt(lambda^2 - Omega_R^2 - 2i delta lambda), principal branch
    :param params: Equal-frequency system parameters
    :return: Omega
    """
    kappa = complex(params.lambda_, -params.delta_1)
    return complex(np.sqrt(kappa * kappa - 4.0 * params.rabi ** 2))


def _shc(z: np.ndarray) -> np.ndarray:
    """
    sinh(z)/z, equal to 1 at z = 0
    """
    small = np.abs(z) < SERIES_LIMIT
    safe = np.where(small, 1.0, z)
    return np.where(small, 1.0 + z * z / 6.0, np.sinh(safe) / safe)


def _survival_amplitude(t: np.ndarray, kappa: complex, omega: complex, rabi: float):
    """
    E(t) and dE/dt for E = e^{-kappa t/2}[cosh(Omega t/2) + (kappa/Omega) sinh(Omega t/2)].
    Both square-root branches of Omega give the same result.
    :param t: Non-negative times
    :param kappa: lambda - i delta
    :param omega: Either root of kappa^2 - 4 R^2
    :param rabi: Vacuum Rabi frequency
    :return: (E, dE/dt) arrays shaped like t
    """
    t = np.asarray(t, dtype=float)
    value = np.empty(t.shape, dtype=complex)
    slope = np.empty(t.shape, dtype=complex)
    direct = np.abs(omega.real) * t / 2.0 <= DIRECT_FORM_LIMIT

    # cosh/sinh form; exact everywhere, used while cosh cannot overflow
    td = t[direct]
    z = omega * td / 2.0
    envelope = np.exp(-kappa * td / 2.0)
    shc = _shc(z)
    value[direct] = envelope * (np.cosh(z) + kappa * td / 2.0 * shc)
    slope[direct] = -rabi ** 2 * td * envelope * shc

    # factored form: both exponents have non-positive real part
    tf = t[~direct]
    s_plus = (-kappa + omega) / 2.0
    s_minus = (-kappa - omega) / 2.0
    e_plus = np.exp(s_plus * tf)
    e_minus = np.exp(s_minus * tf)
    ratio = kappa / omega
    value[~direct] = 0.5 * (1.0 + ratio) * e_plus + 0.5 * (1.0 - ratio) * e_minus
    slope[~direct] = -(rabi ** 2 / omega) * (e_plus - e_minus)
    return value, slope


def _scalar_or_array(values, t):
    return complex(values) if np.ndim(t) == 0 else values


def survival_amplitude(t, params: SystemParams):
    """
    Survival amplitude E(t) = <psi_+(t)|psi_+(0)> of the superradiant state
    :param t: Time or array of times, non-negative
    :param params: Equal-frequency system parameters
    :return: E(t), complex scalar or array
    """
    _check_subradiant(params)
    times = _check_times(t)
    kappa = complex(params.lambda_, -params.delta_1)
    value, _ = _survival_amplitude(times, kappa, exact_omega(params), params.rabi)
    return _scalar_or_array(value, t)


def survival_amplitude_derivative(t, params: SystemParams):
    """
    dE/dt = -(R^2/Omega)(e^{s+ t} - e^{s- t})
    :param t: Time or array of times, non-negative
    :param params: Equal-frequency system parameters
    :return: dE/dt, complex scalar or array
    """
    _check_subradiant(params)
    times = _check_times(t)
    kappa = complex(params.lambda_, -params.delta_1)
    _, slope = _survival_amplitude(times, kappa, exact_omega(params), params.rabi)
    return _scalar_or_array(slope, t)


def amplitudes_subradiant(t, init: InitialState, params: SystemParams) -> Tuple:
    """
    Qubit amplitudes
        c1 = [r2^2 + r1^2 E] c01 - r1 r2 [1 - E] c02
        c2 = -r1 r2 [1 - E] c01 + [r1^2 + r2^2 E] c02
    :param t: Time or array of times, non-negative
    :param init: Initial state
    :param params: Equal-frequency system parameters
    :return: (c1, c2)
    """
    e_t = survival_amplitude(t, params)
    r_1, r_2 = params.r_1, params.r_2
    c1 = (r_2 ** 2 + r_1 ** 2 * e_t) * init.c01 - r_1 * r_2 * (1.0 - e_t) * init.c02
    c2 = -r_1 * r_2 * (1.0 - e_t) * init.c01 + (r_1 ** 2 + r_2 ** 2 * e_t) * init.c02
    return c1, c2


def decompose_super_sub(init: InitialState, params: SystemParams) -> SuperSubDecomposition:
    """
    Project the initial state on psi_+ and psi_-
    :param init: Initial state
    :param params: Equal-frequency system parameters
    :return: beta_+ = r1 c01 + r2 c02, beta_- = r2 c01 - r1 c02
    """
    _check_subradiant(params)
    r_1, r_2 = params.r_1, params.r_2
    return SuperSubDecomposition(
        beta_plus=r_1 * init.c01 + r_2 * init.c02,
        beta_minus=r_2 * init.c01 - r_1 * init.c02)


def asymptotic_amplitudes(init: InitialState, params: SystemParams) -> Tuple[complex, complex]:
    """
    Long-time limit of the amplitudes: the trapped psi_- component
    :param init: Initial state
    :param params: Equal-frequency system parameters with a non-zero Rabi frequency
    :return: (r2 beta_-, -r1 beta_-)
    """
    decomposition = decompose_super_sub(init, params)
    if params.rabi <= 0:
        raise ZeroCouplingException("no decay without coupling to the cavity (W = 0)")
    beta_minus = decomposition.beta_minus
    return params.r_2 * beta_minus, -params.r_1 * beta_minus


def evolve_subradiant(t_grid, init: InitialState, params: SystemParams) -> Trajectory:
    """
    Closed-form trajectory, including the cavity-frame pseudomode amplitude
    b(t) = i beta_+ E'(t) e^{-i delta t} / R
    :param t_grid: Time grid starting at 0
    :param init: Initial state
    :param params: Equal-frequency system parameters
    :return: Trajectory
    """
    times = np.asarray(t_grid, dtype=float)
    c1, c2 = amplitudes_subradiant(times, init, params)
    if params.rabi > 0:
        beta_plus = decompose_super_sub(init, params).beta_plus
        slope = survival_amplitude_derivative(times, params)
        b = 1j * beta_plus * slope * np.exp(-1j * params.delta_1 * times) / params.rabi
    else:
        b = np.zeros(times.shape, dtype=complex)
    return Trajectory(times, c1, c2, b=b, solver='closed')
