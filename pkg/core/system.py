"""
Physical parameters, the Lorentzian reservoir and initial states
"""

import math

import numpy as np

from model.exception import OutOfRangeSeparabilityException, NegativeLagException
from model.state import SystemParams, InitialState


def params_new(
        omega_1: float,
        omega_2: float,
        omega_c: float,
        lambda_: float,
        w_weight: float,
        alpha_1: float,
        alpha_2: float,
        normalize: bool = True) -> SystemParams:
    """
    Build validated system parameters
    :param omega_1: Transition frequency of qubit 1
    :param omega_2: Transition frequency of qubit 2
    :param omega_c: Cavity fundamental frequency
    :param lambda_: Lorentzian half-width (cavity loss rate)
    :param w_weight: Lorentzian weight W
    :param alpha_1: Dimensionless coupling of qubit 1
    :param alpha_2: Dimensionless coupling of qubit 2
    :param normalize: Express every rate in units of lambda (lambda becomes 1)
    :return: System parameters
    """
    # Validate in raw units first so the errors quote what the caller passed
    params = SystemParams(lambda_, w_weight, omega_c, omega_1, omega_2, alpha_1, alpha_2)
    if not normalize:
        return params
    return SystemParams(
        1.0,
        w_weight / lambda_,
        omega_c / lambda_,
        omega_1 / lambda_,
        omega_2 / lambda_,
        alpha_1,
        alpha_2)


def params_from_ratios(
        rabi: float,
        delta_1: float,
        delta_2: float,
        r_1: float,
        lambda_: float = 1.0) -> SystemParams:
    """
    Build parameters from the quantities quoted in lambda units: R = rabi/lambda,
    detunings delta_j/lambda and the relative coupling r_1 (alpha_T = 1, omega_c = 0)
    :param rabi: Vacuum Rabi frequency
    :param delta_1: Detuning of qubit 1 from the cavity
    :param delta_2: Detuning of qubit 2 from the cavity
    :param r_1: Relative coupling of qubit 1, in [-1, 1]
    :param lambda_: Linewidth
    :return: System parameters
    """
    r_2 = math.sqrt(max(0.0, 1.0 - r_1 * r_1))
    return SystemParams(lambda_, rabi, 0.0, delta_1, delta_2, r_1, r_2)


def initial_state_from_s_phi(s: float, phi: float) -> InitialState:
    """
    Initial state c01 = sqrt((1-s)/2), c02 = sqrt((1+s)/2) e^{i phi}
    :param s: Separability parameter, s^2 = 1 - C(0)^2
    :param phi: Relative phase in radians
    :return: Normalized initial state
    """
    if not -1.0 <= s <= 1.0:
        raise OutOfRangeSeparabilityException(f"s must lie in [-1, 1], got {s!r}")
    c01 = math.sqrt((1.0 - s) / 2.0)
    c02 = math.sqrt((1.0 + s) / 2.0) * complex(math.cos(phi), math.sin(phi))
    return InitialState(c01, c02)


def initial_state_from_amplitudes(c01: complex, c02: complex) -> InitialState:
    return InitialState(c01, c02)


def spectral_density(omega, params: SystemParams):
    """
    Lorentzian spectral density J(omega) = (W^2/pi) lambda / ((omega - omega_c)^2 + lambda^2)
    :param omega: Frequency or array of frequencies
    :param params: System parameters
    :return: J(omega), same shape as omega
    """
    detuning = np.asarray(omega, dtype=float) - params.omega_c
    value = (params.w_weight ** 2 / np.pi) * params.lambda_ / (detuning ** 2 + params.lambda_ ** 2)
    return value if value.ndim else float(value)


def correlation_function(tau, params: SystemParams):
    """
    Reservoir correlation function f(tau) = W^2 e^{-lambda tau}, the Fourier
    transform of the Lorentzian taken about the cavity frequency
    :param tau: Lag or array of lags, non-negative
    :param params: System parameters
    :return: f(tau) as complex, same shape as tau
    """
    lag = np.asarray(tau, dtype=float)
    if np.any(lag < 0):
        raise NegativeLagException("correlation lag must be non-negative")
    value = (params.w_weight ** 2 * np.exp(-params.lambda_ * lag)).astype(complex)
    return value if value.ndim else complex(value)
