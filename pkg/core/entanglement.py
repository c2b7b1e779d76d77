"""
Reduced two-qubit state and its concurrence
"""

from dataclasses import replace

import numpy as np

from model.exception import SupernormalStateException
from model.state import SystemParams, InitialState, Trajectory, ReducedDensityMatrix, TRAJECTORY_NORM_TOLERANCE


def _check_norm(c1, c2) -> None:
    norm = np.abs(c1) ** 2 + np.abs(c2) ** 2
    if np.any(norm > 1.0 + TRAJECTORY_NORM_TOLERANCE):
        raise SupernormalStateException(
            f"|c1|^2 + |c2|^2 must not exceed 1, got {float(np.max(norm))!r}")


def density_matrix(c1: complex, c2: complex) -> ReducedDensityMatrix:
    """
    Reduced qubit density matrix after tracing out the cavity
    :param c1: Amplitude of |10>
    :param c2: Amplitude of |01>
    :return: ReducedDensityMatrix in the basis |11>, |10>, |01>, |00>
    """
    c1, c2 = complex(c1), complex(c2)
    _check_norm(c1, c2)
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = abs(c1) ** 2
    rho[2, 2] = abs(c2) ** 2
    rho[1, 2] = c1 * c2.conjugate()
    rho[2, 1] = c1.conjugate() * c2
    rho[3, 3] = 1.0 - abs(c1) ** 2 - abs(c2) ** 2
    return ReducedDensityMatrix(rho)


def concurrence(c1, c2):
    """
    Concurrence C = 2|c1||c2| of the single-excitation state
    :param c1: Amplitude or array of amplitudes of |10>
    :param c2: Amplitude or array of amplitudes of |01>
    :return: C, float or array
    """
    c1 = np.asarray(c1, dtype=complex)
    c2 = np.asarray(c2, dtype=complex)
    _check_norm(c1, c2)
    value = np.clip(2.0 * np.abs(c1) * np.abs(c2), 0.0, 1.0)
    return value if value.ndim else float(value)


def concurrence_trajectory(traj: Trajectory) -> np.ndarray:
    return concurrence(traj.c1, traj.c2)


def with_concurrence(traj: Trajectory) -> Trajectory:
    """
    Copy of traj with its concurrence series filled in
    """
    return replace(traj, concurrence=concurrence_trajectory(traj))


def stationary_concurrence(init: InitialState, params: SystemParams) -> float:
    """
    Long-time concurrence: 2|r1 r2| |beta_-|^2 for equal qubit frequencies, 0 otherwise.
    Without coupling to the cavity nothing decays and the initial concurrence is kept.
    :param init: Initial state
    :param params: System parameters
    :return: stationary concurrence
    """
    if params.rabi == 0:
        return concurrence(init.c01, init.c02)
    if not params.is_subradiant:
        return 0.0
    beta_minus = params.r_2 * init.c01 - params.r_1 * init.c02
    return float(2.0 * abs(params.r_1 * params.r_2) * abs(beta_minus) ** 2)
