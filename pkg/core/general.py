"""
Exact dynamics for arbitrary qubit frequencies.

The single-exponential memory kernel lets the cavity continuum be replaced by one lossy
pseudomode b, so (c1_hat, c2_hat, b) obey a linear 3x3 system solved here by
eigendecomposition. The Laplace-domain cubic is kept as an independent check.
"""

import logging

import numpy as np
from scipy.linalg import expm

from model.exception import InvalidScenarioException, NegativeTimeException
from model.state import SystemParams, InitialState, Trajectory, PseudomodeGenerator, CubicCoefficients

DEGENERACY_TOLERANCE = 1e-8
CONDITION_LIMIT = 1e6


def lossless_hamiltonian(params: SystemParams) -> np.ndarray:
    """
    Single-excitation Hamiltonian over (|10>|0>, |01>|0>, |00>|1>) in the cavity frame
    :param params: System parameters
    :return: real symmetric 3x3 matrix
    """
    rabi = params.rabi
    return np.array([
        [params.delta_1, 0.0, rabi * params.r_1],
        [0.0, params.delta_2, rabi * params.r_2],
        [rabi * params.r_1, rabi * params.r_2, 0.0]])


def generator_matrix(params: SystemParams) -> PseudomodeGenerator:
    """
    Generator m = -iH - lambda |b><b| of d/dt (c1_hat, c2_hat, b)
    :param params: System parameters
    :return: PseudomodeGenerator
    """
    m = -1j * lossless_hamiltonian(params)
    m[2, 2] = -params.lambda_
    return PseudomodeGenerator(m)


def spectral_abscissa(params: SystemParams) -> float:
    """
    Largest real part among the generator eigenvalues
    """
    return float(np.max(generator_matrix(params).eigenvalues().real))


class SpectralPropagator:
    """
    exp(m t) for a fixed generator, through its eigendecomposition or, close to an
    exceptional point, through scipy's scaling-and-squaring exponential
    """

    def __init__(self, m: np.ndarray):
        self.m = np.asarray(m, dtype=complex)
        self.eigenvalues, self.eigenvectors = np.linalg.eig(self.m)
        # near an exceptional point the eigenvectors become nearly parallel
        self.degenerate = (self._min_gap() < DEGENERACY_TOLERANCE * self._spectral_radius()
                           or np.linalg.cond(self.eigenvectors) > CONDITION_LIMIT)
        if self.degenerate:
            logging.info("Near-degenerate generator spectrum, using the series exponential")
            self.inverse = None
        else:
            self.inverse = np.linalg.inv(self.eigenvectors)

    def _spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def _min_gap(self) -> float:
        values = self.eigenvalues
        gaps = np.abs(values[:, None] - values[None, :])
        return float(np.min(gaps[~np.eye(len(values), dtype=bool)]))

    def apply(self, times: np.ndarray, y0: np.ndarray) -> np.ndarray:
        """
        Propagate y0 to every time
        :param times: 1-D array of non-negative times
        :param y0: Initial vector
        :return: array of shape (len(y0), len(times))
        """
        if self.degenerate:
            return np.column_stack([expm(self.m * t) @ y0 for t in times])
        weights = self.inverse @ y0
        modes = np.exp(np.outer(self.eigenvalues, times))
        return self.eigenvectors @ (weights[:, None] * modes)


def rotating_frame_frequency(params: SystemParams) -> float:
    return params.mean_detuning


def to_lab_amplitudes(times: np.ndarray, y: np.ndarray, params: SystemParams):
    """
    Map rotating-frame solutions (3, N) back to c1, c2 and the cavity-frame b
    :param times: Time grid
    :param y: Amplitudes in the frame rotating at the mean detuning
    :param params: System parameters
    :return: (c1, c2, b)
    """
    omega = rotating_frame_frequency(params)
    c1 = y[0] * np.exp(1j * (params.delta_1 - omega) * times)
    c2 = y[1] * np.exp(1j * (params.delta_2 - omega) * times)
    b = y[2] * np.exp(-1j * omega * times)
    return c1, c2, b


def evolve_exact(t_grid, init: InitialState, params: SystemParams) -> Trajectory:
    """
    Exact trajectory from the eigendecomposition of the pseudomode generator
    :param t_grid: Time grid starting at 0
    :param init: Initial state
    :param params: System parameters
    :return: Trajectory with c1, c2 and the pseudomode amplitude b
    """
    times = np.asarray(t_grid, dtype=float)
    if np.any(times < 0):
        raise NegativeTimeException("evaluation times must be non-negative")
    generator = generator_matrix(params)
    propagator = SpectralPropagator(generator.shifted(rotating_frame_frequency(params)))
    y = propagator.apply(times, init.as_vector())
    c1, c2, b = to_lab_amplitudes(times, y, params)
    return Trajectory(times, c1, c2, b=b, solver='exact')


def cubic_coefficients(params: SystemParams, j: int) -> CubicCoefficients:
    """
    Coefficients of s^3 + A_j s^2 + B_j s + C_j = 0, the Laplace-domain denominator for c_j
        A_j = lambda + i(delta_k - 2 delta_j)
        B_j = R^2 - delta_j^2 + delta_1 delta_2 + i(delta_k - delta_j) lambda
        C_j = i R^2 r_j^2 (delta_k - delta_j)
    where k is the other qubit
    :param params: System parameters
    :param j: Qubit index, 1 or 2
    :return: CubicCoefficients with residual-checked roots
    """
    if j not in (1, 2):
        raise InvalidScenarioException(f"qubit index must be 1 or 2, got {j!r}")
    delta_j, delta_k = (params.delta_1, params.delta_2) if j == 1 else (params.delta_2, params.delta_1)
    r_j = params.r_1 if j == 1 else params.r_2
    rabi_sq = params.rabi ** 2
    lambda_ = params.lambda_
    a = complex(lambda_, delta_k - 2.0 * delta_j)
    b = complex(rabi_sq - delta_j ** 2 + params.delta_1 * params.delta_2, (delta_k - delta_j) * lambda_)
    c = complex(0.0, rabi_sq * r_j ** 2 * (delta_k - delta_j))
    return CubicCoefficients(a, b, c, cubic_roots(a, b, c), j=j)


def _polish(s: complex, a: complex, b: complex, c: complex) -> complex:
    value = ((s + a) * s + b) * s + c
    slope = (3.0 * s + 2.0 * a) * s + b
    if slope == 0:
        return s
    candidate = s - value / slope
    if abs(((candidate + a) * candidate + b) * candidate + c) < abs(value):
        return candidate
    return s


def _quadratic_roots(a: complex, b: complex):
    """
    Roots of s^2 + a s + b without cancellation
    """
    root = np.sqrt(complex(a * a - 4.0 * b))
    if abs(a + root) < abs(a - root):
        root = -root
    q = -0.5 * (a + root)
    if q == 0:
        return 0j, 0j
    return q, b / q


def cubic_roots(a: complex, b: complex, c: complex) -> np.ndarray:
    """
    Roots of the monic cubic s^3 + a s^2 + b s + c
    :param a: s^2 coefficient
    :param b: s coefficient
    :param c: constant term
    :return: three complex roots, by descending real part then ascending imaginary part
    """
    a, b, c = complex(a), complex(b), complex(c)
    if c == 0:
        roots = [0j, *_quadratic_roots(a, b)]
    else:
        companion = np.array([[-a, -b, -c], [1, 0, 0], [0, 1, 0]], dtype=complex)
        roots = [_polish(s, a, b, c) for s in np.linalg.eigvals(companion)]
    scale = max(1.0, max(abs(s) for s in roots))
    roots.sort(key=lambda s: (-round(s.real / scale, 12), s.imag))
    return np.array(roots, dtype=complex)
