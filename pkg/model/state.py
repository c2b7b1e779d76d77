"""
Contains the physical data objects shared by all solvers
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from model.exception import (
    NonPositiveLinewidthException,
    NegativeWeightException,
    ZeroCouplingException,
    UnnormalizedStateException,
    InvalidScenarioException)

NORM_TOLERANCE = 1e-12
SUBRADIANT_TOLERANCE = 1e-12
TRAJECTORY_NORM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SystemParams:
    """
    Data object for two qubits coupled to a common Lorentzian cavity reservoir.
    All rates and frequencies share one unit; after normalization that unit is lambda.
    """
    lambda_: float
    w_weight: float
    omega_c: float
    omega_1: float
    omega_2: float
    alpha_1: float
    alpha_2: float

    def __post_init__(self) -> None:
        if not self.lambda_ > 0:
            raise NonPositiveLinewidthException(
                f"lambda must be strictly positive, got {self.lambda_}")
        if self.w_weight < 0:
            raise NegativeWeightException(
                f"w_weight must be non-negative, got {self.w_weight}")
        if self.alpha_t == 0:
            raise ZeroCouplingException(
                "alpha_1 and alpha_2 are both zero")

    @property
    def delta_1(self) -> float:
        return self.omega_1 - self.omega_c

    @property
    def delta_2(self) -> float:
        return self.omega_2 - self.omega_c

    @property
    def delta_21(self) -> float:
        return self.delta_2 - self.delta_1

    @property
    def mean_detuning(self) -> float:
        return 0.5 * (self.delta_1 + self.delta_2)

    @property
    def alpha_t(self) -> float:
        return math.hypot(self.alpha_1, self.alpha_2)

    @property
    def r_1(self) -> float:
        return self.alpha_1 / self.alpha_t

    @property
    def r_2(self) -> float:
        return self.alpha_2 / self.alpha_t

    @property
    def rabi(self) -> float:
        """
        Vacuum Rabi frequency W * alpha_T
        """
        return self.w_weight * self.alpha_t

    @property
    def gen_rabi(self) -> float:
        """
        Generalized Rabi frequency sqrt(4 R^2 + delta^2), with delta = delta_1
        (meaningful in the equal-frequency scenario)
        """
        return math.sqrt(4.0 * self.rabi ** 2 + self.delta_1 ** 2)

    @property
    def is_subradiant(self) -> bool:
        """
        True when omega_1 == omega_2, i.e. a decoherence-free state exists
        """
        scale = max(self.lambda_, abs(self.delta_1), abs(self.delta_2))
        return abs(self.delta_21) < SUBRADIANT_TOLERANCE * scale

    def as_dict(self) -> dict:
        """
        Raw and derived constants, for manifests
        :return: Mapping of names to floats
        """
        return {
            'lambda': self.lambda_,
            'w_weight': self.w_weight,
            'omega_c': self.omega_c,
            'omega_1': self.omega_1,
            'omega_2': self.omega_2,
            'alpha_1': self.alpha_1,
            'alpha_2': self.alpha_2,
            'delta_1': self.delta_1,
            'delta_2': self.delta_2,
            'delta_21': self.delta_21,
            'alpha_t': self.alpha_t,
            'r_1': self.r_1,
            'r_2': self.r_2,
            'rabi': self.rabi,
            'gen_rabi': self.gen_rabi,
        }


@dataclass(frozen=True)
class InitialState:
    """
    Data object for the one-excitation initial state c01|10> + c02|01>
    """
    c01: complex
    c02: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, 'c01', complex(self.c01))
        object.__setattr__(self, 'c02', complex(self.c02))
        norm = abs(self.c01) ** 2 + abs(self.c02) ** 2
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise UnnormalizedStateException(
                f"|c01|^2 + |c02|^2 must be 1, got {norm!r}")

    @property
    def separability(self) -> float:
        """
        Separability parameter s = |c02|^2 - |c01|^2
        """
        return abs(self.c02) ** 2 - abs(self.c01) ** 2

    @property
    def phase(self) -> float:
        """
        Relative phase arg(c02) - arg(c01); zero when either amplitude vanishes
        """
        if self.c01 == 0 or self.c02 == 0:
            return 0.0
        return float(np.angle(self.c02 * self.c01.conjugate()))

    def as_vector(self) -> np.ndarray:
        """
        State over (qubit 1, qubit 2, pseudomode) with an empty cavity
        :return: complex vector of length 3
        """
        return np.array([self.c01, self.c02, 0.0], dtype=complex)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Data object for amplitudes sampled on a time grid
    """
    times: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    b: Optional[np.ndarray] = None
    concurrence: Optional[np.ndarray] = None
    solver: str = ''

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise InvalidScenarioException("times must be a non-empty 1-D grid")
        if times[0] != 0.0:
            raise InvalidScenarioException(
                f"times must start at 0, got {times[0]!r}")
        if np.any(np.diff(times) <= 0):
            raise InvalidScenarioException("times must be strictly increasing")
        for name in ('c1', 'c2', 'b', 'concurrence'):
            series = getattr(self, name)
            if series is not None and np.shape(series) != times.shape:
                raise InvalidScenarioException(
                    f"{name} must have the same shape as times")
        object.__setattr__(self, 'times', times)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.c1) ** 2 + np.abs(self.c2) ** 2

    def total_norm(self) -> np.ndarray:
        """
        Qubit populations plus the pseudomode population, when available
        :return: norm series
        """
        if self.b is None:
            return self.populations
        return self.populations + np.abs(self.b) ** 2


@dataclass(frozen=True)
class SuperSubDecomposition:
    """
    Data object for the projections of the initial state on psi_+ and psi_-
    """
    beta_plus: complex
    beta_minus: complex


@dataclass(frozen=True, eq=False)
class PseudomodeGenerator:
    """
    Data object for the 3x3 generator over (c1, c2, b) in the cavity frame
    """
    m: np.ndarray

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.m))

    def shifted(self, omega: float) -> np.ndarray:
        """
        Generator in a frame rotating at frequency omega
        :param omega: Frame frequency
        :return: m + i omega I
        """
        return self.m + 1j * omega * np.eye(3)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.m)


@dataclass(frozen=True, eq=False)
class CubicCoefficients:
    """
    Data object for s^3 + a s^2 + b s + c = 0 and its three roots
    """
    a: complex
    b: complex
    c: complex
    roots: np.ndarray
    j: int = 1

    def polynomial(self, s):
        return ((s + self.a) * s + self.b) * s + self.c

    def residuals(self) -> np.ndarray:
        return np.abs(self.polynomial(self.roots))


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """
    Data object for the two-qubit state in the basis |11>, |10>, |01>, |00>
    """
    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    @property
    def ground_population(self) -> float:
        return float(np.real(self.matrix[3, 3]))

    @property
    def coherence(self) -> complex:
        return complex(self.matrix[1, 2])


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """
    Data object for the second-order dispersive qubit Hamiltonian
    """
    stark_1: float
    stark_2: float
    exchange: float
    delta_1: float
    delta_2: float
    regime_warning: bool = False

    def matrix(self) -> np.ndarray:
        """
        Effective Hamiltonian over |10>, |01>, bare detunings included
        :return: real symmetric 2x2 matrix
        """
        return np.array([
            [self.delta_1 + self.stark_1, self.exchange],
            [self.exchange, self.delta_2 + self.stark_2]])

    def swap_frequency(self) -> float:
        """
        Splitting of the two effective eigenenergies, i.e. the excitation-swap frequency
        """
        energies = np.linalg.eigvalsh(self.matrix())
        return float(energies[1] - energies[0])


@dataclass(frozen=True, eq=False)
class DressedSpectrum:
    """
    Data object for the lossless dressed states of the equal-frequency scenario.
    state_plus and state_minus are amplitudes over (|psi_+>|0>, |00>|1>).
    """
    omega_plus: float
    omega_minus: float
    omega_zero: float
    state_plus: np.ndarray
    state_minus: np.ndarray
    r_1: float
    r_2: float

    @property
    def state_zero(self) -> np.ndarray:
        """
        psi_- with the cavity in the vacuum, over (|10>|0>, |01>|0>, |00>|1>)
        """
        return np.array([self.r_2, -self.r_1, 0.0])

    def bare_states(self) -> np.ndarray:
        """
        Dressed states over (|10>|0>, |01>|0>, |00>|1>), as columns (plus, minus, zero)
        :return: 3x3 matrix
        """
        psi_plus = np.array([self.r_1, self.r_2, 0.0])
        photon = np.array([0.0, 0.0, 1.0])
        columns = [
            state[0] * psi_plus + state[1] * photon
            for state in (self.state_plus, self.state_minus)]
        columns.append(self.state_zero)
        return np.column_stack(columns)


@dataclass(frozen=True)
class ApproxErrorReport:
    """
    Data object for the distance between an approximate concurrence and the exact one
    """
    regime: str
    sup_norm: float
    l2: float
    argmax_shift: float
    violations: Tuple[str, ...] = ()


@dataclass(frozen=True)
class BeatPeak:
    """
    Data object for one spectral peak of a time series
    """
    series: str
    angular_frequency: float
    amplitude: float
    bin_width: float
