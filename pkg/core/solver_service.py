import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Optional

import numpy as np

from core.dispersive import ApproxRegime, approx_concurrence
from core.entanglement import concurrence_trajectory
from core.general import evolve_exact
from core.oracle import evolve_rk4, evolve_volterra
from core.subradiant import evolve_subradiant
from model.config import IntegratorConfig, IntegrationMethod, default_step
from model.exception import InvalidScenarioException
from model.state import SystemParams, InitialState, Trajectory

APPROX_PREFIX = 'approx:'


class SupportedSolvers(Enum):
    CLOSED = 'closed'
    EXACT = 'exact'
    RK4 = 'rk4'
    VOLTERRA = 'volterra'


class Solver(ABC):
    """
    Interface for a way of computing the concurrence of the pair
    """

    name: str = ''

    @abstractmethod
    def concurrence(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> np.ndarray:
        """
        Concurrence on a grid
        :param t_grid: Time grid starting at 0
        :param init: Initial state
        :param params: System parameters
        :return: concurrence series
        """
        pass

    @property
    def is_approximate(self) -> bool:
        return False


class AmplitudeSolver(Solver, ABC):
    """
    Solver that produces the qubit amplitudes (closed form, spectral or oracle)
    """

    @abstractmethod
    def solve(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> Trajectory:
        """
        Compute the trajectory on a grid
        :param t_grid: Time grid starting at 0
        :param init: Initial state
        :param params: System parameters
        :return: Trajectory of the qubit amplitudes
        """
        pass

    def concurrence(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> np.ndarray:
        return concurrence_trajectory(self.solve(t_grid, init, params))


class ClosedFormSolver(AmplitudeSolver):
    name = SupportedSolvers.CLOSED.value

    def solve(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> Trajectory:
        return evolve_subradiant(t_grid, init, params)


class ExactSolver(AmplitudeSolver):
    name = SupportedSolvers.EXACT.value

    def solve(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> Trajectory:
        return evolve_exact(t_grid, init, params)


class _IntegratorSolver(AmplitudeSolver, ABC):

    method = IntegrationMethod.RK4

    def __init__(self, dt: Optional[float] = None):
        self.dt = dt

    def get_config(self, t_grid: np.ndarray, params: SystemParams) -> IntegratorConfig:
        """
        Integrator configuration for a run; without an explicit step the default step is used
        :param t_grid: Output grid
        :param params: System parameters
        :return: IntegratorConfig
        """
        dt = self.dt if self.dt is not None else default_step(params)
        return IntegratorConfig(dt, self.method, float(t_grid[-1]) if len(t_grid) > 1 else 1.0)


class Rk4Solver(_IntegratorSolver):
    name = SupportedSolvers.RK4.value

    def solve(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> Trajectory:
        return evolve_rk4(init, params, self.get_config(t_grid, params), t_grid)


class VolterraSolver(_IntegratorSolver):
    name = SupportedSolvers.VOLTERRA.value
    method = IntegrationMethod.VOLTERRA_TRAPEZOID

    def solve(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> Trajectory:
        return evolve_volterra(init, params, self.get_config(t_grid, params), t_grid)


class ApproxSolver(Solver):
    """
    Approximate concurrence formula of one regime; yields no amplitudes
    """

    def __init__(self, regime: ApproxRegime):
        self.regime = regime
        self.name = APPROX_PREFIX + regime.value

    def concurrence(self, t_grid: np.ndarray, init: InitialState, params: SystemParams) -> np.ndarray:
        return approx_concurrence(t_grid, init, params, self.regime)

    @property
    def is_approximate(self) -> bool:
        return True


def build_solver(spec: str, dt: Optional[float] = None) -> Solver:
    """
    Build a solver from its command-line name
    :param spec: closed, exact, rk4, volterra or approx:<regime>
    :param dt: Integrator step for rk4 and volterra, default step when unset
    :return: Solver
    """
    if spec.startswith(APPROX_PREFIX):
        return ApproxSolver(ApproxRegime.parse(spec[len(APPROX_PREFIX):]))
    try:
        solver = SupportedSolvers(spec)
    except ValueError:
        names = ', '.join([member.value for member in SupportedSolvers] + [APPROX_PREFIX + '<regime>'])
        raise InvalidScenarioException(f"solvers: unknown solver {spec!r}, expected one of: {names}")
    logging.info("Using solver %s", solver.value)
    if solver is SupportedSolvers.CLOSED:
        return ClosedFormSolver()
    if solver is SupportedSolvers.EXACT:
        return ExactSolver()
    if solver is SupportedSolvers.RK4:
        return Rk4Solver(dt)
    return VolterraSolver(dt)
