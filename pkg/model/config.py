"""
Contains all configuration objects used by application
"""

import math
import os
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from model.exception import InvalidScenarioException, StepTooLargeException
from model.state import SystemParams

VERSION = '1.0.0'
MANIFEST_SUFFIX = '.manifest.yaml'
STEP_RESOLUTION = 1e-2


class IntegrationMethod(Enum):
    RK4 = 'rk4'
    VOLTERRA_TRAPEZOID = 'volterra-trapezoid'


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Data object for a fixed-step integration
    """
    dt: float
    method: IntegrationMethod = IntegrationMethod.RK4
    max_time: float = 1.0

    def validate(self, params: SystemParams) -> None:
        """
        Check that the step resolves the fastest scale of params by at least 100 steps
        :param params: System the integration runs on
        :return:
        """
        if not self.dt > 0:
            raise StepTooLargeException(f"dt must be positive, got {self.dt}")
        if not self.max_time > 0:
            raise InvalidScenarioException(
                f"max_time must be positive, got {self.max_time}")
        bound = max_step(params)
        if self.dt > bound * (1.0 + 1e-12):
            raise StepTooLargeException(
                f"dt={self.dt:g} exceeds {bound:g}, the largest step resolving the "
                f"fastest rate of the system by 100 steps")


def max_step(params: SystemParams) -> float:
    """
    Largest admissible integrator step for params
    :param params: System parameters
    :return: 1e-2 / max(lambda, R, |delta_1|, |delta_2|)
    """
    fastest = max(params.lambda_, params.rabi, abs(params.delta_1), abs(params.delta_2))
    return STEP_RESOLUTION / fastest


def default_step(params: SystemParams) -> float:
    """
    Default integrator step, ten times finer than the admissible bound
    :param params: System parameters
    :return: step
    """
    return 0.1 * max_step(params)


@dataclass(frozen=True)
class Scenario:
    """
    Data object for one run of the command-line front end. Rates are in units of lambda.
    """
    name: str
    rabi: float
    delta_1: float
    delta_2: float
    r_1: float
    s: float = 0.0
    phi: float = 0.0
    amplitudes: Optional[Tuple[complex, complex]] = None
    t_max: float = 100.0
    n_points: int = 1001
    solvers: Tuple[str, ...] = ('exact',)
    dt: Optional[float] = None
    guard: float = 1e-6
    volterra_guard: float = 1e-5
    r_1_variants: Tuple[float, ...] = ()
    lossless: bool = False
    caption: str = ''

    def __post_init__(self) -> None:
        if not self.name:
            raise InvalidScenarioException("name must not be empty")
        if isinstance(self.n_points, bool) or int(self.n_points) != self.n_points \
                or self.n_points < 2:
            raise InvalidScenarioException(
                f"n_points must be an integer >= 2, got {self.n_points!r}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise InvalidScenarioException(
                f"t_max must be positive, got {self.t_max!r}")
        if not self.solvers:
            raise InvalidScenarioException("solvers must select at least one solver")
        if not self.rabi >= 0:
            raise InvalidScenarioException(f"rabi must be >= 0, got {self.rabi!r}")
        for r_1 in self.variants():
            if not abs(r_1) <= 1:
                raise InvalidScenarioException(f"r_1 must lie in [-1, 1], got {r_1!r}")
        if self.dt is not None and not self.dt > 0:
            raise InvalidScenarioException(f"dt must be positive, got {self.dt!r}")
        if not (self.guard > 0 and self.volterra_guard > 0):
            raise InvalidScenarioException("guard and volterra_guard must be positive")
        object.__setattr__(self, 'n_points', int(self.n_points))
        object.__setattr__(self, 'solvers', tuple(self.solvers))
        object.__setattr__(self, 'r_1_variants', tuple(self.r_1_variants))

    def time_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_points)

    def variants(self) -> Tuple[float, ...]:
        """
        Relative couplings this scenario is run for
        :return: r_1_variants, or (r_1,) when no variants are given
        """
        return self.r_1_variants or (self.r_1,)

    def as_dict(self) -> dict:
        values = asdict(self)
        values['solvers'] = list(self.solvers)
        values['r_1_variants'] = list(self.r_1_variants)
        if self.amplitudes is not None:
            values['amplitudes'] = [[z.real, z.imag] for z in map(complex, self.amplitudes)]
        return values


@dataclass
class OutputDirectoryConfiguration:
    """
    Data object for the output directory of a run
    """
    out_dir: str

    def get_csv_path(self, stem: str) -> str:
        """
        Get the CSV file path for a stem
        :param stem: File name without extension
        :return: Path inside the output directory
        """
        return os.path.join(self.out_dir, f"{stem}.csv")

    def get_manifest_path(self, stem: str) -> str:
        return os.path.join(self.out_dir, stem + MANIFEST_SUFFIX)
