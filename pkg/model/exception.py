"""
Contains all custom exceptions and warnings for application
"""


class ValidationException(Exception):
    """
    Base exception for invalid inputs; the driver exits with code 2 on these
    """


class NonPositiveLinewidthException(ValidationException):
    """
    Exception object for a cavity linewidth lambda that is not strictly positive
    """


class ZeroCouplingException(ValidationException):
    """
    Exception object for a vanishing collective coupling (alpha_T = 0 or zero Rabi frequency)
    """


class NegativeWeightException(ValidationException):
    """
    Exception object for a negative Lorentzian weight W
    """


class OutOfRangeSeparabilityException(ValidationException):
    """
    Exception object for a separability parameter s outside [-1, 1]
    """


class UnnormalizedStateException(ValidationException):
    """
    Exception object for initial amplitudes with |c01|^2 + |c02|^2 != 1
    """


class NegativeLagException(ValidationException):
    """
    Exception object for a negative lag passed to the reservoir correlation function
    """


class NegativeTimeException(ValidationException):
    """
    Exception object for negative evaluation times
    """


class ScenarioMismatchException(ValidationException):
    """
    Exception object for calling an equal-frequency closed form with omega_1 != omega_2
    """


class SupernormalStateException(ValidationException):
    """
    Exception object for amplitudes whose total excited population exceeds one
    """


class StepTooLargeException(ValidationException):
    """
    Exception object for an integrator step that does not resolve the fastest time scale
    """


class UnknownRegimeException(ValidationException):
    """
    Exception object for an unknown approximate-concurrence regime name
    """


class WindowTooShortException(ValidationException):
    """
    Exception object for a time window too short to resolve the expected beat components
    """


class InvalidScenarioException(ValidationException):
    """
    Exception object for errors related to scenario fields, grids and config values
    """


class UnsetConfigurationException(Exception):
    """
    Exception object for errors related to unset configuration (missing file or preset)
    """


class SolverDisagreementException(Exception):
    """
    Exception object for solvers that disagree beyond the configured guard
    """


class RegimeWarning(UserWarning):
    """
    Warning for approximate formulas evaluated outside their stated regime
    """
