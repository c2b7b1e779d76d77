"""
Perturbative and spectral views of the dynamics: the dispersive effective Hamiltonian,
lossless dressed states and population beats, approximate concurrence formulas with
their validity checks, and FFT detection of beat frequencies.
"""

import logging
import math
import warnings
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.signal import find_peaks, get_window

from core.entanglement import concurrence_trajectory
from core.general import evolve_exact
from core.subradiant import evolve_subradiant
from model.exception import (
    ScenarioMismatchException,
    UnknownRegimeException,
    WindowTooShortException,
    ZeroCouplingException,
    InvalidScenarioException,
    RegimeWarning)
from model.state import (
    SystemParams,
    InitialState,
    EffectiveHamiltonian,
    DressedSpectrum,
    ApproxErrorReport,
    BeatPeak)

DISPERSIVE_THRESHOLD = 3.0
ASSUMPTION_TOLERANCE = 1e-6
PEAK_HEIGHT_FRACTION = 0.05
WINDOW_PERIODS = 4


class ApproxRegime(Enum):
    DISPERSIVE_DECAY_SINGLE = 'dispersive-decay-single'
    DISPERSIVE_DECAY_SYMMETRIC = 'dispersive-decay-symmetric'
    DISPERSIVE_FACTORIZED = 'dispersive-factorized'
    BEATS_SMALL_DETUNING = 'beats-small-detuning'
    SMALL_DETUNING_SINGLE = 'small-detuning-single'
    FAR_DETUNING_SINGLE = 'far-detuning-single'

    @classmethod
    def parse(cls, regime: Union[str, 'ApproxRegime']) -> 'ApproxRegime':
        """
        Look a regime up by value
        :param regime: Regime or its name, e.g. 'dispersive-factorized'
        :return: ApproxRegime
        """
        if isinstance(regime, cls):
            return regime
        try:
            return cls(regime)
        except ValueError:
            names = ', '.join(member.value for member in cls)
            raise UnknownRegimeException(f"unknown regime {regime!r}, expected one of: {names}")


def _require_equal_frequencies(params: SystemParams) -> None:
    if not params.is_subradiant:
        raise ScenarioMismatchException(
            f"needs delta_1 == delta_2, got delta_21={params.delta_21!r}")


def _ratio(numerator: float, denominator: float) -> float:
    # inf for a vanishing denominator; regime checks report the violation
    with np.errstate(divide='ignore', invalid='ignore'):
        return float(np.float64(numerator) / np.float64(denominator))


def _warn(message: str) -> None:
    logging.warning(message)
    warnings.warn(message, RegimeWarning, stacklevel=3)


def effective_hamiltonian(params: SystemParams, threshold: float = DISPERSIVE_THRESHOLD) -> EffectiveHamiltonian:
    """
    Second-order effective qubit Hamiltonian after eliminating the cavity:
    Stark shifts R^2 r_j^2 / delta_j and a cavity-mediated exchange
    (R^2 r1 r2 / 2)(1/delta_1 + 1/delta_2)
    :param params: System parameters
    :param threshold: Flag the result when min|delta_j| <= threshold * R
    :return: EffectiveHamiltonian
    """
    rabi_sq = params.rabi ** 2
    r_1, r_2 = params.r_1, params.r_2
    delta_1, delta_2 = params.delta_1, params.delta_2
    stark_1 = 0.0 if r_1 == 0 else _ratio(rabi_sq * r_1 ** 2, delta_1)
    stark_2 = 0.0 if r_2 == 0 else _ratio(rabi_sq * r_2 ** 2, delta_2)
    if r_1 == 0 or r_2 == 0:
        exchange = 0.0
    else:
        exchange = 0.5 * rabi_sq * r_1 * r_2 * _ratio(delta_1 + delta_2, delta_1 * delta_2)
    flagged = min(abs(delta_1), abs(delta_2)) <= threshold * params.rabi
    if flagged:
        _warn(f"effective Hamiltonian outside the dispersive regime: "
              f"min|delta_j|={min(abs(delta_1), abs(delta_2)):g} <= {threshold:g} R")
    return EffectiveHamiltonian(stark_1, stark_2, exchange, delta_1, delta_2, regime_warning=flagged)


def dressed_spectrum(params: SystemParams) -> DressedSpectrum:
    """
    Lossless dressed states of the equal-frequency system
        omega_+- = (delta +- sqrt(4 R^2 + delta^2)) / 2,  omega_0 = delta
    :param params: Equal-frequency system parameters with R > 0
    :return: DressedSpectrum
    """
    _require_equal_frequencies(params)
    rabi = params.rabi
    if rabi == 0:
        raise ZeroCouplingException("dressed states need a non-zero Rabi frequency")
    delta = params.delta_1
    root = math.sqrt(4.0 * rabi ** 2 + delta ** 2)
    omega_plus = 0.5 * (delta + root)
    omega_minus = 0.5 * (delta - root)
    state_plus = np.array([-rabi, omega_minus]) / math.hypot(omega_minus, rabi)
    state_minus = np.array([-rabi, omega_plus]) / math.hypot(omega_plus, rabi)
    return DressedSpectrum(
        omega_plus, omega_minus, delta, state_plus, state_minus, params.r_1, params.r_2)


def population_beats(t, params: SystemParams, exact: bool = False):
    """
    Lossless excited population |c2(t)|^2 of qubit 2 starting from |01>.
    The default is the small-detuning form
        r1^4 + (r2^4/2)[1 + cos(2Rt)] + 2 r1^2 r2^2 cos(Rt) cos(delta t/2);
    exact=True uses the generalized Rabi frequency sqrt(delta^2 + 4R^2) instead.
    :param t: Time or array of times
    :param params: Equal-frequency system parameters; lambda is ignored
    :param exact: Use the exact lossless amplitude
    :return: population in [0, 1]
    """
    _require_equal_frequencies(params)
    times = np.asarray(t, dtype=float)
    rabi, delta = params.rabi, params.delta_1
    r1_sq, r2_sq = params.r_1 ** 2, params.r_2 ** 2
    if exact:
        gen_rabi = math.sqrt(delta ** 2 + 4.0 * rabi ** 2)
        half = 0.5 * gen_rabi * times
        sin_term = 0.0 if gen_rabi == 0 else (delta / gen_rabi) * np.sin(half)
        bright = np.exp(-0.5j * delta * times) * (np.cos(half) - 1j * sin_term)
        value = np.abs(r1_sq * np.exp(-1j * delta * times) + r2_sq * bright) ** 2
    else:
        value = (r1_sq ** 2
                 + 0.5 * r2_sq ** 2 * (1.0 + np.cos(2.0 * rabi * times))
                 + 2.0 * r1_sq * r2_sq * np.cos(rabi * times) * np.cos(0.5 * delta * times))
    value = np.clip(value, 0.0, 1.0)
    return value if value.ndim else float(value)


def omega_far_detuned(params: SystemParams) -> complex:
    """
    Large-detuning expansion lambda(1 - 2R^2/delta^2) - i(delta + 2R^2/delta)
    """
    rabi_sq, delta = params.rabi ** 2, params.delta_1
    return complex(params.lambda_ * (1.0 - 2.0 * rabi_sq / delta ** 2), -(delta + 2.0 * rabi_sq / delta))


def omega_near_resonant(params: SystemParams) -> complex:
    """
    Small-detuning expansion lambda delta / (2R) - 2iR
    """
    return complex(params.lambda_ * params.delta_1 / (2.0 * params.rabi), -2.0 * params.rabi)


def far_detuned_survival_amplitude(t, params: SystemParams):
    """
    E(t) ~ exp(-(R^2/delta^2)(lambda + i delta) t) for |delta| >> lambda >> R
    """
    _require_equal_frequencies(params)
    times = np.asarray(t, dtype=float)
    rate = params.rabi ** 2 / params.delta_1 ** 2 * complex(params.lambda_, params.delta_1)
    value = np.exp(-rate * times)
    return value if value.ndim else complex(value)


def _near(value: float, targets: Sequence[float]) -> bool:
    return any(abs(value - target) <= ASSUMPTION_TOLERANCE for target in targets)


def regime_violations(init: InitialState, params: SystemParams, regime: ApproxRegime) -> List[str]:
    """
    Assumptions of a regime's formula that the inputs break
    :param init: Initial state
    :param params: System parameters
    :param regime: Approximation regime
    :return: descriptions of the violated assumptions, empty when all hold
    """
    violations = []
    rabi, lambda_ = params.rabi, params.lambda_
    delta = abs(params.delta_1)
    s, phi, r_1 = init.separability, init.phase, abs(params.r_1)
    single = regime in (
        ApproxRegime.DISPERSIVE_DECAY_SINGLE,
        ApproxRegime.SMALL_DETUNING_SINGLE,
        ApproxRegime.FAR_DETUNING_SINGLE)
    symmetric = not single
    entangled = regime in (ApproxRegime.DISPERSIVE_DECAY_SINGLE,
                           ApproxRegime.DISPERSIVE_DECAY_SYMMETRIC,
                           ApproxRegime.SMALL_DETUNING_SINGLE,
                           ApproxRegime.FAR_DETUNING_SINGLE)
    dispersive = regime in (ApproxRegime.DISPERSIVE_DECAY_SINGLE,
                            ApproxRegime.DISPERSIVE_DECAY_SYMMETRIC,
                            ApproxRegime.DISPERSIVE_FACTORIZED,
                            ApproxRegime.FAR_DETUNING_SINGLE)
    bad_cavity = regime in (ApproxRegime.DISPERSIVE_DECAY_SINGLE,
                            ApproxRegime.DISPERSIVE_DECAY_SYMMETRIC,
                            ApproxRegime.DISPERSIVE_FACTORIZED)

    if not params.is_subradiant:
        violations.append("delta_1 != delta_2")
    if single and not _near(r_1, (0.0, 1.0)):
        violations.append(f"r_1 must be 0 or 1, got {params.r_1:g}")
    if symmetric and not _near(r_1, (math.sqrt(0.5),)):
        violations.append(f"r_1 must be 1/sqrt(2), got {params.r_1:g}")
    if entangled and not _near(s, (0.0,)):
        violations.append(f"s must be 0, got {s:g}")
    if not entangled and not _near(s, (1.0,)):
        violations.append(f"s must be 1, got {s:g}")
    if regime is ApproxRegime.DISPERSIVE_DECAY_SYMMETRIC and not _near(phi, (0.0,)):
        violations.append(f"phi must be 0, got {phi:g}")
    if dispersive and not delta > DISPERSIVE_THRESHOLD * rabi:
        violations.append(f"|delta| must exceed {DISPERSIVE_THRESHOLD:g} R")
    if bad_cavity and not delta > lambda_ > rabi:
        violations.append("needs |delta| > lambda > R")
    if not dispersive and not (delta < rabi / DISPERSIVE_THRESHOLD and lambda_ < rabi):
        violations.append(f"needs |delta| < R/{DISPERSIVE_THRESHOLD:g} and lambda < R")
    return violations


def _decay(rate: float, times: np.ndarray) -> np.ndarray:
    with np.errstate(invalid='ignore'):
        exponent = np.where(times == 0, 0.0, rate * times)
    return np.exp(-exponent)


def _formula(regime: ApproxRegime, times: np.ndarray, params: SystemParams) -> np.ndarray:
    rabi, lambda_, delta = params.rabi, params.lambda_, params.delta_1
    dispersive_rate = _ratio(rabi ** 2 * lambda_, delta ** 2)
    with np.errstate(invalid='ignore', over='ignore', divide='ignore'):
        if regime in (ApproxRegime.DISPERSIVE_DECAY_SINGLE, ApproxRegime.FAR_DETUNING_SINGLE):
            return _decay(dispersive_rate, times)
        if regime is ApproxRegime.DISPERSIVE_DECAY_SYMMETRIC:
            return _decay(2.0 * dispersive_rate, times)
        if regime is ApproxRegime.DISPERSIVE_FACTORIZED:
            swap = _ratio(2.0 * rabi ** 2, delta) * times
            radicand = (1.0 + _decay(4.0 * dispersive_rate, times)
                        - 2.0 * _decay(2.0 * dispersive_rate, times) * np.cos(swap))
            return 0.5 * np.sqrt(np.maximum(radicand, 0.0))
        if regime is ApproxRegime.BEATS_SMALL_DETUNING:
            cos_sq = np.cos(rabi * times) ** 2
            radicand = (1.0 + np.exp(-2.0 * lambda_ * times) * cos_sq ** 2
                        - 2.0 * np.exp(-lambda_ * times) * cos_sq * np.cos(delta * times))
            return 0.5 * np.sqrt(np.maximum(radicand, 0.0))
        # small-detuning-single; the cross-term sign keeps dE/dt = 0 at t = 0
        sin, cos = np.sin(rabi * times), np.cos(rabi * times)
        radicand = (cos ** 2
                    + _ratio(delta ** 2 + lambda_ ** 2, 4.0 * rabi ** 2) * sin ** 2
                    + _ratio(lambda_, rabi) * sin * cos)
        return np.exp(-0.5 * lambda_ * times) * np.sqrt(np.maximum(radicand, 0.0))


def approx_concurrence(t, init: InitialState, params: SystemParams, regime: Union[str, ApproxRegime]):
    """
    Approximate concurrence for one of the closed-form regimes. Inputs outside the regime
    are evaluated anyway and reported with a RegimeWarning.
    :param t: Time or array of times
    :param init: Initial state
    :param params: System parameters
    :param regime: Regime or its name
    :return: concurrence in [0, 1]
    """
    regime = ApproxRegime.parse(regime)
    violations = regime_violations(init, params, regime)
    if violations:
        _warn(f"{regime.value} used outside its regime: {'; '.join(violations)}")
    times = np.asarray(t, dtype=float)
    value = np.clip(np.nan_to_num(_formula(regime, times, params), nan=0.0), 0.0, 1.0)
    return value if value.ndim else float(value)


def exact_concurrence(t_grid, init: InitialState, params: SystemParams) -> np.ndarray:
    if params.is_subradiant:
        trajectory = evolve_subradiant(t_grid, init, params)
    else:
        trajectory = evolve_exact(t_grid, init, params)
    return concurrence_trajectory(trajectory)


def approx_error_report(
        params: SystemParams,
        init: InitialState,
        regime: Union[str, ApproxRegime],
        t_grid) -> ApproxErrorReport:
    """
    Distance between an approximate concurrence and the exact one on a grid
    :param params: System parameters
    :param init: Initial state
    :param regime: Regime or its name
    :param t_grid: Time grid starting at 0
    :return: ApproxErrorReport with the sup norm, the RMS distance and the shift of the maximum
    """
    regime = ApproxRegime.parse(regime)
    times = np.asarray(t_grid, dtype=float)
    exact = exact_concurrence(times, init, params)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RegimeWarning)
        approx = approx_concurrence(times, init, params, regime)
    difference = np.abs(approx - exact)
    report = ApproxErrorReport(
        regime=regime.value,
        sup_norm=float(np.max(difference)),
        l2=float(np.sqrt(np.mean(difference ** 2))),
        argmax_shift=float(times[np.argmax(approx)] - times[np.argmax(exact)]),
        violations=tuple(regime_violations(init, params, regime)))
    logging.info("%s error: sup=%g l2=%g", regime.value, report.sup_norm, report.l2)
    return report


def expected_beat_frequencies(params: SystemParams, exact: bool = False) -> np.ndarray:
    """
    Angular frequencies present in the lossless population of qubit 2
    :param params: Equal-frequency system parameters
    :param exact: Use the generalized Rabi frequency
    :return: sorted frequencies {2R, |R - delta/2|, R + delta/2} or their exact counterparts
    """
    _require_equal_frequencies(params)
    rabi, delta = params.rabi, params.delta_1
    if exact:
        gen_rabi = math.sqrt(delta ** 2 + 4.0 * rabi ** 2)
        frequencies = [gen_rabi, abs(gen_rabi - delta) / 2.0, (gen_rabi + delta) / 2.0]
    else:
        frequencies = [2.0 * rabi, abs(rabi - delta / 2.0), rabi + delta / 2.0]
    return np.sort(np.array(frequencies))


def beats_resolvable(params: SystemParams, lossless: bool = False) -> bool:
    """
    Beats show only when the vacuum Rabi splitting 2R exceeds the cavity linewidth
    """
    return lossless or 2.0 * params.rabi > params.lambda_


def minimum_window(params: SystemParams) -> float:
    """
    Shortest window covering WINDOW_PERIODS periods of the slowest beat component
    """
    positive = [w for w in expected_beat_frequencies(params) if w > 0]
    if not positive:
        return 0.0
    return WINDOW_PERIODS * 2.0 * math.pi / min(positive)


def find_beat_peaks(
        times,
        series,
        name: str = 'population',
        params: Optional[SystemParams] = None) -> List[BeatPeak]:
    """
    Spectral peaks of a uniformly sampled series: Hann window, real FFT,
    scipy peak detection and quadratic interpolation of each peak
    :param times: Uniform time grid
    :param series: Real samples
    :param name: Series label carried into the peaks
    :param params: When given, the window must cover the slowest expected beat
    :return: peaks by ascending angular frequency, empty for a constant series
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(series, dtype=float)
    if times.size < 4 or values.shape != times.shape:
        raise InvalidScenarioException("beat analysis needs at least 4 samples matching the grid")
    spacing = np.diff(times)
    if np.max(np.abs(spacing - spacing[0])) > 1e-9 * max(1.0, times[-1]):
        raise InvalidScenarioException("beat analysis needs a uniform time grid")
    step = float(spacing[0])
    window_length = step * times.size
    if params is not None and params.is_subradiant:
        needed = minimum_window(params)
        if window_length < needed:
            raise WindowTooShortException(
                f"window of {window_length:g} is shorter than {needed:g}, "
                f"{WINDOW_PERIODS} periods of the slowest beat")

    centred = values - np.mean(values)
    window = get_window('hann', times.size)
    amplitude = np.abs(np.fft.rfft(centred * window)) * 2.0 / np.sum(window)
    frequencies = 2.0 * math.pi * np.fft.rfftfreq(times.size, d=step)
    bin_width = float(frequencies[1] - frequencies[0])
    top = float(np.max(amplitude))
    if top <= 1e-12 * max(1.0, float(np.max(np.abs(values)))):
        return []

    indices, _ = find_peaks(amplitude, height=PEAK_HEIGHT_FRACTION * top)
    peaks = []
    for k in indices:
        left, centre, right = amplitude[k - 1], amplitude[k], amplitude[k + 1]
        curvature = left - 2.0 * centre + right
        offset = 0.0 if curvature == 0 else 0.5 * (left - right) / curvature
        peaks.append(BeatPeak(
            series=name,
            angular_frequency=float(frequencies[k] + offset * bin_width),
            amplitude=float(centre - 0.25 * (left - right) * offset),
            bin_width=bin_width))
    return peaks
