import math

import numpy as np
import pytest

from core.entanglement import (
    density_matrix,
    concurrence,
    concurrence_trajectory,
    with_concurrence,
    stationary_concurrence)
from core.general import evolve_exact
from core.subradiant import evolve_subradiant
from core.system import params_from_ratios, initial_state_from_s_phi, initial_state_from_amplitudes
from model.exception import SupernormalStateException

SIGMA_Y = np.array([[0, -1j], [1j, 0]])


def _wootters(rho: np.ndarray) -> float:
    """
    Concurrence of a general two-qubit density matrix
    """
    values, vectors = np.linalg.eigh(rho)
    values = np.where(values > 1e-12, values, 0.0)
    root = vectors @ np.diag(np.sqrt(values)) @ vectors.conj().T
    flipped = np.kron(SIGMA_Y, SIGMA_Y)
    singular = np.linalg.svd(root @ flipped @ root.conj(), compute_uv=False)
    return max(0.0, singular[0] - singular[1] - singular[2] - singular[3])


def test_density_matrix() -> None:
    rho = density_matrix(0.6, 0.3j)
    assert rho.matrix.shape == (4, 4)
    assert rho.coherence == pytest.approx(-0.18j)
    assert rho.matrix[2, 1] == pytest.approx(0.18j)
    assert rho.ground_population == pytest.approx(0.55)
    assert rho.trace == pytest.approx(1.0)
    assert rho.matrix[0, 0] == 0
    assert np.allclose(rho.matrix, rho.matrix.conj().T)
    assert np.all(np.linalg.eigvalsh(rho.matrix) > -1e-15)

    with pytest.raises(SupernormalStateException, match="must not exceed 1"):
        density_matrix(0.8, 0.8)


def test_concurrence_matches_wootters() -> None:
    rng = np.random.default_rng(5)
    for _ in range(500):
        c1, c2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        norm = math.sqrt(abs(c1) ** 2 + abs(c2) ** 2) / rng.uniform(0, 1)
        c1, c2 = c1 / norm, c2 / norm
        assert concurrence(c1, c2) == pytest.approx(_wootters(density_matrix(c1, c2).matrix), abs=1e-9)


def test_concurrence_values() -> None:
    assert concurrence(1 / math.sqrt(2), 1 / math.sqrt(2)) == pytest.approx(1.0)
    assert concurrence(1.0, 0.0) == 0
    assert concurrence(0.0, 0.0) == 0
    assert isinstance(concurrence(0.6, 0.8), float)
    assert concurrence(0.6, 0.8j) == pytest.approx(0.96)

    # local phases leave the concurrence unchanged
    c1, c2 = 0.5, 0.3 + 0.4j
    assert concurrence(c1 * np.exp(0.7j), c2 * np.exp(-2.1j)) == pytest.approx(concurrence(c1, c2))

    series = concurrence(np.array([1.0, 0.6]), np.array([0.0, 0.8]))
    assert series.shape == (2,)
    assert np.all((series >= 0) & (series <= 1))

    with pytest.raises(SupernormalStateException):
        concurrence(np.array([0.6, 1.0]), np.array([0.8, 0.5]))


def test_concurrence_trajectory() -> None:
    params = params_from_ratios(0.1, 0.0, 0.0, 1 / math.sqrt(2))
    init = initial_state_from_s_phi(0.0, 0.0)
    trajectory = evolve_subradiant(np.linspace(0, 200, 201), init, params)
    series = concurrence_trajectory(trajectory)
    assert series[0] == pytest.approx(1.0)
    assert np.all(np.diff(series) <= 1e-12)

    filled = with_concurrence(trajectory)
    assert trajectory.concurrence is None
    assert np.array_equal(filled.concurrence, series)
    assert filled.solver == 'closed'


def test_sudden_death_in_bad_cavity() -> None:
    # qubit 1 carries most of the coupling, so its amplitude passes through zero
    params = params_from_ratios(0.1, 0.0, 0.0, math.sqrt(3) / 2)
    init = initial_state_from_s_phi(0.0, 0.0)
    trajectory = evolve_subradiant(np.linspace(0, 200, 2001), init, params)
    series = concurrence_trajectory(trajectory)
    low = int(np.argmin(series))
    assert series[low] < 1e-3
    assert 0 < trajectory.times[low] < 200
    assert series[-1] > 10 * series[low]


def test_stationary_concurrence() -> None:
    init = initial_state_from_s_phi(1.0, 0.0)
    grid = np.linspace(0.8, 0.95, 1501)
    values = [stationary_concurrence(init, params_from_ratios(0.1, 0.0, 0.0, r_1)) for r_1 in grid]
    best = int(np.argmax(values))
    assert abs(grid[best] - math.sqrt(3) / 2) < 1e-3
    assert values[best] == pytest.approx(3 * math.sqrt(3) / 8, abs=1e-6)

    # long-time trajectory reaches the stationary value
    params = params_from_ratios(0.1, 0.0, 0.0, math.sqrt(3) / 2)
    trajectory = evolve_subradiant(np.array([0.0, 1e6]), init, params)
    assert concurrence_trajectory(trajectory)[-1] == pytest.approx(stationary_concurrence(init, params), abs=1e-12)


def test_stationary_concurrence_cases() -> None:
    bell = initial_state_from_s_phi(0.0, 0.0)
    assert stationary_concurrence(bell, params_from_ratios(0.1, 0.0, 0.0, 1 / math.sqrt(2))) < 1e-15
    assert stationary_concurrence(bell, params_from_ratios(0.1, -0.5, 0.9, 0.6)) == 0.0
    assert stationary_concurrence(bell, params_from_ratios(0.0, 0.0, 0.0, 0.6)) == pytest.approx(1.0)

    dark_params = params_from_ratios(0.1, 0.3, 0.3, 0.6)
    dark = initial_state_from_amplitudes(dark_params.r_2, -dark_params.r_1)
    assert stationary_concurrence(dark, dark_params) == pytest.approx(2 * 0.6 * 0.8)


def test_unequal_frequencies_lose_all_entanglement() -> None:
    params = params_from_ratios(0.1, -0.5, 0.9, math.sqrt(3) / 2)
    init = initial_state_from_s_phi(1.0, 0.0)
    series = concurrence_trajectory(evolve_exact(np.linspace(0, 5000, 501), init, params))
    assert series[-1] < 1e-3
