"""
Named scenarios covering the bad-cavity, good-cavity, dispersive and unequal-detuning regimes.
All rates are in units of the cavity linewidth lambda.
"""

import math
from typing import Dict

from model.config import Scenario
from model.exception import UnsetConfigurationException

R1_MAX_STATIONARY = math.sqrt(3.0) / 2.0
R1_SYMMETRIC = 1.0 / math.sqrt(2.0)

PRESETS: Dict[str, Scenario] = {scenario.name: scenario for scenario in (
    # the resonant panel quotes no detuning; delta = 0 is the resonant limit
    Scenario(
        name='fig1a-resonant-bad-cavity',
        rabi=0.1, delta_1=0.0, delta_2=0.0, r_1=R1_MAX_STATIONARY, s=0.0, phi=0.0,
        t_max=200.0, n_points=2001, solvers=('closed',),
        r_1_variants=(R1_MAX_STATIONARY, R1_SYMMETRIC, 1.0),
        caption='R=0.1, s=0, phi=0, resonant limit'),
    Scenario(
        name='fig1b-detuned-bad-cavity',
        rabi=0.1, delta_1=0.7, delta_2=0.7, r_1=R1_MAX_STATIONARY, s=0.0, phi=0.0,
        t_max=200.0, n_points=2001, solvers=('closed',),
        r_1_variants=(R1_MAX_STATIONARY, R1_SYMMETRIC, 1.0),
        caption='R=0.1, s=0, phi=0, delta_1=delta_2=0.7 lambda'),
    Scenario(
        name='fig2-dispersive-bad-cavity',
        rabi=0.1, delta_1=10.0, delta_2=10.0, r_1=R1_MAX_STATIONARY, s=1.0,
        t_max=5000.0, n_points=5001, solvers=('closed',),
        r_1_variants=(R1_MAX_STATIONARY, R1_SYMMETRIC, 1.0),
        caption='R=0.1, s=1, delta_1=delta_2=10 lambda'),
    Scenario(
        name='fig3-beats',
        rabi=10.0, delta_1=0.7, delta_2=0.7, r_1=R1_SYMMETRIC, s=1.0,
        t_max=5.0, n_points=2001, solvers=('closed', 'approx:beats-small-detuning'),
        caption='R=10, s=1, delta_1=delta_2=0.7 lambda'),
    Scenario(
        name='fig5a-good-cavity-small-detuning',
        rabi=10.0, delta_1=0.7, delta_2=0.7, r_1=1.0, s=0.0, phi=0.0,
        t_max=5.0, n_points=2001, solvers=('closed',),
        r_1_variants=(R1_SYMMETRIC, 1.0),
        caption='R=10, s=0, phi=0, delta_1=delta_2=0.7 lambda'),
    Scenario(
        name='fig5b-good-cavity-far-detuning',
        rabi=10.0, delta_1=50.0, delta_2=50.0, r_1=1.0, s=0.0, phi=0.0,
        t_max=100.0, n_points=20001, solvers=('closed',),
        r_1_variants=(R1_SYMMETRIC, 1.0),
        caption='R=10, s=0, phi=0, delta_1=delta_2=50 lambda'),
    Scenario(
        name='fig6a-symmetric-detuning',
        rabi=0.1, delta_1=-0.7, delta_2=0.7, r_1=R1_MAX_STATIONARY, s=0.0, phi=0.0,
        t_max=1500.0, n_points=1501, solvers=('exact',),
        r_1_variants=(R1_MAX_STATIONARY, R1_SYMMETRIC, 1.0, 0.0),
        caption='R=0.1, s=0, phi=0, delta_1=-0.7 lambda, delta_2=0.7 lambda'),
    Scenario(
        name='fig6b-asymmetric-detuning',
        rabi=0.1, delta_1=-0.5, delta_2=0.9, r_1=R1_MAX_STATIONARY, s=0.0, phi=0.0,
        t_max=1500.0, n_points=1501, solvers=('exact',),
        r_1_variants=(R1_MAX_STATIONARY, R1_SYMMETRIC, 1.0, 0.0),
        caption='R=0.1, s=0, phi=0, delta_1=-0.5 lambda, delta_2=0.9 lambda'),
    Scenario(
        name='beats-lossless',
        rabi=1.0, delta_1=0.3, delta_2=0.3, r_1=R1_SYMMETRIC, s=1.0,
        t_max=200.0, n_points=4001, solvers=('closed',), lossless=True,
        caption='lossless, R=1, delta=0.3 R, r_1=1/sqrt(2), initial state |01>'),
)}


def get_preset(name: str) -> Scenario:
    """
    Look up a preset by name
    :param name: Preset name
    :return: Scenario
    """
    if name not in PRESETS:
        raise UnsetConfigurationException(
            f"Unknown preset {name!r}, available presets: {', '.join(sorted(PRESETS))}")
    return PRESETS[name]


def list_presets() -> Dict[str, str]:
    return {name: scenario.caption for name, scenario in sorted(PRESETS.items())}
