"""
Utility module used by application: scenario configuration, CSV and manifest output
"""

import csv
import logging
import os
from dataclasses import replace, fields
from os.path import exists
from typing import Iterable, Optional, Sequence

import numpy as np
import yaml

from core.system import params_from_ratios, initial_state_from_s_phi, initial_state_from_amplitudes
from model.config import Scenario
from model.exception import InvalidScenarioException, UnsetConfigurationException
from model.state import SystemParams, InitialState, Trajectory

THREADS_ENV_VAR = 'CAVITY_ENTANGLER_THREADS'
LOSSLESS_LINEWIDTH = 1e-8
FLOAT_FORMAT = '.17g'
TRAJECTORY_COLUMNS = ['lambda_t', 're_c1', 'im_c1', 're_c2', 'im_c2', 'concurrence']
SCENARIO_KEYS = frozenset(field.name for field in fields(Scenario)) - {'amplitudes', 'caption'}
CONFIG_KEYS = SCENARIO_KEYS | {'delta', 'c01', 'c02'}
SWEEP_AXES = ('delta', 'r1', 's', 'phi', 'R', 'delta_1', 'delta_2')


def load_scenario_file(config_path: str) -> dict:
    """
    Read a flat YAML mapping of scenario values
    :param config_path: Path to the YAML file
    :return: mapping of config keys to values
    """
    if not exists(config_path):
        raise UnsetConfigurationException(
            f"Config file does not exist at {config_path}")
    with open(config_path, 'r', encoding='utf-8') as config_file:
        try:
            values = yaml.safe_load(config_file)
        except yaml.YAMLError as error:
            logging.error("Config file %s is not valid YAML", config_path)
            raise InvalidScenarioException(f"config: invalid YAML in {config_path}: {error}")
    if values is None:
        return {}
    if not isinstance(values, dict):
        raise InvalidScenarioException("config: expected a mapping of key: value lines")
    for key in values:
        if key not in CONFIG_KEYS:
            raise InvalidScenarioException(f"{key}: unknown config key")
    return values


def _complex(key: str, value) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(value)
    raise InvalidScenarioException(f"{key}: expected a number or [re, im], got {value!r}")


def build_scenario(base: Optional[Scenario], overrides: dict) -> Scenario:
    """
    Apply config or command-line values on top of a base scenario
    :param base: Preset scenario, or None to build from the values alone
    :param overrides: Mapping of config keys to values; None values are ignored
    :return: validated Scenario
    """
    values = {key: value for key, value in overrides.items() if value is not None}
    unknown = set(values) - CONFIG_KEYS
    if unknown:
        raise InvalidScenarioException(f"{sorted(unknown)[0]}: unknown config key")
    if 'delta' in values:
        delta = values.pop('delta')
        values.setdefault('delta_1', delta)
        values.setdefault('delta_2', delta)
    if 'c01' in values or 'c02' in values:
        if 'c01' not in values or 'c02' not in values:
            raise InvalidScenarioException("c01: c01 and c02 must be given together")
        values['amplitudes'] = (_complex('c01', values.pop('c01')), _complex('c02', values.pop('c02')))
    for key in ('solvers', 'r_1_variants'):
        if key in values:
            values[key] = tuple([values[key]] if isinstance(values[key], (str, int, float)) else values[key])
    for key in ('rabi', 'delta_1', 'delta_2', 'r_1', 's', 'phi', 't_max', 'dt', 'guard', 'volterra_guard'):
        if key in values:
            try:
                values[key] = float(values[key])
            except (TypeError, ValueError):
                raise InvalidScenarioException(f"{key}: expected a number, got {values[key]!r}")

    if base is not None:
        if 's' in values or 'phi' in values:
            values.setdefault('amplitudes', None)
        if 'r_1' in values:
            values.setdefault('r_1_variants', ())
        return replace(base, **values)
    for key in ('rabi', 'delta_1', 'delta_2', 'r_1'):
        if key not in values:
            raise InvalidScenarioException(f"{key}: must be set when no preset is given")
    values.setdefault('name', 'scenario')
    if values['delta_1'] == values['delta_2']:
        values.setdefault('solvers', ('closed',))
    return Scenario(**values)


def build_params(scenario: Scenario, r_1: float) -> SystemParams:
    """
    System parameters of one scenario variant, in units of lambda
    :param scenario: Scenario
    :param r_1: Relative coupling of qubit 1
    :return: SystemParams
    """
    lambda_ = LOSSLESS_LINEWIDTH if scenario.lossless else 1.0
    return params_from_ratios(scenario.rabi, scenario.delta_1, scenario.delta_2, r_1, lambda_)


def build_initial_state(scenario: Scenario) -> InitialState:
    if scenario.amplitudes is not None:
        return initial_state_from_amplitudes(*scenario.amplitudes)
    return initial_state_from_s_phi(scenario.s, scenario.phi)


def apply_sweep_value(scenario: Scenario, axis: str, value: float) -> Scenario:
    """
    Scenario for one point of a sweep
    :param scenario: Template scenario
    :param axis: One of SWEEP_AXES
    :param value: Axis value
    :return: Scenario with the axis set and a single r_1 variant
    """
    if axis not in SWEEP_AXES:
        raise InvalidScenarioException(f"axis: unknown sweep axis {axis!r}, expected one of: {', '.join(SWEEP_AXES)}")
    overrides = {
        'delta': {'delta_1': value, 'delta_2': value},
        'r1': {'r_1': value},
        's': {'s': value, 'amplitudes': None},
        'phi': {'phi': value, 'amplitudes': None},
        'R': {'rabi': value},
        'delta_1': {'delta_1': value},
        'delta_2': {'delta_2': value},
    }[axis]
    if axis != 'r1':
        overrides['r_1'] = scenario.variants()[0]
    return replace(scenario, r_1_variants=(), **overrides)


def variant_stem(name: str, r_1: float) -> str:
    return f"{name}_r1_{r_1:.6f}"


def format_float(value: float) -> str:
    return format(float(value), FLOAT_FORMAT)


def complex_pair(value: complex) -> list:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def trajectory_rows(trajectory: Trajectory, concurrence: np.ndarray, extra: Sequence[np.ndarray] = ()) -> Iterable[list]:
    for k, time in enumerate(trajectory.times):
        row = [time, trajectory.c1[k].real, trajectory.c1[k].imag,
               trajectory.c2[k].real, trajectory.c2[k].imag, concurrence[k]]
        row.extend(series[k] for series in extra)
        yield [format_float(value) for value in row]


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """
    Write a CSV file; floats are expected already formatted
    :param path: Output path
    :param header: Column names
    :param rows: Rows
    :return: path
    """
    with open(path, 'w', newline='', encoding='utf-8') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    logging.info("Wrote %s", path)
    return path


def write_manifest(path: str, content: dict) -> str:
    """
    Write the run manifest as YAML with sorted keys
    :param path: Output path
    :param content: Plain-data manifest content
    :return: path
    """
    with open(path, 'w', encoding='utf-8') as manifest_file:
        yaml.safe_dump(content, manifest_file, sort_keys=True, default_flow_style=False)
    logging.info("Wrote manifest %s", path)
    return path


def sup_norm(first, second) -> float:
    return float(np.max(np.abs(np.asarray(first) - np.asarray(second))))


def rms_distance(first, second) -> float:
    difference = np.abs(np.asarray(first) - np.asarray(second))
    return float(np.sqrt(np.mean(difference ** 2)))


def get_worker_count() -> int:
    """
    Size of the sweep worker pool, capped by CAVITY_ENTANGLER_THREADS
    :return: number of workers, at least 1
    """
    default = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or not raw.strip():
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidScenarioException(f"{THREADS_ENV_VAR}: expected an integer, got {raw!r}")
    if cap < 1:
        raise InvalidScenarioException(f"{THREADS_ENV_VAR}: must be >= 1, got {cap}")
    return min(cap, default)
