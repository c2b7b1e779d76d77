"""
This is the script to
1. build a scenario from a preset, a YAML config file and command-line flags
2. solve the two-qubit dynamics with the selected solvers
3. cross-check the solvers against each other
4. sweep one parameter over a list of values
5. look for entanglement beats in the spectrum of the populations and the concurrence
6. write CSV tables and a YAML run manifest
"""
import argparse
import logging
import os.path
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Sequence

import numpy as np

from core.dispersive import beats_resolvable, expected_beat_frequencies, find_beat_peaks, regime_violations
from core.entanglement import concurrence_trajectory, stationary_concurrence
from core.presets import get_preset, list_presets
from core.solver_service import Solver, ApproxSolver, SupportedSolvers, build_solver
from core.util import (
    TRAJECTORY_COLUMNS,
    SWEEP_AXES,
    build_scenario,
    build_params,
    build_initial_state,
    apply_sweep_value,
    load_scenario_file,
    variant_stem,
    trajectory_rows,
    format_float,
    complex_pair,
    write_csv,
    write_manifest,
    sup_norm,
    rms_distance,
    get_worker_count)
from model.config import VERSION, Scenario, OutputDirectoryConfiguration, default_step
from model.exception import (
    ValidationException,
    UnsetConfigurationException,
    SolverDisagreementException,
    InvalidScenarioException)
from model.state import SystemParams, InitialState, Trajectory

EXIT_VALIDATION = 2
EXIT_DISAGREEMENT = 3
GUARD_WARNING_FRACTION = 0.1


@dataclass
class VariantResult:
    """
    Data object for the solver outputs of one r_1 variant
    """
    r_1: float
    params: SystemParams
    init: InitialState
    times: np.ndarray
    primary: str
    trajectories: Dict[str, Trajectory] = field(default_factory=dict)
    concurrences: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def trajectory(self) -> Trajectory:
        return self.trajectories[self.primary]

    @property
    def concurrence(self) -> np.ndarray:
        return self.concurrences[self.primary]

    def approximations(self) -> Dict[str, np.ndarray]:
        return {name: series for name, series in self.concurrences.items() if name not in self.trajectories}


class Driver:
    """
    Driver for scenario runs and their output files
    """

    def __init__(self) -> None:
        """
        Initialize the driver; the output directory must be set before running
        """
        self.output_config = None
        self.workers = None

    def update_output_config(self, output_config: OutputDirectoryConfiguration) -> None:
        """
        Update output directory configuration
        :param output_config: Directory receiving CSV and manifest files
        :return:
        """
        self.output_config = output_config

    def update_workers(self, workers: int) -> None:
        self.workers = workers

    def _get_output_config(self) -> OutputDirectoryConfiguration:
        if self.output_config is None:
            raise UnsetConfigurationException("Output directory config is not set")
        if not os.path.exists(self.output_config.out_dir):
            logging.info("Creating directory %s", self.output_config.out_dir)
            os.makedirs(self.output_config.out_dir)
        return self.output_config

    @staticmethod
    def _get_solvers(scenario: Scenario, params: SystemParams) -> List[Solver]:
        solvers = [build_solver(spec, scenario.dt) for spec in scenario.solvers]
        if all(solver.is_approximate for solver in solvers):
            default = SupportedSolvers.CLOSED if params.is_subradiant else SupportedSolvers.EXACT
            solvers.insert(0, build_solver(default.value))
        return solvers

    def solve_variant(self, scenario: Scenario, r_1: float) -> VariantResult:
        """
        Run every selected solver for one relative coupling
        :param scenario: Scenario
        :param r_1: Relative coupling of qubit 1
        :return: VariantResult; the first amplitude solver is the primary one
        """
        params = build_params(scenario, r_1)
        init = build_initial_state(scenario)
        times = scenario.time_grid()
        solvers = self._get_solvers(scenario, params)
        primary = next(solver.name for solver in solvers if not solver.is_approximate)
        result = VariantResult(r_1, params, init, times, primary)
        for solver in solvers:
            if solver.is_approximate:
                result.concurrences[solver.name] = solver.concurrence(times, init, params)
                continue
            trajectory = solver.solve(times, init, params)
            result.trajectories[solver.name] = trajectory
            result.concurrences[solver.name] = concurrence_trajectory(trajectory)
        return result

    @staticmethod
    def _get_guard(scenario: Scenario, first: str, second: str) -> float:
        if SupportedSolvers.VOLTERRA.value in (first, second):
            return scenario.volterra_guard
        return scenario.guard

    def check_guards(self, scenario: Scenario, result: VariantResult) -> None:
        """
        Raise when an amplitude solver strays from the primary one by more than its guard
        :param scenario: Scenario holding the guards
        :param result: Solver outputs
        :return:
        """
        reference = result.trajectory
        for name, trajectory in result.trajectories.items():
            if name == result.primary:
                continue
            distance = max(sup_norm(reference.c1, trajectory.c1), sup_norm(reference.c2, trajectory.c2))
            guard = self._get_guard(scenario, result.primary, name)
            if distance > guard:
                raise SolverDisagreementException(
                    f"{result.primary} and {name} disagree by {distance:g} > guard {guard:g} "
                    f"(r_1={result.r_1:g})")
            if distance > GUARD_WARNING_FRACTION * guard:
                logging.warning("%s and %s differ by %g, close to the guard %g",
                                result.primary, name, distance, guard)

    def _manifest(self, command: str, scenario: Scenario, files: List[str]) -> dict:
        return {
            'version': VERSION,
            'command': command,
            'scenario': scenario.as_dict(),
            'caption': scenario.caption,
            'grid': {'t_max': float(scenario.t_max), 'n_points': scenario.n_points},
            'solvers': list(scenario.solvers),
            'guards': {'guard': scenario.guard, 'volterra_guard': scenario.volterra_guard},
            'files': [os.path.basename(path) for path in files],
        }

    @staticmethod
    def _variant_entry(result: VariantResult, scenario: Scenario) -> dict:
        return {
            'r_1': float(result.r_1),
            'parameters': result.params.as_dict(),
            'initial_amplitudes': {
                'c01': complex_pair(result.init.c01),
                'c02': complex_pair(result.init.c02)},
            'dt': float(scenario.dt if scenario.dt is not None else default_step(result.params)),
            'primary_solver': result.primary,
            'stationary_concurrence': stationary_concurrence(result.init, result.params),
        }

    def run_solve(self, scenario: Scenario) -> List[str]:
        """
        Solve every r_1 variant and write one trajectory CSV per variant plus a manifest
        :param scenario: Scenario
        :return: paths written
        """
        output_config = self._get_output_config()
        files, variants = [], []
        for r_1 in scenario.variants():
            result = self.solve_variant(scenario, r_1)
            self.check_guards(scenario, result)
            approximations = result.approximations()
            header = TRAJECTORY_COLUMNS + [
                'approx_' + name.split(':', 1)[1] for name in approximations]
            rows = trajectory_rows(result.trajectory, result.concurrence, list(approximations.values()))
            files.append(write_csv(output_config.get_csv_path(variant_stem(scenario.name, r_1)), header, rows))
            variants.append(self._variant_entry(result, scenario))

        manifest = self._manifest('solve', scenario, files)
        manifest['variants'] = variants
        files.append(write_manifest(output_config.get_manifest_path(scenario.name), manifest))
        return files

    def _sweep_point(self, axis: str, value: float, scenario: Scenario) -> VariantResult:
        result = self.solve_variant(scenario, scenario.r_1)
        self.check_guards(scenario, result)
        logging.info("Sweep point %s=%g done, max concurrence %.6g", axis, value, float(np.max(result.concurrence)))
        return result

    def run_sweep(self, scenario: Scenario, axis: str, values: Sequence[float]) -> List[str]:
        """
        Solve the scenario for each value of one axis on a worker pool
        :param scenario: Template scenario
        :param axis: One of delta, r1, s, phi, R, delta_1, delta_2
        :param values: Axis values
        :return: paths written
        """
        if not values:
            raise InvalidScenarioException("values: a sweep needs at least one value")
        output_config = self._get_output_config()
        points = [apply_sweep_value(scenario, axis, value) for value in values]
        workers = min(self.workers or get_worker_count(), len(points))
        logging.info("Sweeping %s over %d values with %d workers", axis, len(points), workers)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(partial(self._sweep_point, axis), values, points))

        def long_rows():
            for value, result in zip(values, results):
                prefix = format_float(value)
                for row in trajectory_rows(result.trajectory, result.concurrence):
                    yield [prefix] + row

        summary_rows = []
        for value, result in zip(values, results):
            peak = int(np.argmax(result.concurrence))
            summary_rows.append([format_float(x) for x in (
                value,
                stationary_concurrence(result.init, result.params),
                result.concurrence[peak],
                result.times[peak])])

        stem = f"{scenario.name}_sweep_{axis}"
        files = [
            write_csv(output_config.get_csv_path(stem), ['value'] + TRAJECTORY_COLUMNS, long_rows()),
            write_csv(output_config.get_csv_path(stem + '_summary'),
                      ['value', 'stationary_concurrence', 'max_concurrence', 'argmax_lambda_t'], summary_rows)]
        manifest = self._manifest('sweep', scenario, files)
        manifest['axis'] = axis
        manifest['values'] = [float(value) for value in values]
        files.append(write_manifest(output_config.get_manifest_path(stem), manifest))
        return files

    def run_compare(self, scenario: Scenario) -> List[str]:
        """
        Pairwise distances between the primary solver and every other selected solver.
        The table is written before the guards are enforced.
        :param scenario: Scenario with at least two solvers
        :return: paths written
        """
        if len(scenario.solvers) < 2:
            raise InvalidScenarioException("solvers: compare needs at least two solvers")
        output_config = self._get_output_config()
        rows, variants, results = [], [], []
        for r_1 in scenario.variants():
            result = self.solve_variant(scenario, r_1)
            results.append(result)
            reference = result.trajectory
            entry = self._variant_entry(result, scenario)
            entry['violations'] = {}
            for name, series in result.concurrences.items():
                if name == result.primary:
                    continue
                quantities = [('concurrence', result.concurrence, series)]
                if name in result.trajectories:
                    other = result.trajectories[name]
                    quantities = [('c1', reference.c1, other.c1), ('c2', reference.c2, other.c2)] + quantities
                else:
                    solver = build_solver(name)
                    if isinstance(solver, ApproxSolver):
                        entry['violations'][name] = regime_violations(result.init, result.params, solver.regime)
                for quantity, first, second in quantities:
                    rows.append([format_float(r_1), result.primary, name, quantity,
                                 format_float(sup_norm(first, second)), format_float(rms_distance(first, second))])
            variants.append(entry)

        stem = f"{scenario.name}_compare"
        files = [write_csv(output_config.get_csv_path(stem),
                           ['r_1', 'solver_a', 'solver_b', 'quantity', 'sup_norm', 'l2'], rows)]
        manifest = self._manifest('compare', scenario, files)
        manifest['variants'] = variants
        files.append(write_manifest(output_config.get_manifest_path(stem), manifest))
        for result in results:
            self.check_guards(scenario, result)
        return files

    def run_beats(self, scenario: Scenario) -> List[str]:
        """
        Spectral peaks of |c2|^2 and of the concurrence for each variant
        :param scenario: Scenario, ideally in the good-cavity limit
        :return: paths written
        """
        output_config = self._get_output_config()
        files, variants = [], []
        for r_1 in scenario.variants():
            result = self.solve_variant(scenario, r_1)
            params = result.params
            resolvable = beats_resolvable(params, scenario.lossless)
            series = {
                'population_2': np.abs(result.trajectory.c2) ** 2,
                'concurrence': result.concurrence,
            }
            peaks = []
            if resolvable:
                window_params = params if params.is_subradiant else None
                for name, values in series.items():
                    peaks.extend(find_beat_peaks(result.times, values, name, window_params))
            else:
                logging.warning("Rabi splitting 2R=%g below the linewidth %g, beats are not resolvable",
                                2.0 * params.rabi, params.lambda_)
            rows = [[peak.series, format_float(peak.angular_frequency),
                     format_float(peak.amplitude), format_float(peak.bin_width)] for peak in peaks]
            stem = variant_stem(scenario.name, r_1) + '_beats'
            files.append(write_csv(output_config.get_csv_path(stem),
                                   ['series', 'angular_frequency', 'amplitude', 'bin_width'], rows))
            entry = self._variant_entry(result, scenario)
            entry['resolvable'] = resolvable
            entry['peak_count'] = len(peaks)
            if params.is_subradiant:
                entry['expected_frequencies'] = [float(w) for w in expected_beat_frequencies(params)]
            variants.append(entry)

        manifest = self._manifest('beats', scenario, files)
        manifest['variants'] = variants
        files.append(write_manifest(output_config.get_manifest_path(f"{scenario.name}_beats"), manifest))
        return files


def _add_scenario_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('-p', '--preset', help='Name of a preset scenario')
    parser.add_argument('-c', '--config', help='Path to a YAML scenario file')
    parser.add_argument('-o', '--out', help='Output directory', default='.')
    parser.add_argument('--dt', type=float, help='Integrator step for rk4 and volterra')
    parser.add_argument('--tmax', type=float, help='End of the time grid, in units of 1/lambda')
    parser.add_argument('--points', type=int, help='Number of grid points')
    parser.add_argument(
        '-s',
        '--solver',
        action='append',
        help='closed, exact, rk4, volterra or approx:<regime>; repeatable')
    parser.add_argument('--guard', type=float, help='Largest allowed distance between exact and rk4 amplitudes')
    parser.add_argument('--log-file', help='Log file', default='output.log')


def get_scenario(args: argparse.Namespace) -> Scenario:
    """
    Scenario from a preset, then the config file, then command-line flags
    :param args: Parsed arguments
    :return: Scenario
    """
    scenario = get_preset(args.preset) if args.preset else None
    config = load_scenario_file(args.config) if args.config else {}
    if scenario is None or config:
        scenario = build_scenario(scenario, config)
    return build_scenario(scenario, {
        'dt': args.dt,
        't_max': args.tmax,
        'n_points': args.points,
        'solvers': args.solver,
        'guard': args.guard,
    })


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Entanglement dynamics of two qubits in a common lossy cavity')
    commands = parser.add_subparsers(dest='command', required=True)
    for command, text in (('solve', 'Write trajectories'),
                          ('compare', 'Compare solvers'),
                          ('beats', 'Find beat frequencies')):
        _add_scenario_arguments(commands.add_parser(command, help=text))
    sweep = commands.add_parser('sweep', help='Sweep one parameter')
    _add_scenario_arguments(sweep)
    sweep.add_argument('-a', '--axis', choices=SWEEP_AXES, required=True, help='Swept parameter')
    sweep.add_argument('-v', '--values', type=float, nargs='*', default=[], help='Axis values')
    presets = commands.add_parser('presets', help='Preset scenarios')
    presets.add_argument('action', choices=['list'])
    presets.add_argument('--log-file', help='Log file', default='output.log')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> None:
    """
    Main program for command-line based execution
    :param argv: Arguments, sys.argv when None
    :return:
    """
    args = get_parser().parse_args(argv)
    logging.basicConfig(
        filename=args.log_file,
        encoding='utf-8',
        level=logging.INFO)

    if args.command == 'presets':
        for name, caption in list_presets().items():
            print(f"{name}\t{caption}")
        return

    driver = Driver()
    driver.update_output_config(OutputDirectoryConfiguration(args.out))
    try:
        scenario = get_scenario(args)
        if args.command == 'solve':
            files = driver.run_solve(scenario)
        elif args.command == 'sweep':
            files = driver.run_sweep(scenario, args.axis, args.values)
        elif args.command == 'compare':
            files = driver.run_compare(scenario)
        else:
            files = driver.run_beats(scenario)
    except (ValidationException, UnsetConfigurationException) as error:
        logging.error("Failed with exception %s", error)
        print(f"error: {error}", file=sys.stderr)
        sys.exit(EXIT_VALIDATION)
    except SolverDisagreementException as error:
        logging.error("Failed with exception %s", error)
        print(f"error: {error}", file=sys.stderr)
        sys.exit(EXIT_DISAGREEMENT)
    logging.info("Finished %s, wrote %d files", args.command, len(files))


if __name__ == "__main__":
    main()
