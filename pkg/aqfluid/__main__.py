# Copyright (C) 2026, the aqfluid developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

import datetime
import json
import logging
import math
import os
import sys
from typing import Any, Dict, Optional

import click

from .circuit import dumps, stats
from .config import RunConfig, load_config
from .errors import (AmbiguityError, ConfigError, PinDriftError,
                     UndefinedCorrelationError)
from .fluid import (FlowObservables, classical_evolve, evolve_with_circuit,
                    initial_wavefunction, observe, pearson_r,
                    write_fields_csv)
from .fourier import AqftConfig
from .momentum import (EvolutionTime, TruncationPolicy, apply_truncation,
                       build_full_step, decompose_k_squared)
from .noise import averaged_observables
from .tradeoff import (TradeoffCurves, check_pins, equilibrium_point,
                       fit_curves, regression_pins, scaling_curves,
                       tune_thresholds, write_pins)
from .validate import FAULTS, run_checks

logger = logging.getLogger(__name__)

OBSERVABLES = ("rho", "jx", "jy")


def common_options(function):
    function = click.option("--seed", type=int, help="Random seed.")(function)
    function = click.option("--out", "output_dir",
                            type=click.Path(file_okay=False),
                            help="Output directory.")(function)
    function = click.option("--config", "config_path",
                            type=click.Path(exists=True, dir_okay=False),
                            help="Key = value configuration file.")(function)
    return function


def make_config(config_path: Optional[str], **overrides: Any) -> RunConfig:
    try:
        config = load_config(config_path, overrides)
    except ConfigError as error:
        raise click.UsageError(str(error))
    os.makedirs(config.output_dir, exist_ok=True)
    return config


def write_json(config: RunConfig, name: str, data: Any):
    path = os.path.join(config.output_dir, name)
    with open(path, "w") as file:
        json.dump(data, file, indent=2, sort_keys=True)
        file.write("\n")
    logger.info("wrote %s", path)


def correlations(first: FlowObservables,
                 second: FlowObservables) -> Dict[str, Any]:
    result: Dict[str, Any] = dict()
    for name in OBSERVABLES:
        try:
            result[name] = pearson_r(getattr(first, name), getattr(second, name))
        except UndefinedCorrelationError as error:
            result[name] = None
            result[name + "_reason"] = str(error)
    return result


def simulate_time(config: RunConfig, time: EvolutionTime,
                  dump_circuit: bool) -> Dict[str, Any]:
    grid = config.grid
    field = initial_wavefunction(grid, config.initial_form)
    policy = config.policy(time)

    exact = build_full_step(grid.nx_qubits, grid.ny_qubits, time,
                            AqftConfig.exact(), TruncationPolicy.noop())
    truncated = build_full_step(grid.nx_qubits, grid.ny_qubits, time,
                                config.aqft, policy)

    variants = {
        "ideal": observe(classical_evolve(field, time.value)),
        "exact": observe(evolve_with_circuit(field, exact)),
    }
    noise = config.noise
    if noise is None:
        variants["truncated"] = observe(evolve_with_circuit(field, truncated))
    else:
        variants["truncated"] = averaged_observables(
            truncated, field, noise, config.trajectories, config.workers)

    for name, obs in variants.items():
        path = os.path.join(config.output_dir,
                            f"fields_t{time.label}_{name}.csv")
        write_fields_csv(path, grid, obs)
    if dump_circuit:
        for name, circuit in (("exact", exact), ("truncated", truncated)):
            path = os.path.join(config.output_dir,
                                f"circuit_{name}_t{time.label}.txt")
            with open(path, "w") as file:
                file.write(dumps(circuit))

    reports = {
        axis: apply_truncation(decompose_k_squared(n), policy, time).as_json()
        for axis, n in (("x", grid.nx_qubits), ("y", grid.ny_qubits))
    }
    return {
        "time": str(time),
        "pearson_r": {
            "exact_vs_ideal": correlations(variants["exact"], variants["ideal"]),
            "truncated_vs_ideal": correlations(variants["truncated"],
                                               variants["ideal"]),
            "truncated_vs_exact": correlations(variants["truncated"],
                                               variants["exact"]),
        },
        "gate_stats": {
            "exact": stats(exact).as_dict(),
            "truncated": stats(truncated).as_dict(),
        },
        "truncation_report": reports,
    }


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def cli(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s %(message)s")


@cli.command(context_settings={'show_default': True})
@common_options
@click.option("--times", help="Comma separated times, e.g. 0,pi/4,pi/2.")
@click.option("--trajectories", type=int, help="Noise trajectories, 0 is noiseless.")
@click.option("--dump-circuit", is_flag=True, help="Write the circuits as text.")
def simulate(config_path, output_dir, seed, times, trajectories, dump_circuit):
    """
    Evolves the initial flow with the exact and the truncated circuit and
    compares both with the classical spectral solution.
    """
    config = make_config(config_path, output_dir=output_dir, seed=seed,
                         times=times, trajectories=trajectories)
    metrics = {
        "config": config.as_dict(),
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "times": {},
    }
    for time in config.times:
        logger.info("simulating t=%s", time)
        metrics["times"][time.label] = simulate_time(config, time, dump_circuit)
    write_json(config, "metrics.json", metrics)

    for data in metrics["times"].values():
        r = data["pearson_r"]["truncated_vs_ideal"]
        click.echo(f"t={data['time']}: truncated vs ideal r = "
                   + ", ".join(f"{name} {r[name]}" for name in OBSERVABLES))


def scan(config: RunConfig) -> TradeoffCurves:
    return scaling_curves(range(config.n_min, config.n_max + 1), config.setup,
                          config.empirical_max)


def pin(config: RunConfig, curves: TradeoffCurves, pins_path: Optional[str]):
    pins = regression_pins(curves, config.normalization)
    if pins_path is not None:
        try:
            check_pins(pins_path, pins)
        except PinDriftError as error:
            click.echo(str(error), err=True)
            sys.exit(1)
    write_pins(os.path.join(config.output_dir, "pins.json"), pins)


@cli.command(context_settings={'show_default': True})
@common_options
@click.option("--n-min", type=int, help="Smallest total qubit count.")
@click.option("--n-max", type=int, help="Largest total qubit count.")
@click.option("--pins", "pins_path", type=click.Path(exists=True, dir_okay=False),
              help="Compare regression values with a previous pins.json.")
def scaling(config_path, output_dir, seed, n_min, n_max, pins_path):
    """
    Removed gates and error bounds as functions of the qubit count.
    """
    config = make_config(config_path, output_dir=output_dir, seed=seed,
                         n_min=n_min, n_max=n_max)
    curves = scan(config)
    curves.write_csv(os.path.join(config.output_dir, "scaling.csv"))
    fits = fit_curves(curves)
    write_json(config, "fits.json", {k: v.as_dict() for k, v in fits.items()})
    pin(config, curves, pins_path)
    for name, fit in fits.items():
        click.echo(f"{name}: degree {fit.degree} fit, R^2 = {fit.r_squared:.6f}")


@cli.command(context_settings={'show_default': True})
@common_options
@click.option("--n-min", type=int, help="Smallest total qubit count.")
@click.option("--n-max", type=int, help="Largest total qubit count.")
@click.option("--normalization", type=click.Choice(["bounded", "raw", "relative"]),
              help="Scale of the algorithmic error curve.")
@click.option("--pins", "pins_path", type=click.Path(exists=True, dir_okay=False),
              help="Compare regression values with a previous pins.json.")
def tradeoff(config_path, output_dir, seed, n_min, n_max, normalization,
             pins_path):
    """
    Finds where the algorithmic error meets the avoided hardware error.
    """
    config = make_config(config_path, output_dir=output_dir, seed=seed,
                         n_min=n_min, n_max=n_max, normalization=normalization)
    curves = scan(config)
    algorithmic = curves.algorithmic_curve(config.normalization)
    hardware = curves.hardware_curve()
    with open(os.path.join(config.output_dir, "tradeoff.csv"), "w") as file:
        file.write("n,algorithmic_error,avoided_error\n")
        for n, a, h in zip(curves.ns, algorithmic, hardware):
            file.write(f"{int(n)},{format(a, '.12g')},{format(h, '.12g')}\n")

    try:
        result = equilibrium_point(curves, config.normalization)
    except AmbiguityError as error:
        write_json(config, "equilibrium.json",
                   {"normalization": config.normalization,
                    "error": str(error), "crossings": error.crossings})
        click.echo(f"ambiguous equilibrium: {error.crossings}", err=True)
        sys.exit(1)

    write_json(config, "equilibrium.json", result.as_dict())
    pin(config, curves, pins_path)
    if result.crossing is None:
        click.echo(f"equilibrium: none ({result.dominant} curve dominates "
                   f"at n = {int(result.end[0])})")
    else:
        click.echo(f"equilibrium: n* = {result.crossing:.4f}")


@cli.command(context_settings={'show_default': True})
@common_options
@click.option("--qubits", type=int, help="Total qubits, default nx + ny.")
@click.option("--generations", type=int, default=40, help="CMA-ES generations.")
def tune(config_path, output_dir, seed, qubits, generations):
    """
    Searches the truncation thresholds with the smallest combined error.
    """
    config = make_config(config_path, output_dir=output_dir, seed=seed)
    if qubits is None:
        qubits = config.nx_qubits + config.ny_qubits
    if qubits < 2:
        raise click.UsageError("qubits: must be at least 2")
    result = tune_thresholds(qubits, config.setup, config.seed, generations)
    data = result.as_dict()
    data["history"] = result.history
    write_json(config, "tune.json", data)
    click.echo(f"b = {result.threshold_b}, epsilon = "
               f"{result.epsilon_th / math.pi:.6g} pi, combined "
               f"error {result.combined_error:.6g}")


@cli.command(context_settings={'show_default': True})
@click.option("--inject-fault", type=click.Choice(FAULTS),
              help="Corrupt the computation on purpose.")
def validate(inject_fault):
    """
    Runs the self checks on small registers.
    """
    results = run_checks(inject_fault)
    width = max(len(r.name) for r in results)
    for r in results:
        click.echo(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  "
                   f"worst {r.worst:.3g} (tol {r.tolerance:.1g})  "
                   f"{r.seconds:.2f}s")
    if not all(r.passed for r in results):
        sys.exit(1)


if __name__ == '__main__':
    cli()
