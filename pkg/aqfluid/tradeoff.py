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

"""
How truncation trades algorithmic error for hardware error as the register
grows. The curves are analytic and come from the gate counts of the actual
circuit builders; small registers can add a measured statevector error.
"""

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import cmaes
import numpy as np

from .circuit import GateStats, execute, stats
from .errors import AmbiguityError, PinDriftError, ResourceLimitError
from .fluid import GridSpec, encode, initial_wavefunction
from .fourier import AqftConfig, aqft_error_bound
from .momentum import (EvolutionTime, TruncationPolicy, apply_truncation,
                       build_full_step, decompose_k_squared)
from .noise import cumulative_hardware_error
from .statevector import fidelity

logger = logging.getLogger(__name__)

NORMALIZATIONS = ("bounded", "raw", "relative")
COUNT_MODELS = ("routed", "raw")

# largest register for which the statevector error is measured
EMPIRICAL_LIMIT = 14

SCALING_COLUMNS = ["n", "removed_gates_raw", "removed_gates_routed",
                   "avoided_error", "aqft_bound", "momentum_bound_paper",
                   "momentum_bound_tight", "empirical_error",
                   "depth_exact", "depth_truncated"]


def split_qubits(num_qubits: int) -> Tuple[int, int]:
    """
    Total qubits split between the axes, the x axis taking the odd one.
    """
    if num_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {num_qubits}")
    return (num_qubits + 1) // 2, num_qubits // 2


@dataclass(frozen=True)
class TruncationSetup:
    threshold_b: Optional[int] = 2
    time_exponent_p: int = 1
    epsilon_th: float = math.pi / 8
    compensate: bool = True
    periodic_removal: bool = True
    fidelity_2q: float = 0.9967
    count_model: str = "routed"

    def __post_init__(self):
        if self.count_model not in COUNT_MODELS:
            raise ValueError(f"unknown count model {self.count_model!r}")

    @property
    def time(self) -> EvolutionTime:
        return EvolutionTime.from_exponent(self.time_exponent_p)

    @property
    def aqft(self) -> AqftConfig:
        return AqftConfig(self.threshold_b, self.compensate)

    @property
    def policy(self) -> TruncationPolicy:
        return TruncationPolicy(self.epsilon_th, self.time_exponent_p,
                                self.periodic_removal)

    def count(self, gate_stats: GateStats) -> int:
        if self.count_model == "routed":
            return gate_stats.lnn_routed_two_qubit_count
        return gate_stats.two_qubit_count


@dataclass
class CurvePoint:
    n: int
    standard: GateStats
    truncated: GateStats
    avoided_error: float
    aqft_bound: float
    momentum_removed: int
    momentum_bound_paper: float
    momentum_bound_tight: float
    empirical_error: Optional[float] = None

    @property
    def removed_gates_raw(self) -> int:
        return self.standard.two_qubit_count - self.truncated.two_qubit_count

    @property
    def removed_gates_routed(self) -> int:
        return self.standard.lnn_routed_two_qubit_count \
            - self.truncated.lnn_routed_two_qubit_count

    @property
    def depth_exact(self) -> int:
        return self.standard.logical_depth

    @property
    def depth_truncated(self) -> int:
        return self.truncated.logical_depth

    @property
    def algorithmic_bound(self) -> float:
        return self.aqft_bound + self.momentum_bound_paper

    def row(self) -> List[str]:
        values = [self.removed_gates_raw, self.removed_gates_routed,
                  self.avoided_error, self.aqft_bound,
                  self.momentum_bound_paper, self.momentum_bound_tight]
        empirical = "" if self.empirical_error is None \
            else format(self.empirical_error, ".12g")
        return [str(self.n)] + [format(v, ".12g") for v in values] \
            + [empirical, str(self.depth_exact), str(self.depth_truncated)]


@dataclass
class TradeoffCurves:
    setup: TruncationSetup
    points: List[CurvePoint] = field(default_factory=list)

    @property
    def ns(self) -> np.ndarray:
        return np.array([p.n for p in self.points], dtype=np.float64)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points],
                        dtype=np.float64)

    def algorithmic_curve(self, normalization: str = "bounded") -> np.ndarray:
        bound = self.column("algorithmic_bound")
        if normalization == "bounded":
            return np.minimum(1.0, bound / math.pi)
        elif normalization == "raw":
            return bound
        elif normalization == "relative":
            top = float(np.max(bound)) if bound.size else 0.0
            return bound / top if top > 0.0 else np.zeros_like(bound)
        raise ValueError(f"unknown normalization {normalization!r}")

    def hardware_curve(self) -> np.ndarray:
        return self.column("avoided_error")

    def write_csv(self, path: str):
        with open(path, "w", newline="") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(SCALING_COLUMNS)
            for point in self.points:
                writer.writerow(point.row())


def empirical_algorithmic_error(num_qubits: int, setup: TruncationSetup,
                                form: str = "paper_literal",
                                max_qubits: int = EMPIRICAL_LIMIT) -> float:
    """
    One minus the fidelity between the exactly and the truncated evolved
    initial flow field, without noise.
    """
    if num_qubits > max_qubits:
        raise ResourceLimitError(
            f"{num_qubits} qubits exceed the statevector limit {max_qubits}")
    nx, ny = split_qubits(num_qubits)
    start = encode(initial_wavefunction(GridSpec(nx, ny), form))

    exact = build_full_step(nx, ny, setup.time, AqftConfig.exact(),
                            TruncationPolicy.noop())
    truncated = build_full_step(nx, ny, setup.time, setup.aqft, setup.policy)
    state0 = execute(exact, start.copy())
    state1 = execute(truncated, start.copy())
    return max(0.0, 1.0 - fidelity(state0, state1))


def curve_point(num_qubits: int, setup: TruncationSetup,
                empirical: bool = False) -> CurvePoint:
    nx, ny = split_qubits(num_qubits)
    standard = stats(build_full_step(nx, ny, setup.time, AqftConfig.exact(),
                                     TruncationPolicy.noop(),
                                     max_qubits=num_qubits))
    truncated = stats(build_full_step(nx, ny, setup.time, setup.aqft,
                                      setup.policy, max_qubits=num_qubits))

    aqft_bound = 0.0
    removed = 0
    tight = 0.0
    for axis in (nx, ny):
        # forward and inverse transform
        aqft_bound += 2.0 * aqft_error_bound(axis, setup.threshold_b,
                                             setup.compensate)
        report = apply_truncation(decompose_k_squared(axis), setup.policy,
                                  setup.time)
        removed += report.removed_count
        tight += report.tight_error_bound()

    point = CurvePoint(num_qubits, standard, truncated, 0.0, aqft_bound,
                       removed, setup.epsilon_th * removed, tight)
    point.avoided_error = cumulative_hardware_error(
        setup.count(standard) - setup.count(truncated), setup.fidelity_2q)
    if empirical:
        point.empirical_error = empirical_algorithmic_error(num_qubits, setup)
    return point


def scaling_curves(n_values: Iterable[int], setup: TruncationSetup,
                   empirical_max: int = 0) -> TradeoffCurves:
    curves = TradeoffCurves(setup)
    for n in n_values:
        curves.points.append(curve_point(n, setup, n <= empirical_max))
        logger.info("n=%d: %d removed (%d routed), avoided error %.4g", n,
                    curves.points[-1].removed_gates_raw,
                    curves.points[-1].removed_gates_routed,
                    curves.points[-1].avoided_error)
    return curves


@dataclass(frozen=True)
class Fit:
    degree: int
    coefficients: List[float]
    r_squared: float

    def as_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "coefficients": self.coefficients,
                "r_squared": self.r_squared}


def fit_polynomial(xs: np.ndarray, ys: np.ndarray, degree: int) -> Fit:
    coefficients = np.polyfit(xs, ys, degree)
    residual = ys - np.polyval(coefficients, xs)
    total = float(np.sum((ys - np.mean(ys)) ** 2))
    error = float(np.sum(residual ** 2))
    if total == 0.0:
        r_squared = 1.0 if error <= 1e-24 else 0.0
    else:
        r_squared = 1.0 - error / total
    return Fit(degree, [float(c) for c in coefficients], r_squared)


FITS = {
    "aqft_bound": 1,
    "momentum_bound_paper": 2,
    "removed_gates_raw": 2,
    "removed_gates_routed": 2,
    "depth_exact": 2,
    "depth_truncated": 1,
}


def fit_curves(curves: TradeoffCurves) -> Dict[str, Fit]:
    return {name: fit_polynomial(curves.ns, curves.column(name), degree)
            for name, degree in FITS.items()}


@dataclass(frozen=True)
class Equilibrium:
    crossing: Optional[float]
    crossings: List[float]
    normalization: str
    start: Tuple[float, float, float]
    end: Tuple[float, float, float]

    @property
    def dominant(self) -> str:
        """
        Which curve lies above at the end of the range.
        """
        difference = self.end[1] - self.end[2]
        if difference > 0.0:
            return "algorithmic"
        elif difference < 0.0:
            return "hardware"
        return "tie"

    def as_dict(self) -> Dict[str, Any]:
        return {
            "normalization": self.normalization,
            "crossing": "none" if self.crossing is None else self.crossing,
            "crossings": self.crossings,
            "start": {"n": self.start[0], "algorithmic": self.start[1],
                      "hardware": self.start[2]},
            "end": {"n": self.end[0], "algorithmic": self.end[1],
                    "hardware": self.end[2]},
            "dominant_at_end": self.dominant,
        }


def find_crossings(xs: np.ndarray, ys1: np.ndarray,
                   ys2: np.ndarray) -> List[float]:
    """
    Abscissae where ys1 - ys2 changes sign, linearly interpolated. Points
    where the curves agree exactly are ties and never crossings.
    """
    crossings = []
    last = None
    for x, d in zip(xs, ys1 - ys2):
        if d == 0.0:
            continue
        if last is not None and (last[1] < 0.0) != (d < 0.0):
            x0, d0 = last
            crossings.append(float(x0 + (x - x0) * d0 / (d0 - d)))
        last = (x, d)
    return crossings


def equilibrium_point(curves: TradeoffCurves,
                      normalization: str = "bounded") -> Equilibrium:
    assert curves.points
    xs = curves.ns
    algorithmic = curves.algorithmic_curve(normalization)
    hardware = curves.hardware_curve()
    return equilibrium_of(xs, algorithmic, hardware, normalization)


def equilibrium_of(xs: np.ndarray, algorithmic: np.ndarray,
                   hardware: np.ndarray,
                   normalization: str = "given") -> Equilibrium:
    crossings = find_crossings(xs, algorithmic, hardware)
    if len(crossings) > 1:
        raise AmbiguityError(f"{len(crossings)} crossings found", crossings)

    start = (float(xs[0]), float(algorithmic[0]), float(hardware[0]))
    end = (float(xs[-1]), float(algorithmic[-1]), float(hardware[-1]))
    crossing = crossings[0] if crossings else None
    return Equilibrium(crossing, crossings, normalization, start, end)


@dataclass
class TuningResult:
    threshold_b: int
    epsilon_th: float
    algorithmic_error: float
    hardware_error: float
    combined_error: float
    history: List[Dict[str, float]] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "threshold_b": self.threshold_b,
            "epsilon_th": self.epsilon_th,
            "epsilon_over_pi": self.epsilon_th / math.pi,
            "algorithmic_error": self.algorithmic_error,
            "hardware_error": self.hardware_error,
            "combined_error": self.combined_error,
            "evaluations": len(self.history),
        }


def combined_error(num_qubits: int, setup: TruncationSetup) -> Tuple[float, float]:
    """
    The normalized algorithmic error (AQFT bound and tight momentum bound)
    and the hardware error of the gates that remain.
    """
    nx, ny = split_qubits(num_qubits)
    bound = 0.0
    for axis in (nx, ny):
        bound += 2.0 * aqft_error_bound(axis, setup.threshold_b, setup.compensate)
        bound += apply_truncation(decompose_k_squared(axis), setup.policy,
                                  setup.time).tight_error_bound()
    truncated = stats(build_full_step(nx, ny, setup.time, setup.aqft,
                                      setup.policy, max_qubits=num_qubits))
    hardware = cumulative_hardware_error(setup.count(truncated),
                                         setup.fidelity_2q)
    return min(1.0, bound / math.pi), hardware


def tune_thresholds(num_qubits: int, setup: TruncationSetup, seed: int = 0,
                    generations: int = 40,
                    log_epsilon_range: Tuple[float, float] = (-12.0, -0.05)
                    ) -> TuningResult:
    """
    Searches (log2(epsilon / pi), b) with CMA-ES for the smallest combined
    error 1 - (1 - algorithmic) (1 - hardware).
    """
    nx, _ = split_qubits(num_qubits)
    top_b = max(1, nx - 1)
    bounds = np.array([list(log_epsilon_range), [0.0, float(top_b)]])
    optimizer = cmaes.CMA(mean=bounds.mean(axis=1), sigma=0.3 * top_b,
                          bounds=bounds, seed=seed)

    cache: Dict[Tuple[int, float], Tuple[float, float, float]] = dict()
    best: Optional[TuningResult] = None
    history: List[Dict[str, float]] = []

    for generation in range(generations):
        solutions = []
        for _ in range(optimizer.population_size):
            x = optimizer.ask()
            b = int(round(float(x[1])))
            epsilon = math.pi * 2.0 ** float(x[0])
            key = (b, epsilon)
            if key not in cache:
                trial = TruncationSetup(b, setup.time_exponent_p, epsilon,
                                        setup.compensate,
                                        setup.periodic_removal,
                                        setup.fidelity_2q, setup.count_model)
                alg, hw = combined_error(num_qubits, trial)
                cache[key] = (alg, hw, 1.0 - (1.0 - alg) * (1.0 - hw))
            alg, hw, value = cache[key]
            solutions.append((x, value))
            history.append({"generation": generation, "threshold_b": b,
                            "epsilon_th": epsilon, "combined_error": value})
            if best is None or value < best.combined_error:
                best = TuningResult(b, epsilon, alg, hw, value)
        optimizer.tell(solutions)
        if optimizer.should_stop():
            break

    assert best is not None
    best.history = history
    logger.info("tuned n=%d: b=%d epsilon=%.4g pi, combined error %.4g",
                num_qubits, best.threshold_b, best.epsilon_th / math.pi,
                best.combined_error)
    return best


def write_pins(path: str, pins: Dict[str, Optional[float]]):
    with open(path, "w") as file:
        json.dump(pins, file, indent=2, sort_keys=True)
        file.write("\n")


def check_pins(path: str, pins: Dict[str, Optional[float]],
               rtol: float = 1e-9):
    with open(path) as file:
        previous = json.load(file)

    drifts = []
    for key, value in sorted(pins.items()):
        if key not in previous:
            continue
        old = previous[key]
        if old is None or value is None:
            if old is not value:
                drifts.append(f"{key}: {old} -> {value}")
        elif not math.isclose(old, value, rel_tol=rtol, abs_tol=1e-300):
            drifts.append(f"{key}: {old} -> {value}")
    if drifts:
        raise PinDriftError("pinned values drifted: " + "; ".join(drifts))


def regression_pins(curves: Optional[TradeoffCurves] = None,
                    normalization: str = "bounded") -> Dict[str, Optional[float]]:
    """
    Values computed once by this implementation and guarded against drift.
    """
    # at p = 1 the truncation is exact, so the pin uses p = 3
    setup = TruncationSetup(2, 3, math.pi / 8)
    pins: Dict[str, Optional[float]] = {
        "empirical_error_n10_b2_eps_pi_8_p3":
            empirical_algorithmic_error(10, setup),
    }
    if curves is not None:
        pins[f"equilibrium_{normalization}"] = \
            equilibrium_point(curves, normalization).crossing
    return pins
