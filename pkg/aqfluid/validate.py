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
Self check of the whole pipeline on small registers. Every check returns the
worst deviation it saw together with its tolerance.
"""

import dataclasses
import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from .circuit import execute, stats
from .contract import contract_state
from .fluid import (GridSpec, classical_evolve, density, evolve_with_circuit,
                    initial_wavefunction, total_mass)
from .fourier import (AqftConfig, aqft_two_qubit_count, build_aqft, build_qft)
from .momentum import (EvolutionTime, PauliDecomposition, TruncationPolicy,
                       build_axis_evolution, build_full_step,
                       build_momentum_circuit, decompose_k_squared,
                       exact_momentum_phases, window_retained_count,
                       retention_window)
from .noise import NoiseModel, cumulative_hardware_error, run_trajectory
from .statevector import fidelity, random_state, zero_state

logger = logging.getLogger(__name__)

FAULTS = ("corrupt-coefficient",)

Decompose = Callable[[int], PauliDecomposition]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    seconds: float


def corrupted(decomp: PauliDecomposition) -> PauliDecomposition:
    pairs = dict(decomp.c_pair)
    if pairs:
        first = min(pairs)
        pairs[first] += 0.5
        return dataclasses.replace(decomp, c_pair=pairs)
    singles = decomp.c_single.copy()
    singles[0] += 0.5
    return dataclasses.replace(decomp, c_single=singles)


def decomposer(fault: Optional[str]) -> Decompose:
    if fault is None:
        return decompose_k_squared
    assert fault in FAULTS
    return lambda n: corrupted(decompose_k_squared(n))


def check_executor_oracle(decompose: Decompose) -> float:
    worst = 0.0
    rng = np.random.default_rng(1)
    for n in range(2, 7):
        circuit = build_axis_evolution(n, EvolutionTime.from_exponent(1),
                                       AqftConfig(1), TruncationPolicy(0.3, 1, True))
        state = random_state(n, rng)
        expected = contract_state(circuit, state)
        actual = execute(circuit, state.copy())
        worst = max(worst, float(np.max(np.abs(actual.amplitudes
                                                - expected.amplitudes))))
    return worst


def check_qft_dft(decompose: Decompose) -> float:
    worst = 0.0
    for n in range(1, 7):
        size = 1 << n
        dft = np.exp(2j * math.pi * np.outer(np.arange(size), np.arange(size))
                     / size) / math.sqrt(size)
        circuit = build_qft(n)
        for m in range(size):
            state = zero_state(n)
            state.amplitudes[:] = 0.0
            state.amplitudes[m] = 1.0
            execute(circuit, state).permute_qubits(circuit.output_order)
            worst = max(worst, float(np.max(np.abs(state.amplitudes - dft[:, m]))))
    return worst


def check_aqft_exact(decompose: Decompose) -> float:
    worst = 0.0
    rng = np.random.default_rng(2)
    for n in range(1, 9):
        exact = build_qft(n)
        full = build_aqft(n, False, AqftConfig(n - 1))
        for _ in range(10):
            state = random_state(n, rng)
            a = execute(exact, state.copy())
            b = execute(full, state.copy())
            worst = max(worst, 1.0 - fidelity(a, b))
    return worst


def check_aqft_count(decompose: Decompose) -> float:
    worst = 0.0
    for n in range(1, 21):
        for b in range(0, 9):
            count = stats(build_aqft(n, False, AqftConfig(b))).two_qubit_count
            worst = max(worst, abs(count - aqft_two_qubit_count(n, b)))
    return worst


def check_reconstruction(decompose: Decompose) -> float:
    return max(decompose(n).reconstruction_error() for n in range(1, 11))


def check_periodic_removal(decompose: Decompose) -> float:
    worst = 0.0
    rng = np.random.default_rng(3)
    for n in range(1, 11):
        state = random_state(n, rng)
        for p in (1, 2, 3):
            t = EvolutionTime.from_exponent(p)
            expected = state.copy().apply_diagonal_phases(
                exact_momentum_phases(n, t))
            circuit = build_momentum_circuit(
                n, t, TruncationPolicy(0.0, p, True), decompose(n))
            actual = execute(circuit, state.copy())
            worst = max(worst, 1.0 - fidelity(expected, actual))
    return worst


def check_retention_bound(decompose: Decompose) -> float:
    worst = -math.inf
    for n in range(1, 21):
        for p in (1, 2, 3):
            for eps in (math.pi / 16, math.pi / 8, math.pi / 4):
                limit = 0.5 * retention_window(p, eps).delta * n
                worst = max(worst, window_retained_count(n, p, eps) - limit)
    return max(0.0, worst)


def check_pipeline(decompose: Decompose) -> float:
    grid = GridSpec(5, 5)
    field = initial_wavefunction(grid)
    worst = 0.0
    for p in (2, 1):
        t = EvolutionTime.from_exponent(p)
        circuit = build_full_step(5, 5, t, AqftConfig.exact(),
                                  TruncationPolicy.noop(),
                                  decomp_x=decompose(5), decomp_y=decompose(5))
        quantum = evolve_with_circuit(field, circuit)
        classical = classical_evolve(field, t.value)
        worst = max(worst, float(np.max(np.abs(quantum.values
                                                - classical.values))))
    return worst


def check_mass(decompose: Decompose) -> float:
    grid = GridSpec(5, 5)
    field = initial_wavefunction(grid)
    start = total_mass(density(field), grid)
    worst = 0.0
    for p in (2, 1):
        t = EvolutionTime.from_exponent(p)
        for cfg, policy in ((AqftConfig.exact(), TruncationPolicy.noop()),
                            (AqftConfig(2), TruncationPolicy(math.pi / 8, p, True))):
            circuit = build_full_step(5, 5, t, cfg, policy,
                                      decomp_x=decompose(5),
                                      decomp_y=decompose(5))
            mass = total_mass(density(evolve_with_circuit(field, circuit)), grid)
            worst = max(worst, abs(mass - start))
    return worst


def check_noiseless_trajectory(decompose: Decompose) -> float:
    rng = np.random.default_rng(4)
    circuit = build_full_step(3, 3, EvolutionTime.from_exponent(1),
                              AqftConfig(1), TruncationPolicy(0.3, 1, True))
    state = random_state(6, rng)
    model = NoiseModel(1.0, 1.0, 7)
    noisy = run_trajectory(circuit, state, model, 0).state
    clean = execute(circuit, state.copy())
    return float(np.max(np.abs(noisy.amplitudes - clean.amplitudes)))


def check_hardware_crossing(decompose: Decompose) -> float:
    """
    Distance of the routed standard-circuit error from 0.99 on the wrong
    side, over 20 to 30 qubits.
    """
    worst = 0.0
    for n in range(20, 31):
        nx, ny = (n + 1) // 2, n // 2
        circuit = build_full_step(nx, ny, EvolutionTime.from_exponent(1),
                                  AqftConfig.exact(), TruncationPolicy.noop(),
                                  max_qubits=n)
        count = stats(circuit).lnn_routed_two_qubit_count
        worst = max(worst, 0.99 - cumulative_hardware_error(count, 0.9967))
    return worst


CHECKS: List[Tuple[str, Callable[[Decompose], float], float]] = [
    ("executor matches tensor network", check_executor_oracle, 1e-10),
    ("qft matches dft matrix", check_qft_dft, 1e-10),
    ("aqft at full threshold is qft", check_aqft_exact, 1e-12),
    ("aqft two-qubit count formula", check_aqft_count, 0.0),
    ("k^2/2 reconstruction", check_reconstruction, 1e-9),
    ("periodic removal is free", check_periodic_removal, 1e-10),
    ("retention window bound", check_retention_bound, 0.0),
    ("pipeline matches spectral oracle", check_pipeline, 1e-8),
    ("mass conservation", check_mass, 1e-10),
    ("noiseless trajectory is exact", check_noiseless_trajectory, 0.0),
    ("routed hardware error saturates", check_hardware_crossing, 0.0),
]


def run_checks(fault: Optional[str] = None) -> List[CheckResult]:
    decompose = decomposer(fault)
    results = []
    for name, function, tolerance in CHECKS:
        start = time.perf_counter()
        worst = function(decompose)
        seconds = time.perf_counter() - start
        passed = bool(worst <= tolerance)
        logger.info("%s: %s (worst %.3g, %.2fs)", name,
                    "pass" if passed else "FAIL", worst, seconds)
        results.append(CheckResult(name, passed, worst, tolerance, seconds))
    return results
