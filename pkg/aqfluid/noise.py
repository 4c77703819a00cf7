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
Gate noise by Monte Carlo trajectories: after every gate, with probability
one minus the gate fidelity, a uniformly random X, Y or Z hits one of the
qubits the gate acted on. Every trajectory draws from its own stream seeded
by (rng_seed, trajectory index), so results do not depend on scheduling.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, TypeVar

import numpy as np

from .circuit import Circuit, GateOp
from .errors import ShapeError
from .fluid import FlowObservables, WaveField, decode, encode, observe
from .statevector import Statevector

logger = logging.getLogger(__name__)

PAULIS = "XYZ"

T = TypeVar("T")


@dataclass(frozen=True)
class NoiseModel:
    fidelity_1q: float = 0.9997
    fidelity_2q: float = 0.9967
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("fidelity_1q", "fidelity_2q"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {value}")

    def fidelity(self, op: GateOp) -> float:
        return self.fidelity_2q if op.is_two_qubit else self.fidelity_1q


@dataclass
class Trajectory:
    state: Statevector
    events: int


def run_trajectory(circuit: Circuit, state: Statevector, model: NoiseModel,
                   index: int) -> Trajectory:
    rng = np.random.default_rng([model.rng_seed, index])
    state = state.copy()
    events = 0
    for op in circuit.ops:
        op.apply(state)
        if rng.random() < 1.0 - model.fidelity(op):
            pauli = PAULIS[rng.integers(3)]
            qubit = op.qubits[rng.integers(len(op.qubits))]
            state.apply_pauli(pauli, qubit)
            events += 1
    state.apply_global_phase(circuit.global_phase)
    return Trajectory(state, events)


def ordered_map(function: Callable[[int], T], count: int,
                workers: int = 1) -> List[T]:
    if workers <= 1:
        return [function(index) for index in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, range(count)))


def noisy_execute(circuit: Circuit, state: Statevector, model: NoiseModel,
                  trajectories: int, workers: int = 1) -> List[Trajectory]:
    assert trajectories >= 1
    if circuit.num_qubits != state.num_qubits:
        raise ShapeError(f"circuit has {circuit.num_qubits} qubits, "
                         f"state has {state.num_qubits}")

    result = ordered_map(
        lambda index: run_trajectory(circuit, state, model, index),
        trajectories, workers)
    logger.debug("%d trajectories of %s: %d pauli events", trajectories,
                 circuit.label, sum(t.events for t in result))
    return result


def averaged_observables(circuit: Circuit, field: WaveField, model: NoiseModel,
                         trajectories: int,
                         workers: int = 1) -> FlowObservables:
    """
    Density and momentum averaged pointwise over the trajectories.
    """
    assert trajectories >= 1
    start = encode(field)

    def sample(index: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        state = run_trajectory(circuit, start, model, index).state
        obs = observe(decode(state, field.grid, field.stored_norm))
        return obs.rho, obs.jx, obs.jy

    total: Optional[List[np.ndarray]] = None
    for parts in ordered_map(sample, trajectories, workers):
        if total is None:
            total = [p.copy() for p in parts]
        else:
            for acc, p in zip(total, parts):
                acc += p

    logger.info("averaged %d trajectories of %s", trajectories, circuit.label)
    rho, jx, jy = (acc / trajectories for acc in total)
    return FlowObservables(rho, jx, jy)


def cumulative_hardware_error(two_qubit_gate_count: int,
                              fidelity_2q: float) -> float:
    """
    Probability that at least one of N gates of the given fidelity fails.
    """
    if two_qubit_gate_count < 0:
        raise ValueError(f"negative gate count {two_qubit_gate_count}")
    assert 0.0 < fidelity_2q <= 1.0
    return -math.expm1(two_qubit_gate_count * math.log(fidelity_2q))
