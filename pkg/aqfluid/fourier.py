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

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from .circuit import Circuit, GateOp, cphase, hadamard, rz

logger = logging.getLogger(__name__)

PLACEMENTS = ("last_removed", "after_hadamard")


@dataclass(frozen=True)
class AqftConfig:
    """
    Controlled phases between qubits at index distance greater than
    threshold_b are dropped. None keeps every gate. When compensate is set
    each target receives one Rz carrying the expected value of its dropped
    phases, assuming every control is set with the given probability.
    """

    threshold_b: Optional[int] = None
    compensate: bool = True
    assumed_control_probability: float = 0.5
    placement: str = "last_removed"

    def __post_init__(self):
        if self.threshold_b is not None and self.threshold_b < 0:
            raise ValueError(f"threshold_b must be >= 0, got {self.threshold_b}")
        if not 0.0 <= self.assumed_control_probability <= 1.0:
            raise ValueError("assumed_control_probability must be in [0, 1], "
                             f"got {self.assumed_control_probability}")
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement {self.placement!r}")

    @staticmethod
    def exact() -> 'AqftConfig':
        return AqftConfig(threshold_b=None, compensate=False)

    def retains(self, distance: int) -> bool:
        return self.threshold_b is None or distance <= self.threshold_b


def phase_angle(distance: int) -> float:
    """
    The rotation of the controlled phase between qubits at the given index
    distance in the discrete Fourier transform.
    """
    assert distance >= 1
    return 2.0 * math.pi / (1 << (distance + 1))


def bit_reversed_order(num_qubits: int) -> List[int]:
    return list(reversed(range(num_qubits)))


def build_aqft(num_qubits: int, inverse: bool = False,
               cfg: Optional[AqftConfig] = None) -> Circuit:
    """
    The forward circuit maps the basis state m to the Fourier sum of
    exp(2 pi i m m' / 2^n) |m'> with bit j of m' left on wire n - 1 - j,
    which is recorded as the output order instead of swap gates.
    """
    assert num_qubits >= 1
    if cfg is None:
        cfg = AqftConfig.exact()

    ops: List[GateOp] = []
    global_phase = 0.0
    removed_count = 0
    for target in reversed(range(num_qubits)):
        ops.append(hadamard(target))
        block_start = len(ops)
        removed = 0.0
        for control in reversed(range(target)):
            distance = target - control
            angle = phase_angle(distance)
            if cfg.retains(distance):
                ops.append(cphase(control, target, angle))
            else:
                removed += angle
                removed_count += 1

        if cfg.compensate and removed != 0.0:
            # Rz(a) equals diag(1, exp(i a)) up to the phase exp(-i a / 2)
            angle = cfg.assumed_control_probability * removed
            gate = rz(target, angle)
            if cfg.placement == "after_hadamard":
                ops.insert(block_start, gate)
            else:
                ops.append(gate)
            global_phase += 0.5 * angle

    if cfg.threshold_b is None:
        label = f"qft({num_qubits})"
    else:
        label = f"aqft({num_qubits},b={cfg.threshold_b})"
    logger.debug("%s: %d gates, %d controlled phases removed",
                 label, len(ops), removed_count)

    circuit = Circuit(num_qubits, ops, label, global_phase,
                      output_order=bit_reversed_order(num_qubits))
    return circuit.inverse() if inverse else circuit


def build_qft(num_qubits: int, inverse: bool = False) -> Circuit:
    return build_aqft(num_qubits, inverse, AqftConfig.exact())


def aqft_two_qubit_count(num_qubits: int, threshold_b: Optional[int]) -> int:
    top = num_qubits - 1 if threshold_b is None \
        else min(threshold_b, num_qubits - 1)
    return sum(num_qubits - d for d in range(1, top + 1))


def aqft_error_bound(num_qubits: int, threshold_b: Optional[int],
                     compensated: bool) -> float:
    """
    Analytic bound on the phase error of one AQFT: every removed gate at
    distance k contributes 2 pi / 2^k, halved when compensated since the
    residual is measured about the mean phase.
    """
    assert num_qubits >= 1
    if threshold_b is None:
        return 0.0
    weight = 0.5 if compensated else 1.0
    return sum((num_qubits - k) * 2.0 * math.pi / (1 << k) * weight
               for k in range(threshold_b + 1, num_qubits))
