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
Dense complex statevector with in-place gate kernels. Qubit i carries the
binary weight 2^i of the basis index (little-endian), so a state of n qubits
viewed as a tensor of shape (2,) * n has qubit i on axis n - 1 - i.
"""

import math
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from .errors import (DegenerateStateError, QubitIndexError,
                     ResourceLimitError, ShapeError)

# 2^28 complex doubles take 4 GiB
MAX_QUBITS = 28

SQRT_HALF = 1.0 / math.sqrt(2.0)

PhaseSource = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]


class Statevector:
    def __init__(self, amplitudes: np.ndarray, norm: float = 1.0):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amplitudes.ndim != 1:
            raise ShapeError("amplitudes must be a flat array")

        size = amplitudes.shape[0]
        num_qubits = size.bit_length() - 1
        if size < 2 or (1 << num_qubits) != size:
            raise ShapeError(f"length {size} is not a power of two >= 2")

        self.num_qubits = num_qubits
        self.amplitudes = amplitudes
        self.norm = norm

    @property
    def size(self) -> int:
        return self.amplitudes.shape[0]

    def copy(self) -> 'Statevector':
        return Statevector(self.amplitudes.copy(), self.norm)

    def __repr__(self) -> str:
        return f"Statevector({self.num_qubits}, {self.amplitudes})"

    def check_qubit(self, qubit: int):
        if not 0 <= qubit < self.num_qubits:
            raise QubitIndexError(
                f"qubit {qubit} out of range for {self.num_qubits} qubits")

    def check_pair(self, qubit0: int, qubit1: int):
        self.check_qubit(qubit0)
        self.check_qubit(qubit1)
        if qubit0 == qubit1:
            raise QubitIndexError(f"two-qubit gate on repeated qubit {qubit0}")

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def axis(self, qubit: int) -> int:
        return self.num_qubits - 1 - qubit

    def split(self, target: int) -> np.ndarray:
        # [high bits, target bit, low bits]
        return self.amplitudes.reshape(-1, 2, 1 << target)

    def slot(self, bits: Sequence[Tuple[int, int]]) -> Tuple:
        index = [slice(None)] * self.num_qubits
        for qubit, bit in bits:
            index[self.axis(qubit)] = bit
        return tuple(index)

    def apply_hadamard(self, target: int) -> 'Statevector':
        self.check_qubit(target)
        view = self.split(target)
        low = view[:, 0, :].copy()
        high = view[:, 1, :]
        view[:, 0, :] = (low + high) * SQRT_HALF
        view[:, 1, :] = (low - high) * SQRT_HALF
        return self

    def apply_controlled_phase(self, control: int, target: int,
                               theta: float) -> 'Statevector':
        self.check_pair(control, target)
        tensor = self.tensor()
        tensor[self.slot([(control, 1), (target, 1)])] *= np.exp(1j * theta)
        return self

    def apply_rz(self, target: int, theta: float) -> 'Statevector':
        """
        Applies Rz(theta) = exp(-i theta Z / 2), so bit 0 of the target gains
        the phase exp(-i theta / 2) and bit 1 gains exp(+i theta / 2).
        """
        self.check_qubit(target)
        view = self.split(target)
        view[:, 0, :] *= np.exp(-0.5j * theta)
        view[:, 1, :] *= np.exp(0.5j * theta)
        return self

    def apply_zz_entangler(self, qubit0: int, qubit1: int,
                           phi: float) -> 'Statevector':
        """
        Applies exp(-i phi Z Z) with the full angle phi in the exponent:
        agreeing bits gain exp(-i phi), differing bits gain exp(+i phi).
        """
        self.check_pair(qubit0, qubit1)
        tensor = self.tensor()
        same = np.exp(-1j * phi)
        diff = np.exp(1j * phi)
        for bit0 in (0, 1):
            for bit1 in (0, 1):
                tensor[self.slot([(qubit0, bit0), (qubit1, bit1)])] *= \
                    same if bit0 == bit1 else diff
        return self

    def apply_swap(self, qubit0: int, qubit1: int) -> 'Statevector':
        self.check_pair(qubit0, qubit1)
        swapped = np.swapaxes(self.tensor(), self.axis(qubit0),
                              self.axis(qubit1))
        self.amplitudes[:] = np.ascontiguousarray(swapped).reshape(-1)
        return self

    def apply_pauli(self, kind: str, target: int) -> 'Statevector':
        self.check_qubit(target)
        view = self.split(target)
        if kind == "X":
            view[:, [0, 1], :] = view[:, [1, 0], :]
        elif kind == "Y":
            low = view[:, 0, :].copy()
            view[:, 0, :] = -1j * view[:, 1, :]
            view[:, 1, :] = 1j * low
        elif kind == "Z":
            view[:, 1, :] *= -1.0
        else:
            raise ValueError(f"unknown pauli {kind}")
        return self

    def apply_diagonal_phases(self, phases: PhaseSource) -> 'Statevector':
        """
        Multiplies amplitude m by exp(i phi(m)). The phases are given either
        as a vectorized function of the basis index array or as an array.
        """
        if callable(phases):
            phases = phases(np.arange(self.size))
        phases = np.asarray(phases, dtype=np.float64)
        if phases.shape != self.amplitudes.shape:
            raise ShapeError(f"expected {self.size} phases, got {phases.shape}")
        self.amplitudes *= np.exp(1j * phases)
        return self

    def apply_global_phase(self, phase: float) -> 'Statevector':
        if phase != 0.0:
            self.amplitudes *= np.exp(1j * phase)
        return self

    def permute_qubits(self, order: Sequence[int]) -> 'Statevector':
        """
        Moves logical qubit j from wire order[j] to wire j.
        """
        n = self.num_qubits
        if sorted(order) != list(range(n)):
            raise ShapeError(f"{list(order)} is not a qubit permutation")

        axes = [0] * n
        for logical, wire in enumerate(order):
            axes[n - 1 - logical] = n - 1 - wire
        permuted = np.transpose(self.tensor(), axes)
        self.amplitudes[:] = np.ascontiguousarray(permuted).reshape(-1)
        return self

    def norm_deviation(self) -> float:
        return abs(float(np.linalg.norm(self.amplitudes)) - 1.0)


def zero_state(num_qubits: int, max_qubits: int = MAX_QUBITS) -> Statevector:
    if not 1 <= num_qubits <= max_qubits:
        raise ResourceLimitError(
            f"{num_qubits} qubits outside the supported range [1, {max_qubits}]")
    amplitudes = np.zeros(1 << num_qubits, dtype=np.complex128)
    amplitudes[0] = 1.0
    return Statevector(amplitudes)


def from_amplitudes(raw: np.ndarray) -> Tuple[Statevector, float]:
    """
    Normalizes the given amplitudes. The original Euclidean norm is returned
    as well and remembered on the state for rescaling observables later.
    """
    raw = np.asarray(raw, dtype=np.complex128).reshape(-1)
    size = raw.shape[0]
    if size < 2 or (size & (size - 1)) != 0:
        raise ShapeError(f"length {size} is not a power of two >= 2")

    norm = float(np.linalg.norm(raw))
    if not norm > 0.0:
        raise DegenerateStateError("cannot normalize a zero vector")
    return Statevector(raw / norm, norm), norm


def inner_product(state0: Statevector, state1: Statevector) -> complex:
    if state0.num_qubits != state1.num_qubits:
        raise ShapeError(
            f"qubit counts differ: {state0.num_qubits} and {state1.num_qubits}")
    return complex(np.vdot(state0.amplitudes, state1.amplitudes))


def fidelity(state0: Statevector, state1: Statevector) -> float:
    return min(1.0, abs(inner_product(state0, state1)) ** 2)


def random_state(num_qubits: int, rng: np.random.Generator) -> Statevector:
    size = 1 << num_qubits
    raw = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return from_amplitudes(raw)[0]
