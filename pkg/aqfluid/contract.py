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
Tensor-network oracle: a circuit becomes one tensor per gate, cotengra finds
a contraction order, and the network is contracted pair by pair. This is
independent of the statevector kernels and is meant for small registers.
"""

from typing import Any, Dict, List, Tuple

import cotengra
import numpy as np

from .circuit import Circuit
from .errors import ShapeError
from .statevector import Statevector

OPTIMIZER = None

Leg = Tuple[Any, ...]


def optimizer() -> cotengra.ReusableHyperOptimizer:
    global OPTIMIZER
    if OPTIMIZER is None:
        OPTIMIZER = cotengra.ReusableHyperOptimizer(
            methods=["greedy", "kahypar"],
            optlib="cmaes",
            max_repeats=16,
            progbar=False)
    return OPTIMIZER


def contract_pair(tensor1: np.ndarray,
                  legs1: Tuple[Leg, ...],
                  tensor2: np.ndarray,
                  legs2: Tuple[Leg, ...],
                  legs3: Tuple[Leg, ...]) -> np.ndarray:
    assert tensor1.ndim == len(legs1)
    assert tensor2.ndim == len(legs2)

    total = list(dict.fromkeys(legs1 + legs2))
    assert set(total).issuperset(legs3)
    return np.einsum(tensor1, [total.index(a) for a in legs1],
                     tensor2, [total.index(a) for a in legs2],
                     [total.index(a) for a in legs3])


def contract(inputs: List[Tuple[np.ndarray, Tuple[Leg, ...]]],
             output: Tuple[Leg, ...]) -> np.ndarray:
    size_dict: Dict[Leg, int] = dict()
    for tensor, legs in inputs:
        for leg, size in zip(legs, tensor.shape):
            if leg in size_dict:
                assert size_dict[leg] == size
            else:
                size_dict[leg] = size

    tree = optimizer().search([legs for _, legs in inputs], output, size_dict)

    # linear path: contracted operands are removed, the result is appended
    data = list(inputs)
    for pos1, pos2 in tree.get_path():
        tensor2, legs2 = data.pop(max(pos1, pos2))
        tensor1, legs1 = data.pop(min(pos1, pos2))

        needed = set(output)
        for _, legs in data:
            needed.update(legs)
        legs3 = tuple(a for a in dict.fromkeys(legs1 + legs2) if a in needed)
        data.append((contract_pair(tensor1, legs1, tensor2, legs2, legs3),
                     legs3))

    assert len(data) == 1
    tensor, legs = data[0]
    return np.einsum(tensor, list(range(len(legs))),
                     [legs.index(a) for a in output])


def gate_network(circuit: Circuit) -> Tuple[List[Tuple[np.ndarray, Tuple[Leg, ...]]],
                                            List[int]]:
    """
    Returns the gate tensors and the final version of every wire. Wire q in
    version v is the leg (q, v); a gate moves its wires to the next version.
    """
    versions = [0 for _ in range(circuit.num_qubits)]
    inputs = []
    for op in circuit.ops:
        ins = tuple((q, versions[q]) for q in reversed(op.qubits))
        for q in op.qubits:
            versions[q] += 1
        outs = tuple((q, versions[q]) for q in reversed(op.qubits))
        shape = (2,) * (2 * len(op.qubits))
        inputs.append((op.matrix().reshape(shape), outs + ins))
    return inputs, versions


def contract_state(circuit: Circuit, state: Statevector) -> Statevector:
    n = circuit.num_qubits
    if n != state.num_qubits:
        raise ShapeError(f"circuit has {n} qubits, state has {state.num_qubits}")
    if not circuit.ops:
        return state.copy().apply_global_phase(circuit.global_phase)

    inputs, versions = gate_network(circuit)
    start = tuple((q, 0) for q in reversed(range(n)))
    inputs.append((state.tensor(), start))
    output = tuple((q, versions[q]) for q in reversed(range(n)))

    result = Statevector(contract(inputs, output).reshape(-1), state.norm)
    return result.apply_global_phase(circuit.global_phase)


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """
    The 2^n by 2^n matrix of the circuit in the little-endian basis.
    """
    n = circuit.num_qubits
    size = 1 << n
    if not circuit.ops:
        return np.eye(size, dtype=np.complex128) * np.exp(1j * circuit.global_phase)

    inputs, versions = gate_network(circuit)
    for q in range(n):
        inputs.append((np.eye(2, dtype=np.complex128), ((q, 0), ("in", q))))
    output = tuple((q, versions[q]) for q in reversed(range(n))) \
        + tuple(("in", q) for q in reversed(range(n)))

    matrix = contract(inputs, output).reshape(size, size)
    return matrix * np.exp(1j * circuit.global_phase)
