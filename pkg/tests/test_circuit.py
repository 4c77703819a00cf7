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

import math
import random

import numpy as np
import pytest

from aqfluid.circuit import (Circuit, GateKind, GateOp, concatenate, cphase,
                             dumps, execute, hadamard, layers, loads,
                             routed_cost, rz,
                             stats, swap, zz)
from aqfluid.errors import QubitIndexError, ShapeError
from aqfluid.fourier import build_qft
from aqfluid.statevector import Statevector, random_state, zero_state


def random_circuit(num_qubits: int, length: int, seed: int) -> Circuit:
    generator = random.Random(seed)
    ops = []
    for _ in range(length):
        kind = generator.choice(list(GateKind))
        if kind.arity == 1 or num_qubits == 1:
            q = generator.randrange(num_qubits)
            if kind == GateKind.HADAMARD or kind.arity == 2:
                ops.append(hadamard(q))
            else:
                ops.append(rz(q, generator.uniform(-math.pi, math.pi)))
            continue
        q0, q1 = generator.sample(range(num_qubits), 2)
        angle = generator.uniform(-math.pi, math.pi)
        if kind == GateKind.CPHASE:
            ops.append(cphase(q0, q1, angle))
        elif kind == GateKind.ZZ:
            ops.append(zz(q0, q1, angle))
        else:
            ops.append(swap(q0, q1))
    return Circuit(num_qubits, ops, "random", generator.uniform(-1.0, 1.0))


def test_gate_validation():
    with pytest.raises(ValueError):
        GateOp(GateKind.HADAMARD, (0, 1))
    with pytest.raises(ValueError):
        GateOp(GateKind.RZ, (0,))
    with pytest.raises(ValueError):
        GateOp(GateKind.HADAMARD, (0,), 0.5)
    with pytest.raises(QubitIndexError):
        cphase(2, 2, 0.1)
    with pytest.raises(QubitIndexError):
        hadamard(-1)
    with pytest.raises(QubitIndexError):
        Circuit(3, [zz(0, 3, 0.1)])


def test_gate_matrices():
    rng = np.random.default_rng(0)
    for op in [hadamard(0), rz(1, 0.4), cphase(0, 1, 0.9), zz(0, 1, -0.3),
               swap(0, 1), cphase(1, 0, 0.9), zz(1, 0, 0.2)]:
        state = random_state(2, rng)
        if op.is_two_qubit:
            matrix = op.matrix()
            if op.qubits == (1, 0):
                # reorder the index b0 + 2 b1 for swapped qubits
                perm = [0, 2, 1, 3]
                matrix = matrix[np.ix_(perm, perm)]
        elif op.qubits[0] == 0:
            matrix = np.kron(np.eye(2), op.matrix())
        else:
            matrix = np.kron(op.matrix(), np.eye(2))
        expected = matrix @ state.amplitudes
        op.apply(state)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)


def test_execute():
    state = zero_state(2)
    execute(Circuit(2), state)
    assert state.amplitudes[0] == 1.0

    state = execute(Circuit(1, [hadamard(0)]), zero_state(1))
    np.testing.assert_allclose(state.amplitudes, [math.sqrt(0.5)] * 2)

    state = execute(Circuit(1, [], global_phase=math.pi / 2), zero_state(1))
    assert state.amplitudes[0] == pytest.approx(1j)

    with pytest.raises(ShapeError):
        execute(Circuit(3, [hadamard(0)]), zero_state(2))


def test_stats():
    for n in range(1, 9):
        assert stats(build_qft(n)).two_qubit_count == n * (n - 1) // 2
        assert stats(build_qft(n)).one_qubit_count == n

    circuit = Circuit(6, [cphase(0, 1, math.pi)])
    assert stats(circuit).lnn_routed_two_qubit_count == 1
    circuit = Circuit(6, [cphase(0, 4, math.pi)])
    assert stats(circuit).lnn_routed_two_qubit_count == 19

    assert stats(Circuit(3)).logical_depth == 0
    assert stats(Circuit(3, [hadamard(0), hadamard(1), hadamard(2)])) \
        .logical_depth == 1
    assert stats(Circuit(3, [hadamard(0), cphase(0, 1, 0.1), hadamard(2)])) \
        .logical_depth == 2


def test_routed_cost():
    costs = [routed_cost(cphase(0, d, 0.3)) for d in range(1, 12)]
    assert costs == [1 + 6 * (d - 1) for d in range(1, 12)]
    assert all(a < b for a, b in zip(costs, costs[1:]))
    for d in range(1, 12):
        assert routed_cost(zz(d, 0, 0.3)) == costs[d - 1]
        assert routed_cost(swap(11 - d, 11)) == costs[d - 1]

    circuit = Circuit(12, [cphase(0, d, 0.3) for d in range(1, 12)])
    assert stats(circuit).two_qubit_count == 11
    assert stats(circuit).lnn_routed_two_qubit_count == sum(costs)


def test_long_circuit_norm():
    circuit = random_circuit(12, 10000, 77)
    state = execute(circuit, random_state(12, np.random.default_rng(77)))
    assert state.norm_deviation() < 1e-10


def test_layers():
    circuit = random_circuit(5, 60, 3)
    result = layers(circuit)
    assert sum(len(layer) for layer in result) == len(circuit)
    assert len(result) <= len(circuit)
    for layer in result:
        used = [q for op in layer for q in op.qubits]
        assert len(used) == len(set(used))


def test_concatenate():
    rng = np.random.default_rng(1)
    a = random_circuit(4, 30, 1)
    b = random_circuit(4, 30, 2)
    state = random_state(4, rng)

    expected = execute(b, execute(a, state.copy()))
    actual = execute(a + b, state.copy())
    np.testing.assert_allclose(actual.amplitudes, expected.amplitudes,
                               atol=1e-12)

    empty = Circuit(4)
    assert len(concatenate(empty, a)) == len(a)
    assert stats(a + b).two_qubit_count == \
        stats(a).two_qubit_count + stats(b).two_qubit_count

    with pytest.raises(ShapeError):
        concatenate(a, Circuit(3))
    with pytest.raises(ShapeError):
        concatenate(build_qft(4), build_qft(4))


def test_inverse():
    rng = np.random.default_rng(2)
    for seed in range(5):
        circuit = random_circuit(4, 40, seed)
        state = random_state(4, rng)
        result = execute(circuit + circuit.inverse(), state.copy())
        np.testing.assert_allclose(result.amplitudes, state.amplitudes,
                                   atol=1e-12)

    qft = build_qft(3)
    assert qft.inverse().input_order == qft.output_order
    assert qft.inverse().output_order == qft.input_order


def test_remap():
    rng = np.random.default_rng(3)
    small = random_circuit(2, 20, 4)
    big = small.remap([2, 0], 3)
    assert big.num_qubits == 3

    state = random_state(2, rng)
    expected = execute(small, state.copy())
    # embed as logical qubit 0 on wire 2 and 1 on wire 0, wire 1 idle
    full = Statevector(np.zeros(8))
    for m in range(4):
        b0, b1 = m & 1, m >> 1
        full.amplitudes[(b0 << 2) | b1] = state.amplitudes[m]
    execute(big, full)
    for m in range(4):
        b0, b1 = m & 1, m >> 1
        assert full.amplitudes[(b0 << 2) | b1] == \
            pytest.approx(expected.amplitudes[m])


def test_text_format():
    rng = np.random.default_rng(4)
    circuit = random_circuit(5, 50, 5)
    text = dumps(circuit)
    assert text.startswith("# qubits 5\n")

    other = loads(text)
    assert other.num_qubits == 5
    assert other.label == "random"
    assert other.ops == circuit.ops
    assert other.global_phase == circuit.global_phase

    state = random_state(5, rng)
    np.testing.assert_array_equal(execute(other, state.copy()).amplitudes,
                                  execute(circuit, state.copy()).amplitudes)

    qft = loads(dumps(build_qft(4)))
    assert qft.output_order == (3, 2, 1, 0)

    bare = loads("H 0\nCP 0 2 0.5\n")
    assert bare.num_qubits == 3
    assert len(bare) == 2


if __name__ == '__main__':
    test_gate_matrices()
    test_concatenate()
    test_text_format()
