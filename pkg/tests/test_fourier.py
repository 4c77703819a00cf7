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

import numpy as np
import pytest

from aqfluid.circuit import GateKind, execute, stats
from aqfluid.fourier import (AqftConfig, aqft_error_bound,
                             aqft_two_qubit_count, build_aqft, build_qft,
                             phase_angle)
from aqfluid.statevector import Statevector, fidelity, random_state, zero_state
from aqfluid.tradeoff import fit_polynomial


def basis(num_qubits: int, index: int) -> Statevector:
    amplitudes = np.zeros(1 << num_qubits, dtype=np.complex128)
    amplitudes[index] = 1.0
    return Statevector(amplitudes)


def test_single_qubit():
    circuit = build_qft(1)
    assert [op.kind for op in circuit.ops] == [GateKind.HADAMARD]
    state = execute(circuit, zero_state(1))
    np.testing.assert_allclose(state.amplitudes, [math.sqrt(0.5)] * 2)


def test_uniform_output():
    for n in range(1, 7):
        state = execute(build_qft(n), zero_state(n))
        np.testing.assert_allclose(state.amplitudes,
                                   np.full(1 << n, 2.0 ** (-0.5 * n)),
                                   atol=1e-12)


def test_dft_matrix():
    for n in range(1, 7):
        size = 1 << n
        circuit = build_qft(n)
        for m in range(size):
            state = execute(circuit, basis(n, m))
            state.permute_qubits(circuit.output_order)
            expected = np.exp(2j * math.pi * m * np.arange(size) / size) \
                / math.sqrt(size)
            np.testing.assert_allclose(state.amplitudes, expected, atol=1e-10)


def test_inverse():
    rng = np.random.default_rng(0)
    for n in range(1, 8):
        for cfg in (AqftConfig.exact(), AqftConfig(1), AqftConfig(2, False)):
            state = random_state(n, rng)
            forward = build_aqft(n, False, cfg)
            backward = build_aqft(n, True, cfg)
            result = execute(forward + backward, state.copy())
            np.testing.assert_allclose(result.amplitudes, state.amplitudes,
                                       atol=1e-12)


def test_full_threshold():
    rng = np.random.default_rng(1)
    for n in range(1, 9):
        exact = build_qft(n)
        full = build_aqft(n, False, AqftConfig(n - 1))
        assert full.ops == exact.ops
        assert full.global_phase == 0.0
        for _ in range(100 // 8 + 1):
            state = random_state(n, rng)
            assert fidelity(execute(exact, state.copy()),
                            execute(full, state.copy())) > 1.0 - 1e-12


def test_removed_gate():
    circuit = build_aqft(4, False, AqftConfig(2))
    assert stats(circuit).two_qubit_count == 5
    assert stats(build_qft(4)).two_qubit_count == 6

    compensation = [op for op in circuit.ops if op.kind == GateKind.RZ]
    assert len(compensation) == 1
    assert compensation[0].qubits == (3,)
    # half of the dropped distance-3 rotation pi / 8
    assert compensation[0].angle == pytest.approx(math.pi / 16)

    plain = build_aqft(4, False, AqftConfig(2, compensate=False))
    assert not any(op.kind == GateKind.RZ for op in plain.ops)


def test_compensation_is_a_phase_gate():
    # Rz(a) with global phase a / 2 equals diag(1, exp(i a)) on the target
    # with b = 0 target 2 drops pi/2 + pi/4 and target 1 drops pi/2
    shift = {2: 0.5 * (0.75 * math.pi), 1: 0.5 * (0.5 * math.pi)}
    compensated = build_aqft(3, False, AqftConfig(0))
    plain = build_aqft(3, False, AqftConfig(0, False))
    wires = np.arange(8)
    expected_phase = sum(angle * ((wires >> q) & 1) for q, angle in shift.items())
    for m in range(8):
        state = execute(compensated, basis(3, m))
        other = execute(plain, basis(3, m))
        np.testing.assert_allclose(state.amplitudes,
                                   other.amplitudes * np.exp(1j * expected_phase),
                                   atol=1e-12)


def test_placement():
    rng = np.random.default_rng(2)
    for n in range(2, 7):
        for b in range(0, n - 1):
            last = build_aqft(n, False, AqftConfig(b))
            early = build_aqft(n, False, AqftConfig(b, placement="after_hadamard"))
            assert len(last.ops) == len(early.ops)
            state = random_state(n, rng)
            np.testing.assert_allclose(execute(last, state.copy()).amplitudes,
                                       execute(early, state.copy()).amplitudes,
                                       atol=1e-12)


def test_monotone_on_basis_states():
    for n in range(2, 7):
        exact = build_qft(n)
        for m in range(1 << n):
            target = execute(exact, basis(n, m))
            last = None
            for b in range(0, n):
                state = execute(build_aqft(n, False, AqftConfig(b, False)),
                                basis(n, m))
                deficit = 1.0 - fidelity(target, state)
                if last is not None:
                    assert deficit <= last + 1e-12
                last = deficit
            assert last < 1e-12


def test_compensation_on_uniform_input():
    for n in range(2, 9):
        size = 1 << n
        start = Statevector(np.full(size, size ** -0.5))
        target = execute(build_qft(n), start.copy())
        for b in (1, 2, 3):
            with_rz = execute(build_aqft(n, False, AqftConfig(b)), start.copy())
            without = execute(build_aqft(n, False, AqftConfig(b, False)),
                              start.copy())
            assert fidelity(target, with_rz) >= fidelity(target, without) - 1e-12


def test_gate_count_formula():
    for n in range(1, 21):
        for b in range(0, 9):
            count = stats(build_aqft(n, False, AqftConfig(b))).two_qubit_count
            assert count == aqft_two_qubit_count(n, b)
    assert aqft_two_qubit_count(10, None) == 45


def test_error_bound():
    assert aqft_error_bound(5, 4, False) == 0.0
    assert aqft_error_bound(5, 9, True) == 0.0
    assert aqft_error_bound(5, None, False) == 0.0
    assert aqft_error_bound(6, 2, False) == pytest.approx(1.0625 * math.pi)
    assert aqft_error_bound(6, 2, True) == pytest.approx(0.53125 * math.pi)

    ns = np.arange(8, 65)
    bounds = np.array([aqft_error_bound(int(n), 2, True) for n in ns])
    assert fit_polynomial(ns, bounds, 1).r_squared >= 0.98
    # slope tends to 2 pi / 2^b * w
    slope = bounds[-1] - bounds[-2]
    assert slope == pytest.approx(2.0 * math.pi / 4 * 0.5, rel=1e-6)


def test_config_validation():
    assert phase_angle(1) == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        AqftConfig(-1)
    with pytest.raises(ValueError):
        AqftConfig(2, assumed_control_probability=1.5)
    with pytest.raises(ValueError):
        AqftConfig(2, placement="middle")
    assert AqftConfig(2).retains(2)
    assert not AqftConfig(2).retains(3)
    assert AqftConfig.exact().retains(100)


if __name__ == '__main__':
    test_dft_matrix()
    test_monotone_on_basis_states()
    test_error_bound()
