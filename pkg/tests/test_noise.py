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

from aqfluid.circuit import Circuit, execute, stats
from aqfluid.errors import ShapeError
from aqfluid.fluid import (GridSpec, classical_evolve, evolve_with_circuit,
                           initial_wavefunction, observe, pearson_r)
from aqfluid.fourier import AqftConfig
from aqfluid.momentum import EvolutionTime, TruncationPolicy, build_full_step
from aqfluid.noise import (NoiseModel, averaged_observables,
                           cumulative_hardware_error, noisy_execute,
                           run_trajectory)
from aqfluid.statevector import random_state, zero_state


def small_step() -> Circuit:
    return build_full_step(2, 2, EvolutionTime.from_exponent(1),
                           AqftConfig(1), TruncationPolicy(math.pi / 8, 1, True))


def test_unit_fidelity():
    rng = np.random.default_rng(0)
    circuit = small_step()
    state = random_state(4, rng)
    model = NoiseModel(1.0, 1.0, 11)
    for trajectory in noisy_execute(circuit, state, model, 5):
        assert trajectory.events == 0
        np.testing.assert_array_equal(trajectory.state.amplitudes,
                                      execute(circuit, state.copy()).amplitudes)
    # the input is not touched
    assert state.norm_deviation() < 1e-12


def test_empty_circuit():
    state = zero_state(3)
    result = run_trajectory(Circuit(3), state, NoiseModel(0.5, 0.5), 0)
    np.testing.assert_array_equal(result.state.amplitudes, state.amplitudes)
    assert result.events == 0


def test_event_statistics():
    circuit = small_step()
    fidelity = 0.9
    trajectories = 300
    model = NoiseModel(fidelity, fidelity, 5)
    events = sum(t.events for t in
                 noisy_execute(circuit, zero_state(4), model, trajectories))

    trials = trajectories * len(circuit)
    mean = trials * (1.0 - fidelity)
    sigma = math.sqrt(trials * fidelity * (1.0 - fidelity))
    assert abs(events - mean) <= 5.0 * sigma


def test_noise_preserves_norm():
    circuit = small_step()
    model = NoiseModel(0.7, 0.7, 3)
    for trajectory in noisy_execute(circuit, zero_state(4), model, 20):
        assert trajectory.state.norm_deviation() < 1e-12


def test_deterministic():
    circuit = small_step()
    model = NoiseModel(0.8, 0.8, 42)
    state = zero_state(4)
    serial = noisy_execute(circuit, state, model, 16, workers=1)
    parallel = noisy_execute(circuit, state, model, 16, workers=4)
    again = noisy_execute(circuit, state, model, 16, workers=1)
    for a, b, c in zip(serial, parallel, again):
        assert a.events == b.events == c.events
        np.testing.assert_array_equal(a.state.amplitudes, b.state.amplitudes)
        np.testing.assert_array_equal(a.state.amplitudes, c.state.amplitudes)

    other = noisy_execute(circuit, state, NoiseModel(0.8, 0.8, 43), 16)
    assert [t.events for t in other] != [t.events for t in serial] or \
        any(not np.array_equal(a.state.amplitudes, b.state.amplitudes)
            for a, b in zip(other, serial))


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        noisy_execute(small_step(), zero_state(3), NoiseModel(), 1)


def test_noiseless_average():
    grid = GridSpec(3, 2)
    field = initial_wavefunction(grid)
    circuit = build_full_step(3, 2, EvolutionTime.from_exponent(2),
                              AqftConfig(2), TruncationPolicy(math.pi / 8, 2, True))
    average = averaged_observables(circuit, field, NoiseModel(1.0, 1.0), 3,
                                   workers=2)
    exact = observe(evolve_with_circuit(field, circuit))
    np.testing.assert_allclose(average.rho, exact.rho, atol=1e-12)
    np.testing.assert_allclose(average.jx, exact.jx, atol=1e-12)
    np.testing.assert_allclose(average.jy, exact.jy, atol=1e-12)


def test_noisy_flow_correlation():
    grid = GridSpec(5, 5)
    field = initial_wavefunction(grid)
    time = EvolutionTime.from_exponent(1)
    circuit = build_full_step(5, 5, time, AqftConfig(2),
                              TruncationPolicy(math.pi / 8, 1, True))
    noisy = averaged_observables(circuit, field, NoiseModel(rng_seed=2026),
                                 200, workers=4)
    ideal = observe(classical_evolve(field, time.value))
    for name in ("rho", "jx", "jy"):
        assert pearson_r(getattr(noisy, name), getattr(ideal, name)) >= 0.90


def test_cumulative_error():
    assert cumulative_hardware_error(0, 0.9967) == 0.0
    assert cumulative_hardware_error(100, 1.0) == 0.0
    assert cumulative_hardware_error(100, 0.9967) == pytest.approx(0.2814, abs=1e-4)
    assert cumulative_hardware_error(1, 0.99) == pytest.approx(0.01)

    values = [cumulative_hardware_error(n, 0.9967) for n in range(0, 2000, 50)]
    assert all(a < b for a, b in zip(values, values[1:]))
    values = [cumulative_hardware_error(500, f) for f in (0.9, 0.99, 0.999)]
    assert all(a > b for a, b in zip(values, values[1:]))

    with pytest.raises(ValueError):
        cumulative_hardware_error(-1, 0.99)
    with pytest.raises(ValueError):
        NoiseModel(1.2, 0.99)
    with pytest.raises(ValueError):
        NoiseModel(0.99, 0.0)


def test_hardware_saturation():
    for n in range(20, 31):
        nx, ny = (n + 1) // 2, n // 2
        circuit = build_full_step(nx, ny, EvolutionTime.from_exponent(1),
                                  AqftConfig.exact(), TruncationPolicy.noop(),
                                  max_qubits=n)
        routed = stats(circuit).lnn_routed_two_qubit_count
        assert cumulative_hardware_error(routed, 0.9967) >= 0.99

    raw = stats(build_full_step(10, 10, EvolutionTime.from_exponent(1),
                                AqftConfig.exact(), TruncationPolicy.noop()))
    assert raw.two_qubit_count == 270
    assert cumulative_hardware_error(raw.two_qubit_count, 0.9967) < 0.99


if __name__ == '__main__':
    test_event_statistics()
    test_deterministic()
    test_hardware_saturation()
