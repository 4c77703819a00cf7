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
Pearson correlation of the noisy truncated flow against the classical
solution over a small grid of AQFT and momentum thresholds.
"""

import math

import click

from aqfluid.fluid import (GridSpec, classical_evolve, initial_wavefunction,
                           observe, pearson_r)
from aqfluid.errors import UndefinedCorrelationError
from aqfluid.fourier import AqftConfig
from aqfluid.momentum import EvolutionTime, TruncationPolicy, build_full_step
from aqfluid.noise import NoiseModel, averaged_observables


def correlation(a, b):
    try:
        return f"{pearson_r(a, b):.6f}"
    except UndefinedCorrelationError:
        return "undefined"

@click.command()
@click.option("--nx", default=5, help="Qubits along x.")
@click.option("--ny", default=5, help="Qubits along y.")
@click.option("--trajectories", default=200, help="Noise trajectories.")
@click.option("--workers", default=4, help="Worker threads.")
def correlation_grid(nx, ny, trajectories, workers):
    grid = GridSpec(nx, ny)
    field = initial_wavefunction(grid)
    time = EvolutionTime.from_exponent(1)
    ideal = observe(classical_evolve(field, time.value))
    model = NoiseModel(rng_seed=2026)

    print("b,epsilon_over_pi,two_qubit_gates,rho,jx,jy")
    for b in (2, 3):
        for epsilon in (math.pi / 16, math.pi / 8):
            circuit = build_full_step(nx, ny, time, AqftConfig(b),
                                      TruncationPolicy(epsilon, 1, True))
            noisy = averaged_observables(circuit, field, model, trajectories,
                                         workers)
            row = [str(b), f"{epsilon / math.pi:g}",
                   str(len(circuit.two_qubit_ops))]
            for name in ("rho", "jx", "jy"):
                row.append(correlation(getattr(noisy, name), getattr(ideal, name)))
            print(",".join(row))

if __name__ == '__main__':
    correlation_grid()
