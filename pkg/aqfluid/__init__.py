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
Hamiltonian simulation of a two dimensional potential flow on a statevector:
the free Schrodinger evolution of the Madelung wave function is carried out
by (approximate) quantum Fourier transforms around a layer of Rz and ZZ
gates, with truncation of small and trivial phases.
"""

__version__ = "0.1.0"

from .statevector import Statevector, zero_state, from_amplitudes, fidelity
from .circuit import Circuit, GateKind, GateOp, GateStats, execute, stats
from .fourier import AqftConfig, build_qft, build_aqft, aqft_error_bound
from .momentum import (EvolutionTime, PauliDecomposition, TruncationPolicy,
                       TruncationReport, decompose_k_squared, apply_truncation,
                       build_momentum_circuit, build_axis_evolution,
                       build_full_step)
from .fluid import (GridSpec, WaveField, FlowObservables, initial_wavefunction,
                    encode, decode, classical_evolve, pearson_r)
from .noise import NoiseModel, noisy_execute, cumulative_hardware_error
from .tradeoff import (TruncationSetup, TradeoffCurves, scaling_curves,
                       equilibrium_point, tune_thresholds)

__all__ = [
    "__version__",
    "Statevector",
    "zero_state",
    "from_amplitudes",
    "fidelity",
    "Circuit",
    "GateKind",
    "GateOp",
    "GateStats",
    "execute",
    "stats",
    "AqftConfig",
    "build_qft",
    "build_aqft",
    "aqft_error_bound",
    "EvolutionTime",
    "PauliDecomposition",
    "TruncationPolicy",
    "TruncationReport",
    "decompose_k_squared",
    "apply_truncation",
    "build_momentum_circuit",
    "build_axis_evolution",
    "build_full_step",
    "GridSpec",
    "WaveField",
    "FlowObservables",
    "initial_wavefunction",
    "encode",
    "decode",
    "classical_evolve",
    "pearson_r",
    "NoiseModel",
    "noisy_execute",
    "cumulative_hardware_error",
    "TruncationSetup",
    "TradeoffCurves",
    "scaling_curves",
    "equilibrium_point",
    "tune_thresholds",
]
