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
Free evolution along one axis. In the Fourier basis the kinetic operator
k^2 / 2 is diagonal and expands into identity, Z and ZZ terms, so the step
becomes a layer of Rz and ZZ gates sandwiched between two (approximate)
Fourier transforms. Small or trivial ZZ phases may be truncated.
"""

import functools
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from .circuit import Circuit, GateOp, concatenate, rz, zz
from .errors import NumericError, QubitIndexError, ResourceLimitError
from .fourier import AqftConfig, bit_reversed_order, build_aqft
from .statevector import MAX_QUBITS

logger = logging.getLogger(__name__)

# largest register expanded by projection, beyond that the closed form is used
PROJECTION_LIMIT = 20


def wavenumber(m: int, num_qubits: int) -> int:
    """
    Two's-complement (FFT order) wavenumber of the basis integer m.
    """
    size = 1 << num_qubits
    if not 0 <= m < size:
        raise QubitIndexError(f"basis index {m} out of range [0, {size})")
    return m if m < size // 2 else m - size


def wavenumbers(num_qubits: int) -> np.ndarray:
    size = 1 << num_qubits
    m = np.arange(size, dtype=np.int64)
    return np.where(m < size // 2, m, m - size)


@dataclass(frozen=True)
class EvolutionTime:
    """
    An evolution time t = pi * over_pi. Dyadic times t = pi 2^-p also carry
    the exponent p, which the analytic retention window needs.
    """

    over_pi: float
    exponent: Optional[int] = None

    @property
    def value(self) -> float:
        return math.pi * self.over_pi

    @property
    def label(self) -> str:
        if self.over_pi == 0.0:
            return "0"
        if self.exponent is not None:
            return "pi" if self.exponent == 0 else f"pi_{1 << self.exponent}"
        return format(self.value, ".6g").replace(".", "p")

    def __str__(self) -> str:
        return self.label.replace("_", "/")

    @staticmethod
    def from_exponent(exponent: int) -> 'EvolutionTime':
        assert exponent >= 0
        return EvolutionTime(2.0 ** -exponent, exponent)

    @staticmethod
    def from_value(time: float) -> 'EvolutionTime':
        if not math.isfinite(time):
            raise NumericError(f"non-finite evolution time {time}")
        return EvolutionTime(time / math.pi)

    @staticmethod
    def parse(text: str) -> 'EvolutionTime':
        text = text.strip().replace(" ", "")
        if text == "pi":
            return EvolutionTime.from_exponent(0)
        if text.startswith("pi/"):
            denominator = int(text[3:])
            exponent = denominator.bit_length() - 1
            if denominator < 1 or (1 << exponent) != denominator:
                raise ValueError(f"{text} is not pi over a power of two")
            return EvolutionTime.from_exponent(exponent)
        return EvolutionTime.from_value(float(text))


TimeLike = Union[float, EvolutionTime]


def as_time(time: TimeLike) -> EvolutionTime:
    if isinstance(time, EvolutionTime):
        return time
    return EvolutionTime.from_value(float(time))


def exact_momentum_phases(num_qubits: int,
                          time: TimeLike) -> Callable[[np.ndarray], np.ndarray]:
    """
    The phases -k(m)^2 t / 2 of the exact kinetic step, as a function of the
    basis index array.
    """
    t = as_time(time).value
    ks = wavenumbers(num_qubits).astype(np.float64)

    def phases(m: np.ndarray) -> np.ndarray:
        k = ks[m]
        return -0.5 * t * k * k

    return phases


@dataclass(frozen=True)
class PauliDecomposition:
    """
    Coefficients of k(m)^2 / 2 = c0 + sum c_i z_i + sum c_ij z_i z_j where
    z_i = +1 when bit i of m is 0 and -1 otherwise.
    """

    num_qubits: int
    c0: float
    c_single: np.ndarray
    c_pair: Dict[Tuple[int, int], float] = field(default_factory=dict)

    def evaluate(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=np.int64)
        z = [1.0 - 2.0 * ((m >> i) & 1) for i in range(self.num_qubits)]
        value = np.full(m.shape, self.c0, dtype=np.float64)
        for i, c in enumerate(self.c_single):
            value += c * z[i]
        for (i, j), c in self.c_pair.items():
            value += c * z[i] * z[j]
        return value

    def reconstruction_error(self) -> float:
        ks = wavenumbers(self.num_qubits).astype(np.float64)
        m = np.arange(1 << self.num_qubits)
        return float(np.max(np.abs(self.evaluate(m) - 0.5 * ks * ks)))


def twos_complement_weights(num_qubits: int) -> List[int]:
    weights = [1 << i for i in range(num_qubits)]
    weights[-1] = -weights[-1]
    return weights


def closed_form_k_squared(num_qubits: int) -> PauliDecomposition:
    """
    With k = sum w_i b_i and b_i = (1 - z_i) / 2 the weights sum to -1, so
    k = -(1 + sum w_i z_i) / 2 and squaring gives the coefficients directly.
    """
    w = twos_complement_weights(num_qubits)
    c0 = 0.125 + sum(x * x for x in w) / 8.0
    c_single = np.array([x / 4.0 for x in w], dtype=np.float64)
    c_pair = {(i, j): w[i] * w[j] / 4.0
              for i in range(num_qubits) for j in range(i + 1, num_qubits)}
    return PauliDecomposition(num_qubits, c0, c_single, c_pair)


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """
    Unnormalized fast Walsh-Hadamard transform: entry S is the sum of
    values[m] (-1)^popcount(m & S). Integer input stays exact.
    """
    result = np.array(values)
    size = result.shape[0]
    step = 1
    while step < size:
        view = result.reshape(-1, 2, step)
        low = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = low - view[:, 1, :]
        step *= 2
    return result


def project_k_squared(num_qubits: int) -> PauliDecomposition:
    # sums of k^2 stay below 2^63 up to the projection limit
    ks = wavenumbers(num_qubits)
    sums = walsh_hadamard(ks * ks)
    scale = float(2 << num_qubits)
    c_single = np.array([sums[1 << i] / scale for i in range(num_qubits)])
    c_pair = {(i, j): float(sums[(1 << i) | (1 << j)]) / scale
              for i in range(num_qubits) for j in range(i + 1, num_qubits)}
    return PauliDecomposition(num_qubits, float(sums[0]) / scale, c_single,
                              c_pair)


@functools.lru_cache(maxsize=None)
def decompose_k_squared(num_qubits: int) -> PauliDecomposition:
    assert num_qubits >= 1
    if num_qubits <= PROJECTION_LIMIT:
        return project_k_squared(num_qubits)
    return closed_form_k_squared(num_qubits)


def reduce_half_turns(half_turns: float) -> Tuple[float, int]:
    """
    Splits a phase given in units of pi into a remainder in (-1, 1] and the
    number of full turns removed. Dyadic inputs are reduced exactly.
    """
    if not math.isfinite(half_turns):
        raise NumericError(f"non-finite phase {half_turns} pi")
    turns = round(half_turns / 2.0)
    rest = half_turns - 2.0 * turns
    if rest <= -1.0:
        rest += 2.0
        turns -= 1
    elif rest > 1.0:
        rest -= 2.0
        turns += 1
    return rest, int(turns)


def reduce_phase(theta: float) -> float:
    """
    Maps theta into (-pi, pi] by removing multiples of 2 pi.
    """
    if not math.isfinite(theta):
        raise NumericError(f"non-finite phase {theta}")
    return math.pi * reduce_half_turns(theta / math.pi)[0]


@dataclass(frozen=True)
class TruncationPolicy:
    """
    A ZZ entangler is dropped when its reduced phase is an exact multiple of
    2 pi (periodic removal) or when its magnitude is below epsilon_th.
    """

    epsilon_th: float = 0.0
    time_exponent_p: Optional[int] = None
    periodic_removal: bool = False
    periodic_tolerance: float = 1e-12

    def __post_init__(self):
        if not 0.0 <= self.epsilon_th < math.pi:
            raise ValueError(f"epsilon_th must be in [0, pi), got {self.epsilon_th}")
        if self.periodic_tolerance < 0.0:
            raise ValueError("periodic_tolerance must be non-negative")
        if self.time_exponent_p is not None and self.time_exponent_p < 0:
            raise ValueError("time_exponent_p must be non-negative")

    @staticmethod
    def noop() -> 'TruncationPolicy':
        return TruncationPolicy()

    @property
    def is_noop(self) -> bool:
        return self.epsilon_th == 0.0 and not self.periodic_removal


RETAINED = "retained"
REMOVED_PERIODIC = "removed_periodic"
REMOVED_SUBTHRESHOLD = "removed_subthreshold"


@dataclass(frozen=True)
class PairPhase:
    i: int
    j: int
    theta: float
    theta_reduced: float
    turns: int
    kind: str

    def as_dict(self) -> Dict[str, Union[int, float, str]]:
        return {"i": self.i, "j": self.j, "theta": self.theta,
                "theta_reduced": self.theta_reduced, "class": self.kind}


@dataclass(frozen=True)
class TruncationReport:
    retained: List[PairPhase]
    removed_periodic: List[PairPhase]
    removed_subthreshold: List[PairPhase]

    @property
    def pairs(self) -> List[PairPhase]:
        return sorted(self.retained + self.removed_periodic
                      + self.removed_subthreshold, key=lambda a: (a.i, a.j))

    @property
    def removed_count(self) -> int:
        return len(self.removed_periodic) + len(self.removed_subthreshold)

    def tight_error_bound(self) -> float:
        """
        Sum of the dropped reduced phases; periodic removals cost nothing.
        """
        return sum(abs(a.theta_reduced) for a in self.removed_subthreshold)

    def as_json(self) -> List[Dict[str, Union[int, float, str]]]:
        return [a.as_dict() for a in self.pairs]

    def dumps(self) -> str:
        return json.dumps(self.as_json(), indent=2)


def resolve_time(policy: TruncationPolicy,
                 time: Optional[TimeLike]) -> EvolutionTime:
    if time is not None:
        return as_time(time)
    if policy.time_exponent_p is None:
        raise ValueError("no evolution time given and the policy has no exponent")
    return EvolutionTime.from_exponent(policy.time_exponent_p)


def apply_truncation(decomp: PauliDecomposition, policy: TruncationPolicy,
                     time: Optional[TimeLike] = None) -> TruncationReport:
    evolution = resolve_time(policy, time)
    retained: List[PairPhase] = []
    periodic: List[PairPhase] = []
    subthreshold: List[PairPhase] = []

    for (i, j), c in sorted(decomp.c_pair.items()):
        half_turns = 2.0 * c * evolution.over_pi
        rest, turns = reduce_half_turns(half_turns)
        theta_reduced = math.pi * rest
        if policy.periodic_removal and abs(theta_reduced) <= policy.periodic_tolerance:
            kind, target = REMOVED_PERIODIC, periodic
        elif abs(theta_reduced) < policy.epsilon_th:
            kind, target = REMOVED_SUBTHRESHOLD, subthreshold
        else:
            kind, target = RETAINED, retained
        target.append(PairPhase(i, j, math.pi * half_turns, theta_reduced,
                                turns, kind))

    logger.debug("n=%d t=%s: %d retained, %d periodic, %d subthreshold",
                 decomp.num_qubits, evolution, len(retained), len(periodic),
                 len(subthreshold))
    return TruncationReport(retained, periodic, subthreshold)


@dataclass(frozen=True)
class RetentionWindow:
    lo: float
    hi: float
    delta: float

    def contains(self, index_sum: int) -> bool:
        return self.lo <= index_sum < self.hi


def retention_window(exponent: int, epsilon_th: float) -> RetentionWindow:
    """
    Band of index sums i + j for which a pair of weight 2^(i+j) survives
    both the threshold and the periodic rule at t = pi 2^-p. A zero
    threshold leaves the band unbounded below.
    """
    if epsilon_th < 0.0:
        raise ValueError(f"negative threshold {epsilon_th}")
    hi = exponent + 3.0
    if epsilon_th == 0.0:
        return RetentionWindow(-math.inf, hi, math.inf)
    scale = math.log2(epsilon_th / math.pi)
    return RetentionWindow(scale + exponent + 2.0, hi, 1.0 - scale)


def window_retained_count(num_qubits: int, exponent: int,
                          epsilon_th: float) -> int:
    window = retention_window(exponent, epsilon_th)
    return sum(1 for i in range(num_qubits) for j in range(i + 1, num_qubits)
               if window.contains(i + j))


def build_momentum_circuit(num_qubits: int, time: TimeLike,
                           policy: Optional[TruncationPolicy] = None,
                           decomp: Optional[PauliDecomposition] = None) -> Circuit:
    """
    Rz gates for every single-Z term followed by ZZ entanglers for the
    retained pairs. Every angle is reduced into (-pi, pi]; each odd number
    of removed turns and the identity term go into the global phase, so
    without truncation the circuit equals the exact diagonal.
    """
    if policy is None:
        policy = TruncationPolicy.noop()
    if decomp is None:
        decomp = decompose_k_squared(num_qubits)
    assert decomp.num_qubits == num_qubits
    evolution = as_time(time)

    ops: List[GateOp] = []
    global_phase = -decomp.c0 * evolution.value
    odd_turns = 0
    for i, c in enumerate(decomp.c_single):
        rest, turns = reduce_half_turns(2.0 * float(c) * evolution.over_pi)
        ops.append(rz(i, math.pi * rest))
        odd_turns += turns & 1

    report = apply_truncation(decomp, policy, evolution)
    for pair in report.retained:
        ops.append(zz(pair.i, pair.j, 0.5 * pair.theta_reduced))
        odd_turns += pair.turns & 1
    for pair in report.removed_periodic:
        odd_turns += pair.turns & 1

    global_phase = math.remainder(global_phase + math.pi * (odd_turns & 1),
                                  2.0 * math.pi)
    return Circuit(num_qubits, ops, f"momentum({num_qubits},t={evolution})",
                   global_phase)


def build_axis_evolution(num_qubits: int, time: TimeLike,
                         cfg: Optional[AqftConfig] = None,
                         policy: Optional[TruncationPolicy] = None,
                         decomp: Optional[PauliDecomposition] = None) -> Circuit:
    """
    Inverse AQFT after the momentum layer after the forward AQFT. The forward
    transform leaves the momentum bits in reversed wire order, so the
    momentum layer acts on bit i through wire n - 1 - i.
    """
    reversed_order = bit_reversed_order(num_qubits)
    forward = build_aqft(num_qubits, False, cfg)
    kinetic = build_momentum_circuit(num_qubits, time, policy, decomp)
    kinetic = Circuit(num_qubits, [op.remap(reversed_order) for op in kinetic.ops],
                      kinetic.label, kinetic.global_phase,
                      reversed_order, reversed_order)
    backward = build_aqft(num_qubits, True, cfg)
    return concatenate(concatenate(forward, kinetic), backward)


def build_full_step(nx_qubits: int, ny_qubits: int, time: TimeLike,
                    cfg: Optional[AqftConfig] = None,
                    policy: Optional[TruncationPolicy] = None,
                    max_qubits: int = MAX_QUBITS,
                    decomp_x: Optional[PauliDecomposition] = None,
                    decomp_y: Optional[PauliDecomposition] = None) -> Circuit:
    """
    The x evolution on wires [0, nx) followed by the y evolution on wires
    [nx, nx + ny). The two act on disjoint registers and commute.
    """
    total = nx_qubits + ny_qubits
    if nx_qubits < 1 or ny_qubits < 1 or total > max_qubits:
        raise ResourceLimitError(
            f"grid of {nx_qubits}+{ny_qubits} qubits outside [2, {max_qubits}]")

    x_step = build_axis_evolution(nx_qubits, time, cfg, policy, decomp_x)
    y_step = build_axis_evolution(ny_qubits, time, cfg, policy, decomp_y)
    x_step = x_step.remap(list(range(nx_qubits)), total)
    y_step = y_step.remap(list(range(nx_qubits, total)), total)
    circuit = concatenate(x_step, y_step)
    return Circuit(total, circuit.ops,
                   f"step({nx_qubits}x{ny_qubits},t={as_time(time)})",
                   circuit.global_phase)
