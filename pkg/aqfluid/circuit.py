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

import enum
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import QubitIndexError, ShapeError
from .statevector import Statevector


class GateKind(enum.Enum):
    HADAMARD = "H"
    RZ = "RZ"
    CPHASE = "CP"
    ZZ = "ZZ"
    SWAP = "SWAP"

    @property
    def arity(self) -> int:
        return 1 if self in (GateKind.HADAMARD, GateKind.RZ) else 2

    @property
    def has_angle(self) -> bool:
        return self in (GateKind.RZ, GateKind.CPHASE, GateKind.ZZ)


@dataclass(frozen=True)
class GateOp:
    kind: GateKind
    qubits: Tuple[int, ...]
    angle: Optional[float] = None

    def __post_init__(self):
        if len(self.qubits) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} acts on {self.kind.arity} qubits, "
                f"got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise QubitIndexError(f"negative qubit in {self.qubits}")
        if self.kind.arity == 2 and self.qubits[0] == self.qubits[1]:
            raise QubitIndexError(
                f"{self.kind.value} on repeated qubit {self.qubits[0]}")
        if self.kind.has_angle != (self.angle is not None):
            raise ValueError(f"bad angle {self.angle} for {self.kind.value}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.arity == 2

    @property
    def span(self) -> int:
        """
        The index distance between the two qubits, zero for one-qubit gates.
        """
        return abs(self.qubits[0] - self.qubits[-1])

    def inverse(self) -> 'GateOp':
        if self.angle is None:
            return self
        return GateOp(self.kind, self.qubits, -self.angle)

    def remap(self, wires: Sequence[int]) -> 'GateOp':
        return GateOp(self.kind, tuple(wires[q] for q in self.qubits),
                      self.angle)

    def apply(self, state: Statevector) -> Statevector:
        if self.kind == GateKind.HADAMARD:
            return state.apply_hadamard(self.qubits[0])
        elif self.kind == GateKind.RZ:
            return state.apply_rz(self.qubits[0], self.angle)
        elif self.kind == GateKind.CPHASE:
            return state.apply_controlled_phase(
                self.qubits[0], self.qubits[1], self.angle)
        elif self.kind == GateKind.ZZ:
            return state.apply_zz_entangler(
                self.qubits[0], self.qubits[1], self.angle)
        else:
            return state.apply_swap(self.qubits[0], self.qubits[1])

    def matrix(self) -> np.ndarray:
        """
        The gate matrix, where the row and column index of a two-qubit gate
        is b0 + 2 * b1 with b0 the bit of qubits[0].
        """
        if self.kind == GateKind.HADAMARD:
            return np.array([[1, 1], [1, -1]], dtype=np.complex128) \
                / math.sqrt(2.0)
        elif self.kind == GateKind.RZ:
            return np.diag([np.exp(-0.5j * self.angle),
                            np.exp(0.5j * self.angle)])
        elif self.kind == GateKind.CPHASE:
            return np.diag([1, 1, 1, np.exp(1j * self.angle)])
        elif self.kind == GateKind.ZZ:
            same = np.exp(-1j * self.angle)
            diff = np.exp(1j * self.angle)
            return np.diag([same, diff, diff, same])
        else:
            return np.array([[1, 0, 0, 0], [0, 0, 1, 0],
                             [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)

    def encode(self) -> str:
        parts = [self.kind.value] + [str(q) for q in self.qubits]
        if self.angle is not None:
            parts.append(format(self.angle, ".17g"))
        return " ".join(parts)

    @staticmethod
    def decode(line: str) -> 'GateOp':
        parts = line.split()
        kind = GateKind(parts[0])
        qubits = tuple(int(p) for p in parts[1:1 + kind.arity])
        rest = parts[1 + kind.arity:]
        angle = float(rest[0]) if rest else None
        return GateOp(kind, qubits, angle)


def hadamard(target: int) -> GateOp:
    return GateOp(GateKind.HADAMARD, (target,))


def rz(target: int, theta: float) -> GateOp:
    return GateOp(GateKind.RZ, (target,), theta)


def cphase(control: int, target: int, theta: float) -> GateOp:
    return GateOp(GateKind.CPHASE, (control, target), theta)


def zz(qubit0: int, qubit1: int, phi: float) -> GateOp:
    return GateOp(GateKind.ZZ, (qubit0, qubit1), phi)


def swap(qubit0: int, qubit1: int) -> GateOp:
    return GateOp(GateKind.SWAP, (qubit0, qubit1))


class Circuit:
    """
    An immutable list of gates on a fixed number of qubits. The optional
    input and output orders record a classical relabeling of the wires:
    logical qubit j is carried by wire order[j] before (resp. after) the
    circuit. The global phase is applied once after the gates.
    """

    def __init__(self, num_qubits: int, ops: Iterable[GateOp] = (),
                 label: str = "", global_phase: float = 0.0,
                 input_order: Optional[Sequence[int]] = None,
                 output_order: Optional[Sequence[int]] = None):
        assert num_qubits >= 1
        ops = tuple(ops)
        for op in ops:
            if max(op.qubits) >= num_qubits:
                raise QubitIndexError(
                    f"{op.encode()} does not fit on {num_qubits} qubits")

        identity = tuple(range(num_qubits))
        input_order = identity if input_order is None else tuple(input_order)
        output_order = identity if output_order is None \
            else tuple(output_order)
        assert sorted(input_order) == list(identity)
        assert sorted(output_order) == list(identity)

        self.num_qubits = num_qubits
        self.ops = ops
        self.label = label
        self.global_phase = global_phase
        self.input_order = input_order
        self.output_order = output_order

    def __len__(self) -> int:
        return len(self.ops)

    def __repr__(self) -> str:
        return f"Circuit({self.num_qubits}, {len(self.ops)} ops, {self.label!r})"

    def __add__(self, other: 'Circuit') -> 'Circuit':
        return concatenate(self, other)

    @property
    def two_qubit_ops(self) -> List[GateOp]:
        return [op for op in self.ops if op.is_two_qubit]

    def inverse(self) -> 'Circuit':
        return Circuit(self.num_qubits,
                       [op.inverse() for op in reversed(self.ops)],
                       self.label + "^-1" if self.label else "",
                       -self.global_phase,
                       self.output_order, self.input_order)

    def remap(self, wires: Sequence[int], num_qubits: int) -> 'Circuit':
        """
        Embeds this circuit into a register of num_qubits qubits, moving
        qubit q to wire wires[q].
        """
        assert len(wires) == self.num_qubits
        assert len(set(wires)) == len(wires)

        def embed(order: Tuple[int, ...]) -> List[int]:
            result = list(range(num_qubits))
            for logical, wire in enumerate(order):
                result[wires[logical]] = wires[wire]
            return result

        return Circuit(num_qubits, [op.remap(wires) for op in self.ops],
                       self.label, self.global_phase,
                       embed(self.input_order), embed(self.output_order))


def execute(circuit: Circuit, state: Statevector) -> Statevector:
    if circuit.num_qubits != state.num_qubits:
        raise ShapeError(f"circuit has {circuit.num_qubits} qubits, "
                         f"state has {state.num_qubits}")
    for op in circuit.ops:
        op.apply(state)
    return state.apply_global_phase(circuit.global_phase)


def concatenate(first: Circuit, second: Circuit) -> Circuit:
    if first.num_qubits != second.num_qubits:
        raise ShapeError(f"cannot concatenate circuits on {first.num_qubits} "
                         f"and {second.num_qubits} qubits")
    if first.output_order != second.input_order:
        raise ShapeError(f"qubit order {first.output_order} does not match "
                         f"{second.input_order}")

    label = " + ".join(c.label for c in (first, second) if c.label)
    return Circuit(first.num_qubits, first.ops + second.ops, label,
                   first.global_phase + second.global_phase,
                   first.input_order, second.output_order)


@dataclass(frozen=True)
class GateStats:
    one_qubit_count: int
    two_qubit_count: int
    logical_depth: int
    lnn_routed_two_qubit_count: int

    def as_dict(self) -> Dict[str, int]:
        return {
            "one_qubit_count": self.one_qubit_count,
            "two_qubit_count": self.two_qubit_count,
            "logical_depth": self.logical_depth,
            "lnn_routed_two_qubit_count": self.lnn_routed_two_qubit_count,
        }


def routed_cost(op: GateOp) -> int:
    """
    Two-qubit gates needed on a linear nearest-neighbor chain: the gate
    itself plus 2 (d - 1) swaps of 3 gates each to bring the qubits together
    and back again.
    """
    assert op.is_two_qubit
    return 1 + 6 * (op.span - 1)


def layers(circuit: Circuit) -> List[List[GateOp]]:
    """
    Greedy ASAP layering: every gate enters the earliest layer in which all
    of its qubits are free.
    """
    result: List[List[GateOp]] = []
    free = [0 for _ in range(circuit.num_qubits)]
    for op in circuit.ops:
        layer = max(free[q] for q in op.qubits)
        if layer == len(result):
            result.append([])
        result[layer].append(op)
        for q in op.qubits:
            free[q] = layer + 1
    return result


def stats(circuit: Circuit) -> GateStats:
    two = circuit.two_qubit_ops
    return GateStats(
        one_qubit_count=len(circuit.ops) - len(two),
        two_qubit_count=len(two),
        logical_depth=len(layers(circuit)),
        lnn_routed_two_qubit_count=sum(routed_cost(op) for op in two),
    )


def dumps(circuit: Circuit) -> str:
    lines = [
        f"# qubits {circuit.num_qubits}",
        f"# label {circuit.label}",
        f"# global_phase {format(circuit.global_phase, '.17g')}",
        "# input_order " + " ".join(str(q) for q in circuit.input_order),
        "# output_order " + " ".join(str(q) for q in circuit.output_order),
    ]
    lines.extend(op.encode() for op in circuit.ops)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Circuit:
    header: Dict[str, str] = {}
    ops = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" ")
            header[key] = value.strip()
        else:
            ops.append(GateOp.decode(line))

    if "qubits" in header:
        num_qubits = int(header["qubits"])
    else:
        num_qubits = 1 + max((max(op.qubits) for op in ops), default=0)

    def order(key: str) -> Optional[List[int]]:
        value = header.get(key)
        return [int(v) for v in value.split()] if value else None

    return Circuit(num_qubits, ops, header.get("label", ""),
                   float(header.get("global_phase", "0")),
                   order("input_order"), order("output_order"))
