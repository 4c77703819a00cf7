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
Wave functions on the periodic square [-pi, pi)^2 and the fluid fields they
describe: the density rho = |psi|^2 and the momentum J = Im(conj(psi) grad psi).
Grid values are stored as values[l, k] = psi(x_k, y_l), which flattens to the
basis index k + 2^nx l.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .circuit import Circuit, execute
from .errors import NumericError, ShapeError, UndefinedCorrelationError
from .statevector import Statevector, from_amplitudes

logger = logging.getLogger(__name__)

INITIAL_FORMS = ("paper_literal", "density_matched")

# imaginary part tolerated in the momentum before it counts as a defect
MOMENTUM_RESIDUE = 1e-8


@dataclass(frozen=True)
class GridSpec:
    nx_qubits: int
    ny_qubits: int

    def __post_init__(self):
        if self.nx_qubits < 1 or self.ny_qubits < 1:
            raise ShapeError(f"bad grid {self.nx_qubits}x{self.ny_qubits}")

    @property
    def num_qubits(self) -> int:
        return self.nx_qubits + self.ny_qubits

    @property
    def shape(self) -> Tuple[int, int]:
        return (1 << self.ny_qubits, 1 << self.nx_qubits)

    @property
    def dx(self) -> float:
        return 2.0 * math.pi / (1 << self.nx_qubits)

    @property
    def dy(self) -> float:
        return 2.0 * math.pi / (1 << self.ny_qubits)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def x(self) -> np.ndarray:
        return -math.pi + self.dx * np.arange(1 << self.nx_qubits)

    @property
    def y(self) -> np.ndarray:
        return -math.pi + self.dy * np.arange(1 << self.ny_qubits)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x, self.y)

    def wavenumbers(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Integer wavenumbers in FFT order along x and y.
        """
        nx, ny = self.shape[1], self.shape[0]
        return np.fft.fftfreq(nx) * nx, np.fft.fftfreq(ny) * ny


class WaveField:
    def __init__(self, grid: GridSpec, values: np.ndarray,
                 stored_norm: Optional[float] = None):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != grid.shape:
            raise ShapeError(f"field of shape {values.shape} on grid {grid.shape}")
        if not np.all(np.isfinite(values)):
            raise NumericError("field has non-finite entries")

        self.grid = grid
        self.values = values
        self.stored_norm = float(np.linalg.norm(values)) \
            if stored_norm is None else stored_norm

    def __repr__(self) -> str:
        return f"WaveField({self.grid}, norm={self.stored_norm})"


@dataclass(frozen=True)
class FlowObservables:
    rho: np.ndarray
    jx: np.ndarray
    jy: np.ndarray


def initial_wavefunction(grid: GridSpec,
                         form: str = "paper_literal") -> WaveField:
    """
    A Gaussian jet along x. The paper_literal form exp(-y^2 + i x) has density
    exp(-2 y^2); the density matched form exp(-y^2 / 2 + i x) has exp(-y^2).
    """
    xs, ys = grid.mesh()
    if form == "paper_literal":
        values = np.exp(-ys * ys + 1j * xs)
    elif form == "density_matched":
        values = np.exp(-0.5 * ys * ys + 1j * xs)
    else:
        raise ValueError(f"unknown initial form {form!r}")
    return WaveField(grid, values)


def encode(field: WaveField) -> Statevector:
    return from_amplitudes(field.values.reshape(-1))[0]


def decode(state: Statevector, grid: GridSpec,
           stored_norm: Optional[float] = None) -> WaveField:
    if state.size != grid.shape[0] * grid.shape[1]:
        raise ShapeError(f"state of size {state.size} on grid {grid.shape}")
    if stored_norm is None:
        stored_norm = state.norm
    values = state.amplitudes.reshape(grid.shape) * stored_norm
    return WaveField(grid, values, stored_norm)


def evolve_with_circuit(field: WaveField, circuit: Circuit) -> WaveField:
    state = execute(circuit, encode(field))
    return decode(state, field.grid, field.stored_norm)


def density(field: WaveField) -> np.ndarray:
    return np.abs(field.values) ** 2


def spectral_gradient(values: np.ndarray,
                      grid: GridSpec) -> Tuple[np.ndarray, np.ndarray]:
    kx, ky = grid.wavenumbers()
    # the Nyquist mode has no well defined derivative on the grid
    kx = np.where(np.abs(kx) == grid.shape[1] // 2, 0.0, kx)
    ky = np.where(np.abs(ky) == grid.shape[0] // 2, 0.0, ky)
    dx = np.fft.ifft(1j * kx[None, :] * np.fft.fft(values, axis=1), axis=1)
    dy = np.fft.ifft(1j * ky[:, None] * np.fft.fft(values, axis=0), axis=0)
    return dx, dy


def momentum(field: WaveField) -> Tuple[np.ndarray, np.ndarray]:
    psi = field.values
    gradient = spectral_gradient(psi, field.grid)

    result = []
    for d in gradient:
        current = 0.5j * (psi * np.conj(d) - np.conj(psi) * d)
        residue = float(np.max(np.abs(current.imag)))
        if residue > MOMENTUM_RESIDUE:
            raise NumericError(f"momentum has imaginary residue {residue}")
        result.append(current.real)
    return result[0], result[1]


def observe(field: WaveField) -> FlowObservables:
    jx, jy = momentum(field)
    return FlowObservables(density(field), jx, jy)


def total_mass(rho: np.ndarray, grid: GridSpec) -> float:
    return float(np.sum(rho)) * grid.cell_area


def classical_evolve(field: WaveField, time: float) -> WaveField:
    """
    Exact free evolution: every Fourier mode (kx, ky) is multiplied by
    exp(-i (kx^2 + ky^2) t / 2).
    """
    kx, ky = field.grid.wavenumbers()
    spectrum = np.fft.fft2(field.values)
    spectrum *= np.exp(-0.5j * time * (ky[:, None] ** 2 + kx[None, :] ** 2))
    return WaveField(field.grid, np.fft.ifft2(spectrum), field.stored_norm)


def pearson_r(a: np.ndarray, b: np.ndarray,
              atol: Optional[float] = None) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeError(f"cannot correlate shapes {a.shape} and {b.shape}")
    a = a.reshape(-1)
    b = b.reshape(-1)

    for name, v in (("first", a), ("second", b)):
        limit = 1e-12 * max(1.0, float(np.max(np.abs(v)))) \
            if atol is None else atol
        if float(np.ptp(v)) <= limit:
            raise UndefinedCorrelationError(f"{name} array is constant")

    r = float(np.corrcoef(a, b)[0, 1])
    return min(1.0, max(-1.0, r))


def write_fields_csv(path: str, grid: GridSpec, obs: FlowObservables):
    xs, ys = grid.mesh()
    table = np.column_stack([a.reshape(-1) for a in
                             (xs, ys, obs.rho, obs.jx, obs.jy)])
    np.savetxt(path, table, fmt="%.12g", delimiter=",",
               header="x,y,rho,jx,jy", comments="")
    logger.debug("wrote %s", path)
