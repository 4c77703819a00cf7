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
Removed gates and the noiseless error of the truncated step as the momentum
threshold grows at t = pi/8, with the AQFT kept exact.
"""

import math

from aqfluid.tradeoff import TruncationSetup, curve_point


def sweep(num_qubits: int, steps: int = 8):
    print("epsilon_over_pi,removed_raw,removed_routed,tight_bound,empirical")
    for k in range(steps + 1):
        epsilon = math.pi * k / (2 * steps)
        setup = TruncationSetup(threshold_b=None, time_exponent_p=3,
                                epsilon_th=epsilon)
        point = curve_point(num_qubits, setup, empirical=True)
        print(f"{epsilon / math.pi:g},{point.removed_gates_raw},"
              f"{point.removed_gates_routed},"
              f"{point.momentum_bound_tight:.6g},{point.empirical_error:.6g}")


if __name__ == '__main__':
    sweep(10)
