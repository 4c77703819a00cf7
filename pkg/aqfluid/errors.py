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


class AqfluidError(Exception):
    pass


class ResourceLimitError(AqfluidError, ValueError):
    pass


class ShapeError(AqfluidError, ValueError):
    pass


class QubitIndexError(AqfluidError, IndexError):
    pass


class DegenerateStateError(AqfluidError, ValueError):
    pass


class NumericError(AqfluidError, ArithmeticError):
    pass


class UndefinedCorrelationError(AqfluidError, ValueError):
    pass


class AmbiguityError(AqfluidError, ValueError):
    def __init__(self, message: str, crossings=()):
        super().__init__(message)
        self.crossings = list(crossings)


class ConfigError(AqfluidError, ValueError):
    """
    Invalid run configuration. The name of the offending field is kept so
    that the command line can report it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class PinDriftError(AqfluidError, ValueError):
    pass
