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
Run configuration: a text file of "key = value" lines (no section header,
"#" starts a comment) overridden by command line flags. The defaults are the
10 qubit experiment at t = 0, pi/4 and pi/2.
"""

import configparser
import dataclasses
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from .errors import ConfigError
from .fluid import INITIAL_FORMS, GridSpec
from .fourier import AqftConfig
from .momentum import EvolutionTime, TruncationPolicy
from .noise import NoiseModel
from .statevector import MAX_QUBITS
from .tradeoff import (COUNT_MODELS, EMPIRICAL_LIMIT, NORMALIZATIONS,
                       TruncationSetup)


@dataclass(frozen=True)
class RunConfig:
    nx_qubits: int = 5
    ny_qubits: int = 5
    times: Tuple[EvolutionTime, ...] = (EvolutionTime(0.0),
                                        EvolutionTime.from_exponent(2),
                                        EvolutionTime.from_exponent(1))
    initial_form: str = "paper_literal"
    aqft_b: Optional[int] = 2
    epsilon_over_pi: float = 0.125
    time_exponent_p: Optional[int] = None
    compensate: bool = True
    periodic_removal: bool = True
    fidelity_1q: float = 0.9997
    fidelity_2q: float = 0.9967
    trajectories: int = 0
    workers: int = 1
    output_dir: str = "out"
    seed: int = 0
    normalization: str = "bounded"
    count_model: str = "routed"
    n_min: int = 4
    n_max: int = 64
    empirical_max: int = 12

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.nx_qubits, self.ny_qubits)

    @property
    def epsilon_th(self) -> float:
        return math.pi * self.epsilon_over_pi

    @property
    def aqft(self) -> AqftConfig:
        return AqftConfig(self.aqft_b, self.compensate)

    def policy(self, time: EvolutionTime) -> TruncationPolicy:
        exponent = time.exponent if self.time_exponent_p is None \
            else self.time_exponent_p
        return TruncationPolicy(self.epsilon_th, exponent,
                                self.periodic_removal)

    @property
    def noise(self) -> Optional[NoiseModel]:
        if self.trajectories == 0:
            return None
        return NoiseModel(self.fidelity_1q, self.fidelity_2q, self.seed)

    @property
    def setup(self) -> TruncationSetup:
        exponent = 1 if self.time_exponent_p is None else self.time_exponent_p
        return TruncationSetup(self.aqft_b, exponent, self.epsilon_th,
                               self.compensate, self.periodic_removal,
                               self.fidelity_2q, self.count_model)

    def as_dict(self) -> Dict[str, Any]:
        result = dataclasses.asdict(self)
        result["times"] = [str(t) for t in self.times]
        result["aqft_b"] = "exact" if self.aqft_b is None else self.aqft_b
        return result


def parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_times(text: str) -> Tuple[EvolutionTime, ...]:
    return tuple(EvolutionTime.parse(t) for t in text.split(",") if t.strip())


def parse_aqft_b(text: str) -> Optional[int]:
    return None if text.strip().lower() == "exact" else int(text)


def parse_optional_int(text: str) -> Optional[int]:
    return None if text.strip().lower() in ("", "none") else int(text)


PARSERS: Dict[str, Callable[[str], Any]] = {
    "nx_qubits": int,
    "ny_qubits": int,
    "times": parse_times,
    "initial_form": str.strip,
    "aqft_b": parse_aqft_b,
    "epsilon_over_pi": float,
    "time_exponent_p": parse_optional_int,
    "compensate": parse_bool,
    "periodic_removal": parse_bool,
    "fidelity_1q": float,
    "fidelity_2q": float,
    "trajectories": int,
    "workers": int,
    "output_dir": str.strip,
    "seed": int,
    "normalization": str.strip,
    "count_model": str.strip,
    "n_min": int,
    "n_max": int,
    "empirical_max": int,
}


def parse_value(key: str, value: Any) -> Any:
    if key not in PARSERS:
        raise ConfigError(key, "unknown key")
    if not isinstance(value, str):
        return value
    try:
        return PARSERS[key](value)
    except (ValueError, ArithmeticError) as error:
        raise ConfigError(key, str(error)) from error


def read_config_file(path: str) -> Dict[str, str]:
    with open(path) as file:
        text = file.read()
    parser = configparser.ConfigParser(comment_prefixes=("#",),
                                       inline_comment_prefixes=("#",),
                                       interpolation=None)
    try:
        parser.read_string("[run]\n" + text, source=path)
    except configparser.Error as error:
        raise ConfigError("config", str(error)) from error
    return dict(parser["run"])


def check(condition: bool, key: str, message: str):
    if not condition:
        raise ConfigError(key, message)


def validate(config: RunConfig) -> RunConfig:
    check(config.nx_qubits >= 1, "nx_qubits", "must be at least 1")
    check(config.ny_qubits >= 1, "ny_qubits", "must be at least 1")
    check(config.nx_qubits + config.ny_qubits <= MAX_QUBITS, "ny_qubits",
          f"grid exceeds {MAX_QUBITS} qubits")
    check(len(config.times) >= 1, "times", "no time points")
    check(all(t.over_pi >= 0.0 for t in config.times), "times",
          "times must be non-negative")
    labels = [t.label for t in config.times]
    check(len(set(labels)) == len(labels), "times",
          "duplicate time labels: " + ", ".join(labels))
    check(config.initial_form in INITIAL_FORMS, "initial_form",
          f"must be one of {', '.join(INITIAL_FORMS)}")
    check(config.aqft_b is None or config.aqft_b >= 0, "aqft_b",
          "must be a non-negative integer or exact")
    check(0.0 <= config.epsilon_over_pi < 1.0, "epsilon_over_pi",
          "must be in [0, 1)")
    check(config.time_exponent_p is None or config.time_exponent_p >= 0,
          "time_exponent_p", "must be non-negative")
    check(0.0 < config.fidelity_1q <= 1.0, "fidelity_1q", "must be in (0, 1]")
    check(0.0 < config.fidelity_2q <= 1.0, "fidelity_2q", "must be in (0, 1]")
    check(config.trajectories >= 0, "trajectories", "must be non-negative")
    check(config.workers >= 1, "workers", "must be at least 1")
    check(config.normalization in NORMALIZATIONS, "normalization",
          f"must be one of {', '.join(NORMALIZATIONS)}")
    check(config.count_model in COUNT_MODELS, "count_model",
          f"must be one of {', '.join(COUNT_MODELS)}")
    check(config.n_min >= 2, "n_min", "must be at least 2")
    check(config.n_min <= config.n_max, "n_max", "empty qubit range")
    check(config.empirical_max <= EMPIRICAL_LIMIT, "empirical_max",
          f"must be at most {EMPIRICAL_LIMIT}")
    return config


def load_config(path: Optional[str] = None,
                overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Reads the file (if any), applies the overrides that are not None, and
    validates the result.
    """
    values: Dict[str, Any] = dict()
    if path is not None:
        for key, text in read_config_file(path).items():
            values[key] = parse_value(key, text)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = parse_value(key, value)
    return validate(RunConfig(**values))
