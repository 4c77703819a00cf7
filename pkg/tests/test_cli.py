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

import json

import numpy as np
from click.testing import CliRunner

from aqfluid.__main__ import cli
from aqfluid.circuit import loads


def run(*args: str):
    result = CliRunner().invoke(cli, list(args))
    print(result.output)
    return result


def test_simulate(tmp_path):
    out = str(tmp_path)
    result = run("simulate", "--out", out, "--times", "0,pi/2", "--dump-circuit")
    assert result.exit_code == 0

    for label in ("0", "pi_2"):
        for name in ("ideal", "exact", "truncated"):
            assert (tmp_path / f"fields_t{label}_{name}.csv").exists()
        for name in ("exact", "truncated"):
            text = (tmp_path / f"circuit_{name}_t{label}.txt").read_text()
            assert loads(text).num_qubits == 10

    metrics = json.loads((tmp_path / "metrics.json").read_text())
    assert metrics["config"]["nx_qubits"] == 5
    assert set(metrics["times"]) == {"0", "pi_2"}

    later = metrics["times"]["pi_2"]
    for name in ("rho", "jx", "jy"):
        assert later["pearson_r"]["exact_vs_ideal"][name] >= 1.0 - 1e-8
    assert later["gate_stats"]["exact"]["two_qubit_count"] == 60
    assert later["gate_stats"]["truncated"]["two_qubit_count"] < 60
    assert {d["class"] for d in later["truncation_report"]["x"]} <= \
        {"retained", "removed_periodic", "removed_subthreshold"}

    start = metrics["times"]["0"]["pearson_r"]["exact_vs_ideal"]
    assert start["jy"] is None
    assert "constant" in start["jy_reason"]
    assert start["rho"] >= 1.0 - 1e-8


def test_zero_time_variants_agree(tmp_path):
    result = run("simulate", "--out", str(tmp_path), "--times", "0")
    assert result.exit_code == 0
    tables = [np.loadtxt(str(tmp_path / f"fields_t0_{name}.csv"),
                         delimiter=",", skiprows=1)
              for name in ("ideal", "exact", "truncated")]
    for table in tables[1:]:
        np.testing.assert_allclose(table, tables[0], atol=1e-10)


def test_bad_config(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("nx_qubits = 0\n")
    result = run("simulate", "--config", str(path), "--out", str(tmp_path))
    assert result.exit_code == 2
    assert "nx_qubits" in result.output

    result = run("scaling", "--n-min", "10", "--n-max", "8",
                 "--out", str(tmp_path))
    assert result.exit_code == 2
    assert "n_max" in result.output


def test_scaling_and_pins(tmp_path):
    out = str(tmp_path)
    result = run("scaling", "--n-min", "4", "--n-max", "10", "--out", out)
    assert result.exit_code == 0

    lines = (tmp_path / "scaling.csv").read_text().splitlines()
    assert lines[0].startswith("n,removed_gates_raw,removed_gates_routed")
    assert len(lines) == 1 + 7
    fits = json.loads((tmp_path / "fits.json").read_text())
    assert fits["aqft_bound"]["degree"] == 1

    pins_path = tmp_path / "pins.json"
    pins = json.loads(pins_path.read_text())
    value = pins["empirical_error_n10_b2_eps_pi_8_p3"]
    assert 0.0 < value < 1.0

    result = run("scaling", "--n-min", "4", "--n-max", "10", "--out", out,
                 "--pins", str(pins_path))
    assert result.exit_code == 0

    pins["empirical_error_n10_b2_eps_pi_8_p3"] = value * 1.01
    pins_path.write_text(json.dumps(pins))
    result = run("scaling", "--n-min", "4", "--n-max", "10", "--out", out,
                 "--pins", str(pins_path))
    assert result.exit_code == 1


def test_tradeoff_default(tmp_path):
    result = run("tradeoff", "--n-min", "4", "--n-max", "16",
                 "--out", str(tmp_path))
    assert result.exit_code == 0
    assert "equilibrium: none" in result.output
    data = json.loads((tmp_path / "equilibrium.json").read_text())
    assert data["crossing"] == "none"
    assert data["normalization"] == "bounded"
    assert (tmp_path / "tradeoff.csv").read_text().startswith(
        "n,algorithmic_error,avoided_error\n")


def test_tradeoff_relative(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("aqft_b = exact\nfidelity_2q = 0.99\ncount_model = raw\n")
    result = run("tradeoff", "--config", str(path), "--normalization",
                 "relative", "--n-min", "4", "--n-max", "24",
                 "--out", str(tmp_path))
    assert result.exit_code == 0
    assert "n* =" in result.output
    data = json.loads((tmp_path / "equilibrium.json").read_text())
    assert 5.0 < data["crossing"] < 24.0


def test_tune(tmp_path):
    result = run("tune", "--qubits", "6", "--generations", "3",
                 "--seed", "1", "--out", str(tmp_path))
    assert result.exit_code == 0
    data = json.loads((tmp_path / "tune.json").read_text())
    assert data["evaluations"] == len(data["history"])
    assert 0.0 <= data["combined_error"] <= 1.0


def test_validate():
    result = run("validate")
    assert result.exit_code == 0
    assert "FAIL" not in result.output

    result = run("validate", "--inject-fault", "corrupt-coefficient")
    assert result.exit_code == 1
    assert "FAIL" in result.output


if __name__ == '__main__':
    test_validate()
