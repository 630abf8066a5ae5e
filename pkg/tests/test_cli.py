import csv
import json
import subprocess
import sys
from decimal import Decimal

import numpy as np
import pytest

from snhydrogen.cli import density_path, main
from snhydrogen.config import RunConfig, config_from_dict, load_config
from snhydrogen.errors import ConfigurationError
from snhydrogen.grid import integrate, make_grid
from snhydrogen.reporting import emit_density_csv, five_significant

FAST = ["--r-max", "40", "--grid-points", "2000"]


def write(tmp_path, text, name="run.json"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_empty_config_gives_defaults(tmp_path):
    cfg = load_config(write(tmp_path, ""))
    assert cfg == RunConfig()
    assert cfg.levels == (1,) and cfg.self_interaction == "both" and cfg.mixing_beta == 0.5


def test_config_maps_to_solver_configs(tmp_path):
    cfg = load_config(write(tmp_path, json.dumps({"levels": [1, 2, 3], "self_interaction": "none"})))
    solvers = cfg.solver_configs()
    assert [s.target_level for s in solvers] == [1, 2, 3]
    assert all(not s.interactions.any_self for s in solvers)


@pytest.mark.parametrize("data, field", [
    ({"mixing_beta": 1.5}, "mixing_beta"),
    ({"levels": []}, "levels"),
    ({"levels": [0]}, "levels"),
    ({"self_interaction": "magnetic"}, "self_interaction"),
    ({"grid_points": 3}, "grid_points"),
    ({"energy_tolerance": -1}, "energy_tolerance"),
])
def test_config_errors_name_the_field(data, field):
    with pytest.raises(ConfigurationError, match=field):
        config_from_dict(data)


def test_unknown_key_rejected():
    with pytest.raises(ConfigurationError, match="unknown config key"):
        config_from_dict({"mixing": 0.3})


def test_missing_and_malformed_files_distinguished(tmp_path):
    with pytest.raises(ConfigurationError, match="not found"):
        load_config(tmp_path / "absent.json")
    with pytest.raises(ConfigurationError) as info:
        load_config(write(tmp_path, "{levels: [1"))
    assert "not found" not in str(info.value)
    assert "line" in str(info.value)


@pytest.mark.parametrize("value, text", [
    (-1.2561, "-1.2561"), (-0.21601, "-0.21601"), (-0.074618, "-0.074618"),
    (-13.598, "-13.598"), (-1.04, "-1.0400"), (-0.14139, "-0.14139"),
    (-13.59795, "-13.598"), (1.00005, "1.0000"), (1.00015, "1.0002"),
])
def test_five_significant(value, text):
    assert five_significant(value) == text
    assert len(Decimal(text).as_tuple().digits) == 5


def test_density_path():
    from pathlib import Path

    assert density_path(Path("d_{level}.csv"), 2, 3) == Path("d_2.csv")
    assert density_path(Path("d.csv"), 2, 1) == Path("d.csv")
    assert density_path(Path("out/d.csv"), 3, 3) == Path("out/d_level3.csv")


def test_density_csv(tmp_path, plain_levels):
    res = plain_levels[1]
    path = emit_density_csv(res, tmp_path / "d.csv")
    raw = path.read_bytes()
    assert b"\r" not in raw
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["r_bohr", "F_per_bohr"]
    data = np.array(rows[1:], dtype=float)
    assert data.shape == (res.grid.n, 2)
    assert np.all(np.diff(data[:, 0]) > 0)
    assert integrate(data[:, 1], make_grid(res.grid.r_max, res.grid.n)) == pytest.approx(1.0, abs=1e-8)
    assert data[np.argmax(data[:, 1]), 0] == pytest.approx(1.0, abs=0.01)


def run_cli(tmp_path, *extra, tag="a"):
    report = tmp_path / f"report_{tag}.json"
    density = tmp_path / f"density_{tag}_{{level}}.csv"
    code = main(["solve", "--level", "1", *FAST, "--report-out", str(report), "--density-out", str(density), *extra])
    return code, report, tmp_path / f"density_{tag}_1.csv"


def test_cli_report_contents(tmp_path):
    code, report, density = run_cli(tmp_path)
    assert code == 0
    doc = json.loads(report.read_text())
    assert set(doc) >= {"levels", "transitions", "bohr_deviations", "gravity_ratio", "provenance"}
    assert doc["provenance"]["constants"]["G"] == 6.6743e-11
    assert doc["gravity_ratio"] == pytest.approx(8.8158e-40, rel=1e-4)
    level = doc["levels"][0]
    assert level["converged"] and level["node_count"] == 0
    assert level["energy_ev_5sf"] == five_significant(level["energy_ev"])
    assert level["iterations"] == len(level["energy_history_hartree"])
    assert density.exists()


def test_cli_deterministic(tmp_path):
    _, r1, d1 = run_cli(tmp_path, tag="a")
    _, r2, d2 = run_cli(tmp_path, tag="b")
    assert r1.read_bytes() == r2.read_bytes()
    assert d1.read_bytes() == d2.read_bytes()


def test_cli_non_convergence_exit_1(tmp_path):
    code, report, _ = run_cli(tmp_path, "--max-iterations", "2")
    assert code == 1
    assert json.loads(report.read_text())["levels"][0]["converged"] is False


def test_cli_config_error_exit_2(tmp_path, capsys):
    assert main(["solve", "--beta", "1.5"]) == 2
    assert "mixing_beta" in capsys.readouterr().err
    assert main(["solve", "--config", str(tmp_path / "nope.json")]) == 2


def test_cli_unwritable_output_exit_2(tmp_path):
    code = main(["solve", "--level", "1", *FAST, "--self-interaction", "none",
                 "--report-out", str(tmp_path / "missing_dir" / "r.json")])
    assert code == 2


def test_cli_stdout_report(capsys):
    assert main(["solve", "--level", "1", *FAST, "--self-interaction", "none"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["levels"][0]["energy_hartree"] == pytest.approx(-0.5, abs=1e-3)


def test_estimate_command(capsys):
    assert main(["estimate", "--Z", "0.3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["energy_ev"] == pytest.approx(-1.2238, abs=1e-4)
    assert doc["gravity_ratio"] == pytest.approx(8.8158e-40, rel=1e-4)


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "snhydrogen", "solve", "--level", "1", *FAST,
         "--self-interaction", "none", "--report-out", str(tmp_path / "r.json")],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0, out.stderr
    assert "level 1:" in out.stdout
