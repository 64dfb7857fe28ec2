import re
import subprocess
import sys

import numpy as np
import pytest

from qtele import cli, spin_model, validate


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_prints_twelve_decimals(capsys):
    code, out, _ = run(capsys, "eval", "--quantity", "cin", "--theta", "90", "--r", "0", "--deg")
    assert code == 0
    assert out == "1.000000000000\n"


def test_eval_domain_error_names_parameter(capsys):
    code, _, err = run(capsys, "eval", "--quantity", "cout", "--r", "1.2")
    assert code == 2
    assert err.startswith("qtele: error: r ")
    assert len(err.strip().splitlines()) == 1


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "--quantity", "nope"])
    assert exc.value.code == 2


def test_sweep_needs_axes(capsys):
    code, _, err = run(capsys, "sweep", "--quantity", "cin")
    assert code == 2 and "--figure" in err


def test_sweep_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--figure", "fig1", "--grid", "3", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 3 and "cannot write" in err


def test_sweep_to_file_matches_stdout(capsys, tmp_path):
    target = tmp_path / "fig4.csv"
    assert run(capsys, "sweep", "--figure", "fig4", "--grid", "4", "--out", str(target))[0] == 0
    _, out, _ = run(capsys, "sweep", "--figure", "fig4", "--grid", "4")
    assert target.read_text() == out


def test_fixed_parameter_override(capsys):
    _, out, _ = run(capsys, "sweep", "--figure", "fig3", "--grid", "3", "--theta", "1.0")
    assert out.splitlines()[0].split()[3:] == ["J=1", "D=0", "theta=1", "phi=0"]


def test_custom_sweep_values(capsys):
    _, out, _ = run(capsys, "sweep", "--x", "r:0:0.5:3", "--y", "T:0.1:1:2", "--quantity", "fa1")
    rows = np.array([list(map(float, line.split(","))) for line in out.splitlines()[2:]])
    assert rows.shape == (6, 3)
    # fa1 does not depend on r
    np.testing.assert_array_equal(rows[:3, 2], rows[0, 2])


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qtele", "eval", "--quantity", "fa1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert re.fullmatch(r"\d\.\d{12}\n", proc.stdout)


@pytest.fixture
def small_battery(monkeypatch):
    monkeypatch.setattr(validate, "MODEL_GRID", ((1.0, 0.0, 0.1), (-1.0, 2.0, 0.5)))
    monkeypatch.setattr(validate, "ANGLE_GRID", ((0.0, 0.0, 0.0), (1.0, 0.5, 0.3)))
    monkeypatch.setattr(validate, "QUAD_RS", (0.3,))
    monkeypatch.setattr(validate, "FIGURE_GRID", 5)


def _mask(text):
    return re.sub(r"(?<![A-Za-z_\d])-?\d+(\.\d+)?(e[+-]\d+)?", "#", text)


def test_validate_report_format(capsys, small_battery, golden_dir):
    code, out, _ = run(capsys, "validate")
    assert code == 0
    assert _mask(out) == (golden_dir / "validate_masked.txt").read_text()


def test_validate_catches_broken_thermal_state(capsys, small_battery, monkeypatch):
    good = spin_model.thermal_state

    def skewed(p):
        rho = good(p).copy()
        rho[1, 2] *= 1.001
        rho[2, 1] *= 1.001
        return rho

    monkeypatch.setattr(spin_model, "thermal_state", skewed)
    code, out, _ = run(capsys, "validate")
    assert code == 1
    assert "FAILED: gibbs_oracle" in out


def _rows(text):
    return np.array([list(map(float, line.split(","))) for line in text.splitlines()[2:]])


def test_eval_matches_library(capsys):
    from qtele.measures import average_fidelity_closed
    from qtele.spin_model import ModelParams

    _, out, _ = run(capsys, "eval", "--quantity", "fa", "--J", "1", "--D", "0", "--T", "0.5", "--r", "0.3")
    assert out == f"{average_fidelity_closed(ModelParams(1.0, 0.0, 0.5), 0.3):.12f}\n"


def test_eval_depolarizing_limit(capsys):
    _, out, _ = run(capsys, "eval", "--quantity", "fa1", "--J", "1", "--D", "0", "--T", "1e6")
    assert abs(float(out) - 0.25) < 1e-5


def test_fig1_sweep_shape_and_extremes(capsys):
    _, out, _ = run(capsys, "sweep", "--figure", "fig1", "--grid", "101")
    rows = _rows(out)
    assert rows.shape == (101 * 101, 3)
    k = int(np.argmax(rows[:, 2]))
    assert rows[k, 2] == pytest.approx(1.0, abs=1e-15)
    assert rows[k, 0] == pytest.approx(np.pi / 2) and rows[k, 1] == 0
    edges = rows[(rows[:, 0] == 0) | (rows[:, 0] == rows[:, 0].max()), 2]
    assert np.all(np.abs(edges) < 1e-15)


def test_fig7_dm_raises_every_row(capsys):
    _, out, _ = run(capsys, "sweep", "--figure", "fig7", "--grid", "51")
    grid = _rows(out)[:, 2].reshape(51, 51)  # rows: D, columns: r
    assert np.all(grid[-1] > grid[0])


def test_fig5_columns_non_increasing_in_r(capsys):
    _, out, _ = run(capsys, "sweep", "--figure", "fig5", "--grid", "51")
    grid = _rows(out)[:, 2].reshape(51, 51)  # rows: T, columns: r
    assert np.all(np.diff(grid, axis=1) <= 1e-12)
