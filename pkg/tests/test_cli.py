import csv
import io

import numpy as np
import pytest

from qitk import __version__
from qitk.cli import main
from qitk.figures import FIGURES


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_capacity_value(capsys):
    code, out, _ = run(["capacity", "--channel", "erasure", "--theta", "0.25", "--quantity", "Ce"], capsys)
    assert code == 0 and out.strip() == "1.5"


def test_bsc_capacity(capsys):
    code, out, _ = run(["capacity", "--channel", "bsc", "--p", "0.11"], capsys)
    h = -(0.11 * np.log2(0.11) + 0.89 * np.log2(0.89))
    assert code == 0 and float(out) == pytest.approx(1 - h, abs=1e-6)


def test_gaussian_capacity_notes_conjecture(capsys):
    code, out, err = run(["capacity", "--channel", "gaussian", "--quantity", "Ce", "--k", "1", "--N", "1"], capsys)
    assert code == 0 and float(out) > 0


def test_criteria_on_state_file(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("# singlet-like Werner state\nwerner -0.5\n")
    code, out, _ = run(["criteria", str(p), "--test", "ppt"], capsys)
    assert code == 0 and "Entangled" in out
    code, out, _ = run(["criteria", str(p), "--test", "family"], capsys)
    assert code == 0 and "Entangled" in out


def test_measure_family(capsys):
    code, out, _ = run(["measure", "--family", "werner", "--param", "-1", "--kind", "er"], capsys)
    assert code == 0 and float(out) == pytest.approx(1)


def test_measure_state_file(tmp_path, capsys):
    p = tmp_path / "b.txt"
    p.write_text("bell0\n")
    code, out, _ = run(["measure", str(p)], capsys)
    assert code == 0 and float(out) == pytest.approx(1)


def test_code_commands(capsys):
    code, out, _ = run(["code", "--graph", "five-bit-pentagon", "--correct", "1"], capsys)
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(["code", "--graph", "five-bit-wheel", "--correct", "2"], capsys)
    assert code == 0 and out.strip() == "false"
    code, out, _ = run(["code", "--graph", "five-bit-wheel", "--correct", "3"], capsys)
    assert code == 1  # 2K > M is a parameter error


def test_clone_and_protocol(capsys):
    code, out, _ = run(["clone", "fidelities", "--N", "1", "--M", "2"], capsys)
    assert code == 0 and "fall: 0.666666666667" in out
    code, out, _ = run(["protocol", "bbpssw", "--f", "0.7"], capsys)
    assert code == 0 and "F': 0.735294" in out


@pytest.mark.parametrize("argv,expected", [
    (["bogus"], 1),
    (["capacity"], 1),
    (["measure", "/nonexistent/state.txt"], 1),
    (["measure", "--family", "werner", "--param", "2"], 1),
    (["measure", "--family", "oo", "--param", "-0.2", "--t", "1.1", "--d", "3"], 2),
    (["clone", "fidelities", "--N", "3", "--M", "2"], 1),
    (["protocol", "bbpssw", "--f", "0.4"], 1),
])
def test_exit_codes(argv, expected, capsys):
    code, _, err = run(argv, capsys)
    assert code == expected
    assert err


def test_bad_state_file_reports_line(tmp_path, capsys):
    p = tmp_path / "s.txt"
    p.write_text("dims 2\n1 0 0 0\n0 0 oops 0\n")
    code, _, err = run(["measure", str(p), "--kind", "negativity"], capsys)
    assert code == 1 and "line 3" in err


def test_non_positive_state(tmp_path, capsys):
    p = tmp_path / "s.txt"
    p.write_text("dims 2\n1.5 0 0 0\n0 0 -0.5 0\n")
    code, _, err = run(["measure", str(p), "--kind", "negativity"], capsys)
    assert code == 1 and "eigenvalue" in err


def _read_csv(path):
    lines = path.read_text().splitlines()
    meta = [l for l in lines if l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(l for l in lines if not l.startswith("#")))))
    return meta, rows[0], np.array(rows[1:], dtype=float)


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_figures_deterministic_and_finite(name, tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["figure", name, "--points", "11", "--out", str(a)]) == 0
    assert main(["figure", name, "--points", "11", "--out", str(b)]) == 0
    capsys.readouterr()
    assert (a / f"{name}.csv").read_text() == (b / f"{name}.csv").read_text()
    assert (a / f"{name}.plot").exists()
    meta, header, data = _read_csv(a / f"{name}.csv")
    assert meta[0] == f"# command: figure {name} --points 11"
    assert meta[2] == f"# version: qitk {__version__}"
    assert data.shape[1] == len(header)
    assert np.all(np.isfinite(data))


def test_erasure_figure_values(tmp_path, capsys):
    main(["figure", "erasure", "--out", str(tmp_path)])
    capsys.readouterr()
    _, header, data = _read_csv(tmp_path / "erasure.csv")
    th, cc, ce, cq = data.T
    assert np.allclose(cc, 1 - th, atol=1e-11)
    assert np.allclose(ce, 2 * cc, atol=1e-11)
    assert np.allclose(cq, np.maximum(0, 1 - 2 * th), atol=1e-11)


def test_qcap_depol_contains_two_thirds(tmp_path, capsys):
    main(["figure", "qcap-depol", "--out", str(tmp_path)])
    capsys.readouterr()
    _, header, data = _read_csv(tmp_path / "qcap-depol.csv")
    row = data[np.argmin(np.abs(data[:, 0] - 2 / 3))]
    assert row[0] == pytest.approx(2 / 3, abs=1e-11)
    assert abs(row[header.index("Ctheta")]) <= 1e-9


def test_figure_unwritable_directory(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["figure", "erasure", "--points", "5", "--out", str(blocker)]) == 2
