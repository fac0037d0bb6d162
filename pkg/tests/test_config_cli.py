import json
import math

import numpy as np
import pytest

import paulitherm.cli as cli
from paulitherm import ConfigError, NumericalError, Scenario, load_config, load_rate_table
from paulitherm.cli import main


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------- config


def test_load_config_example(tmp_path):
    p = write(tmp_path / "s.ini", """
[example]
alpha = 0.45
beta = 0.23
kappa = 0.5

[state]
zeta0 = 0.8

[grid]
t_max = 4.0
points = 64

[output]
path = out.csv
format = json
""")
    sc = load_config(p)
    assert sc.example is not None
    assert (sc.example.alpha, sc.example.beta) == (0.45, 0.23)
    assert sc.kappa == 0.5
    assert sc.zeta0 == 0.8
    assert sc.t_max == 4.0 and sc.grid == 64
    assert sc.out == "out.csv" and sc.fmt == "json"
    sc.validate()


def test_load_config_constant_rates(tmp_path):
    p = write(tmp_path / "s.ini", """
[constant_rates]
gamma1 = 0.1
gamma2 = 0.2
gamma3 = 0.3
""")
    sc = load_config(p)
    assert sc.constant_rates == (0.1, 0.2, 0.3)
    rates = sc.rate_functions()
    assert rates.values(1.23) == (0.1, 0.2, 0.3)


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.ini")
    p = write(tmp_path / "none.ini", "[state]\nzeta0 = 1.0\n")
    with pytest.raises(ConfigError):
        load_config(p)
    p = write(tmp_path / "two.ini",
              "[example]\nalpha = 0.3\nbeta = 0.2\n\n"
              "[constant_rates]\ngamma1 = 0.1\ngamma2 = 0.1\ngamma3 = 0.1\n")
    with pytest.raises(ConfigError):
        load_config(p)
    p = write(tmp_path / "bad.ini", "[example]\nalpha = fast\nbeta = 0.2\n")
    with pytest.raises(ConfigError):
        load_config(p)
    p = write(tmp_path / "nokey.ini", "[example]\nalpha = 0.3\n")
    with pytest.raises(ConfigError):
        load_config(p)


def test_scenario_validate_bounds():
    sc = Scenario(constant_rates=(0.1, 0.1, 0.1), zeta0=2.0)
    with pytest.raises(ConfigError):
        sc.validate()
    sc = Scenario(constant_rates=(0.1, 0.1, 0.1), grid=4)
    with pytest.raises(ConfigError):
        sc.validate()
    sc = Scenario(constant_rates=(0.1, 0.1, 0.1), fmt="xml")
    with pytest.raises(ConfigError):
        sc.validate()


def test_load_rate_table(tmp_path):
    t = np.linspace(0.0, 3.0, 31)
    rows = "\n".join(f"{x:.6f},{0.1 + 0.02 * x:.8f},{0.15:.8f},{0.2:.8f}"
                     for x in t)
    p = write(tmp_path / "rates.csv", "t,gamma1,gamma2,gamma3\n" + rows + "\n")
    rates = load_rate_table(p)
    assert rates.values(1.5) == pytest.approx((0.13, 0.15, 0.2), abs=1e-9)
    # flat extension outside the sampled range
    assert rates.gamma1(10.0) == pytest.approx(0.16, abs=1e-9)

    bad = write(tmp_path / "bad.csv", "t,g1,g2,g3\n0,0.1,0.1,0.1\n")
    with pytest.raises(ConfigError):
        load_rate_table(bad)   # needs at least two rows
    bad = write(tmp_path / "dup.csv",
                "t,g1,g2,g3\n0,0.1,0.1,0.1\n0,0.2,0.2,0.2\n")
    with pytest.raises(ConfigError):
        load_rate_table(bad)   # times must increase


def test_config_tabulated_path_is_relative_to_file(tmp_path):
    sub = tmp_path / "sub"
    sub.mkdir()
    write(sub / "rates.csv", "t,g1,g2,g3\n0,0.1,0.1,0.1\n1,0.1,0.1,0.1\n")
    p = write(sub / "s.ini", "[tabulated_rates]\npath = rates.csv\n")
    sc = load_config(p)
    rates = sc.rate_functions()
    assert rates.values(0.5) == pytest.approx((0.1, 0.1, 0.1), abs=1e-12)


# ---------------------------------------------------------------- CLI


def test_constants_output(capsys):
    assert main(["constants"]) == 0
    out = capsys.readouterr().out
    values = {}
    for line in out.strip().splitlines():
        key, val = line.split("=")
        values[key.strip()] = float(val)
    assert values["x_star"] == pytest.approx(0.8335565596, abs=1e-9)
    assert set(values) == {"x_star", "phi_star", "z_max", "beta_bar"}


def test_constants_json(capsys):
    assert main(["constants", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["phi_star"] == pytest.approx(0.091026860572, abs=1e-10)
    assert data["beta_bar"] == pytest.approx(0.203632188795, abs=1e-10)


def test_simulate_csv_deterministic(capsys):
    argv = ["simulate", "--alpha", "0.38", "--beta", "0.23",
            "--grid", "32", "--t-max", "4.0"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    lines = first.splitlines()
    assert lines[0].startswith("# simulate-v1 columns: t,lambda,phi,")
    assert lines[2].split(",") == ["t", "lambda", "phi", "gamma_sum", "f",
                                   "mean", "var", "d_mean", "d_var",
                                   "divisibility_flag"]
    assert len(lines) == 3 + 32
    assert first.endswith("\n")


def test_simulate_json_and_out_file(tmp_path, capsys):
    out = tmp_path / "run.json"
    assert main(["simulate", "--alpha", "0.38", "--beta", "0.23",
                 "--grid", "24", "--t-max", "4.0",
                 "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "simulate-v1"
    assert len(data["rows"]) == 24
    row = data["rows"][0]
    assert set(row) == {"t", "lambda", "phi", "gamma_sum", "f", "mean", "var",
                        "d_mean", "d_var", "divisibility_flag"}


def test_simulate_zero_rates(tmp_path, capsys):
    cfg = write(tmp_path / "zero.ini",
                "[constant_rates]\ngamma1 = 0\ngamma2 = 0\ngamma3 = 0\n"
                "\n[grid]\nt_max = 1.0\npoints = 16\n")
    assert main(["simulate", "--config", cfg]) == 0
    rows = [line.split(",") for line in
            capsys.readouterr().out.splitlines()[3:]]
    for row in rows:
        assert float(row[1]) == 1.0          # lambda
        assert float(row[2]) == 0.0          # phi
        assert float(row[5]) == 0.0          # mean
        assert float(row[6]) == 0.0          # var
        assert float(row[7]) == 0.0 and float(row[8]) == 0.0


def test_classify_text_and_json(capsys):
    assert main(["classify", "--alpha", "0.38", "--beta", "0.23"]) == 0
    text = capsys.readouterr().out
    assert "case II" in text and "t3" in text
    assert main(["classify", "--alpha", "0.38", "--beta", "0.23",
                 "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["case"] == "II"
    assert data["t1"] == pytest.approx(1.1686, abs=1e-3)
    assert data["t3"] == pytest.approx(1.80218, abs=1e-4)


def test_classify_inadmissible_is_invalid_input(capsys):
    assert main(["classify", "--alpha", "0.38", "--beta", "0.15"]) == 1
    assert "error:" in capsys.readouterr().err


def test_sweep_deterministic_across_jobs(capsys):
    argv = ["sweep", "--beta", "0.23", "--alpha-min", "0.3",
            "--alpha-max", "0.5", "--steps", "9"]
    assert main(argv + ["--jobs", "1"]) == 0
    serial = capsys.readouterr().out
    assert main(argv + ["--jobs", "3"]) == 0
    parallel = capsys.readouterr().out
    assert serial == parallel
    lines = serial.splitlines()
    assert lines[2].split(",")[0] == "alpha"
    assert len(lines) == 3 + 9
    cases = [line.split(",")[-1] for line in lines[3:]]
    assert cases[0] == "III" and cases[-1] == "I" and "II" in cases


def test_sweep_covers_inadmissible_beta(capsys):
    assert main(["sweep", "--beta", "0.26", "--steps", "5", "--jobs", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    for line in lines[3:]:
        cells = line.split(",")
        assert cells[1] == "0"          # not admissible
        assert cells[2] == "nan"        # no window
        assert cells[-1] == "-"


def test_distribution_modes(capsys):
    assert main(["distribution", "--zeta0", "1.0", "--lam", "0.5"]) == 0
    text = capsys.readouterr().out
    assert "mean = 0.562335144619" in text
    assert main(["distribution", "--alpha", "0.38", "--beta", "0.23",
                 "--t", "1.8", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["lam"] == pytest.approx(
        math.exp(-2.0 * 0.0910268), rel=1e-3)
    assert sum(r["weight"] for r in data["rows"]) == pytest.approx(1.0,
                                                                   abs=1e-12)


def test_distribution_argument_errors(capsys):
    assert main(["distribution", "--zeta0", "1.0"]) == 1
    capsys.readouterr()
    assert main(["distribution", "--lam", "0.5", "--t", "1.0",
                 "--alpha", "0.3", "--beta", "0.23"]) == 1
    capsys.readouterr()
    assert main(["distribution", "--lam", "0.0"]) == 1
    capsys.readouterr()


def test_exit_codes(tmp_path, capsys, monkeypatch):
    # invalid flags -> 1 (argparse errors are rerouted)
    assert main(["simulate", "--alpha", "0.3"]) == 1
    capsys.readouterr()
    assert main(["no-such-command"]) == 1
    capsys.readouterr()
    # unwritable output -> 3
    assert main(["constants", "--out", str(tmp_path / "nodir" / "x.txt")]) == 3
    capsys.readouterr()
    # numerical failure inside a run -> 2
    def boom(*a, **k):
        raise NumericalError("synthetic quadrature failure")
    monkeypatch.setattr(cli, "scan_trajectory", boom)
    assert main(["simulate", "--alpha", "0.38", "--beta", "0.23"]) == 2
    assert "numerical failure" in capsys.readouterr().err


def test_selftest_exit_code():
    # the known-red label check makes the aggregate selftest fail honestly
    assert main(["selftest"]) == 2
