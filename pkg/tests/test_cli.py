"""Command line interface: subcommands, CSV schema, determinism, exit codes."""

import csv

import pytest

from qrepsim import cli


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(path):
    with open(path, newline="") as handle:
        return list(csv.reader(handle))


def test_sweep_single_ideal_point(capsys):
    code, out, _ = run(
        capsys,
        ["sweep", "--vary", "beta", "--range", "0:0:0.01", "--jobs", "1",
         "--encoder", "ideal", "--decoder", "ideal"],
    )
    assert code == 0
    header, row = [line.split(",") for line in out.strip().splitlines()]
    assert tuple(header) == cli.COLUMNS
    fields = dict(zip(header, row))
    assert float(fields["r_total"]) == pytest.approx(1.0, abs=1e-12)
    assert float(fields["p_golden"]) == pytest.approx(1.0, abs=1e-12)
    assert fields["mode"] == "golden-only"
    assert fields["r_gng"] == "" and fields["r_bad"] == ""


def test_sweep_full_mode_fills_class_columns(capsys):
    code, out, _ = run(
        capsys,
        ["sweep", "--vary", "beta", "--range", "0.01:0.01:0.01", "--jobs", "1",
         "--mode", "full", "--encoder", "ideal", "--f0", "0.98", "--delta", "0.005"],
    )
    assert code == 0
    header, row = [line.split(",") for line in out.strip().splitlines()]
    fields = dict(zip(header, row))
    for column in ("p_golden", "e_z", "e_x", "r_golden", "r_gng", "r_bad", "r_total"):
        assert fields[column] != ""
    total = float(fields["r_golden"]) + float(fields["r_gng"]) + float(fields["r_bad"])
    assert float(fields["r_total"]) == pytest.approx(total, abs=1e-12)


def test_sweep_zero_rate_onset_within_expected_band(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run(
        capsys,
        ["sweep", "--vary", "beta", "--range", "0:0.1:0.005", "--jobs", "4",
         "--output", str(out_path)],
    )
    assert code == 0
    rows = read_csv(out_path)
    assert [tuple(rows[0])] == [cli.COLUMNS]
    grid = [(float(r[1]), float(r[-1])) for r in rows[1:]]
    assert len(grid) == 21
    first_zero = next(beta for beta, rate in grid if rate == 0.0)
    assert 0.060 <= first_zero <= 0.065


def test_sweep_deterministic_across_runs_and_jobs(tmp_path, capsys):
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    for path, jobs in zip(paths, ("1", "1", "2")):
        code, _, _ = run(
            capsys,
            ["sweep", "--vary", "f0", "--range", "0.9:1.0:0.05", "--jobs", jobs,
             "--beta", "0.01", "--output", str(path)],
        )
        assert code == 0
    blobs = [path.read_bytes() for path in paths]
    assert blobs[0] == blobs[1] == blobs[2]


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["sweep", "--range", "0:0.1:0.01"])
    assert err.value.code == 1
    capsys.readouterr()
    with pytest.raises(SystemExit) as err:
        cli.main(["sweep", "--vary", "beta", "--range", "0.1:0:0.01"])
    assert err.value.code == 1
    capsys.readouterr()
    with pytest.raises(SystemExit) as err:
        cli.main(["sweep", "--vary", "beta", "--range", "nonsense"])
    assert err.value.code == 1


def test_cutoff_command_prints_threshold(capsys):
    code, out, _ = run(capsys, ["cutoff", "--vary", "beta"])
    assert code == 0
    assert float(out.strip()) == pytest.approx(0.0628, abs=2e-3)


def test_computation_error_exits_two(capsys):
    # Rate vanishes on the whole delta bracket at beta = 0.2.
    code, _, err = run(capsys, ["cutoff", "--vary", "delta", "--beta", "0.2"])
    assert code == 2
    assert "error:" in err


def test_modes_command_rows_and_ordering(capsys):
    code, out, _ = run(
        capsys,
        ["modes", "--f0", "0.98", "--beta", "0.02", "--encoder", "ideal"],
    )
    assert code == 0
    lines = [line.split(",") for line in out.strip().splitlines()]
    assert tuple(lines[0]) == cli.COLUMNS
    rates = {row[6]: float(row[-1]) for row in lines[1:]}
    assert set(rates) == {"full", "decoder-only", "swap-only", "blackbox"}
    assert rates["full"] >= rates["swap-only"] >= rates["blackbox"]
    assert rates["full"] >= rates["decoder-only"]


def test_modes_rejects_higher_nesting(capsys):
    code, _, err = run(capsys, ["modes", "--nesting", "2"])
    assert code == 2 and "nesting" in err


def test_state_command_ideal(capsys):
    code, out, _ = run(
        capsys, ["state", "--encoder", "ideal", "--decoder", "ideal"]
    )
    assert code == 0
    assert "real:" in out and "imag:" in out
    assert "r_golden = 1" in out
    grid = [line.split() for line in out.splitlines()[1:5]]
    assert float(grid[0][0]) == pytest.approx(0.5)
    assert float(grid[3][3]) == pytest.approx(0.5)


def test_verify_command_passes(capsys):
    code, out, _ = run(capsys, ["verify", "--code-length", "1", "--points", "4"])
    assert code == 0
    assert out.count("PASS") == 3


def test_verify_failure_exits_three(capsys, monkeypatch):
    monkeypatch.setattr(
        cli.oracle,
        "run_verification",
        lambda *a, **k: {"elementary": 1.0, "swap": 0.0, "decode": 0.0},
    )
    code, out, _ = run(capsys, ["verify", "--code-length", "1"])
    assert code == 3
    assert "FAIL" in out
