"""End-to-end CLI checks: exit codes, CSV artifacts, determinism."""
import re
import subprocess
import sys

import pytest

from gwcommute import __version__
from gwcommute.cli import main

FOOTER = re.compile(r"^# gw-commute [0-9.]+ [0-9a-f]{12}$")


def read_lines(path):
    return path.read_text().splitlines()


def check_csv(path, header):
    """Header + footer sanity; returns the data rows split into fields."""
    lines = read_lines(path)
    assert lines[0] == header
    assert FOOTER.match(lines[-1]), lines[-1]
    return [line.split(",") for line in lines[1:-1]]


# -------------------------------------------------------------------- hermite

def test_hermite_prints_exact_polynomial(capsys):
    assert main(["hermite", "--alpha", "2"]) == 0
    assert capsys.readouterr().out == "0\t-2*w^-1\n2\t1*w^-2\n"


def test_hermite_capital_flavor(capsys):
    assert main(["hermite", "--alpha", "1", "--flavor", "H"]) == 0
    assert capsys.readouterr().out == "1\t2*w^-1\n"


def test_hermite_bad_alpha(capsys):
    assert main(["hermite", "--alpha", "2.x"]) == 2
    assert "multi-index" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert f"gw-commute {__version__}" in capsys.readouterr().out


# ------------------------------------------------------------ verify-identity

IDENTITY_HEADER = "alpha,omega_re,omega_im,pair,rel_l2_err,pass"


def test_verify_identity_writes_csv(tmp_path):
    out = tmp_path / "identity.csv"
    code = main(["verify-identity", "--alpha", "2", "--omega", "1,0.5",
                 "--testfn", "gauss-wide", "--out", str(out)])
    assert code == 0
    rows = check_csv(out, IDENTITY_HEADER)
    assert [r[3] for r in rows] == [
        "direct-vs-theorem", "direct-vs-convolution", "theorem-vs-convolution",
    ]
    assert all(r[-1] == "true" for r in rows)
    assert all(float(r[4]) <= 1e-6 for r in rows)


def test_verify_identity_with_shift_row(tmp_path):
    out = tmp_path / "identity.csv"
    code = main(["verify-identity", "--alpha", "2", "--omega", "1,0",
                 "--testfn", "mixture", "--with-shift", "--out", str(out)])
    assert code == 0
    rows = check_csv(out, IDENTITY_HEADER)
    assert len(rows) == 4
    assert rows[-1][3] == "shift-identity"


def test_verify_identity_stdout_when_no_out(capsys):
    code = main(["verify-identity", "--alpha", "1", "--omega", "1,0",
                 "--testfn", "gauss-wide"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == IDENTITY_HEADER
    assert FOOTER.match(lines[-1])


def test_verify_identity_impossible_tolerance_exits_1(tmp_path):
    out = tmp_path / "identity.csv"
    code = main(["verify-identity", "--alpha", "3", "--omega", "1,0.9",
                 "--testfn", "bandlimited", "--tolerance", "1e-18",
                 "--out", str(out)])
    assert code == 1
    rows = check_csv(out, IDENTITY_HEADER)  # failing rows still written
    assert any(r[-1] == "false" for r in rows)


@pytest.mark.parametrize("argv, message", [
    (["verify-identity", "--alpha", "0", "--omega", "1,0",
      "--testfn", "gauss-wide"], "alpha"),
    (["verify-identity", "--alpha", "1", "--omega=-1,0",
      "--testfn", "gauss-wide"], "positive real part"),
    (["verify-identity", "--alpha", "1", "--omega", "1,0",
      "--testfn", "gauss-tall"], "catalog"),
    (["verify-identity", "--alpha", "1", "--omega", "1,0",
      "--testfn", "gauss-wide", "--grid", "300,16"], "power of two"),
])
def test_verify_identity_config_errors(capsys, argv, message):
    assert main(argv) == 2
    assert message in capsys.readouterr().err


# ------------------------------------------------------------ verify-estimate

ESTIMATE_HEADER = ("n,m,p,q,r,omega_re,omega_im,theta,"
                   "lhs,rhs,constant,margin,pass")


def test_verify_estimate_csv(tmp_path):
    out = tmp_path / "estimate.csv"
    code = main(["verify-estimate", "--m", "1", "--p", "2", "--q", "1",
                 "--omega", "1,0.5", "--testfn", "gauss-wide", "--radial",
                 "--out", str(out)])
    assert code == 0
    rows = check_csv(out, ESTIMATE_HEADER)
    assert len(rows) == 2  # monomial sum + radial variant
    for row in rows:
        assert row[:4] == ["1", "1", "2", "1"]
        assert row[4] == "2"  # 1/r = 1 + 1/p - 1/q = 1/2
        assert row[-1] == "true"
        assert float(row[8]) <= float(row[9])


def test_verify_estimate_rejects_bad_exponents(capsys):
    code = main(["verify-estimate", "--m", "1", "--p", "1", "--q", "2",
                 "--omega", "1,0", "--testfn", "gauss-wide"])
    assert code == 2
    assert "q" in capsys.readouterr().err


# ------------------------------------------------------------------ constants

def test_constants_stdout_table(capsys):
    code = main(["constants", "--n", "1", "--m-list", "1",
                 "--r-list", "1", "--theta-list", "0"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].split() == ["n", "m", "r", "theta", "A", "A_tilde"]
    assert "1.7155277699214138" in out


def test_constants_csv(tmp_path):
    out = tmp_path / "constants.csv"
    code = main(["constants", "--n", "2", "--m-list", "1,2",
                 "--r-list", "2,inf", "--theta-list", "0,0.9",
                 "--out", str(out)])
    assert code == 0
    rows = check_csv(out, "n,m,r,theta,A,A_tilde")
    assert len(rows) == 8
    assert {r[2] for r in rows} == {"2", "inf"}
    assert all(float(r[4]) > 0 and float(r[5]) > 0 for r in rows)


def test_constants_theta_out_of_range(tmp_path, capsys):
    out = tmp_path / "constants.csv"
    code = main(["constants", "--theta-list", "0,1.58", "--out", str(out)])
    assert code == 2
    assert "theta" in capsys.readouterr().err
    assert not out.exists()  # nothing written on a config error


# --------------------------------------------------------------- kernel-norms

def test_kernel_norms_csv(tmp_path):
    out = tmp_path / "kn.csv"
    code = main(["kernel-norms", "--beta-list", "1,2", "--r-list", "1",
                 "--theta-list", "0,0.9", "--out", str(out)])
    assert code == 0
    rows = check_csv(out, "beta,r,theta,norm,bound,pass")
    assert len(rows) == 4
    for row in rows:
        assert row[-1] == "true"
        assert 0.0 < float(row[3]) <= float(row[4])


# ------------------------------------------------------------------------ cgl

def test_cgl_writes_three_artifacts(tmp_path, capsys):
    prefix = tmp_path / "run"
    code = main(["cgl", "--T", "2", "--dt", "0.01", "--grid", "512,32",
                 "--out", str(prefix)])
    assert code == 0
    assert "cgl: slope=" in capsys.readouterr().out

    decay = check_csv(tmp_path / "run_decay.csv", "t,r,record")
    assert {r[1] for r in decay} == {"1", "2", "inf"}
    weighted = check_csv(tmp_path / "run_weighted.csv", "t,W,ratio")
    assert [r[0] for r in weighted] == ["0.0", "0.5", "1.0", "1.5", "2.0"]

    plt = read_lines(tmp_path / "run.plt")
    assert FOOTER.match(plt[0])
    assert any("logscale" in line for line in plt)
    assert any("run_weighted.csv" in line for line in plt)


def test_cgl_short_horizon_rejected(tmp_path, capsys):
    code = main(["cgl", "--T", "1", "--out", str(tmp_path / "run")])
    assert code == 2
    assert "horizon" in capsys.readouterr().err


def test_cgl_oversized_initial_data_rejected(tmp_path, capsys):
    code = main(["cgl", "--eps", "0.5", "--T", "2", "--grid", "512,32",
                 "--out", str(tmp_path / "run")])
    assert code == 2
    assert "smallness" in capsys.readouterr().err


# ---------------------------------------------------------------------- suite

SMALL_SUITE = """
[suite]
harnesses = identity, constants
seed = 0

[identity]
dim = 1
grid = 512,16
alphas = 1, 2
omegas = 1,0.5
testfns = gauss-wide

[constants]
dim = 1
m_values = 1
r_values = 1, inf
thetas = 0, 0.9
"""


def test_suite_empty_harnesses_no_artifacts(tmp_path, capsys):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("[suite]\nharnesses =\n")
    out_dir = tmp_path / "artifacts"
    code = main(["suite", "--config", str(cfg), "--out-dir", str(out_dir)])
    assert code == 0
    assert not out_dir.exists()


def test_suite_missing_config_file(tmp_path, capsys):
    code = main(["suite", "--config", str(tmp_path / "nope.cfg")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_suite_theta_out_of_range_is_config_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(
        "[suite]\nharnesses = constants\n\n"
        "[constants]\nm_values = 1\nr_values = 1\nthetas = 1.58\n"
    )
    code = main(["suite", "--config", str(cfg), "--out-dir", str(tmp_path)])
    assert code == 2
    assert "theta" in capsys.readouterr().err


def test_suite_runs_and_reports(tmp_path, capsys):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(SMALL_SUITE)
    out_dir = tmp_path / "run1"
    code = main(["suite", "--config", str(cfg), "--out-dir", str(out_dir)])
    assert code == 0
    out = capsys.readouterr().out
    assert "suite harness identity: pass" in out
    assert "suite harness constants: pass" in out
    rows = check_csv(out_dir / "identity.csv", IDENTITY_HEADER)
    assert len(rows) == 6  # 2 alphas x 1 omega x 3 evaluator pairs
    assert all(r[-1] == "true" for r in rows)
    check_csv(out_dir / "constants.csv", "n,m,r,theta,A,A_tilde")


def test_suite_determinism_across_thread_counts(tmp_path, monkeypatch):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(SMALL_SUITE)
    outputs = []
    for label, threads in (("a", "1"), ("b", "2"), ("c", None)):
        if threads is None:
            monkeypatch.delenv("GW_THREADS", raising=False)
        else:
            monkeypatch.setenv("GW_THREADS", threads)
        out_dir = tmp_path / label
        assert main(["suite", "--config", str(cfg), "--out-dir", str(out_dir)]) == 0
        outputs.append({
            name: (out_dir / name).read_bytes()
            for name in ("identity.csv", "constants.csv")
        })
    assert outputs[0] == outputs[1] == outputs[2]


def test_gw_threads_must_be_positive_integer(monkeypatch, capsys):
    monkeypatch.setenv("GW_THREADS", "zero")
    code = main(["verify-identity", "--alpha", "1", "--omega", "1,0",
                 "--testfn", "gauss-wide"])
    assert code == 2
    assert "GW_THREADS" in capsys.readouterr().err


# ------------------------------------------------------------- installed script

def test_console_script_entry_point():
    proc = subprocess.run(["gw-commute", "hermite", "--alpha", "1.1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "1.1\t1*w^-2\n"
