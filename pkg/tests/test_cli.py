import csv
import math
import subprocess
import sys

import pytest

from blab import cli
from blab.harness import REGISTRY
from blab.kernels import calibrated, set_calibration


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    c0 = calibrated(0.0)
    yield tmp_path
    set_calibration(0.0, c0)


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_list(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == len(REGISTRY) == 10
    assert out[0].startswith("kernel_equivalence - ")
    assert any(line.startswith("hankel - ") for line in out)


def test_entry_point_runs():
    p = subprocess.run([sys.executable, "-m", "blab.cli", "list"], capture_output=True, text=True)
    assert p.returncode == 0 and "duality" in p.stdout


def test_unknown_experiment_exits_2(capsys):
    assert cli.main(["run", "nope"]) == 2
    assert "unknown experiment" in capsys.readouterr().err


def test_bad_config_exits_2(in_tmp):
    (in_tmp / "bad.cfg").write_text("rel_tol=1\n")
    assert cli.main(["run", "atom_norms", "--config", "bad.cfg"]) == 2
    (in_tmp / "unknown.cfg").write_text("colour=blue\n")
    assert cli.main(["run", "atom_norms", "--config", "unknown.cfg"]) == 2
    (in_tmp / "typo.cfg").write_text("lambda_grid=0.1,zero\n")
    assert cli.main(["run", "atom_norms", "--config", "typo.cfg"]) == 2
    (in_tmp / "grid.cfg").write_text("lambda_grid=2.0\n")
    assert cli.main(["run", "atom_norms", "--config", "grid.cfg"]) == 2


def test_parse_config_types():
    sweep, quad = cli.parse_config({"lambda_grid": "0.1, 0.01", "mirror": "yes",
                                    "w_grid": "1j,2+0.5j", "rel_tol": "1e-4", "seed": "3"})
    assert sweep == {"lambda_grid": (0.1, 0.01), "mirror": True, "w_grid": (1j, 2 + 0.5j),
                     "seed": 3}
    assert quad == {"rel_tol": 1e-4}


def test_calibrate_is_deterministic_and_merges(in_tmp):
    assert cli.main(["calibrate", "--alphas", "0", "--out", "c.txt"]) == 0
    first = (in_tmp / "c.txt").read_bytes()
    assert cli.main(["calibrate", "--alphas", "0", "--out", "c.txt"]) == 0
    assert (in_tmp / "c.txt").read_bytes() == first
    kv = cli.read_kv(in_tmp / "c.txt")
    c0 = complex(kv["c_alpha[0]"])
    assert abs(abs(c0) * math.pi - 1) < 1e-3
    assert cli.main(["calibrate", "--alphas", "1", "--out", "c.txt"]) == 0
    kv2 = cli.read_kv(in_tmp / "c.txt")
    assert kv2["c_alpha[0]"] == kv["c_alpha[0]"] and "c_alpha[1]" in kv2
    assert cli.load_calibration(in_tmp / "c.txt") == 2


def test_run_atom_norms(in_tmp, capsys):
    (in_tmp / "small.cfg").write_text("lambda_grid=0.1,0.001\nR_grid=2,100\n")
    assert cli.main(["run", "atom_norms", "--config", "small.cfg", "--out", "a.csv"]) == 0
    r = rows(in_tmp / "a.csv")
    mass = [float(x["measured"]) for x in r if x["group"] == "mass"]
    assert len(mass) == 4 and all(abs(m - 2) <= 1e-6 for m in mass)
    assert all(x["verdict"] == "pass" for x in r)
    assert "atom_norms: slope=" in capsys.readouterr().out


def test_run_mirrored_kernel_equivalence(in_tmp):
    (in_tmp / "m.cfg").write_text("lambda_grid=0.01\nR_grid=10\nmirror=true\n")
    assert cli.main(["run", "kernel_equivalence", "--config", "m.cfg", "--out", "k.csv",
                     "--format", "csv"]) == 0
    I = [x for x in rows(in_tmp / "k.csv") if x["group"] == "I"]
    assert len(I) == 2 and float(I[0]["xi"]) == -float(I[1]["xi"])
    assert I[0]["measured"] == I[1]["measured"]


def test_run_output_is_byte_identical(in_tmp):
    for name in ("a.tsv", "b.tsv"):
        assert cli.main(["run", "mean_zero", "--seed", "7", "--format", "tsv", "--out", name]) == 0
    a, b = (in_tmp / "a.tsv").read_bytes(), (in_tmp / "b.tsv").read_bytes()
    assert a == b and b"\r" not in a and a.endswith(b"\n")
    assert a.split(b"\n")[0].split(b"\t")[0] == b"claim_id"
