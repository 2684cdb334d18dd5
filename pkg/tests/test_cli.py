"""Command-line interface: outputs, exit codes and round trips."""

import csv
import io
import json
import subprocess
import sys

import pytest

from weylalg.cli import main
from weylalg.phase import PhasePolynomial
from weylalg.certify import DistalityCertificate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def tables(tmp_path):
    rz = tmp_path / "rightzero3.txt"
    rz.write_text("3\n0 1 2\n0 1 2\n0 1 2\n")
    lz = tmp_path / "leftzero3.txt"
    lz.write_text("labels: a b c\n3\n0 0 0\n1 1 1\n2 2 2\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 0\n0 0\n")
    z5 = tmp_path / "z5.txt"
    z5.write_text("5\n" + "\n".join(" ".join(str((s + t) % 5) for t in range(5)) for s in range(5)) + "\n")
    return {"rz": str(rz), "lz": str(lz), "bad": str(bad), "z5": str(z5)}


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--coeffs", "0,1/4")
    assert code == 0
    cert = DistalityCertificate.from_json(json.loads(out))
    assert cert.depth == 1 and cert.head == PhasePolynomial(["0", "1/4"])


def test_bicyclic_mul(capsys):
    code, out, _ = run(capsys, "bicyclic", "mul", "2", "3", "1", "2")
    assert code == 0 and out.strip() == '{"m":2,"n":4}'


def test_bicyclic_eval(capsys):
    assert json.loads(run(capsys, "bicyclic", "eval-f1", "--mu", "1/4", "--nu", "0", "3", "1")[1])["phase"] == "1/2"
    out = run(capsys, "bicyclic", "eval-f2", "--lambda", "1/4", "--mu", "1/2", "--nu", "0", "2", "0")[1]
    assert json.loads(out)["phase"] == "3/4"


def test_bicyclic_verify_and_collapse(capsys):
    code, out, _ = run(capsys, "bicyclic", "verify-f2", "--window", "20")
    assert code == 0 and json.loads(out)["instances"] == 100
    code, out, _ = run(capsys, "bicyclic", "verify-f2", "--window", "5", "--lambda", "1/4",
                       "--mu", "1/2", "--nu", "1/3")
    assert code == 0
    code, out, _ = run(capsys, "bicyclic", "collapse", "--relation", "p")
    assert code == 0 and json.loads(out)["constants_only"]


def test_mixed_modes_exit_2(capsys):
    code, _, err = run(capsys, "bicyclic", "eval-f2", "--lambda", "1/4", "--mu", "0.5", "--nu", "0", "1", "0")
    assert code == 2 and "mixed" in err
    assert run(capsys, "certify", "--coeffs", "1/3,0.25")[0] == 2


def test_finsgp(capsys, tables):
    code, out, _ = run(capsys, "finsgp", "solve-f1", tables["rz"])
    assert code == 0 and json.loads(out)["constants_only"]
    code, out, _ = run(capsys, "finsgp", "solve-f1", tables["lz"])
    assert json.loads(out)["function_dimension"] == 3
    assert run(capsys, "finsgp", "check-idempotents", tables["lz"])[0] == 0
    code, out, _ = run(capsys, "finsgp", "fk", "--k", "2", tables["rz"])
    assert code == 0 and json.loads(out)["nesting_verified"]
    code, out, _ = run(capsys, "finsgp", "chars", tables["z5"])
    assert json.loads(out)["span_dimension"] == 5
    assert run(capsys, "finsgp", "fk", "--k", "9", tables["rz"])[0] == 2


def test_io_and_usage_errors(capsys, tables, tmp_path):
    code, _, err = run(capsys, "finsgp", "solve-f1", tables["bad"])
    assert code == 2 and "associative" in err
    assert run(capsys, "finsgp", "solve-f1", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "avg", "--coeffs", "0,1/3")[0] == 2
    assert run(capsys, "certify", "--coeffs", "0,1/4", "-o", str(tmp_path / "no" / "dir.json"))[0] == 2


def test_verify(capsys, tmp_path):
    certfile = tmp_path / "c.json"
    assert run(capsys, "certify", "--coeffs", "0,0,1/8", "-o", str(certfile))[0] == 0
    code, out, _ = run(capsys, "verify", "--cert", str(certfile), "--shifts", "1,-1,5")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["max_error"] == 0 and "translations" in rep["note"]
    code, out, _ = run(capsys, "verify", "--cert", str(certfile), "--inject", "3:0.01")
    assert code == 1 and not json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--coeffs", "0,0,0.31", "--window", "100", "--shifts", "1,7")
    assert code == 0 and json.loads(out)["max_error"] < 1e-9


def test_recover(capsys, tmp_path):
    code, out, _ = run(capsys, "recover-f1", "--coeffs", "1/3,1/4")
    assert code == 0 and json.loads(out) == {"accepted": True, "lambda": "1/4", "lambda1": "1/3"}
    code, out, _ = run(capsys, "recover-f1", "--coeffs", "0,0,1/8")
    assert code == 1 and json.loads(out)["n"] == -1


def test_probe(capsys):
    code, out, _ = run(capsys, "probe-distal", "--coeffs", "0,1/4", "--pairs", "0:1", "--S", "32", "--M", "32")
    assert code == 0 and json.loads(out)["delta"] > 0.5
    assert run(capsys, "probe-distal", "--coeffs", "1/3", "--pairs", "0:1")[0] == 2


def test_ring(capsys):
    code, out, _ = run(capsys, "ring", "certify", "--moduli", "12", "--char", "5", "--poly", "0,1,0,2")
    rep = json.loads(out)
    assert code == 0 and rep["depth"] == 3 and rep["passed"]


def test_avg_csv_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "avg", "--coeffs", "0,0,0.7071067811865476", "--n", "1e5",
                       "--checkpoints", "1e3,1e4,1e5", "--out", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["N", "re(avg)", "im(avg)", "|avg|"]
    assert [int(r[0]) for r in rows[1:]] == [1000, 10000, 100000]
    code, out, _ = run(capsys, "avg", "--coeffs", "0,1/5", "--n", "5")
    assert json.loads(out)["checkpoints"][0]["abs"] == 0


def test_output_determinism_across_workers(capsys, tmp_path, monkeypatch):
    outs = []
    for w in ("1", "4"):
        monkeypatch.setenv("WEYLALG_THREADS", w)
        path = tmp_path / f"avg{w}.csv"
        assert run(capsys, "avg", "--coeffs", "0,0,0.31", "--n", "300000", "--checkpoints", "1e3,1e5",
                   "--out", "csv", "-o", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_equidist(capsys):
    code, out, _ = run(capsys, "equidist", "--coeffs", "0,0.6180339887498949", "--n", "1e5", "--bins", "100")
    assert code == 0 and json.loads(out)["equidistributed"]
    assert json.loads(run(capsys, "equidist", "--coeffs", "0,1/2", "--n", "100")[1])["degenerate"]


def test_full_precision_floats(capsys):
    out = run(capsys, "certify", "--coeffs", "0,0.1234567890123456789")[1]
    assert json.loads(out)["chain"][0]["coeffs"][1] == 0.1234567890123456789


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "weylalg", "bicyclic", "mul", "0", "1", "1", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"m": 0, "n": 0}
