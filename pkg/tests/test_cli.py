import json
import subprocess
import sys

from matrep.cli import load_system, main
from matrep.matroid import catalog, serialize_matroid
from matrep.solver import SolutionPoint
from matrep.sysgen import system_from_matroid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_and_show(capsys, tmp_path):
    assert run(capsys, "validate", "--catalog", "fano")[:2] == (0, "valid matroid: n=7 r=3 bases=28\n")
    code, out, _ = run(capsys, "show", "--catalog", "uniform:2:3")
    assert out.splitlines() == ["n 3", "r 2", "basis 1 2", "basis 1 3", "basis 2 3"]
    path = tmp_path / "m.txt"
    path.write_text("n 4\nr 2\nbasis 1 2\nbasis 3 4\n")
    code, _, err = run(capsys, "validate", "--file", str(path))
    assert code == 1 and "ExchangeViolation" in err


def test_compute_f_and_c(capsys):
    assert run(capsys, "compute-f", "--catalog", "uniform:2:4")[:2] == (0, "f = 3\n")
    assert run(capsys, "compute-f", "--catalog", "uniform:2:7", "--q-max", "5")[:2] == (2, "f = unknown (caps: q <= 5)\n")
    assert run(capsys, "compute-c", "--catalog", "nonfano")[:2] == (0, "c = 3\n")


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "--catalog", "uniform:2:4", "--q", "3")
    assert code == 0 and out.splitlines()[1:] == ["1 0 1 1", "0 1 1 2"]
    code, out, _ = run(capsys, "represent", "--catalog", "uniform:2:4", "--q", "2", "--format", "json")
    assert code == 0 and json.loads(out) == {"status": "none", "field": "GF(2^1)/x", "rows": None}


def test_gen_system_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "gen-system", "--catalog", "uniform:2:4", "--formulation", "per_basis_dummies")
    assert code == 0
    S = load_system(json.loads(out))
    assert S.polys == system_from_matroid(catalog("uniform:2:4"), "per_basis_dummies").expanded()
    path = tmp_path / "s.json"
    path.write_text(out)
    code, out, _ = run(capsys, "solve", "--file", str(path), "--q", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data.pop("status") == "found"
    pt = SolutionPoint.from_json(data)
    for f in S.expanded():
        assert pt.field.eval_poly_codes(f, pt.codes) == 0


def test_params(capsys):
    code, out, _ = run(capsys, "params", "--catalog", "fano", "--format", "json")
    data = json.loads(out)
    assert code == 0 and (data["s"], data["t"], data["d"]) == (8, 22, 85)


def test_solve_inconclusive_exits_2(capsys):
    code, out, _ = run(capsys, "solve", "--catalog", "nonfano", "--p", "2", "--k-cap", "2")
    assert code == 2 and out.startswith("unknown")


def test_cert_and_scan(capsys):
    code, out, _ = run(capsys, "cert", "--catalog", "nonfano", "--p", "2", "--format", "json")
    assert code == 0 and json.loads(out)["domain"] == "GF(2)"
    code, out, _ = run(capsys, "scan-primes", "--catalog", "fano", "--p-max", "5")
    assert out.splitlines() == ["p = 2: consistent", "p = 3: inconsistent", "p = 5: inconsistent"]


def test_bounds_commands(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "8")
    assert code == 0 and out.splitlines()[0].endswith("2^2^32768")
    code, out, _ = run(capsys, "bounds", "--n", "8", "--format", "json")
    assert json.loads(out)["c"]["text"] == "2^2^32768"
    assert run(capsys, "bounds", "--n", "5")[0] == 1
    code, out, _ = run(capsys, "lower-bound", "--n", "21")
    assert "prime         = 131" in out
    code, out, _ = run(capsys, "primorial-check", "--max", "100")
    rows = out.splitlines()
    assert rows[0] == "a,primorial,threshold,pass" and len(rows) == 101
    assert all(r.endswith(",true") for r in rows[1:])


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "validate")[0] == 1
    code, _, err = run(capsys, "validate", "--catalog", "pappus")
    assert code == 1 and err.startswith("mf: UnknownName")


def test_file_input_matches_catalog(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(serialize_matroid(catalog("fano")))
    assert run(capsys, "compute-f", "--file", str(path))[1] == "f = 2\n"


def test_table1_is_deterministic(capsys):
    a = run(capsys, "table1", "--threads", "2")
    b = run(capsys, "table1", "--threads", "1")
    assert a[0] == 0 and a[1] == b[1]
    code, out, _ = run(capsys, "table1", "--format", "json")
    assert code == 0 and json.loads(out)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matrep.cli", "compute-f", "--catalog", "fano"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "f = 2\n"
