import subprocess
import sys

import pytest

from tempbranch.cli import main
from tempbranch.formats import serialize_cnf

from conftest import NAE_EXAMPLE


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def nae_files(tmp_path, capsys):
    cnf = tmp_path / "f3.cnf"
    cnf.write_text(serialize_cnf(NAE_EXAMPLE))
    code, out, _ = run(capsys, "reduce", "nae-vertex", cnf)
    assert code == 0
    inst = tmp_path / "f3.tdg"
    inst.write_text(out)
    return cnf, inst


def test_solve_then_verify(nae_files, tmp_path, capsys):
    _, inst = nae_files
    code, out, _ = run(capsys, "solve", "--spanning", "vertex", "--disjoint", "edge", inst)
    assert code == 0 and out.startswith("sol 1")
    sol = tmp_path / "f3.sol"
    sol.write_text(out)
    code, _, err = run(capsys, "verify", "--spanning", "vertex", "--disjoint", "edge", inst, sol)
    assert code == 0 and "valid" in err


def test_poly_on_np_complete_cell(nae_files, capsys):
    _, inst = nae_files
    code, out, err = run(capsys, "solve", "--spanning", "vertex", "--disjoint", "t-edge", "--method", "poly", inst)
    assert code == 4 and out == "" and "NP-complete" in err


def test_reduce_star_lifetime(nae_files, capsys):
    cnf, _ = nae_files
    code, out, _ = run(capsys, "reduce", "nae-star", cnf)
    assert code == 0 and out.splitlines()[0] == "tdg 1 lifetime 11"


def test_negative_literal_exit_2(tmp_path, capsys):
    cnf = tmp_path / "bad.cnf"
    cnf.write_text("p cnf 3 1\n1 -2 3 0\n")
    code, out, err = run(capsys, "reduce", "nae-star", cnf)
    assert code == 2 and out == "" and "positive" in err


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.tdg"
    bad.write_text("tdg 1\nv a\nactive a 1\nte e 1 1\n")
    code, _, err = run(capsys, "solve", "--spanning", "temporal", "--disjoint", "edge", bad)
    assert code == 2 and "line 4" in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--spanning", "sideways"])
    assert info.value.code == 2


def test_infeasible_solve_and_verify(tmp_path, capsys):
    inst = tmp_path / "i.tdg"
    inst.write_text("tdg 1\nv a\nv b\nactive a 1\nactive b 1\ne e a b\nte e 1 1\nroots 1\nr a 1\n")
    code, out, _ = run(capsys, "solve", "--spanning", "temporal", "--disjoint", "t-edge", "--k", 2, inst)
    assert code == 3 and out == "INFEASIBLE\n"
    sol = tmp_path / "i.sol"
    sol.write_text(out)
    code, _, err = run(capsys, "verify", "--k", 2, inst, sol)
    assert code == 3 and "infeasible" in err
    forged = tmp_path / "forged.sol"
    forged.write_text("sol 1\nvariant temporal t-edge\nb 1\nactive a 1\nactive b 1\nte e 1 1\n"
                      "b 2\nactive a 1\nactive b 1\nte e 1 1\n")
    code, _, err = run(capsys, "verify", "--k", 2, inst, forged)
    assert code == 3 and "disjoint" in err


def test_k_mismatch(tmp_path, capsys):
    inst = tmp_path / "i.tdg"
    inst.write_text("tdg 1\nv a\nactive a 1\nroots 1\nr a 1\nroots 2\nr a 1\n")
    code, _, err = run(capsys, "solve", "--spanning", "temporal", "--disjoint", "edge", "--k", 3, inst)
    assert code == 2 and "--k 3" in err


def test_gen_deterministic(capsys):
    args = ["gen", "--vertices", 4, "--lifetime", 3, "--edge-prob", 0.4, "--seed", 9]
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    c = run(capsys, *args[:-1], 10)[1]
    assert a == b and a != c
    interval = run(capsys, *args, "--interval-activity")[1]
    assert interval.startswith("tdg 1")


def test_oracle_scale_guard(tmp_path, capsys):
    lines = ["tdg 1", "v a", "v b", "active a 1-6", "active b 1-6", "e e a b"]
    lines += [f"te e {t} {s}" for t in range(1, 7) for s in range(t, 7)]
    lines += ["roots 1", "r a 1"]
    inst = tmp_path / "big.tdg"
    inst.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "oracle", "--spanning", "temporal", "--disjoint", "edge", inst)
    assert code == 4 and "oracle limit" in err


def test_reduce_single_source_and_lift(tmp_path, capsys):
    inst = tmp_path / "i.tdg"
    inst.write_text("tdg 1\nv a\nactive a 1\nroots 1\nr a 1\n")
    code, out, _ = run(capsys, "reduce", "single-source", inst)
    assert code == 0 and "r r 0" in out
    code, out, _ = run(capsys, "reduce", "lift-roots", inst)
    assert code == 0 and "roots 2" in out


def test_reduce_wdp(tmp_path, capsys):
    w = tmp_path / "w.txt"
    w.write_text("wdp 1\nv a\nv b\nv c\nv d\ne e1 a b\ne e2 c d\nreq a b\nreq c d\n")
    code, out, err = run(capsys, "reduce", "wdp", w)
    assert code == 0 and "--disjoint edge" in err
    inst = tmp_path / "w.tdg"
    inst.write_text(out)
    code, _, _ = run(capsys, "solve", "--spanning", "temporal", "--disjoint", "edge", inst)
    assert code == 0


def test_entry_point_no_color(tmp_path):
    missing = tmp_path / "missing.tdg"
    proc = subprocess.run(
        [sys.executable, "-m", "tempbranch", "solve", "--spanning", "temporal", "--disjoint", "edge", str(missing)],
        capture_output=True, text=True, env={"NO_COLOR": "1", "PATH": ""},
    )
    assert proc.returncode == 2
    assert "\033[" not in proc.stderr and "cannot read" in proc.stderr
