import json

import pytest

from oredim import cli
from oredim.chains import build_degree_p_attachment
from oredim.fields import PrimeField
from oredim.groupring import GroupRingElement, GroupRingMatrix
from oredim.groups import DihedralInfinite, Zd
from oredim.jsonio import encode_complex, encode_matrix

F2 = PrimeField(2)
F3 = PrimeField(3)


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def z_module_path(tmp_path):
    matrix = GroupRingMatrix(F2, Zd(1), 1, 1, {
        (0, 0): GroupRingElement(F2, Zd(1), {(1,): 1, (0,): 1})})
    return write_json(tmp_path / "zminus1.json", encode_matrix(matrix))


@pytest.fixture
def dihedral_module_path(tmp_path):
    matrix = GroupRingMatrix(F3, DihedralInfinite(), 1, 1, {
        (0, 0): GroupRingElement(F3, DihedralInfinite(), {(0, 1): 1, (0, 0): -1})})
    return write_json(tmp_path / "sminus1.json", encode_matrix(matrix))


@pytest.fixture
def heisenberg_module_path(tmp_path):
    from oredim.groups import Heisenberg
    matrix = GroupRingMatrix(F2, Heisenberg(), 1, 1, {
        (0, 0): GroupRingElement(F2, Heisenberg(), {(1, 0, 0): 1, (0, 0, 0): 1})})
    return write_json(tmp_path / "heis.json", encode_matrix(matrix))


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ore_command(z_module_path, capsys):
    code, out, _ = run(capsys, ["ore", "--input", z_module_path])
    assert code == 0
    assert out.splitlines() == [
        "method,level,normalizer,raw,normalized,certified",
        "ore,0,1,0,0/1,true"]


def test_approx_command_quotient_rows(z_module_path, capsys):
    code, out, _ = run(capsys, ["approx", "--input", z_module_path,
                                "--levels", "2,4,8"])
    assert code == 0
    lines = out.splitlines()
    assert "quotient-betti,2,2,1,1/2,true" in lines
    assert "quotient-betti,4,4,1,1/4,true" in lines
    assert "quotient-betti,8,8,1,1/8,true" in lines


def test_approx_writes_csv_file(z_module_path, tmp_path, capsys):
    out_path = tmp_path / "t.csv"
    code, out, _ = run(capsys, ["approx", "--input", z_module_path,
                                "--levels", "2,4,8", "--out", str(out_path)])
    assert code == 0 and out == ""
    content = out_path.read_text()
    assert content.startswith("method,level,normalizer,raw,normalized,certified\n")
    assert "quotient-betti,8,8,1,1/8,true" in content


def test_unsupported_operation_exit_3(heisenberg_module_path, capsys):
    code, _, err = run(capsys, ["ore", "--input", heisenberg_module_path])
    assert code == 3
    assert err.strip() == \
        "Ore dimension directly computable only for Zd; use approximation"


def test_schema_error_exit_2_names_path(tmp_path, capsys):
    bad = write_json(tmp_path / "bad.json", {
        "group": {"type": "Zd", "d": 1}, "field": {"type": "Fp", "p": 2},
        "rows": 1, "cols": 1,
        "entries": [{"row": 0, "col": 0,
                     "terms": [{"coeff": True, "g": [1]}]}]})
    code, _, err = run(capsys, ["ore", "--input", bad])
    assert code == 2
    assert "entries[0].terms[0].coeff" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, ["ore", "--input", "/nonexistent/mod.json"])
    assert code == 2 and "error:" in err


def test_invalid_levels_exit_2(z_module_path, capsys):
    code, _, err = run(capsys, ["approx", "--input", z_module_path,
                                "--levels", "4,2"])
    assert code == 2 and "--levels" in err


def test_invalid_tol_exit_2(z_module_path, capsys):
    code, _, err = run(capsys, ["approx", "--input", z_module_path,
                                "--tol", "0"])
    assert code == 2 and "--tol" in err


def test_invalid_threads_exit_2(z_module_path, capsys, monkeypatch):
    monkeypatch.setenv("OREDIM_THREADS", "zero")
    code, _, err = run(capsys, ["approx", "--input", z_module_path])
    assert code == 2 and "OREDIM_THREADS" in err


def test_determinism_across_thread_counts(z_module_path, capsys, monkeypatch):
    outputs = []
    for threads in (None, "1", "3"):
        if threads is None:
            monkeypatch.delenv("OREDIM_THREADS", raising=False)
        else:
            monkeypatch.setenv("OREDIM_THREADS", threads)
        code, out, _ = run(capsys, ["approx", "--input", z_module_path,
                                    "--levels", "2,4,8", "--format", "json"])
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_vdim_command(dihedral_module_path, capsys):
    code, out, _ = run(capsys, ["vdim", "--input", dihedral_module_path])
    assert code == 0
    assert "virtual-ore,0,2,1,1/2,true" in out.splitlines()


def test_folner_command(z_module_path, capsys):
    code, out, _ = run(capsys, ["folner", "--input", z_module_path,
                                "--levels", "4,8"])
    assert code == 0
    lines = out.splitlines()
    assert "elek-truncation,4,4,0,0/1,true" in lines
    assert "elek-truncation,8,8,0,0/1,true" in lines


def test_homology_command(tmp_path, capsys):
    complex_path = write_json(
        tmp_path / "cx.json",
        encode_complex(build_degree_p_attachment(2, 2, F2)))
    code, out, _ = run(capsys, ["homology", "--input", complex_path,
                                "--levels", "2,4"])
    assert code == 0
    lines = out.splitlines()
    assert "ore-h2,0,1,1,1/1,true" in lines
    assert "ore-h3,0,1,1,1/1,true" in lines
    assert "quotient-h2,4,4,4,1/1,true" in lines


def test_betti_finite_command(tmp_path, capsys):
    request = write_json(tmp_path / "betti.json", {
        "d": 2, "n": [2, 4], "i_max": 2, "field": {"type": "Fp", "p": 2}})
    code, out, _ = run(capsys, ["betti-finite", "--input", request])
    assert code == 0
    lines = out.splitlines()
    assert "finite-betti-b1,2,4,2,1/2,true" in lines
    assert "finite-betti-b2,4,16,3,3/16,true" in lines


def test_json_report_reparses(z_module_path, capsys):
    code, out, _ = run(capsys, ["approx", "--input", z_module_path,
                                "--levels", "2,4", "--format", "json"])
    assert code == 0
    records = cli.parse_report(out)
    assert any(r.method == "ore" for r in records)
    payload = json.loads(out)
    assert payload["tol"] == "1/20"
    assert set(payload["agreement"]) == {"quotient-betti", "elek-truncation"}


def test_certified_gate_surfaces_as_exit_3(tmp_path, capsys):
    group = Zd(1)
    matrix = GroupRingMatrix(F2, group, 9, 9, {
        (i, i): GroupRingElement(F2, group, {(1,): 1}) for i in range(9)})
    path = write_json(tmp_path / "big.json", encode_matrix(matrix))
    code, _, err = run(capsys, ["ore", "--input", path, "--rank-alg", "bareiss"])
    assert code == 3 and "certified rank" in err


def test_selftest_aggregation(monkeypatch, capsys):
    from oredim import selftest

    monkeypatch.setattr(selftest, "CRITERIA",
                        (("always-good", lambda: (True, "fine")),))
    assert cli.main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] always-good: fine" in out

    monkeypatch.setattr(selftest, "CRITERIA",
                        (("always-good", lambda: (True, "fine")),
                         ("always-bad", lambda: (False, "broken"))))
    assert cli.main(["selftest"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] always-bad: broken" in out
