import json

import pytest

import hitforge.cli as cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_dim_command(tmp_path, capsys):
    code, out = run(capsys, "dim", "--k", "2", "--n", "3", "--cache-dir", str(tmp_path))
    assert code == 0 and out == "3\n"
    code, out = run(capsys, "dim", "--k", "1", "--n", "4", "--cache-dir", str(tmp_path))
    assert code == 0 and out == "0\n"
    code, out = run(
        capsys, "dim", "--k", "4", "--n", "5", "--format", "json", "--cache-dir", str(tmp_path)
    )
    assert code == 0 and json.loads(out) == {"k": 4, "n": 5, "dim": 15}
    code, out = run(
        capsys, "dim", "--k", "4", "--n", "5", "--format", "csv", "--cache-dir", str(tmp_path)
    )
    assert out == "k,n,dim\n4,5,15\n"


def test_basis_command(tmp_path, capsys):
    code, out = run(capsys, "basis", "--k", "2", "--n", "3", "--cache-dir", str(tmp_path))
    assert code == 0
    assert out.splitlines() == ["x2^3", "x1*x2^2", "x1^3"]
    code, out = run(capsys, "basis", "--k", "4", "--n", "0", "--cache-dir", str(tmp_path))
    assert out == "1\n"


def test_basis_split_and_json(tmp_path, capsys):
    code, out = run(
        capsys,
        "basis", "--k", "4", "--n", "13", "--split", "plus", "--cache-dir", str(tmp_path),
    )
    assert code == 0 and len(out.splitlines()) == 23
    code, out = run(
        capsys,
        "basis", "--k", "2", "--n", "3", "--format", "json", "--cache-dir", str(tmp_path),
    )
    payload = json.loads(out)
    assert payload == {
        "k": 2,
        "n": 3,
        "dim": 3,
        "order": "omega-sigma-left-lex-v1",
        "basis": [[0, 3], [1, 2], [3, 0]],
    }
    code, out = run(
        capsys,
        "basis", "--k", "2", "--n", "3", "--format", "csv", "--cache-dir", str(tmp_path),
    )
    assert out == "e1,e2\n0,3\n1,2\n3,0\n"


def test_split_partitions(tmp_path, capsys):
    _, all_out = run(capsys, "basis", "--k", "3", "--n", "7", "--cache-dir", str(tmp_path))
    _, zero_out = run(
        capsys, "basis", "--k", "3", "--n", "7", "--split", "zero", "--cache-dir", str(tmp_path)
    )
    _, plus_out = run(
        capsys, "basis", "--k", "3", "--n", "7", "--split", "plus", "--cache-dir", str(tmp_path)
    )
    assert sorted(all_out.splitlines()) == sorted(
        zero_out.splitlines() + plus_out.splitlines()
    )


def test_apply_command(capsys):
    code, out = run(capsys, "apply", "--sq", "1", "x1*x2")
    assert code == 0 and out == "x1^2*x2 + x1*x2^2\n"
    code, out = run(capsys, "apply", "--phi", "(1;2,3,4)", "(12,6,9)")
    assert code == 0 and out == "x1^7*x2^8*x3^4*x4^8\n"
    code, out = run(capsys, "apply", "--kameko", "x1^3*x2^3*x3*x4")
    assert code == 0 and out == "x1*x2\n"
    code, out = run(capsys, "apply", "--psi", "x1*x2", "--k", "3")
    assert code == 0 and out == "x1^3*x2^3*x3\n"
    code, out = run(capsys, "apply", "--p", "(2;3,4)", "x2", "--k", "4")
    assert code == 0 and out == "x2 + x3\n"
    code, out = run(capsys, "apply", "--f", "1", "x1*x2*x3")
    assert code == 0 and out == "x2*x3*x4\n"
    code, out = run(capsys, "apply", "--gl", "2", "x1*x2^2")
    assert code == 0 and out == "x1^2*x2\n"
    code, out = run(capsys, "apply", "--gl", "1", "x1", "--k", "2")
    assert code == 0 and out == "x1 + x2\n"


def test_usage_errors_exit_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["dim", "--k", "2"])  # missing --n
    assert exc.value.code == 2
    code, _ = run(capsys, "apply", "--sq", "1", "x1 ++ x2")
    assert code == 2
    code, _ = run(capsys, "dim", "--k", "2", "--n", "-1", "--cache-dir", str(tmp_path))
    assert code == 2


def test_verify_suite_pass(tmp_path, capsys):
    code, out = run(
        capsys, "verify", "--suite", "theorem-1-3", "--cache-dir", str(tmp_path)
    )
    assert code == 0
    assert out.startswith("suite theorem-1-3\n")
    assert out.rstrip().endswith("theorem-1-3: 6/6 rows ok")


def test_verify_mismatch_exits_1(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(cli, "QP4_TABLE_CELLS", [("fake", 1, 1, 999)])
    code, out = run(capsys, "verify", "--suite", "qp4-table", "--cache-dir", str(tmp_path))
    assert code == 1
    assert "expected 999, computed 4, FAIL" in out


def test_outputs_are_deterministic(tmp_path, capsys):
    args = ("basis", "--k", "3", "--n", "8", "--format", "json", "--cache-dir", str(tmp_path))
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)  # second run reads the cache
    assert first == second
    args = ("verify", "--suite", "theorem-1-3", "--cache-dir", str(tmp_path))
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second


def test_threads_flag_keeps_output_identical(tmp_path, capsys):
    base = ("verify", "--suite", "theorem-1-3", "--cache-dir", str(tmp_path))
    _, serial = run(capsys, *base)
    _, threaded = run(capsys, *base, "--threads", "4")
    assert serial == threaded


def test_cache_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HITFORGE_CACHE_DIR", str(tmp_path / "envcache"))
    code, out = run(capsys, "dim", "--k", "2", "--n", "6")
    assert code == 0 and out == "1\n"
    assert (tmp_path / "envcache" / "k2" / "n6.hitf2").exists()
