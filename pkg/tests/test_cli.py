import json

import pytest

from codimkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_catalog_example(capsys):
    code, out, _ = run(capsys, "catalog", "--name", "E", "--terms", "8")
    assert code == 0
    assert out.strip() == '{"offset":0,"terms":["1","1","2","4","8","16","32","64"]}'


def test_catalog_list_and_notes(capsys):
    names = run_json(capsys, "catalog", "--list")["names"]
    assert {"K", "E", "M2", "EtensorE", "f4T", "f5T", "s4T", "cbmT", "hallT"} <= set(names)
    out = run_json(capsys, "catalog", "--name", "M2", "--terms", "6", "--notes")
    assert out["terms"] == ["1", "1", "2", "6", "23", "91"] and out["notes"]


def test_tideal_prod(capsys):
    out = run_json(capsys, "tideal-prod", "--left", "K", "--right", "K", "--terms", "6", "--variant", "derived")
    assert out["terms"] == ["1", "1", "2", "6", "18", "50"]
    out = run_json(capsys, "tideal-prod", "--left", "cat:K", "--right", "cat:K", "--terms", "5", "--variant", "paper")
    assert out["terms"] == ["2", "3", "7", "21", "67"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "m2-exp-closed-form", "--order", "25")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "verify", "--identity", "m2-perturbed")
    assert code == 1 and json.loads(out)["ok"] is False


@pytest.mark.parametrize("identity", ["etensore-exp-closed-form", "chebyshev-i2", "f5-proper",
                                      "m2-ordinary-closed-form", "etensore-ordinary-closed-form"])
def test_verify_all(capsys, identity):
    code, out, _ = run(capsys, "verify", "--identity", identity, "--order", "15")
    assert code == 0 and json.loads(out)["ok"] is True


def test_expand_and_products(capsys):
    assert run_json(capsys, "expand", "--input", "rat:1/1,-2", "--terms", "4")["terms"] == ["1", "2", "4", "8"]
    out = run_json(capsys, "lr-prod", "--left", "rat:1/1,-1", "--right", "cat:E", "--terms", "5", "--closed-form")
    assert out["terms"] == ["1", "2", "5", "14", "41"]
    assert out["rational"] == {"num": ["1", "-2"], "den": ["1", "-4", "3"]}
    out = run_json(capsys, "hadamard", "--left", "cat:E", "--right", "cat:E", "--terms", "4")
    assert out["terms"] == ["1", "1", "4", "16"]


def test_sequence_file(capsys, tmp_path):
    path = tmp_path / "seq.json"
    path.write_text(json.dumps({"offset": 0, "terms": ["1", "1/2", "1/4"]}))
    out = run_json(capsys, "hadamard", "--left", str(path), "--right", str(path), "--terms", "3")
    assert out["terms"] == ["1", "1/4", "1/16"]


def test_guess(capsys):
    out = run_json(capsys, "guess", "--input", "cat:E", "--kind", "rational")
    assert out["found"] and out["model"] == {"num": ["1", "-1"], "den": ["1", "-2"]}
    out = run_json(capsys, "guess", "--input", "cat:E", "--kind", "recurrence")
    assert out["found"] and out["model"]["coeffs"] == ["2"]
    out = run_json(capsys, "guess", "--input", "cat:M2", "--kind", "algebraic", "--terms", "60", "--max-tdeg", "12")
    assert out["found"] and len(out["model"]["coeffs"]) == 3


def test_proper(capsys):
    out = run_json(capsys, "proper", "--input", "cat:E", "--direction", "to-proper", "--terms", "6")
    assert out["terms"] == ["1", "0", "1", "0", "1", "0"]
    out = run_json(capsys, "proper", "--input", "rat:1/1", "--direction", "to-codim", "--terms", "4",
                   "--finite-support")
    assert out["terms"] == ["1", "1", "1", "1"]


def test_oracle(capsys):
    out = run_json(capsys, "oracle", "--generator", "comm2", "--times", "comm2", "--n", "4")
    assert out["codimension"] == 18 and out["seed"] == 20240517 and len(out["primes"]) == 2
    out = run_json(capsys, "oracle", "--generator", "[x1,x2,x3]", "--n", "4", "--exact")
    assert out["codimension"] == 8 and out["exact_rank"] == 16


def test_asymptotics(capsys):
    out = run_json(capsys, "asymptotics", "--name", "M2", "--cutoff", "300")
    assert out["nearest"] == 4


def test_table_format(capsys):
    code, out, _ = run(capsys, "catalog", "--name", "E", "--terms", "3", "--format", "table")
    assert code == 0 and out.split() == ["0", "1", "1", "1", "2", "2"]
    code, out, _ = run(capsys, "--format", "table", "catalog", "--name", "E", "--terms", "3")
    assert code == 0 and out.split() == ["0", "1", "1", "1", "2", "2"]


@pytest.mark.parametrize("argv, kind", [
    (["catalog", "--name", "ZZ"], "unknown catalog name"),
    (["expand", "--input", "/nonexistent/seq.json"], "malformed sequence file"),
    (["expand", "--input", "rat:1,a/1"], "malformed rational"),
    (["oracle", "--generator", "[x1,", "--n", "3"], "malformed generator"),
    (["oracle", "--generator", "comm2", "--n", "7"], "budget exceeded"),
])
def test_errors(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith(f"codimkit: error: {kind}:")


def test_bad_file_contents(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "expand", "--input", str(path))
    assert code == 2 and "malformed sequence file" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_deterministic(capsys):
    argv = ["oracle", "--generator", "s4", "--n", "5", "--seed", "11"]
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)


def test_verbose_logs_seed(capsys):
    code, _, err = run(capsys, "-v", "oracle", "--generator", "comm2", "--n", "3")
    assert code == 0 and "seed=20240517" in err
