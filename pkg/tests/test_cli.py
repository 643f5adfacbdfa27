import json

import pytest
from gmpy2 import mpq

from deformed_cm import cli
from deformed_cm.cmbuild import CMSystem
from deformed_cm.serialize import op_dumps, op_loads
from deformed_cm.verify import Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gamma_text_and_json(capsys):
    code, out, _ = run(capsys, "gamma", "--k", "2", "--g2", "1", "--g3", "1")
    assert code == 0
    assert out.split("\n")[:2] == ["gamma_2 = 1/20", "gamma_4 = 1/28"]
    code, out, _ = run(capsys, "gamma", "--k", "3", "--g2", "2/3", "--g3", "1", "--json")
    data = json.loads(out)
    assert [mpq(data["gamma"][k]) for k in ("2", "4", "6")] == [mpq(1, 30), mpq(1, 28), mpq(1, 2700)]


def test_gamma_usage_error(capsys):
    assert run(capsys, "gamma", "--k", "0")[0] == 2
    assert run(capsys, "gamma", "--k", "x")[0] == 2


def test_build_two_particles(capsys):
    code, out, _ = run(capsys, "build", "I", "--n", "2", "--m", "1/2")
    assert code == 0
    obj = json.loads(out)
    assert obj["m"] == "1/2" and obj["n"] == 2
    assert [t["d"] for t in obj["terms"]] == [[0, 0], [1, 1], [2, 0]]
    assert obj["terms"][0]["coeff"] == [{"c": "3/2", "mon": [{"exp": 1, "kind": "P", "pair": [1, 2]}]}]
    assert obj["terms"][2]["coeff"] == [{"c": "1/4", "mon": []}]


def test_build_is_byte_stable(capsys):
    a = run(capsys, "build", "I", "--n", "3")[1]
    b = run(capsys, "build", "I", "--n", "3")[1]
    assert a == b
    assert op_dumps(op_loads(a.strip())) == op_dumps(CMSystem(3, 2).I())


@pytest.mark.parametrize("argv", [["build", "D", "--n", "3", "--m", "2", "--k", "4"],
                                  ["build", "theta", "--n", "3", "--set", "1,3"],
                                  ["build", "X", "--n", "4", "--g2", "1", "--g3", "2"],
                                  ["build", "H", "--n", "3"],
                                  ["build", "L", "--n", "3", "--k", "2"]])
def test_build_objects(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["terms"]


@pytest.mark.parametrize("argv", [["build", "Q", "--n", "2"], ["build", "I", "--n", "1"],
                                  ["build", "D", "--n", "2"], ["build", "L", "--n", "2", "--k", "5"],
                                  ["build", "L", "--n", "2", "--m", "0", "--k", "1"],
                                  ["verify", "integral", "--n", "1"], ["verify", "bogus"],
                                  ["verify", "integral", "--m", "0"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_integral_elliptic(capsys):
    code, out, err = run(capsys, "verify", "integral", "--n", "4", "--m", "3/2", "--backend", "elliptic",
                         "--trials", "5", "--seed", "7")
    assert code == 0
    reps = [Report.from_json(l) for l in out.splitlines()]
    assert len(reps) == 1 and reps[0].passed and reps[0].seed == 7
    assert "PASS integral" in err


def test_verify_tower_and_alias(capsys):
    code, out, _ = run(capsys, "verify", "tower", "--n", "3", "--m", "2")
    assert code == 0
    assert run(capsys, "tower", "--n", "3", "--m", "2")[1] == out


def test_lemma3_single_k(capsys):
    code, out, _ = run(capsys, "lemma3", "--k", "7", "--order", "24")
    assert code == 0
    assert [json.loads(l)["name"] for l in out.splitlines()] == ["laurent_Y", "laurent_W"]


def test_failing_identity_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "lemmas", "--n", "3", "--identity", "htheta", "--trials", "1")
    assert code == 1
    assert json.loads(out)["status"] == "FAIL"


def test_order_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.ORDER_ENV, "8")
    assert run(capsys, "lemma3", "--k", "10")[0] == 2
    monkeypatch.setenv(cli.ORDER_ENV, "junk")
    assert run(capsys, "lemma3", "--k", "2")[0] == 2


def test_config_file_and_output(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 3, "m": "2", "backend": "trig", "trials": 2}))
    dest = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "verify", "integral", "--config", str(cfg), "-o", str(dest))
    assert code == 0 and out == ""
    rep = Report.from_json(dest.read_text().strip())
    assert rep.backend["name"] == "trig" and rep.trials == 2 and rep.m_values == ["2/1"]
    # flags beat the config file
    run(capsys, "verify", "integral", "--config", str(cfg), "--trials", "1", "-o", str(dest))
    assert Report.from_json(dest.read_text().strip()).trials == 1


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("[1, 2]")
    assert run(capsys, "verify", "integral", "--config", str(cfg))[0] == 2
    assert run(capsys, "verify", "integral", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "deformed_cm", "gamma", "--k", "1", "--g2", "20"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "gamma_2 = 1/1"
