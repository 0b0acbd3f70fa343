import json

from whitehead.cli import main

S2 = '{"name": "S2", "spheres": [2]}'


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path), "--degree", "12"])


def reports(tmp_path, prefix):
    return sorted(tmp_path.glob(f"{prefix}-*.json"))


def test_verify_spheres(tmp_path, capsys):
    assert run(tmp_path, "verify", S2, S2) == 0
    (path,) = reports(tmp_path, "verify")
    data = json.loads(path.read_text())
    assert [r["identity"] for r in data["reports"]] == ["theorem3a", "cor35a", "cor35b", "theorem2", "SQ", "kernel"]
    assert all(r["verdict"] == "equal" for r in data["reports"])


def test_verify_from_file(tmp_path):
    doc = tmp_path / "g.json"
    doc.write_text(json.dumps({"name": "M", "reduced_dims": {"3": 1, "4": 1}}))
    assert run(tmp_path, "verify", str(doc), S2) == 0


def test_verify_malformed(tmp_path, capsys):
    assert run(tmp_path, "verify", "{not json", S2) == 2
    assert run(tmp_path, "verify", str(tmp_path / "missing.json"), S2) == 2
    assert run(tmp_path, "verify", '{"name": "x"}', S2) == 2


def test_verify_not_simply_connected(tmp_path, capsys):
    assert run(tmp_path, "verify", '{"spheres": [1]}', S2) == 2
    assert "not simply connected" in capsys.readouterr().err


def test_verify_lie(tmp_path):
    assert run(tmp_path, "verify", "lie", S2, S2) == 0
    (path,) = reports(tmp_path, "verify-lie")
    data = json.loads(path.read_text())
    assert data["free_lie_dims"][:4] == [0, 2, 3, 2]
    assert data["pbw_roundtrip"] is True


def test_reports_are_deterministic(tmp_path):
    run(tmp_path, "verify", S2, '{"spheres": [2, 3]}')
    (path,) = reports(tmp_path, "verify")
    first = path.read_bytes()
    run(tmp_path, "verify", S2, '{"spheres": [2, 3]}')
    assert path.read_bytes() == first


def test_peel(tmp_path):
    assert run(tmp_path, "peel", S2, S2, "--k", "4") == 0
    (path,) = reports(tmp_path, "peel")
    trace = json.loads(path.read_text())["trace"]
    assert [t["k"] for t in trace] == [1, 2, 3, 4]
    assert all(t["conservation"] == "pass" for t in trace)


def test_oracle(tmp_path):
    assert run(tmp_path, "oracle", S2, S2, "--cap", "8") == 0
    (path,) = reports(tmp_path, "oracle")
    rows = json.loads(path.read_text())["degrees"]
    assert len(rows) == 8 and all(r["verdict"] == "pass" for r in rows)


def test_oracle_rationals(tmp_path):
    assert run(tmp_path, "oracle", S2, S2, "--cap", "5", "--field", "Q") == 0


def test_bad_field(tmp_path):
    assert run(tmp_path, "oracle", S2, S2, "--field", "100") == 2


def test_telescope_prop11(tmp_path):
    doc = {"check": "prop11", "field": 5, "E": {"2": [[4, 0], [0, 0]], "3": [[0]]}}
    assert run(tmp_path, "telescope", json.dumps(doc)) == 0


def test_telescope_precondition(tmp_path, capsys):
    doc = {"check": "prop11", "field": 5, "E": {"2": [[0, 1], [1, 1]]}}
    assert run(tmp_path, "telescope", json.dumps(doc)) == 2
    assert "precondition" in capsys.readouterr().err


def test_telescope_prop13_and_circle(tmp_path):
    doc = {"check": "prop13", "field": 5, "F1": {"2": [[1, 2], [0, 3]]}, "F2": {"2": [[0, 1], [4, 4]]}}
    assert run(tmp_path, "telescope", json.dumps(doc)) == 0
    doc = {"check": "circle", "X": {"spheres": [2]}, "Y": {"spheres": [2]}, "cap": 6}
    assert run(tmp_path, "telescope", json.dumps(doc)) == 0


def test_degree_floor(tmp_path):
    assert main(["verify", S2, S2, "--degree", "3", "--out", str(tmp_path)]) == 2


def test_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("WHITEHEAD_OUT", str(tmp_path / "env"))
    assert main(["verify", S2, S2, "--degree", "8"]) == 0
    assert list((tmp_path / "env").glob("verify-*.json"))
