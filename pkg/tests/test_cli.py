import io
import json

import pytest

from hadlab.certificates import check_witness, recheck_certificate
from hadlab.cli import main
from hadlab.graph import Graph, complement, graph6_encode
from hadlab.patterns import PATTERNS

C7 = graph6_encode(Graph.cycle(7))
C7_BAR = graph6_encode(complement(Graph.cycle(7)))
COGEM = graph6_encode(PATTERNS["cogem"])


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_emit_verified_certificates(capsys, tmp_path):
    code, out, _ = run(capsys, "invariants", C7, "--all", "--hadm", "3")
    assert code == 0
    certs = json.loads(out)
    values = {c["kind"]: c["value"] for c in certs}
    assert values == {"omega": 2, "chi": 3, "had2": 2, "had2plus": 3, "had": 3, "hadm": 3}
    assert all(c["verified"] and c["schema_version"] == 1 for c in certs)
    path = tmp_path / "certs.json"
    path.write_text(out)
    code, out, _ = run(capsys, "recheck", str(path))
    assert code == 0 and all(r["reverified"] for r in json.loads(out)["results"])


def test_invariants_output_is_byte_stable(capsys):
    first = run(capsys, "invariants", C7_BAR)[1]
    assert run(capsys, "invariants", C7_BAR)[1] == first


def test_tampered_certificate_fails_recheck(capsys, tmp_path):
    _, out, _ = run(capsys, "invariants", C7, "--chi")
    (cert,) = json.loads(out)
    cert["witness"]["coloring"][0] = cert["witness"]["coloring"][1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "recheck", str(path))
    assert code == 1 and json.loads(out)["results"][0]["reverified"] is False


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", COGEM, "--class", "coclaw-cogem-free")
    data = json.loads(out)
    assert code == 1 and data["member"] is False
    assert data["witness"]["pattern"] == "cogem" and data["witness"]["embedding"] == [0, 1, 2, 3, 4]
    code, out, _ = run(capsys, "classify", C7_BAR, "--class", "coclaw_cogem_free")
    assert code == 0


def test_model_small_on_c7_complement(capsys, tmp_path):
    path = tmp_path / "model.json"
    code, _, _ = run(capsys, "model", C7_BAR, "--mode", "small", "--out", str(path))
    cert = json.loads(path.read_text())
    assert code == 0 and cert["value"] == 4 and cert["verified"]
    assert cert["trace"][0]["rule"] == "antihole-deletion"
    code, out, _ = run(capsys, "verify", C7_BAR, "--model", str(path))
    assert code == 0 and json.loads(out)["valid"]


def test_model_exit_codes(capsys):
    code, out, _ = run(capsys, "model", C7, "--mode", "small")
    assert code == 2 and json.loads(out)["error"] == "ClassViolation"
    code, out, _ = run(capsys, "model", C7, "--mode", "semismall")
    assert code == 0 and json.loads(out)["value"] == 3


def test_verify_reports_violations(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[0, 1], [3, 4], [5, 6]]))
    code, out, _ = run(capsys, "verify", C7, "--model", str(path))
    data = json.loads(out)
    assert code == 1 and {"rule": "linked", "sets": [0, 1]} in data["violations"]


def test_sweep_command(capsys, tmp_path):
    csv_path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "sweep", "--enumerate", "5", "--class", "fork-antifork-free",
                       "--check", "had2plus_ge_chi", "--jobs", "1", "--no-timing", "--csv", str(csv_path))
    data = json.loads(out)
    assert code == 0 and data["ok"] and "timing" not in data
    assert csv_path.read_text().startswith("graph6,class_member,check,value_lhs,value_rhs,pass\n")


def test_sweep_violation_exit_and_recheck(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text(graph6_encode(Graph.cycle(5)) + "\n")
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "sweep", "--input", str(src), "--check", "spgt", "--jobs", "1", "--report", str(report))
    assert code == 1
    code, out, _ = run(capsys, "recheck", str(report))
    assert code == 0 and json.loads(out)["results"][0]["reverified"]


def test_hl_jobs_fallback(capsys, monkeypatch):
    monkeypatch.setenv("HL_JOBS", "1")
    code, _, _ = run(capsys, "sweep", "--family", "cycle:n=7", "--check", "chi_le_2omega")
    assert code == 0
    monkeypatch.setenv("HL_JOBS", "many")
    code, _, _ = run(capsys, "sweep", "--family", "cycle:n=7", "--check", "chi_le_2omega")
    assert code == 64


def test_outcomes_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(C7 + "\n"))
    code, out, _ = run(capsys, "outcomes", "-")
    data = json.loads(out)
    assert code == 0 and data["outcomes"]["vii"]["holds"] and data["graph6"] == C7


@pytest.mark.parametrize("argv,expected", [
    (["bogus"], 64),
    (["classify", C7], 64),
    (["classify", C7, "--class", "planar"], 64),
    (["sweep", "--check", "spgt"], 64),
    (["sweep", "--enumerate", "3", "--check", "nope"], 64),
    (["sweep", "--family", "cycle:n=1", "--check", "spgt"], 64),
    (["invariants", "zz"], 65),
    (["invariants", "B"], 65),
    (["verify", C7, "--model", "/nonexistent/model.json"], 65),
    (["invariants", graph6_encode(Graph.empty(13)), "--had"], 66),
    (["sweep", "--enumerate", "8", "--check", "spgt"], 66),
])
def test_error_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_malformed_model_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    assert run(capsys, "verify", C7, "--model", str(path))[0] == 65
    path.write_text(json.dumps({"sets": []}))
    assert run(capsys, "verify", C7, "--model", str(path))[0] == 65
    path.write_text(json.dumps([[0, 0]]))
    assert run(capsys, "verify", C7, "--model", str(path))[0] == 65


def test_check_witness_rejects_wrong_values():
    g = Graph.cycle(5)
    assert check_witness(g, "omega", 2, {"clique": [0, 1]})
    assert not check_witness(g, "omega", 3, {"clique": [0, 1]})
    assert not check_witness(g, "omega", 2, {"clique": [0, 2]})
    assert check_witness(g, "had2", 3, {"model": [[0, 1], [2, 3], [4]]})
    assert not check_witness(g, "had2", 2, {"model": [[0, 1, 2], [3, 4]]})
    assert check_witness(g, "hadm", 2, {"model": [[0, 1, 2], [3, 4]]}, m=3)
    assert not check_witness(g, "hadm", 2, {"model": [[0, 1, 2], [3, 4]]}, m=2)
    assert not check_witness(g, "mystery", 1, {})


def test_recheck_certificate_roundtrip():
    cert = {"graph6": graph6_encode(Graph.cycle(5)), "kind": "chi", "value": 3,
            "witness": {"coloring": [0, 1, 0, 1, 2]}}
    assert recheck_certificate(cert)
