import json
import subprocess
import sys

import pytest

from necmodal.cli import main
from necmodal.semantics import check_frame_class, frame_from_json, TRANSITIVE

from golden_cases import CASES, DATA, HERE, SCEN, invoke, normalise


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    want = json.loads((HERE / "golden" / f"{name}.json").read_text())
    assert normalise(invoke(CASES[name])) == want


def test_errors_are_single_json_lines():
    for name in CASES:
        if name.startswith("error_"):
            res = invoke(CASES[name])
            assert res["exit"] == 2 and res["stdout"] == ""
            lines = res["stderr"].splitlines()
            assert len(lines) == 1 and set(json.loads(lines[0])) == {"error", "reason"}


def test_usage_errors():
    for argv in ([], ["frobnicate"], ["decide"], ["decide", "N", "p", "q"], ["enumerate", "N", "x"],
                 ["check-model", str(DATA / "chain.json"), "p"]):
        assert invoke(argv)["exit"] == 2, argv


def test_decide_then_check_model_reports_falsification(tmp_path):
    verdict = tmp_path / "v.json"
    assert main(["decide", "NP4", "[]p -> p", "--out", str(verdict)], _Sink(), _Sink()) == 0
    data = json.loads(verdict.read_text())
    assert data["verdict"] == "unprovable"
    res = invoke(["check-model", str(verdict)])
    assert res["exit"] == 1 and json.loads(res["stdout"])["forced"] is False
    # the same model, asked about the negation at the same world
    res = invoke(["check-model", str(verdict), "~([]p -> p)", str(data["world"])])
    assert res["exit"] == 0


def test_certify_round_trip_and_tampering(tmp_path):
    for logic, text in [("ND4", "[]p -> [][]p"), ("ND", "~([]p & []~p)"), ("NP", "[]p -> p")]:
        path = tmp_path / f"{logic}.json"
        invoke(["decide", logic, text, "--out", str(path)])
        assert invoke(["certify", str(path)])["exit"] == 0
    bad = json.loads((tmp_path / "NP.json").read_text())
    bad["world"] = [w for w in bad["model"]["worlds"] if w != bad["world"]][0]
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    res = invoke(["certify", str(tmp_path / "bad.json")])
    assert res["exit"] == 1 and json.loads(res["stdout"])["valid"] is False
    forged = json.loads((tmp_path / "ND.json").read_text())
    forged["logic"] = "N"   # the D instance is not an N axiom
    (tmp_path / "forged.json").write_text(json.dumps(forged))
    assert invoke(["certify", str(tmp_path / "forged.json")])["exit"] == 1


def test_repair_on_canonical_countermodel_is_transitive(tmp_path):
    path = tmp_path / "v.json"
    invoke(["decide", "ND4", "[][]p -> []p", "--out", str(path)])
    res = invoke(["repair", str(path), "[][]p -> []p"])
    assert res["exit"] == 0
    assert check_frame_class(frame_from_json(json.loads(res["stdout"])), TRANSITIVE)


def test_dot_and_pretty(tmp_path):
    dot = tmp_path / "f.dot"
    res = invoke(["decide", "ND", "[]p -> p", "--dot", str(dot), "--pretty"])
    assert "unprovable" in res["stdout"] and dot.read_text().startswith("digraph")
    assert "switch at stage 4" in invoke(["simulate", "--pretty", "--horizon", "40",
                                          str(SCEN / "j_trigger_np.json")])["stdout"]


def test_simulate_errors(tmp_path):
    bad = tmp_path / "s.json"
    bad.write_text('{"logic": "ND", "stream": {"outputs": [[0, "(not"]]}}')
    res = invoke(["simulate", str(bad)])
    assert res["exit"] == 2 and json.loads(res["stderr"])["error"] == "scenario"
    bad.write_text('{"logic": "NP", "library": 1, "stream": {"outputs": [[0, "(not (lambda 9))"]]}}')
    assert json.loads(invoke(["simulate", str(bad)])["stderr"])["error"] == "library-exhausted"


def test_cross_check_skips_large_formulas():
    res = invoke(["decide", "--cross-check", "N", "[]([]p -> p) -> []p"])
    assert res["exit"] == 0 and json.loads(res["stdout"])["oracle"] == "unknown"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "necmodal", "decide", "N", "true"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "provable"


class _Sink:
    def write(self, _):
        pass
