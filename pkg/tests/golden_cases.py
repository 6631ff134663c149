"""CLI invocations with checked-in expected output (tests/golden/NAME.json).

Run ``python3 tests/golden_cases.py`` to regenerate after an intended change,
then review the diff.
"""

import io
import json
from pathlib import Path

HERE = Path(__file__).parent
DATA = HERE / "data"
SCEN = HERE.parent / "demos" / "scenarios"

CASES = {
    "decide_nd_t": ["decide", "ND", "[]p -> p"],
    "decide_n_box_identity": ["decide", "N", "[]p -> []p"],
    "decide_np_consistency": ["decide", "NP", "~[]false"],
    "decide_n_consistency": ["decide", "--logic", "N", "~[]false"],
    "decide_nd_cross_check": ["decide", "--cross-check", "ND", "~([]p & []~p)"],
    "decide_n4_four": ["decide", "N4", "[]p -> [][]p"],
    "closure_box_p": ["closure", "[]p"],
    "check_model_chain": ["check-model", str(DATA / "chain.json"), "[]p", "0"],
    "check_model_chain_boxbox": ["check-model", str(DATA / "chain.json"), "[][]p", "0"],
    "check_model_not_forced": ["check-model", str(DATA / "chain.json"), "[]~p", "1"],
    "check_frame_serial": ["check-frame", str(DATA / "chain.json"), "Serial"],
    "check_frame_transitive": ["check-frame", str(DATA / "chain.json"), "Transitive"],
    "check_frame_nr": ["check-frame", str(DATA / "dead_end.json"), "NR"],
    "check_frame_not_transitive": ["check-frame", str(DATA / "not_transitive.json"), "Transitive"],
    "check_frame_nd4": ["check-frame", str(DATA / "not_transitive.json"), "ND4"],
    "repair_keeps_relations": ["repair", str(DATA / "not_transitive.json"), "[][]p"],
    "repair_chain": ["repair", str(DATA / "chain.json"), "[][]p"],
    "simulate_j_np": ["simulate", "--horizon", "60", str(SCEN / "j_trigger_np.json")],
    "enumerate_nd_2": ["enumerate", "ND", "2"],
    "error_syntax": ["decide", "N", "[]("],
    "error_logic": ["decide", "K", "p"],
    "error_missing_file": ["check-frame", "no/such/file.json", "Serial"],
    "error_usage": ["enumerate", "N", "9"],
}


def invoke(argv):
    from necmodal.cli import main
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return {"exit": code, "stdout": out.getvalue(), "stderr": err.getvalue()}


def normalise(result):
    """Strip machine-specific paths from error messages."""
    text = result["stderr"].replace(str(HERE.parent), "<root>")
    return {**result, "stderr": text}


if __name__ == "__main__":
    (HERE / "golden").mkdir(exist_ok=True)
    for name, argv in CASES.items():
        res = normalise(invoke(argv))
        (HERE / "golden" / f"{name}.json").write_text(json.dumps(res, indent=2) + "\n")
        print(name, res["exit"])
