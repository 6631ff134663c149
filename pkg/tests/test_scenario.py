import json

import pytest
from hypothesis import given

from necmodal.formula import parse
from necmodal.logics import Logic
from necmodal.sandbox import (SBOT, AlphaAll, Atom, Imp, Lambda, Neg, PrKind, PrLit, ScenarioError,
                              interpretation_for, load_scenario, parse_sexpr, scenario_from_json,
                              sdecode, to_sexpr, trace_to_json)

from sstrategies import sformulas


@given(sformulas())
def test_sexpr_round_trip(x):
    assert parse_sexpr(to_sexpr(x)) is x


def test_hand_written_forms():
    chi = Atom("0")
    assert parse_sexpr("bot") is SBOT
    assert parse_sexpr('"bot"') is Atom("bot")
    assert parse_sexpr("(not (pr dagger 0))") is Neg(PrLit(PrKind.DAGGER, chi.gn))
    assert parse_sexpr("(lambda 4)") is Lambda(4)
    assert parse_sexpr('(imp (alpha-all "[]p") (not (lambda 1)))') is \
        Imp(AlphaAll(parse("[]p")), Neg(Lambda(1)))
    assert to_sexpr(Atom("0=0")) == "0=0"
    assert to_sexpr(Atom("a(b")) == '"a(b"'


def test_image_and_code_forms():
    f = interpretation_for(Logic.ND)
    assert parse_sexpr('(f "[]p -> p")', f) is f(parse("[]p -> p"))
    assert parse_sexpr("(code 957)") is sdecode(957)
    assert parse_sexpr("(code 957)") is Neg(PrLit(PrKind.DAGGER, Atom("0").gn))


@pytest.mark.parametrize("text", [
    "", "(", ")", "(not)", "(not a b)", "(pr maybe a)", "(lambda x)", "(alpha-all p)",
    "(frob a)", "a b", '(alpha "[]" 1)', "(code 0)", '(f "p")', "()",
])
def test_parse_errors(text):
    with pytest.raises(ScenarioError):
        parse_sexpr(text)


def test_scenario_json_and_trace_json(tmp_path):
    data = {"logic": "NP", "horizon": 60, "library": 3,
            "stream": {"background": "skip", "outputs": [[3, "(not (lambda 2))"]]}}
    sc = scenario_from_json(data)
    assert sc.logic is Logic.NP and sc.horizon == 60 and sc.stream(0) == 0
    t = sc.run()
    js = trace_to_json(t, [{"claim": "x", "status": "pass"}])
    assert js["switchStage"] == 4 and js["trigger"] == {"type": "J", "world": 2, "model": 2}
    assert len(js["g"]) == 60 and len(js["h"]) == 61 and js["g"][:4] == [0, 0, 0, Neg(Lambda(2)).gn]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(data))
    assert load_scenario(path, horizon=10).horizon == 10
    json.dumps(js)  # serializable


def test_phi_trace_json():
    data = {"logic": "ND", "horizon": 1000, "stream": {"outputs": [[2, "(code 957)"]]}}
    js = trace_to_json(scenario_from_json(data).run())
    # psi = chi becomes eligible once the code of (not chi) is within reach
    assert js["switchStage"] == Neg(Atom("0")).gn == 21
    assert js["trigger"] == {"type": "phi", "psi": "0", "r": 1, "iteration": ["(not 0)"]}


@pytest.mark.parametrize("data", [
    {}, {"logic": "K"}, {"logic": "ND", "library": 0},
    {"logic": "ND", "stream": {"background": "noise"}},
    {"logic": "ND", "stream": {"outputs": [[1]]}},
    {"logic": "ND", "stream": {"outputs": [[1, "(bad"]]}},
])
def test_bad_scenarios(data):
    with pytest.raises((ScenarioError, ValueError)):
        scenario_from_json(data)
