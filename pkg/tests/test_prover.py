import pytest
from hypothesis import given, settings

from necmodal.closure import overline_closure, sub_star
from necmodal.formula import BOT, Box, Not, Var, neg_companion, parse, subformulas
from necmodal.logics import Logic, UnsupportedLogicError, parse_logic
from necmodal.prover import (AxiomInstance, Certificate, InternalCompletenessError, Necessitation,
                             axiom_schema_of, build_canonical_model, certificate_from_json,
                             certificate_to_json, decide, lprovable, max_cons_sets,
                             verdict_from_json, verdict_to_json, verify_certificate,
                             verify_countermodel)
from necmodal.semantics import (FrameClass, check_frame_class, forces, forces_vector,
                                gamma_transitive)

from strategies import formulas

p = Var("p")
ALL = list(Logic)


@pytest.mark.parametrize("logic,text,provable", [
    ("N", "p -> p", True),
    ("N", "[](p -> p)", True),
    ("N", "[]p -> [](p | p)", False),              # no monotonicity
    ("N", "[]true", True),
    ("NP", "~[]false", True),
    ("ND", "~[]false", True),
    ("N", "~[]false", False),
    ("ND", "~([]p & []~p)", True),
    ("NP", "~([]p & []~p)", False),
    ("N4", "[]p -> [][]p", True),
    ("N", "[]p -> [][]p", False),
    ("ND4", "([]~~p -> []p) & ([]p -> []~~p)", False),
    ("NP4", "[][]true", True),
])
def test_verdicts(logic, text, provable):
    v = decide(logic, parse(text))
    assert v.provable is provable
    if provable:
        assert verify_certificate(v.logic, v.certificate)
    else:
        assert verify_countermodel(v.logic, v)


def test_unsupported_logics():
    for name in ("NR", "NR4", "K"):
        with pytest.raises(UnsupportedLogicError):
            parse_logic(name)


def test_axiom_schemas():
    assert axiom_schema_of(parse("~[]false")) == "P"
    assert axiom_schema_of(parse("~([]p & []~p)")) == "D"
    assert axiom_schema_of(parse("[]p -> [][]p")) == "4"
    assert axiom_schema_of(parse("~([]~p & []p)")) is None
    assert axiom_schema_of(parse("[]p -> []p")) is None


def test_certificate_rejects_foreign_axioms():
    goal = parse("~[]false")
    cert = Certificate(goal, (AxiomInstance("P", goal),))
    assert verify_certificate(Logic.NP, cert)
    assert not verify_certificate(Logic.N, cert)
    bad = Certificate(goal, (AxiomInstance("D", goal),))
    assert not verify_certificate(Logic.ND, bad)


def test_necessitation_chain():
    inner = Certificate(parse("~[]false"), (AxiomInstance("P", parse("~[]false")),))
    outer = Certificate(parse("[]~[]false"), (Necessitation(parse("[]~[]false"), inner),))
    assert verify_certificate(Logic.NP, outer)
    wrong = Certificate(parse("[]~[]false"), (Necessitation(parse("[]~[]true"), inner),))
    assert not verify_certificate(Logic.NP, wrong)
    assert decide(Logic.NP, parse("[]~[]false")).provable


def test_certificate_json_roundtrip():
    v = decide(Logic.ND4, parse("[]p -> [][]p"))
    back = certificate_from_json(certificate_to_json(v.certificate))
    assert back.goal is v.formula and verify_certificate(Logic.ND4, back)


def test_verdict_json_roundtrip_for_countermodels():
    v = decide(Logic.NP, parse("~([]p & []~p)"))
    back = verdict_from_json(verdict_to_json(v))
    assert not back.provable and verify_countermodel(Logic.NP, back)


def test_tampered_countermodel_fails():
    v = decide(Logic.N, parse("[]p -> p"))
    data = verdict_to_json(v)
    data["formula"] = "p -> p"
    assert not verify_countermodel(Logic.N, verdict_from_json(data))


@settings(max_examples=40)
@given(formulas(("p",), max_leaves=5))
def test_decide_is_self_verifying(a):
    for l in ALL:
        v = decide(l, a)
        if v.provable:
            assert verify_certificate(l, v.certificate) and v.certificate.goal is a
        else:
            assert verify_countermodel(l, v)


@settings(max_examples=30)
@given(formulas(("p",), max_leaves=5))
def test_logic_inclusions(a):
    # N is contained in every logic; NP in ND; each logic in its 4-extension
    n = decide(Logic.N, a).provable
    for l in ALL:
        if n:
            assert decide(l, a).provable
    if decide(Logic.NP, a).provable:
        assert decide(Logic.ND, a).provable
    for base, four in [(Logic.N, Logic.N4), (Logic.NP, Logic.NP4), (Logic.ND, Logic.ND4)]:
        if decide(base, a).provable:
            assert decide(four, a).provable


@settings(max_examples=25)
@given(formulas(("p",), max_leaves=5))
def test_maximal_consistent_sets(a):
    g = overline_closure(a)
    for l in (Logic.N, Logic.ND4):
        sets = max_cons_sets(l, a)
        assert sets
        for s in sets:
            for b in sub_star(a):
                assert (b in s) != (neg_companion(b) in s)
            assert BOT not in s
            assert s.members <= set(g.members)


@settings(max_examples=25)
@given(formulas(("p",), max_leaves=6))
def test_truth_lemma_and_repair(a):
    for l in ALL:
        cm = build_canonical_model(l, a)
        pre = cm.pre_repair or cm.model
        g = cm.closure
        for w, s in cm.sets.items():
            for b in g.members:
                assert forces(pre, w, b) == (b in s)
        if l.has_4:
            assert check_frame_class(pre.frame, gamma_transitive(sub_star(a)))
            assert check_frame_class(cm.model.frame, FrameClass("Transitive"))
            for b in subformulas(a):
                assert (forces_vector(pre, b) == forces_vector(cm.model, b)).all()


def test_lprovable_returns_certificates():
    ok, cert = lprovable(Logic.NP, parse("~[]false & (p | ~p)"))
    assert ok and verify_certificate(Logic.NP, cert)
    ok, cert = lprovable(Logic.N, parse("[]p"))
    assert not ok and cert is None


def test_stats_report_depth():
    v = decide(Logic.N, parse("[]p"), depth=3)
    assert v.stats["oracleDepth"] == 3
    assert issubclass(InternalCompletenessError, RuntimeError)
