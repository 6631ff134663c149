import pytest

from necmodal.corpus import formulas_up_to
from necmodal.formula import Box, Var, parse
from necmodal.logics import Logic
from necmodal.oracle import OracleStatus, SaturationOracle, saturation_oracle
from necmodal.prover import decide
from necmodal.semantics import check_frame_classes, forces, frame_classes


@pytest.mark.parametrize("l", list(Logic))
def test_agrees_with_decide_on_small_formulas(l):
    o = SaturationOracle(l, ("p",), bound=4)
    for a in formulas_up_to(4):
        st = o.status(a)
        assert st is not OracleStatus.UNKNOWN
        assert (st is OracleStatus.PROVABLE) == decide(l, a).provable


@pytest.mark.parametrize("l,text,status", [
    (Logic.NP, "~[]false", OracleStatus.PROVABLE),
    (Logic.N, "~[]false", OracleStatus.UNPROVABLE),
    (Logic.ND, "~([]p & []~p)", OracleStatus.PROVABLE),
    (Logic.NP4, "~([]p & []~p)", OracleStatus.UNPROVABLE),
    (Logic.N4, "[]p -> [][]p", OracleStatus.PROVABLE),
])
def test_examples_with_countermodels(l, text, status):
    a = parse(text)
    r = saturation_oracle(l, a)
    assert r.status is status
    if status is OracleStatus.UNPROVABLE:
        assert not forces(r.model, r.world, a)
        assert check_frame_classes(r.model.frame, frame_classes(l))


def test_outside_universe_is_unknown():
    o = SaturationOracle(Logic.N, ("p",), bound=3)
    assert not o.covers(parse("[][][]p"))
    assert o.status(parse("[][][]p")) is OracleStatus.UNKNOWN


def test_two_variables():
    r = saturation_oracle(Logic.N, parse("[]p -> []q"))
    assert r.status is OracleStatus.UNPROVABLE
