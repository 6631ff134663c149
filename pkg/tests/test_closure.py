from hypothesis import given

from necmodal.closure import CLOSURE_CONSTANTS, overline_closure, premise_universe, sub, sub_star
from necmodal.formula import BOT, TOP, Box, Not, Var, neg_companion, parse, subformulas
from necmodal.logics import Logic

from strategies import formulas

p = Var("p")


def test_sub_star_adds_stripped_boxes():
    a = parse("[]~~p")
    assert sub_star(a) == sub(a) | {Box(Not(p)), Box(p)}


def test_overline_closure_example():
    g = overline_closure(parse("[]p"))
    expected = {Box(p), Not(Box(p)), p, Not(p), *CLOSURE_CONSTANTS}
    assert set(g.members) == expected
    assert list(g.members) == sorted(expected, key=lambda f: f.gn)


@given(formulas())
def test_closure_contains_companions(a):
    g = overline_closure(a)
    for b in sub_star(a):
        assert b in g and neg_companion(b) in g
    for c in (BOT, TOP, Box(BOT), Box(TOP)):
        assert c in g


@given(formulas())
def test_sub_star_contains_stripped_boxes(a):
    s = sub_star(a)
    assert subformulas(a) <= s
    for f in subformulas(a):
        if isinstance(f, Box):
            inner = f.arg
            while isinstance(inner, Not):
                inner = inner.arg
                assert Box(inner) in s


def test_premise_universe_grows_with_depth():
    g = overline_closure(parse("[]p"))
    one = premise_universe(Logic.N, g, 1)
    two = premise_universe(Logic.N, g, 2)
    four = premise_universe(Logic.N4, g, 1)
    assert set(g.members) <= one <= two
    assert Box(Not(p)) in one and Box(Not(Not(p))) in two
    assert Box(Box(p)) in four and Box(Box(p)) not in one
