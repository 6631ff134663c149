import itertools

from hypothesis import given, strategies as st

from necmodal.formula import BOT, TOP, And, Box, Imp, Not, Or, Var, parse
from necmodal.propositional import BITMASK_LIMIT, tc_entails

from strategies import formulas


def _atoms(a, out):
    if isinstance(a, (Var, Box)):
        out.add(a)
    elif isinstance(a, Not):
        _atoms(a.arg, out)
    elif isinstance(a, (And, Or, Imp)):
        _atoms(a.left, out)
        _atoms(a.right, out)
    return out


def _value(a, env):
    if a is BOT:
        return False
    if a is TOP:
        return True
    if isinstance(a, (Var, Box)):
        return env[a]
    if isinstance(a, Not):
        return not _value(a.arg, env)
    if isinstance(a, And):
        return _value(a.left, env) and _value(a.right, env)
    if isinstance(a, Or):
        return _value(a.left, env) or _value(a.right, env)
    return (not _value(a.left, env)) or _value(a.right, env)


def brute_entails(premises, goal):
    atoms = set()
    for f in list(premises) + [goal]:
        _atoms(f, atoms)
    atoms = sorted(atoms, key=lambda f: f.gn)
    for bits in itertools.product([False, True], repeat=len(atoms)):
        env = dict(zip(atoms, bits))
        if all(_value(f, env) for f in premises) and not _value(goal, env):
            return False
    return True


@given(st.lists(formulas(("p", "q", "r"), max_leaves=6), max_size=3),
       formulas(("p", "q", "r"), max_leaves=6))
def test_tc_entails_matches_truth_tables(premises, goal):
    assert tc_entails(premises, goal) == brute_entails(premises, goal)


def test_boxes_are_opaque():
    assert not tc_entails([parse("[]p")], parse("[]~~p"))
    assert tc_entails([parse("[]p"), parse("[]p -> []q")], parse("[]q"))
    assert tc_entails([], parse("[](p & q) | ~[](p & q)"))


def test_large_atom_sets_use_search():
    n = BITMASK_LIMIT + 6
    vs = [Var(f"v{i}") for i in range(n)]
    chain = [Imp(vs[i], vs[i + 1]) for i in range(n - 1)]
    assert tc_entails(chain + [vs[0]], vs[-1])
    assert not tc_entails(chain, vs[-1])
    assert tc_entails([BOT] + chain, vs[3])


@given(st.lists(formulas(("a", "b", "c", "d", "e", "f"), max_leaves=10), min_size=3, max_size=5),
       formulas(("g", "h", "i", "j", "k", "l", "m", "n"), max_leaves=10))
def test_search_route_agrees(premises, goal):
    # enough distinct atoms to push some cases past the truth-table limit
    assert tc_entails(premises, goal) == brute_entails(premises, goal)
