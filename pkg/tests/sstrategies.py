"""Hypothesis strategies for SFormulas."""

from hypothesis import strategies as st

from necmodal.sandbox.sformula import (SBOT, Alpha, AlphaAll, And, Atom, Beta, BetaAll, Imp,
                                       Lambda, Neg, Or, PrKind, PrLit)

from strategies import formulas

TOKENS = ["0", "p", "q", "0=0", "x1", "(", '"', "bot", "a b".replace(" ", "_"), "~"]


def markers():
    small = formulas(("p",), max_leaves=3)
    return st.one_of(
        st.builds(Lambda, st.integers(0, 50)),
        st.builds(AlphaAll, small), st.builds(BetaAll, small),
        st.builds(Alpha, small, st.integers(0, 50)), st.builds(Beta, small, st.integers(0, 50)),
    )


def sformulas(max_leaves=8, with_markers=True):
    leaves = [st.just(SBOT), st.builds(Atom, st.sampled_from(TOKENS))]
    if with_markers:
        leaves.append(markers())

    def extend(children):
        return st.one_of(
            st.builds(Neg, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
            st.builds(lambda k, x: PrLit(k, x.gn), st.sampled_from(list(PrKind)), children),
        )

    return st.recursive(st.one_of(*leaves), extend, max_leaves=max_leaves)
