"""The staged constructions on toy theory streams.

Run: python3 demos/03_sandbox.py

A theory stream emits one sentence per stage.  The construction copies it
until the prefix shows that the theory has gone wrong, then switches for
good to a tail dictated by a world of a finite countermodel library.
"""

from necmodal import Logic
from necmodal.sandbox import (Atom, CountermodelLibrary, Lambda, Neg, PrKind, PrLit,
                              assert_trace_claims, run, tautology_stream, to_sexpr)


def show(title, t):
    print(f"== {title}")
    if t.switch_stage is None:
        print(f"   no switch within {t.horizon} stages")
    else:
        print(f"   switch at stage {t.switch_stage} to world {t.world} ({type(t.trigger).__name__})")
        for x in t.g[t.switch_stage:t.switch_stage + 4]:
            print("     emits", "nothing" if x == 0 else to_sexpr(x))
    for r in assert_trace_claims(t).results:
        if r.status != "vacuous":
            print(f"   {r.claim:20} {r.status}")


lib = CountermodelLibrary.generate(Logic.ND4, 3)
print("library worlds:", [(e.k, list(e.worlds)) for e in lib.entries])

show("a stream of tautologies", run(Logic.ND4, tautology_stream(), lib, 2000))

# The stream admits that world 2 is not the actual one.
show("a stream that refutes world 2",
     run(Logic.ND4, tautology_stream({3: Neg(Lambda(2))}), lib, 600))

# The stream asserts that not Pr(chi) is itself unprovable.
chi = Atom("0")
sentence = Neg(PrLit(PrKind.DAGGER, Neg(PrLit(PrKind.DAGGER, chi.gn)).gn))
show("a Phi trigger", run(Logic.ND4, tautology_stream({2: sentence}), lib, 1200))
