"""Certified verdicts for a handful of formulas.

Run: python3 demos/01_verdicts.py

Every verdict carries its own evidence.  A provable formula comes with the
axiom instances it was derived from, and an unprovable one comes with a
finite model that falsifies it.  Both are re-checked here by hand.
"""

from necmodal import Logic, decide, parse, to_text
from necmodal.prover import verify_certificate, verify_countermodel
from necmodal.semantics import forces

CASES = [
    (Logic.N, "~[]false"),
    (Logic.NP, "~[]false"),
    (Logic.ND, "~([]p & []~p)"),
    (Logic.NP4, "~([]p & []~p)"),
    (Logic.N4, "[]p -> [][]p"),
    (Logic.ND4, "([]~~p -> []p) & ([]p -> []~~p)"),
]

for logic, text in CASES:
    a = parse(text)
    v = decide(logic, a)
    print(f"{str(logic):4} {text:36} {v.label}")
    if v.provable:
        for prem in v.certificate.premises:
            print(f"       uses {prem}")
        assert verify_certificate(logic, v.certificate)
    else:
        m = v.model
        print(f"       falsified at world {v.world} of a {m.frame.size}-world model")
        assert not forces(m, v.world, a)
        assert verify_countermodel(logic, v)

# The last case is the interesting one: boxes do not see through double
# negation, because each formula indexes its own accessibility relation.
v = decide(Logic.ND4, parse("[]~~p -> []p"))
m = v.model
print()
print("In the ND4 countermodel, at world", v.world)
for text in ("[]p", "[]~~p", "~~p"):
    print(f"  {text:6} is {'forced' if forces(m, v.world, parse(text)) else 'not forced'}")
