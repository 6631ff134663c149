"""Inside the canonical model construction.

Run: python3 demos/02_canonical_model.py

The decision procedure builds one world per maximal consistent subset of a
finite closure.  For the 4-logics the relations are then trimmed so that
the frame becomes transitive without changing the truth of any subformula.
"""

from necmodal import Logic, parse, to_text
from necmodal.closure import overline_closure, sub_star, subformulas
from necmodal.prover import build_canonical_model
from necmodal.semantics import (FrameClass, check_frame_class, forces, forces_vector,
                                gamma_transitive)

a = parse("[][]p -> []p")
g = overline_closure(a)
print(f"closure of {to_text(a)} has {len(g)} members")

cm = build_canonical_model(Logic.NP4, a)
pre, post = cm.pre_repair, cm.model
print(f"{len(cm.sets)} maximal NP4-consistent sets, so {pre.frame.size} worlds")

# truth lemma: membership and forcing coincide on the closure
agree = all(forces(pre, w, b) == (b in s) for w, s in cm.sets.items() for b in g.members)
print("truth lemma holds:", agree)

print("before repair, Sub*-transitive:",
      bool(check_frame_class(pre.frame, gamma_transitive(sub_star(a)))))
print("before repair, fully transitive:", bool(check_frame_class(pre.frame, FrameClass("Transitive"))))
print("after repair,  fully transitive:", bool(check_frame_class(post.frame, FrameClass("Transitive"))))

same = all((forces_vector(pre, b) == forces_vector(post, b)).all() for b in subformulas(a))
print("repair keeps every subformula's truth:", same)

falsifiers = [w for w in post.frame.worlds if not forces(post, w, a)]
print("worlds falsifying the formula:", falsifiers)
