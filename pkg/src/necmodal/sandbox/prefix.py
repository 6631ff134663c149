"""Tautological consequence over a growing prefix of outputs.

Atoms, provability literals and markers are treated as propositional atoms.
The prefix is split into connected components of shared atoms, so that a new
output only re-examines its own component.  Tautologies are recorded for
membership but contribute nothing to the reasoning.
"""

from __future__ import annotations

from ..propositional import satisfiable
from .sformula import (SBOT, And, Atom, Imp, Marker, MarkerKind, Neg, Or, PrKind, PrLit,
                       SFormula, satoms)

__all__ = ["PrefixTheory", "translate"]


def translate(x: SFormula):
    """SFormula to the tuple form understood by ``propositional.satisfiable``."""
    if x is SBOT:
        return ("const", False)
    if isinstance(x, (Atom, PrLit, Marker)):
        return ("atom", x.gn)
    if isinstance(x, Neg):
        return ("not", translate(x.arg))
    tag = "and" if isinstance(x, And) else "or" if isinstance(x, Or) else "imp"
    return (tag, translate(x.left), translate(x.right))


class PrefixTheory:
    def __init__(self):
        self.order: list = []
        self.members: set = set()
        self.inconsistent = False
        self.lambdas: set = set()
        self.instance_js: set = set()
        self.universal_markers: list = []
        self.neg_dagger: list = []
        self._parent: dict = {}
        self._terms: dict = {}

    def __contains__(self, x) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.order)

    def _find(self, a: int) -> int:
        parent = self._parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def add(self, x: SFormula) -> None:
        if x in self.members:
            return
        self.members.add(x)
        self.order.append(x)
        atoms = satoms(x)
        for a in atoms:
            if isinstance(a, Marker):
                if a.kind is MarkerKind.LAMBDA:
                    self.lambdas.add(a.j)
                elif a.kind in (MarkerKind.ALPHA_ALL, MarkerKind.BETA_ALL):
                    self.universal_markers.append(a)
                else:
                    self.instance_js.add(a.j)
        if isinstance(x, Neg) and isinstance(x.arg, PrLit) and x.arg.kind is PrKind.DAGGER:
            self.neg_dagger.append(x)
        if self.inconsistent:
            return
        t = translate(x)
        if not satisfiable([("not", t)]):
            return
        if not atoms:
            self.inconsistent = True
            return
        roots = set()
        for a in atoms:
            if a.gn not in self._parent:
                self._parent[a.gn] = a.gn
                self._terms[a.gn] = []
            roots.add(self._find(a.gn))
        root = roots.pop()
        terms = self._terms[root]
        for r in roots:
            self._parent[r] = root
            terms.extend(self._terms.pop(r))
        terms.append(t)
        if not satisfiable(terms):
            self.inconsistent = True

    def entails(self, goal: SFormula) -> bool:
        """Whether the prefix tautologically implies goal."""
        if self.inconsistent:
            return True
        roots = {self._find(a.gn) for a in satoms(goal) if a.gn in self._parent}
        terms = [t for r in roots for t in self._terms[r]]
        terms.append(("not", translate(goal)))
        return not satisfiable(terms)
