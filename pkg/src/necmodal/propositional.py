"""Propositional translation of modal formulas and tautological entailment.

Variables and box formulas are propositionally atomic.  ``translate_i`` sends
each of them to a propositional atom and commutes with the connectives.
``tc_entails`` decides whether the translated implication is a tautology.

Small atom sets are decided by bit-parallel truth tables.  A truth table over
n atoms is a Python integer with 2**n bits, and bit ``c`` is the value under
the valuation whose atom ``i`` is true iff bit ``i`` of ``c`` is set.  Larger
atom sets go to a splitting search with unit propagation that works directly
on the formulas, so no auxiliary atoms are ever introduced.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .formula import (BOT, TOP, And, Box, Formula, Imp, Not, Or, Var)

__all__ = [
    "PropAtomMap", "UnmappedAtomError", "pa_atoms", "translate_i",
    "truth_mask", "atom_patterns", "tc_entails", "satisfiable", "BITMASK_LIMIT",
]

BITMASK_LIMIT = 16


class UnmappedAtomError(KeyError):
    pass


class PropAtomMap:
    """Bijection between propositionally atomic formulas and atoms 0..n-1."""

    def __init__(self, atoms: Iterable[Formula] = ()):
        self._index: dict[Formula, int] = {}
        self._atoms: list[Formula] = []
        for a in atoms:
            self.add(a)

    def add(self, f: Formula) -> int:
        if not f.is_pa:
            raise ValueError(f"{f} is not propositionally atomic")
        i = self._index.get(f)
        if i is None:
            i = self._index[f] = len(self._atoms)
            self._atoms.append(f)
        return i

    def __getitem__(self, f: Formula) -> int:
        try:
            return self._index[f]
        except KeyError:
            raise UnmappedAtomError(f"unmapped atom {f}") from None

    def __contains__(self, f: Formula) -> bool:
        return f in self._index

    def __len__(self) -> int:
        return len(self._atoms)

    @property
    def atoms(self) -> tuple[Formula, ...]:
        return tuple(self._atoms)


@lru_cache(maxsize=None)
def pa_atoms(f: Formula) -> frozenset:
    """The propositionally atomic subformulas not nested under a box."""
    if isinstance(f, (Var, Box)):
        return frozenset((f,))
    if isinstance(f, Not):
        return pa_atoms(f.arg)
    if isinstance(f, (And, Or, Imp)):
        return pa_atoms(f.left) | pa_atoms(f.right)
    return frozenset()


def translate_i(f: Formula, m: PropAtomMap):
    """Homomorphic image as nested tuples: ('atom', i), ('const', b), ('not', x), ..."""
    if isinstance(f, (Var, Box)):
        return ("atom", m[f])
    if f is BOT:
        return ("const", False)
    if f is TOP:
        return ("const", True)
    if isinstance(f, Not):
        return ("not", translate_i(f.arg, m))
    tag = "and" if isinstance(f, And) else "or" if isinstance(f, Or) else "imp"
    return (tag, translate_i(f.left, m), translate_i(f.right, m))


@lru_cache(maxsize=64)
def atom_patterns(n: int) -> tuple[int, tuple[int, ...]]:
    """(full mask, per-atom truth tables) for n atoms."""
    width = 1 << n
    full = (1 << width) - 1
    pats = []
    for i in range(n):
        half = 1 << i
        period = half << 1
        rep = full // ((1 << period) - 1)
        pats.append(rep * (((1 << half) - 1) << half))
    return full, tuple(pats)


def truth_mask(f: Formula, env: Mapping[Formula, int], full: int) -> int:
    """Truth table of f given truth tables for its atoms."""
    if isinstance(f, (Var, Box)):
        return env[f]
    if isinstance(f, Not):
        return full ^ truth_mask(f.arg, env, full)
    if isinstance(f, And):
        return truth_mask(f.left, env, full) & truth_mask(f.right, env, full)
    if isinstance(f, Or):
        return truth_mask(f.left, env, full) | truth_mask(f.right, env, full)
    if isinstance(f, Imp):
        return (full ^ truth_mask(f.left, env, full)) | truth_mask(f.right, env, full)
    return 0 if f is BOT else full


def tc_entails(premises: Iterable[Formula], goal: Formula) -> bool:
    """True iff the conjunction of the premises tautologically implies goal."""
    premises = list(premises)
    atoms: set = set(pa_atoms(goal))
    for p in premises:
        atoms |= pa_atoms(p)
    ordered = sorted(atoms, key=lambda a: a.gn)
    if len(ordered) <= BITMASK_LIMIT:
        full, pats = atom_patterns(len(ordered))
        env = dict(zip(ordered, pats))
        acc = full
        for p in premises:
            acc &= truth_mask(p, env, full)
            if not acc:
                return True
        return acc & ~truth_mask(goal, env, full) == 0
    m = PropAtomMap(ordered)
    terms = [translate_i(p, m) for p in premises]
    terms.append(("not", translate_i(goal, m)))
    return not satisfiable(terms)


# ------------------------------------------------------------ splitting search

def _simp(t, asg):
    """Simplify a translated formula under a partial assignment."""
    tag = t[0]
    if tag == "atom":
        v = asg.get(t[1])
        return t if v is None else ("const", v)
    if tag == "const":
        return t
    if tag == "not":
        x = _simp(t[1], asg)
        if x[0] == "const":
            return ("const", not x[1])
        if x[0] == "not":
            return x[1]
        return ("not", x)
    x = _simp(t[1], asg)
    y = _simp(t[2], asg)
    if tag == "imp":
        if x[0] == "const":
            return y if x[1] else ("const", True)
        if y[0] == "const":
            return ("const", True) if y[1] else _simp(("not", x), {})
        return ("imp", x, y)
    absorbing = tag == "or"
    if x[0] == "const":
        return ("const", absorbing) if x[1] == absorbing else y
    if y[0] == "const":
        return ("const", absorbing) if y[1] == absorbing else x
    return (tag, x, y)


def _atoms_of(t, out):
    if t[0] == "atom":
        out[t[1]] = out.get(t[1], 0) + 1
    elif t[0] != "const":
        for sub in t[1:]:
            _atoms_of(sub, out)


def _flatten(terms):
    """Split top-level conjunctions and negated disjunctions."""
    out = []
    stack = list(terms)
    while stack:
        t = stack.pop()
        if t[0] == "and":
            stack.extend((t[1], t[2]))
        elif t[0] == "not" and t[1][0] in ("or", "imp"):
            inner = t[1]
            if inner[0] == "or":
                stack.extend((("not", inner[1]), ("not", inner[2])))
            else:
                stack.extend((inner[1], ("not", inner[2])))
        else:
            out.append(t)
    return out


def satisfiable(terms) -> bool:
    """Satisfiability of a list of translated formulas (conjunction)."""
    return _search(_flatten(terms), {})


def _search(terms, asg) -> bool:
    while True:
        new = []
        units = {}
        for t in terms:
            s = _simp(t, asg)
            if s[0] == "const":
                if not s[1]:
                    return False
                continue
            if s[0] == "atom":
                if units.get(s[1]) is False:
                    return False
                units[s[1]] = True
                continue
            if s[0] == "not" and s[1][0] == "atom":
                if units.get(s[1][1]) is True:
                    return False
                units[s[1][1]] = False
                continue
            new.append(s)
        if units:
            asg = {**asg, **units}
            terms = _flatten(new)
            continue
        terms = new
        break
    if not terms:
        return True
    counts: dict = {}
    for t in terms:
        _atoms_of(t, counts)
    pivot = max(counts, key=lambda a: (counts[a], -a))
    for value in (True, False):
        if _search(terms, {**asg, pivot: value}):
            return True
    return False
