"""Sub, Sub*, the overline closure and the bounded premise universe."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .formula import BOT, TOP, Box, Formula, Not, neg_companion, subformulas
from .logics import Logic

__all__ = ["ClosureSet", "sub", "sub_star", "overline_closure", "premise_universe",
           "CLOSURE_CONSTANTS", "box_indices"]

CLOSURE_CONSTANTS = (Box(BOT), Not(Box(BOT)), Box(TOP), Not(Box(TOP)), BOT, TOP)


def sub(a: Formula) -> frozenset:
    return subformulas(a)


@lru_cache(maxsize=None)
def sub_star(a: Formula) -> frozenset:
    """Sub(a) together with []B whenever []~^k B is in Sub(a)."""
    out = set(subformulas(a))
    for f in subformulas(a):
        if isinstance(f, Box):
            inner = f.arg
            while isinstance(inner, Not):
                inner = inner.arg
                out.add(Box(inner))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class ClosureSet:
    """A finite closure, members ordered by Goedel number."""
    root: Formula
    members: tuple

    def __contains__(self, f: Formula) -> bool:
        return f in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset:
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_set", s)
        return s


@lru_cache(maxsize=None)
def overline_closure(a: Formula) -> ClosureSet:
    star = sub_star(a)
    out = set(star)
    out.update(neg_companion(b) for b in star)
    out.update(CLOSURE_CONSTANTS)
    return ClosureSet(a, tuple(sorted(out, key=lambda f: f.gn)))


def box_indices(members) -> list:
    """The indices B with []B among the given formulas, in Goedel order."""
    return sorted({f.arg for f in members if isinstance(f, Box)}, key=lambda f: f.gn)


def premise_universe(l: Logic, g: ClosureSet, depth: int = 2) -> frozenset:
    """Close g `depth` times: each []C adds ~C and []~C, plus [][]C for 4-logics."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return _premise_universe(l.has_4, g.members, depth)


@lru_cache(maxsize=200_000)
def _premise_universe(four: bool, members: tuple, depth: int) -> frozenset:
    current = set(members)
    for _ in range(depth):
        boxes = [f for f in current if isinstance(f, Box)]
        for b in boxes:
            c = b.arg
            current.add(Not(c))
            current.add(Box(Not(c)))
            if four:
                current.add(Box(b))
    return frozenset(current)
