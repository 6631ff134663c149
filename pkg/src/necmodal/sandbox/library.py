"""Countermodel libraries for the staged constructions.

Entry k (counting from 1) holds the k-th unprovable formula A_k in
Goedel-number order together with a verified finite countermodel.  The
worlds of model k are renamed to the block of naturals starting at
``1 + |W_1| + ... + |W_{k-1}|``, so the blocks are pairwise disjoint and
cover an initial segment of the positive naturals.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from ..formula import Box, Formula, enumerate_formulas, subformulas
from ..logics import Logic
from ..prover import decide
from ..semantics import FrameSpec, Model, forces

__all__ = ["LibraryEntry", "CountermodelLibrary", "LibraryExhausted"]


class LibraryExhausted(LookupError):
    """A world id beyond the generated library was selected."""


@dataclass(frozen=True)
class LibraryEntry:
    k: int
    formula: Formula
    model: Model
    world: int
    first: int

    @property
    def worlds(self) -> range:
        return range(self.first, self.first + self.model.frame.size)

    def subformulas(self) -> frozenset:
        return subformulas(self.formula)


def _renumber(model: Model, world, first: int) -> tuple:
    old = model.frame.worlds
    new = tuple(range(first, first + len(old)))
    rename = dict(zip(old, new))
    frame = FrameSpec(new, dict(model.frame.explicit), model.frame.default)
    valuation = {rename[w]: vs for w, vs in model.valuation.items()}
    return Model(frame, valuation), rename[world]


class CountermodelLibrary:
    def __init__(self, logic: Logic, entries: list):
        self.logic = logic
        self.entries: list = []
        self._starts: list = []
        first = 1
        for k, (a, model, world) in enumerate(entries, start=1):
            m, w = _renumber(model, world, first)
            if forces(m, w, a):
                raise ValueError(f"library model {k} does not falsify {a}")
            self.entries.append(LibraryEntry(k, a, m, w, first))
            self._starts.append(first)
            first += m.frame.size
        self.limit = first

    @classmethod
    def generate(cls, logic: Logic, size: int) -> "CountermodelLibrary":
        """The first ``size`` unprovable formulas with decide's countermodels."""
        found = []
        for a in enumerate_formulas():
            v = decide(logic, a)
            if not v.provable:
                found.append((a, v.model, v.world))
                if len(found) == size:
                    break
        return cls(logic, found)

    def __len__(self) -> int:
        return len(self.entries)

    def locate(self, j: int) -> LibraryEntry:
        """The entry whose world block contains j."""
        if j < 1 or j >= self.limit:
            raise LibraryExhausted(f"world {j} lies outside the {len(self)}-model library")
        return self.entries[bisect.bisect_right(self._starts, j) - 1]

    def covers(self, j: int) -> bool:
        return 1 <= j < self.limit

    def forces_box(self, j: int, b: Formula) -> bool:
        entry = self.locate(j)
        return forces(entry.model, j, Box(b))
