"""The symbolic arithmetical interpretation of modal formulas.

Variables become atoms named after them, and verum becomes the atom ``0=0``,
whose token can never be a variable name.  Falsum and the connectives map to
their SFormula counterparts.  A box becomes a provability literal about the
image of its argument.  The literal kind is Dagger for the ND family, where
the interpretation is based on the witness-comparison predicate.  It is the
plain proof predicate ``Prf`` for the NP family.

Membership in the image is decided by structural inversion.
"""

from __future__ import annotations

import re
from functools import lru_cache

from ..formula import BOT, TOP, And as MAnd, Box, Formula, Imp as MImp, Not, Or as MOr, Var
from ..logics import Logic
from .sformula import (SBOT, And, Atom, Imp, Neg, Or, PrKind, PrLit, SFormula, sdecode)

__all__ = ["Interpretation", "VERUM_TOKEN", "interpretation_for"]

VERUM_TOKEN = "0=0"
_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class Interpretation:
    """An injective homomorphism from modal formulas into SFormulas."""

    def __init__(self, box_kind: PrKind):
        self.box_kind = PrKind(box_kind)
        self._image = lru_cache(maxsize=None)(self._image_uncached)
        self._invert = lru_cache(maxsize=None)(self._invert_uncached)

    def __repr__(self) -> str:
        return f"Interpretation({self.box_kind.name})"

    def __call__(self, a: Formula) -> SFormula:
        return self._image(a)

    def _image_uncached(self, a: Formula) -> SFormula:
        if isinstance(a, Var):
            return Atom(a.name)
        if a is TOP:
            return Atom(VERUM_TOKEN)
        if a is BOT:
            return SBOT
        if isinstance(a, Not):
            return Neg(self(a.arg))
        if isinstance(a, Box):
            return PrLit(self.box_kind, self(a.arg).gn)
        cls = And if isinstance(a, MAnd) else Or if isinstance(a, MOr) else Imp
        return cls(self(a.left), self(a.right))

    def invert(self, x: SFormula) -> Formula | None:
        """The modal formula B with f(B) = x, or None when x is outside the image."""
        return self._invert(x)

    def _invert_uncached(self, x: SFormula) -> Formula | None:
        if x is SBOT:
            return BOT
        if isinstance(x, Atom):
            if x.token == VERUM_TOKEN:
                return TOP
            return Var(x.token) if _IDENT.match(x.token) else None
        if isinstance(x, Neg):
            y = self.invert(x.arg)
            return None if y is None else Not(y)
        if isinstance(x, PrLit):
            if x.kind is not self.box_kind:
                return None
            y = self.invert(sdecode(x.code))
            return None if y is None else Box(y)
        if isinstance(x, (And, Or, Imp)):
            left = self.invert(x.left)
            if left is None:
                return None
            right = self.invert(x.right)
            if right is None:
                return None
            cls = MAnd if isinstance(x, And) else MOr if isinstance(x, Or) else MImp
            return cls(left, right)
        return None

    def in_image(self, x: SFormula) -> bool:
        return self.invert(x) is not None


_BY_KIND: dict = {}


def interpretation_for(l: Logic) -> Interpretation:
    """Dagger literals for ND and ND4, plain proof literals for NP and NP4."""
    if l in (Logic.ND, Logic.ND4):
        kind = PrKind.DAGGER
    elif l in (Logic.NP, Logic.NP4):
        kind = PrKind.PRF
    else:
        raise ValueError(f"the staged constructions cover ND, ND4, NP and NP4, not {l.name}")
    it = _BY_KIND.get(kind)
    if it is None:
        it = _BY_KIND[kind] = Interpretation(kind)
    return it
