"""Witness-comparison provability predicates evaluated on finite output prefixes.

Each predicate is read off the outputs ``g(0), ..., g(H-1)`` for a horizon H:

* ``Prf``: x was output.
* ``R``: x was output at some y, and the negation of x was not
  output at any stage up to y.
* ``A``: the same comparison on the normal forms x* and (not x)*.
* ``Dagger``: R for members of the interpretation's image, A otherwise.

The verdict is three-valued.  ``TRUE`` carries the least witness.
``SETTLED_FALSE`` means an earlier blocking output makes the predicate false
at every larger horizon.  ``FALSE_AT_HORIZON`` means nothing is decided yet.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .interpretation import Interpretation
from .sformula import Neg, PrKind, SFormula, star

__all__ = ["Truth", "PrValue", "OutputIndex", "eval_pr"]


class Truth(Enum):
    TRUE = "true"
    SETTLED_FALSE = "settled-false"
    FALSE_AT_HORIZON = "false-at-horizon"


@dataclass(frozen=True)
class PrValue:
    truth: Truth
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.truth is Truth.TRUE


class OutputIndex:
    """First-occurrence stages of every output of a sequence."""

    def __init__(self, outputs: Sequence):
        self.length = len(outputs)
        self.first: dict = {}
        for y, x in enumerate(outputs):
            if x != 0 and x not in self.first:
                self.first[x] = y

    def stage(self, x: SFormula, horizon: int) -> int | None:
        y = self.first.get(x)
        return y if y is not None and y < horizon else None


def _compare(index: OutputIndex, pos: SFormula, neg: SFormula, horizon: int) -> PrValue:
    y = index.stage(pos, horizon)
    z = index.stage(neg, horizon)
    if y is not None and (z is None or z > y):
        return PrValue(Truth.TRUE, y)
    if z is not None:
        return PrValue(Truth.SETTLED_FALSE, z)
    return PrValue(Truth.FALSE_AT_HORIZON)


def eval_pr(kind: PrKind, target: SFormula, outputs, horizon: int | None = None,
            interp: Interpretation | None = None) -> PrValue:
    """Evaluate ``Pr_kind(target)`` on the outputs strictly before ``horizon``.

    ``outputs`` may be a sequence, an :class:`OutputIndex` or a trace with
    ``g`` and ``interp`` attributes.
    """
    if hasattr(outputs, "g"):
        interp = interp or outputs.interp
        index = outputs.index
    elif isinstance(outputs, OutputIndex):
        index = outputs
    else:
        index = OutputIndex(outputs)
    if horizon is None:
        horizon = index.length
    kind = PrKind(kind)
    if kind is PrKind.PRF:
        y = index.stage(target, horizon)
        return PrValue(Truth.TRUE, y) if y is not None else PrValue(Truth.FALSE_AT_HORIZON)
    if kind is PrKind.DAGGER:
        if interp is None:
            raise ValueError("the Dagger predicate needs an interpretation")
        kind = PrKind.R if interp.in_image(target) else PrKind.A
    if kind is PrKind.R:
        return _compare(index, target, Neg(target), horizon)
    return _compare(index, star(target), star(Neg(target)), horizon)
