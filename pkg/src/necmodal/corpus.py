"""Exhaustive formula corpora used by the test-suites and the oracle."""

from __future__ import annotations

from functools import lru_cache

from .formula import BOT, TOP, And, Box, Imp, Not, Or, Var


@lru_cache(maxsize=None)
def formulas_of_size(size: int, variables: tuple = ("p",)) -> tuple:
    """Every formula with exactly ``size`` nodes over the given variables and the constants."""
    if size < 1:
        return ()
    if size == 1:
        return (BOT, TOP) + tuple(Var(v) for v in variables)
    out = []
    for a in formulas_of_size(size - 1, variables):
        out.append(Not(a))
        out.append(Box(a))
    for left_size in range(1, size - 1):
        right_size = size - 1 - left_size
        lefts = formulas_of_size(left_size, variables)
        rights = formulas_of_size(right_size, variables)
        for op in (And, Or, Imp):
            for a in lefts:
                for b in rights:
                    out.append(op(a, b))
    return tuple(out)


def formulas_up_to(max_size: int, variables: tuple = ("p",)) -> list:
    """All formulas with at most ``max_size`` nodes, smallest first."""
    out = []
    for s in range(1, max_size + 1):
        out.extend(formulas_of_size(s, variables))
    return out
