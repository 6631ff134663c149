"""The six decidable logics and the frame classes they correspond to."""

from __future__ import annotations

from enum import Enum


class UnsupportedLogicError(ValueError):
    """Raised for unknown logic names and for NR/NR4, which are not decided."""


class Logic(Enum):
    N = "N"
    NP = "NP"
    ND = "ND"
    N4 = "N4"
    NP4 = "NP4"
    ND4 = "ND4"

    @property
    def has_p(self) -> bool:
        return self in (Logic.NP, Logic.NP4)

    @property
    def has_d(self) -> bool:
        return self in (Logic.ND, Logic.ND4)

    @property
    def has_4(self) -> bool:
        return self in (Logic.N4, Logic.NP4, Logic.ND4)

    @property
    def schemas(self) -> frozenset:
        """Names of the axiom schemas beyond N: 'P' is ~[]false, 'D' is ~([]C & []~C), '4' is []C -> [][]C."""
        out = set()
        if self.has_p:
            out.add("P")
        if self.has_d:
            out.add("D")
        if self.has_4:
            out.add("4")
        return frozenset(out)

    def __str__(self) -> str:
        return self.value


def parse_logic(name: str) -> Logic:
    key = name.strip().upper()
    if key in ("NR", "NR4"):
        raise UnsupportedLogicError(
            f"{key} is not decided here; only serial-frame checking is available")
    try:
        return Logic(key)
    except ValueError:
        raise UnsupportedLogicError(f"unknown logic {name!r}") from None
