"""Finite-stage execution of the staged constructions h/g.

Prefix convention: at stage s every test (the condition Phi, the set J and
the X-set) reads the outputs ``g(0), ..., g(s-1)``.  The value h(s+1) is
computed at stage s from that prefix.  While it is 0, the stage copies the
theory stream (Procedure 1).  At the first stage s with h(s+1) != 0 the run
switches to Procedure 2 and every later output is dictated by the selected
library world.

ND and ND4 runs (:func:`run_staged`) use the condition Phi, the Case A
schedule and the X-set.  NP and NP4 runs (:func:`run_staged_simple`) switch
on J alone and go straight to the tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..formula import Box
from ..logics import Logic
from ..semantics import forces
from .interpretation import Interpretation, interpretation_for
from .library import CountermodelLibrary, LibraryEntry
from .prefix import PrefixTheory
from .sformula import (Alpha, And, Atom, Beta, Imp, Lambda, MarkerKind, Neg, Or, PrKind,
                       PrLit, SFormula, star, token_from_value, xi)

__all__ = [
    "TheoryStream", "PhiWitness", "PhiTrigger", "JTrigger", "JSet", "StagedTrace",
    "check_phi", "compute_j", "x_set", "run_staged", "run_staged_simple", "run",
    "tautology_stream",
]

SKIP = 0


class TheoryStream:
    """A deterministic stage -> output map; 0 means no output at that stage."""

    def __init__(self, outputs: Mapping[int, SFormula] | None = None,
                 background: Callable[[int], object] | None = None, name: str = "scripted"):
        self.outputs = dict(outputs or {})
        self.background = background
        self.name = name

    def __call__(self, s: int):
        x = self.outputs.get(s)
        if x is not None:
            return x
        return self.background(s) if self.background is not None else SKIP


def _tautology(s: int) -> SFormula:
    a = Atom(token_from_value(s + 1))
    return Or(a, Neg(a))


def tautology_stream(outputs: Mapping[int, SFormula] | None = None) -> TheoryStream:
    """Outputs ``a_s or not a_s`` for the s-th atom, overridden by ``outputs``."""
    return TheoryStream(outputs, _tautology, name="tautologies")


@dataclass(frozen=True)
class PhiWitness:
    psi: SFormula
    r: int
    sigmas: tuple

    def schedule(self) -> tuple:
        """Case A outputs ``(not sigma_{r-1-j})*`` for j = 0 .. r-1."""
        return tuple(star(Neg(self.sigmas[self.r - 1 - j])) for j in range(self.r))


@dataclass(frozen=True)
class PhiTrigger:
    witness: PhiWitness


@dataclass(frozen=True)
class JTrigger:
    world: int
    model_index: int
    reason: tuple


@dataclass(frozen=True)
class JSet:
    """J as computed on a prefix; ``everything`` marks an inconsistent prefix."""

    members: frozenset = frozenset()
    everything: bool = False
    reasons: Mapping = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.everything or bool(self.members)

    def __contains__(self, j: int) -> bool:
        return j >= 1 and (self.everything or j in self.members)

    def min(self) -> int:
        if self.everything:
            return 1
        return min(self.members)


def _is_dagger(x: SFormula) -> bool:
    return isinstance(x, PrLit) and x.kind is PrKind.DAGGER


def _neg_dagger_shaped(x: SFormula) -> bool:
    return isinstance(x, Neg) and _is_dagger(x.arg)


def check_phi(s: int, prefix: PrefixTheory, interp: Interpretation) -> PhiWitness | None:
    """The least witness (by the code of psi) of the condition Phi at stage s.

    For a candidate psi every other part of the witness is forced.  The
    normal form of sigma_{r-1} is (not psi)*.  Each sigma_{i+1}* = Pr(sigma_i)
    names its predecessor exactly, and the chain must stop once sigma_0* is
    no longer a Dagger literal.  The last element is stored in normal form.
    """
    for lit in sorted(prefix.neg_dagger, key=lambda x: x.arg.code):
        psi = lit.arg.target
        if psi.gn > s or interp.in_image(psi):
            continue
        top = star(Neg(psi))
        if top.gn > s:
            continue
        chain = [top]
        cur = top
        while _is_dagger(cur):
            prev = cur.target
            chain.append(prev)
            cur = star(prev)
        sigmas = tuple(reversed(chain))
        if any(star(x) in prefix for x in sigmas):
            continue
        return PhiWitness(psi, len(sigmas), sigmas)
    return None


def compute_j(s: int, prefix: PrefixTheory, library: CountermodelLibrary) -> JSet:
    """J_s on the prefix: the worlds j whose non-actuality the prefix already proves."""
    if prefix.inconsistent:
        return JSet(everything=True, reasons={"*": ("inconsistent prefix",)})
    found: dict = {}
    candidates = sorted(j for j in prefix.lambdas | prefix.instance_js if j >= 1)
    for j in candidates:
        if prefix.entails(Neg(Lambda(j))):
            found[j] = ("not-lambda",)
    for marker in prefix.universal_markers:
        b = marker.formula
        make = Alpha if marker.kind is MarkerKind.ALPHA_ALL else Beta
        for j in candidates:
            if j in found or not library.covers(j):
                continue
            entry = library.locate(j)
            if b not in entry.subformulas():
                continue
            goal = And(marker, Imp(make(b, j), Neg(Lambda(j))))
            if prefix.entails(goal):
                found[j] = (marker.kind.name.lower(), str(b), entry.k)
    return JSet(frozenset(found), False, found)


def x_set(prefix_members, interp: Interpretation) -> list:
    """The X-set in ascending code order: (not phi)* for the qualifying phi."""
    out = set()
    for x in prefix_members:
        if not _neg_dagger_shaped(x):
            continue
        phi = x.arg.target
        if interp.in_image(phi):
            continue
        if _neg_dagger_shaped(star(phi)):
            out.add(star(Neg(phi)))
    return sorted(out, key=lambda y: y.gn)


@dataclass
class StagedTrace:
    logic: Logic
    horizon: int
    h: list
    g: list
    interp: Interpretation
    library: CountermodelLibrary
    stream: TheoryStream
    switch_stage: int | None = None
    trigger: object = None
    world: int | None = None
    entry: LibraryEntry | None = None
    case_a: tuple = ()
    x_outputs: tuple = ()
    tail_start: int | None = None
    log: list = field(default_factory=list)
    _index: object = None

    @property
    def index(self):
        from .predicates import OutputIndex
        if self._index is None or self._index.length != len(self.g):
            self._index = OutputIndex(self.g)
        return self._index

    def prefix_members(self, upto: int) -> set:
        """The set of outputs at stages < upto."""
        return {x for x in self.g[:max(upto, 0)] if x != SKIP}


def _tail(trace: StagedTrace, start: int, t0: int = 0) -> None:
    entry, i = trace.entry, trace.world
    t = t0
    for _ in range(start, trace.horizon):
        x = xi(t)
        b = trace.interp.invert(x)
        if b is not None and not forces(entry.model, i, Box(b)):
            trace.g.append(SKIP)
        else:
            trace.g.append(x)
        t += 1


def _run(l: Logic, stream: TheoryStream, library: CountermodelLibrary, horizon: int,
         with_phi: bool, interp: Interpretation | None) -> StagedTrace:
    interp = interp or interpretation_for(l)
    trace = StagedTrace(l, horizon, [0], [], interp, library, stream)
    prefix = PrefixTheory()
    for s in range(horizon):
        witness = check_phi(s, prefix, interp) if with_phi else None
        if witness is not None:
            nxt, jset = 1, None
        else:
            jset = compute_j(s, prefix, library)
            nxt = jset.min() if jset else 0
        if nxt == 0:
            out = stream(s)
            trace.g.append(out)
            trace.h.append(0)
            if out != SKIP:
                prefix.add(out)
            continue
        # Procedure 2 from stage s on
        trace.switch_stage = s
        trace.h.extend([nxt] * (horizon - s))
        trace.world = nxt
        trace.entry = library.locate(nxt)
        if witness is not None:
            trace.trigger = PhiTrigger(witness)
            trace.case_a = witness.schedule()
            trace.log.append({"stage": s, "event": "phi", "psi": str(witness.psi), "r": witness.r})
        else:
            trace.trigger = JTrigger(nxt, trace.entry.k, tuple(jset.reasons.get(nxt, ("everything",))))
            trace.log.append({"stage": s, "event": "J", "min": nxt,
                              "members": "all" if jset.everything else sorted(jset.members)})
        if with_phi:
            trace.x_outputs = tuple(x_set(prefix.order, interp))
        head = list(trace.case_a) + list(trace.x_outputs)
        for x in head[:horizon - s]:
            trace.g.append(x)
        trace.tail_start = s + len(head)
        _tail(trace, trace.tail_start)
        break
    return trace


def run_staged(l: Logic, stream: TheoryStream, library: CountermodelLibrary, horizon: int,
               interp: Interpretation | None = None) -> StagedTrace:
    """The h0/g0 construction for ND and ND4."""
    if l not in (Logic.ND, Logic.ND4):
        raise ValueError("run_staged covers ND and ND4")
    return _run(l, stream, library, horizon, True, interp)


def run_staged_simple(l: Logic, stream: TheoryStream, library: CountermodelLibrary,
                      horizon: int, interp: Interpretation | None = None) -> StagedTrace:
    """The h1/g1 construction for NP and NP4."""
    if l not in (Logic.NP, Logic.NP4):
        raise ValueError("run_staged_simple covers NP and NP4")
    return _run(l, stream, library, horizon, False, interp)


def run(l: Logic, stream: TheoryStream, library: CountermodelLibrary, horizon: int) -> StagedTrace:
    """Dispatch on the logic."""
    if l in (Logic.ND, Logic.ND4):
        return run_staged(l, stream, library, horizon)
    return run_staged_simple(l, stream, library, horizon)
