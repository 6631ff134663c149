"""Trace-level assertions about staged runs.

Every check returns a :class:`ClaimResult` whose status is ``pass``, ``fail``
or ``vacuous`` (nothing to check on this trace).  Failing checks carry a
witness.

The checks:

``switch-once``
    h starts at 0, changes at most once and stays constant afterwards.
``pre-switch-fidelity``
    Before the switch every output is the stream's output.
``D``
    No formula has both ``Pr(phi)`` and ``Pr(not phi)`` true at the horizon,
    with Pr the run's box predicate read in the Dagger style (plain witness
    comparison on image members, normal-form comparison elsewhere).  Truth
    is monotone in the horizon, so the final horizon covers all earlier ones.
``4``
    ND4 and NP4 runs only.  If ``Pr(phi)`` is true and the literal
    ``L = Pr(phi)`` is scheduled inside the emitted part of the tail, then
    ``Pr(L)`` is true as well.
``P``
    Falsum is never emitted from the switch on.
``tail-filter``
    Each tail stage emits xi_t, except that image members f(B) are replaced
    by 0 when the selected world fails to force the box of B.  The forcing is
    recomputed from the successor row of the library frame, independently
    of the run's own evaluation.
``case-a``
    Phi-triggered runs output the scheduled normal forms right at the switch.
``bookkeeping``
    ND and ND4 runs with a switch at s >= 1.  For every phi outside the
    image with ``not Pr(phi)`` in the earlier prefix ``g(0..s-2)`` the four
    bookkeeping facts (i) to (iv) hold of that prefix.  Candidates whose
    codes exceed s - 1 fall outside the search range of Phi at stage s - 1
    and are reported as skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..logics import Logic
from ..semantics import forces_vector
from .predicates import eval_pr
from .sformula import Neg, PrKind, PrLit, SBOT, star, xi
from .staged import PhiTrigger, SKIP, StagedTrace, _is_dagger, _neg_dagger_shaped

__all__ = ["ClaimResult", "ClaimReport", "assert_trace_claims"]

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


@dataclass
class ClaimResult:
    claim: str
    status: str
    witness: object = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ClaimReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def get(self, claim: str) -> ClaimResult:
        for r in self.results:
            if r.claim == claim:
                return r
        raise KeyError(claim)

    def to_json(self) -> list:
        return [r.to_json() for r in self.results]


def _switch_once(t: StagedTrace) -> ClaimResult:
    h = t.h
    if h[0] != 0:
        return ClaimResult("switch-once", FAIL, {"stage": 0, "h": h[0]})
    changes = [s for s in range(len(h) - 1) if h[s] != h[s + 1]]
    if len(changes) > 1:
        return ClaimResult("switch-once", FAIL, {"changes": changes[:4]})
    return ClaimResult("switch-once", PASS, {"switch": changes[0]} if changes else None)


def _fidelity(t: StagedTrace) -> ClaimResult:
    end = t.switch_stage if t.switch_stage is not None else t.horizon
    for s in range(end):
        if t.g[s] != t.stream(s):
            return ClaimResult("pre-switch-fidelity", FAIL, {"stage": s})
    return ClaimResult("pre-switch-fidelity", PASS)


def _candidates(t: StagedTrace) -> list:
    seen = set()
    for x in t.g:
        if x == SKIP:
            continue
        seen.add(x)
        seen.add(star(x))
        if isinstance(x, Neg):
            seen.add(x.arg)
    return sorted(seen, key=lambda y: y.gn)


def _d_check(t: StagedTrace) -> ClaimResult:
    for phi in _candidates(t):
        a = eval_pr(PrKind.DAGGER, phi, t)
        if not a:
            continue
        b = eval_pr(PrKind.DAGGER, Neg(phi), t)
        if b:
            return ClaimResult("D", FAIL, {"phi": str(phi), "stages": [a.witness, b.witness]})
    return ClaimResult("D", PASS)


def _four_check(t: StagedTrace) -> ClaimResult:
    if not t.logic.has_4:
        return ClaimResult("4", VACUOUS, detail="logic without the 4 schema")
    if t.tail_start is None or t.tail_start >= t.horizon:
        return ClaimResult("4", VACUOUS, detail="no emitted tail")
    kind = t.interp.box_kind
    width = t.horizon - t.tail_start
    max_code = xi(width - 1).gn
    checked = 0
    for phi in _candidates(t):
        if not eval_pr(kind, phi, t):
            continue
        lit = PrLit(kind, phi.gn)
        if lit.gn > max_code:
            continue
        checked += 1
        if not eval_pr(kind, lit, t):
            return ClaimResult("4", FAIL, {"phi": str(phi)})
    if not checked:
        return ClaimResult("4", VACUOUS, detail="no literal inside the window")
    return ClaimResult("4", PASS, {"checked": checked})


def _p_check(t: StagedTrace) -> ClaimResult:
    if t.switch_stage is None:
        return ClaimResult("P", VACUOUS, detail="no switch")
    for s in range(t.switch_stage, len(t.g)):
        if t.g[s] is SBOT:
            return ClaimResult("P", FAIL, {"stage": s})
    return ClaimResult("P", PASS)


def _box_at(t: StagedTrace, b) -> bool:
    model = t.entry.model
    row = model.frame.relation(b)[model.frame.index_of(t.world)]
    return bool(np.all(forces_vector(model, b)[row]))


def _tail_filter(t: StagedTrace) -> ClaimResult:
    if t.tail_start is None or t.tail_start >= t.horizon:
        return ClaimResult("tail-filter", VACUOUS, detail="no emitted tail")
    checked = 0
    for pos in range(t.tail_start, t.horizon):
        x = xi(pos - t.tail_start)
        b = t.interp.invert(x)
        expect = SKIP if b is not None and not _box_at(t, b) else x
        if t.g[pos] != expect:
            return ClaimResult("tail-filter", FAIL, {"stage": pos, "xi": str(x)})
        checked += 1
    return ClaimResult("tail-filter", PASS, {"checked": checked})


def _case_a(t: StagedTrace) -> ClaimResult:
    if not isinstance(t.trigger, PhiTrigger):
        return ClaimResult("case-a", VACUOUS, detail="no Phi trigger")
    w = t.trigger.witness
    s = t.switch_stage
    for j in range(w.r):
        if s + j >= t.horizon:
            break
        want = star(Neg(w.sigmas[w.r - 1 - j]))
        if t.g[s + j] is not want:
            return ClaimResult("case-a", FAIL, {"stage": s + j, "want": str(want)})
    return ClaimResult("case-a", PASS, {"r": w.r})


def _nd4_4(t: StagedTrace) -> list:
    names = ["bookkeeping(i)", "bookkeeping(ii)", "bookkeeping(iii)", "bookkeeping(iv)"]
    s = t.switch_stage
    if t.logic not in (Logic.ND, Logic.ND4) or s is None or s < 1:
        return [ClaimResult(n, VACUOUS, detail="no ND switch at a positive stage") for n in names]
    earlier = t.prefix_members(s - 1)
    interp = t.interp
    phi_witness = t.trigger.witness if isinstance(t.trigger, PhiTrigger) else None
    counts = [0, 0, 0, 0]
    skipped = 0
    fails: dict = {}
    for lit in sorted((x for x in earlier if _neg_dagger_shaped(x)), key=lambda y: y.gn):
        phi = lit.arg.target
        if interp.in_image(phi):
            continue
        if phi.gn > s - 1 or star(Neg(phi)).gn > s - 1:
            skipped += 1
            continue
        # (i)
        if not _neg_dagger_shaped(star(phi)):
            counts[0] += 1
            if star(Neg(phi)) not in earlier:
                fails.setdefault(0, str(phi))
        # (ii): the iteration ending in phi is forced; unroll it
        chain = [phi]
        cur = star(phi)
        while _is_dagger(cur):
            chain.append(cur.target)
            cur = star(cur.target)
        if len(chain) > 1:
            counts[1] += 1
            for sigma in chain[:-1]:
                if star(Neg(sigma)) not in earlier:
                    fails.setdefault(1, str(sigma))
                    break
        # (iii)
        if phi_witness is not None:
            counts[2] += 1
            if any(star(phi) is star(Neg(sig)) for sig in phi_witness.sigmas):
                fails.setdefault(2, str(phi))
        # (iv)
        counts[3] += 1
        if star(phi) in earlier:
            fails.setdefault(3, str(phi))
    out = []
    for k, n in enumerate(names):
        detail = f"{skipped} candidates outside the code range" if skipped else ""
        if k in fails:
            out.append(ClaimResult(n, FAIL, {"phi": fails[k]}, detail))
        elif counts[k] == 0:
            out.append(ClaimResult(n, VACUOUS, None, detail or "no qualifying formula"))
        else:
            out.append(ClaimResult(n, PASS, {"checked": counts[k]}, detail))
    return out


def assert_trace_claims(t: StagedTrace, l: Logic | None = None) -> ClaimReport:
    """Run every trace-level check on a finished run."""
    if l is not None and l is not t.logic:
        raise ValueError(f"trace was produced for {t.logic.name}, not {l.name}")
    report = ClaimReport()
    report.results += [
        _switch_once(t), _fidelity(t), _d_check(t), _four_check(t), _p_check(t),
        _tail_filter(t), _case_a(t),
    ]
    report.results += _nd4_4(t)
    return report
