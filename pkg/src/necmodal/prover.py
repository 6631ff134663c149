"""Decision procedure for N, NP, ND, N4, NP4 and ND4 with certified verdicts.

Consistency is decided by a bounded premise oracle.  For a query ``a`` the
premise universe ``V`` is the overline closure of ``a`` widened by companion
steps (see ``closure.premise_universe``).  The premises are

* the axiom instances of the logic whose boxed atoms lie in ``V``;
* the theorem units ``[]B`` in ``V`` with ``lprovable(l, B)``, queried only
  for box-free ``B`` or for ``B`` below ``a`` in the well-founded order
  comparing modal depth first and Goedel number second.

Box-free formulas are answered directly: they are theorems iff they are
tautologies, and their certificate has no premises.

``a`` is provable iff the premises tautologically imply it.  Every premise is
a clause with at most two literals (``[]B``, ``~[]false``,
``~([]C & []~C)``, ``[]C -> [][]C``), so only premises connected to the
query's atoms through shared atoms can matter.  The others are dropped, and
the kept ones form the certificate.

The maximal consistent sets over the closure are the valuations of the
closure's atoms that extend to a model of the premises.  ``decide`` builds the
canonical model from them, repairs it for the 4-logics, and verifies the
result before returning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .closure import ClosureSet, overline_closure, premise_universe
from .formula import (BOT, Box, Formula, Imp, Not, And, Var, modal_depth, to_text, parse)
from .logics import Logic, parse_logic
from .propositional import atom_patterns, pa_atoms, tc_entails, truth_mask
from .semantics import (FrameSpec, Model, Policy, check_frame_classes, forces_vector,
                        frame_classes, model_from_json, model_to_json, repair_transitive)

__all__ = [
    "Logic", "parse_logic", "InternalCompletenessError", "AxiomInstance", "Necessitation",
    "Certificate", "MaxConsSet", "Verdict", "lprovable", "decide", "max_cons_sets",
    "build_canonical_model", "CanonicalModel", "verify_countermodel", "verify_certificate",
    "axiom_schema_of", "certificate_to_json", "certificate_from_json", "verdict_to_json",
    "verdict_from_json", "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 2
ENUM_BITMASK_LIMIT = 20


class InternalCompletenessError(RuntimeError):
    """A verdict failed verification, or the two verdict directions disagree."""


# ------------------------------------------------------------ certificates

@dataclass(frozen=True, eq=False)
class AxiomInstance:
    schema: str          # 'P', 'D' or '4'
    formula: Formula


@dataclass(frozen=True, eq=False)
class Necessitation:
    formula: Formula     # []B
    certificate: "Certificate"   # proves B


@dataclass(frozen=True, eq=False)
class Certificate:
    goal: Formula
    premises: tuple = ()

    def premise_formulas(self) -> list:
        return [p.formula for p in self.premises]


Premise = Union[AxiomInstance, Necessitation]


def axiom_schema_of(f: Formula) -> str | None:
    """Which schema f instantiates, if any."""
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Box) and g.arg is BOT:
            return "P"
        if (isinstance(g, And) and isinstance(g.left, Box) and isinstance(g.right, Box)
                and g.right.arg is Not(g.left.arg)):
            return "D"
    if isinstance(f, Imp) and isinstance(f.left, Box) and f.right is Box(f.left):
        return "4"
    return None


_VERIFIED: dict = {}


def verify_certificate(l: Logic, c: Certificate) -> bool:
    """Schema match for every axiom, recursive check of every necessitation, then t.c."""
    key = (l, id(c))
    hit = _VERIFIED.get(key)
    if hit is not None and hit[0] is c:
        return hit[1]
    ok = _verify_certificate(l, c)
    _VERIFIED[key] = (c, ok)
    return ok


def _verify_certificate(l: Logic, c: Certificate) -> bool:
    for p in c.premises:
        if isinstance(p, AxiomInstance):
            schema = axiom_schema_of(p.formula)
            if schema is None or schema != p.schema or schema not in l.schemas:
                return False
        elif isinstance(p, Necessitation):
            if p.formula is not Box(p.certificate.goal):
                return False
            if not verify_certificate(l, p.certificate):
                return False
        else:
            return False
    return tc_entails(c.premise_formulas(), c.goal)


# ------------------------------------------------------------ premise oracle

_NEIGHBOUR_CACHE: dict = {}


def _axiom_candidates(l: Logic, x: Formula) -> tuple:
    """Axiom instances of l mentioning the atom x: (other atom or None, instance, clause)."""
    key = (l, x)
    hit = _NEIGHBOUR_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    if isinstance(x, Box):
        c = x.arg
        if l.has_p and c is BOT:
            out.append((None, AxiomInstance("P", Not(x)), ((x, False),)))
        if l.has_d:
            partner = Box(Not(c))
            out.append((partner, AxiomInstance("D", Not(And(x, partner))),
                        ((x, False), (partner, False))))
            if isinstance(c, Not):
                partner = Box(c.arg)
                out.append((partner, AxiomInstance("D", Not(And(partner, x))),
                            ((partner, False), (x, False))))
        if l.has_4:
            up = Box(x)
            out.append((up, AxiomInstance("4", Imp(x, up)), ((x, False), (up, True))))
            if isinstance(c, Box):
                out.append((c, AxiomInstance("4", Imp(c, x)), ((c, False), (x, True))))
    hit = _NEIGHBOUR_CACHE[key] = tuple(out)
    return hit


class _PremiseSet:
    """The premises relevant to a set of starting atoms.

    Atoms outside the start set that occur with one polarity only are pure;
    the clauses mentioning them are dropped (repeatedly), which preserves
    every entailment whose goal only mentions start atoms.
    """

    def __init__(self, l: Logic, V: frozenset, start, bound: Formula, depth: int):
        comp = set()
        axioms = {}
        stack = list(start)
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            for other, inst, clause in _axiom_candidates(l, x):
                if other is None:
                    axioms[inst.formula] = (inst, clause)
                elif other in V:
                    axioms[inst.formula] = (inst, clause)
                    if other not in comp:
                        stack.append(other)
        entries = list(axioms.values())
        for x in comp:
            if isinstance(x, Box) and _below(x.arg, bound):
                ok, cert = lprovable(l, x.arg, depth)
                if ok:
                    entries.append((Necessitation(x, cert), ((x, True),)))
        protected = set(start)
        while True:
            pos: dict = {}
            neg: dict = {}
            for _, clause in entries:
                for atom, sign in clause:
                    d = pos if sign else neg
                    d[atom] = d.get(atom, 0) + 1
            pure = {a for a in comp if a not in protected
                    and (a not in pos or a not in neg)}
            if not pure:
                break
            kept = [e for e in entries if not any(atom in pure for atom, _ in e[1])]
            comp -= pure
            if len(kept) == len(entries):
                break
            entries = kept
        entries.sort(key=lambda e: (isinstance(e[0], Necessitation), e[0].formula.gn))
        self.atoms = comp
        self.premises: list = [e[0] for e in entries]
        self.clauses: list = [e[1] for e in entries]

    def formulas(self) -> list:
        return [p.formula for p in self.premises]


def _below(b: Formula, a: Formula) -> bool:
    # box-free queries never recurse, so they may be asked from anywhere
    db = modal_depth(b)
    return db == 0 or (db, b.gn) < (modal_depth(a), a.gn)


_LCACHE: dict = {}


def lprovable(l: Logic, a: Formula, depth: int = DEFAULT_DEPTH) -> tuple:
    """(provable?, certificate or None) by the bounded premise oracle."""
    key = (l, a, depth)
    hit = _LCACHE.get(key)
    if hit is not None:
        return hit
    if modal_depth(a) == 0:
        ok = tc_entails((), a)
        result = (True, Certificate(a, ())) if ok else (False, None)
        _LCACHE[key] = result
        return result
    V = premise_universe(l, overline_closure(a), depth)
    prem = _PremiseSet(l, V, pa_atoms(a), a, depth)
    ok = tc_entails(prem.formulas(), a)
    result = (True, Certificate(a, tuple(prem.premises))) if ok else (False, None)
    _LCACHE[key] = result
    return result


def clear_caches() -> None:
    _LCACHE.clear()
    _VERIFIED.clear()
    _NEIGHBOUR_CACHE.clear()


# ------------------------------------------------------------ maximal consistent sets

@dataclass(frozen=True, eq=False)
class MaxConsSet:
    members: frozenset
    logic: Logic

    def __contains__(self, f: Formula) -> bool:
        return f in self.members

    def sorted_members(self) -> list:
        return sorted(self.members, key=lambda f: f.gn)


def _closure_atoms(g: ClosureSet) -> list:
    return [f for f in g.members if isinstance(f, (Var, Box))]


def _consistent_assignments(l: Logic, a: Formula, depth: int):
    """Consistent valuations of the closure atoms, as (atoms, list of bitmasks)."""
    g = overline_closure(a)
    catoms = _closure_atoms(g)
    V = premise_universe(l, g, depth)
    prem = _PremiseSet(l, V, catoms, a, depth)
    extras = sorted(prem.atoms - set(catoms), key=lambda f: f.gn)
    k, e = len(catoms), len(extras)
    formulas = prem.formulas()
    if k + e <= ENUM_BITMASK_LIMIT:
        full, pats = atom_patterns(k + e)
        env = dict(zip(extras + catoms, pats))
        acc = full
        for p in formulas:
            acc &= truth_mask(p, env, full)
        nbytes = max(1, (1 << (k + e)) // 8)
        bits = np.unpackbits(np.frombuffer(acc.to_bytes(nbytes, "little"), dtype=np.uint8),
                             bitorder="little")[: 1 << (k + e)]
        proj = bits.reshape(1 << k, 1 << e).any(axis=1)
        assignments = [int(j) for j in np.nonzero(proj)[0]]
    else:
        assignments = _dfs_assignments(catoms, extras, prem.clauses)
    return g, catoms, assignments, prem


def _propagate(clauses, watch, asg, changed):
    stack = list(changed)
    while stack:
        v = stack.pop()
        for ci in watch[v]:
            clause = clauses[ci]
            free = None
            sat = False
            nfree = 0
            for var, sign in clause:
                val = asg[var]
                if val is None:
                    nfree += 1
                    free = (var, sign)
                elif val == sign:
                    sat = True
                    break
            if sat:
                continue
            if nfree == 0:
                return False
            if nfree == 1:
                asg[free[0]] = free[1]
                stack.append(free[0])
    return True


def _dfs_assignments(catoms, extras, raw_clauses):
    atoms = catoms + extras
    index = {f: i for i, f in enumerate(atoms)}
    clauses = [tuple((index[f], sign) for f, sign in cl) for cl in raw_clauses]
    watch = [[] for _ in atoms]
    for ci, cl in enumerate(clauses):
        for var, _ in cl:
            watch[var].append(ci)
    base = [None] * len(atoms)
    units = []
    for cl in clauses:
        if len(cl) == 1:
            var, sign = cl[0]
            if base[var] is not None and base[var] != sign:
                return []
            base[var] = sign
            units.append(var)
    if not _propagate(clauses, watch, base, units):
        return []
    out = []
    k = len(catoms)

    def rec(i, asg, bits):
        if i == k:
            # every remaining clause has a negative literal, so all-false extends it
            out.append(bits)
            return
        for value in (False, True):
            if asg[i] is not None and asg[i] != value:
                continue
            nxt = list(asg)
            nxt[i] = value
            if asg[i] is None and not _propagate(clauses, watch, nxt, [i]):
                continue
            rec(i + 1, nxt, bits | (1 << i) if value else bits)

    rec(0, base, 0)
    return sorted(out)


def _membership(g: ClosureSet, catoms: list, assignments: list) -> np.ndarray:
    """Boolean matrix: rows are assignments, columns are closure members."""
    k = len(catoms)
    full, pats = atom_patterns(k)
    env = dict(zip(catoms, pats))
    idx = np.array(assignments, dtype=np.int64)
    cols = []
    nbytes = max(1, (1 << k) // 8)
    for f in g.members:
        m = truth_mask(f, env, full)
        bits = np.unpackbits(np.frombuffer(m.to_bytes(nbytes, "little"), dtype=np.uint8),
                             bitorder="little")
        cols.append(bits[idx].astype(bool))
    return np.stack(cols, axis=1) if cols else np.zeros((len(idx), 0), dtype=bool)


def _membership_large(g: ClosureSet, catoms: list, assignments: list) -> np.ndarray:
    rows = []
    for bits in assignments:
        val = {f: bool(bits >> i & 1) for i, f in enumerate(catoms)}
        rows.append([_eval_prop(f, val) for f in g.members])
    return np.array(rows, dtype=bool).reshape(len(assignments), len(g.members))


def _eval_prop(f: Formula, val: dict) -> bool:
    if isinstance(f, (Var, Box)):
        return val[f]
    if isinstance(f, Not):
        return not _eval_prop(f.arg, val)
    if isinstance(f, And):
        return _eval_prop(f.left, val) and _eval_prop(f.right, val)
    if f is BOT:
        return False
    if isinstance(f, Imp):
        return (not _eval_prop(f.left, val)) or _eval_prop(f.right, val)
    if hasattr(f, "left"):
        return _eval_prop(f.left, val) or _eval_prop(f.right, val)
    return True


@dataclass(frozen=True, eq=False)
class _WorldTable:
    closure: ClosureSet
    matrix: np.ndarray        # worlds x closure members, worlds sorted
    prem: object


_WCACHE: dict = {}


def _world_table(l: Logic, a: Formula, depth: int) -> _WorldTable:
    key = (l, a, depth)
    hit = _WCACHE.get(key)
    if hit is not None:
        return hit
    g, catoms, assignments, prem = _consistent_assignments(l, a, depth)
    if len(catoms) <= ENUM_BITMASK_LIMIT:
        mat = _membership(g, catoms, assignments)
    else:
        mat = _membership_large(g, catoms, assignments)
    if len(mat):
        order = np.lexsort(mat.T[::-1])
        mat = mat[order]
    table = _WorldTable(g, mat, prem)
    if len(_WCACHE) > 4096:
        _WCACHE.clear()
    _WCACHE[key] = table
    return table


def max_cons_sets(l: Logic, a: Formula, depth: int = DEFAULT_DEPTH) -> list:
    """All a-maximally l-consistent sets, in lexicographic Goedel order."""
    t = _world_table(l, a, depth)
    members = t.closure.members
    return [MaxConsSet(frozenset(m for m, inside in zip(members, row) if inside), l)
            for row in t.matrix]


# ------------------------------------------------------------ canonical model

@dataclass(frozen=True, eq=False)
class CanonicalModel:
    model: Model
    sets: dict                # world id -> MaxConsSet
    closure: ClosureSet
    pre_repair: Model | None = None


def _canonical_from_table(l: Logic, a: Formula, t: _WorldTable, repair: bool) -> CanonicalModel:
    mat = t.matrix
    n = len(mat)
    if n == 0:
        raise ValueError("no maximal consistent set exists")
    members = t.closure.members
    col = {f: i for i, f in enumerate(members)}
    explicit = {}
    for f in members:
        if isinstance(f, Box):
            has_box = mat[:, col[f]]
            inner = mat[:, col[f.arg]]
            explicit[f.arg] = ~has_box[:, None] | inner[None, :]
    worlds = tuple(range(n))
    val = {}
    var_cols = [(f.name, col[f]) for f in members if isinstance(f, Var)]
    for w in worlds:
        val[w] = {name for name, c in var_cols if mat[w, c]}
    frame = FrameSpec(worlds, explicit, Policy.TOTAL)
    model = Model(frame, val)
    sets = {w: MaxConsSet(frozenset(m for m, inside in zip(members, mat[w]) if inside), l)
            for w in worlds}
    if repair:
        repaired = Model(repair_transitive(frame, a), val)
        return CanonicalModel(repaired, sets, t.closure, model)
    return CanonicalModel(model, sets, t.closure, None)


def build_canonical_model(l: Logic, a: Formula, depth: int = DEFAULT_DEPTH,
                          repair: bool | None = None) -> CanonicalModel:
    """Canonical model over the maximal consistent sets; repaired for 4-logics by default."""
    if repair is None:
        repair = l.has_4
    return _canonical_from_table(l, a, _world_table(l, a, depth), repair)


# ------------------------------------------------------------ verdicts

@dataclass(frozen=True, eq=False)
class Verdict:
    logic: Logic
    formula: Formula
    provable: bool
    certificate: Certificate | None = None
    model: Model | None = None
    world: object = None
    stats: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return "provable" if self.provable else "unprovable"


def verify_countermodel(l: Logic, v: Verdict, a: Formula | None = None) -> bool:
    a = v.formula if a is None else a
    if v.model is None or v.world not in v.model.frame.worlds:
        return False
    if not check_frame_classes(v.model.frame, frame_classes(l)):
        return False
    return not bool(forces_vector(v.model, a)[v.model.frame.index_of(v.world)])


def decide(l: Logic, a: Formula, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Certified verdict; raises InternalCompletenessError instead of guessing."""
    if isinstance(l, str):
        l = parse_logic(l)
    ok, cert = lprovable(l, a, depth)
    t = _world_table(l, a, depth)
    col = t.closure.members.index(a)
    falsifying = np.nonzero(~t.matrix[:, col])[0]
    stats = {"closureSize": len(t.closure), "worldCount": int(len(t.matrix)),
             "oracleDepth": depth}
    if ok == bool(len(falsifying)):
        raise InternalCompletenessError(
            f"{l}: premise oracle says {'provable' if ok else 'unprovable'} for {to_text(a)} "
            f"but {len(falsifying)} maximal consistent sets omit it")
    if ok:
        if not verify_certificate(l, cert):
            raise InternalCompletenessError(f"{l}: certificate for {to_text(a)} does not verify")
        return Verdict(l, a, True, certificate=cert, stats=stats)
    cm = _canonical_from_table(l, a, t, l.has_4)
    world = int(falsifying[0])
    v = Verdict(l, a, False, model=cm.model, world=world, stats=stats)
    if not verify_countermodel(l, v, a):
        raise InternalCompletenessError(f"{l}: countermodel for {to_text(a)} does not verify")
    return v


# ------------------------------------------------------------ JSON

def certificate_to_json(c: Certificate) -> dict:
    prem = []
    for p in c.premises:
        if isinstance(p, AxiomInstance):
            prem.append({"axiom": p.schema, "formula": to_text(p.formula)})
        else:
            prem.append({"nec": to_text(p.formula), "certificate": certificate_to_json(p.certificate)})
    return {"goal": to_text(c.goal), "premises": prem}


def certificate_from_json(d: dict) -> Certificate:
    prem = []
    for p in d.get("premises", []):
        if "axiom" in p:
            prem.append(AxiomInstance(p["axiom"], parse(p["formula"])))
        else:
            prem.append(Necessitation(parse(p["nec"]), certificate_from_json(p["certificate"])))
    return Certificate(parse(d["goal"]), tuple(prem))


def verdict_to_json(v: Verdict) -> dict:
    out = {"logic": v.logic.value, "formula": to_text(v.formula), "verdict": v.label}
    if v.provable:
        out["certificate"] = certificate_to_json(v.certificate)
    else:
        out["model"] = model_to_json(v.model)
        out["world"] = v.world
    out["stats"] = dict(v.stats)
    return out


def verdict_from_json(d: dict) -> Verdict:
    l = parse_logic(d["logic"])
    a = parse(d["formula"])
    if d["verdict"] == "provable":
        return Verdict(l, a, True, certificate=certificate_from_json(d["certificate"]),
                       stats=d.get("stats", {}))
    model = model_from_json(d["model"])
    world = d["world"]
    if world not in model.frame.worlds:
        world = next((w for w in model.frame.worlds if str(w) == str(world)), world)
    return Verdict(l, a, False, model=model, world=world, stats=d.get("stats", {}))
