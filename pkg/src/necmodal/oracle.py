"""An independent brute-force cross-check for ``decide``.

The oracle never looks at closures, premise universes or maximal consistent
sets.  It works over the universe U of *all* formulas over a fixed variable
tuple with at most ``bound`` nodes, and runs two searches side by side.

Provable side (forward saturation).
    A theorem set T is grown to a fixpoint.  A formula of U joins T once it
    is a tautological consequence of the axiom instances whose boxed atoms
    lie in U together with the units box(B) for B already in T (and box(B)
    in U).  Every such clause is a unit or a two-literal clause with at least
    one negated atom, so after unit propagation without conflict, setting the
    remaining atoms false satisfies everything.  Propagation therefore decides
    consistency exactly, one falsifying assignment of the query's own atoms
    at a time.

Unprovable side (model library).
    Thousands of random three-world frames carry one relation per index of
    U (everything of size at most ``bound - 1``).  They are repaired into the
    logic's frame class: serial bottom rows for P, common successors for
    (C, not C) pairs for D, and the closure x R[box A] y, y R[A] z => x R[A] z
    processed from the largest index down for 4.  Relations are 9-bit codes
    and truth values 3-bit codes, so all of U is evaluated on all frames with a
    few numpy operations per formula.

Formulas that neither side settles are reported as ``unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .corpus import formulas_up_to
from .formula import BOT, TOP, And, Box, Formula, Imp, Not, Or, Var, variables
from .logics import Logic
from .semantics import FrameSpec, Model, Policy

__all__ = ["OracleStatus", "OracleResult", "SaturationOracle", "saturation_oracle",
           "DEFAULT_MODELS", "MAX_UNIVERSE"]

DEFAULT_MODELS = 2000
MAX_UNIVERSE = 400_000
WORLDS = 3
_ID = 0b100010001


class OracleStatus(Enum):
    PROVABLE = "provable"
    UNPROVABLE = "unprovable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    model: Model | None = None
    world: object = None


# ------------------------------------------------------------------ utilities

def _top_atoms(f: Formula, out: list) -> None:
    if isinstance(f, (Var, Box)):
        if f not in out:
            out.append(f)
    elif isinstance(f, Not):
        _top_atoms(f.arg, out)
    elif isinstance(f, (And, Or, Imp)):
        _top_atoms(f.left, out)
        _top_atoms(f.right, out)


def _table(f: Formula, env: dict, full: int) -> int:
    if isinstance(f, (Var, Box)):
        return env[f]
    if isinstance(f, Not):
        return full & ~_table(f.arg, env, full)
    if isinstance(f, And):
        return _table(f.left, env, full) & _table(f.right, env, full)
    if isinstance(f, Or):
        return _table(f.left, env, full) | _table(f.right, env, full)
    if isinstance(f, Imp):
        return (full & ~_table(f.left, env, full)) | _table(f.right, env, full)
    return 0 if f is BOT else full


@lru_cache(maxsize=None)
def _falsifiers(f: Formula) -> tuple:
    """Assignments to f's top-level atoms under which f is false."""
    atoms: list = []
    _top_atoms(f, atoms)
    n = len(atoms)
    full = (1 << (1 << n)) - 1
    env = {}
    for i, a in enumerate(atoms):
        env[a] = sum(1 << c for c in range(1 << n) if c >> i & 1)
    mask = full & ~_table(f, env, full)
    out = []
    for c in range(1 << n):
        if mask >> c & 1:
            out.append(tuple((atoms[i], bool(c >> i & 1)) for i in range(n)))
    return tuple(out)


@lru_cache(maxsize=None)
def _compose_table() -> np.ndarray:
    """T[r, s] = code of the relational product r;s for 3x3 relation codes."""
    codes = np.arange(512)
    bits = ((codes[:, None] >> np.arange(9)) & 1).astype(bool).reshape(512, 3, 3)
    prod = (bits[:, None, :, :, None] & bits[None, :, None, :, :]).any(axis=3)
    weights = (1 << np.arange(9)).reshape(3, 3)
    return (prod * weights).sum(axis=(2, 3)).astype(np.uint16)


# ---------------------------------------------------------- provable side

class _Saturation:
    def __init__(self, l: Logic, universe: list):
        self.logic = l
        self.members = set(universe)
        self.partners: dict = {}
        self.up: dict = {}
        self.down: dict = {}
        for f in universe:
            if not isinstance(f, Box):
                continue
            c = f.arg
            if l.has_d:
                ps = [Box(Not(c))]
                if isinstance(c, Not):
                    ps.append(Box(c.arg))
                self.partners[f] = [p for p in ps if p in self.members]
            if l.has_4:
                up = Box(f)
                if up in self.members:
                    self.up[f] = up
                if isinstance(c, Box):
                    self.down[f] = c
        self.fixed: dict = {}
        if l.has_p and Box(BOT) in self.members:
            self.fixed[Box(BOT)] = False
        self.theorems: set = set()
        self._saturate(universe)

    def _propagate(self, asg: dict, todo: list) -> bool:
        fixed = self.fixed
        while todo:
            x, v = todo.pop()
            if v:
                for y in self.partners.get(x, ()):
                    cur = asg.get(y, fixed.get(y))
                    if cur is True:
                        return False
                    if cur is None:
                        asg[y] = False
                        todo.append((y, False))
                y = self.up.get(x)
                if y is not None:
                    cur = asg.get(y, fixed.get(y))
                    if cur is False:
                        return False
                    if cur is None:
                        asg[y] = True
                        todo.append((y, True))
            else:
                y = self.down.get(x)
                if y is not None:
                    cur = asg.get(y, fixed.get(y))
                    if cur is True:
                        return False
                    if cur is None:
                        asg[y] = False
                        todo.append((y, False))
        return True

    def _add_units(self, units) -> None:
        asg = dict(self.fixed)
        todo = []
        for u in units:
            if asg.get(u) is False:
                raise AssertionError(f"theorem unit {u} contradicts the axioms")
            if asg.get(u) is None:
                asg[u] = True
                todo.append((u, True))
        if not self._propagate(asg, todo):
            raise AssertionError("theorem units are jointly inconsistent")
        self.fixed = asg

    def _derivable(self, f: Formula) -> bool:
        fixed = self.fixed
        for assignment in _falsifiers(f):
            asg: dict = {}
            todo = []
            ok = True
            for atom, v in assignment:
                cur = fixed.get(atom)
                if cur is None:
                    asg[atom] = v
                    todo.append((atom, v))
                elif cur != v:
                    ok = False
                    break
            if ok and self._propagate(asg, todo):
                return False
        return True

    def _saturate(self, universe: list) -> None:
        pending = list(universe)
        self._add_units(())
        while True:
            still, units = [], []
            for f in pending:
                if self._derivable(f):
                    self.theorems.add(f)
                    b = Box(f)
                    if b in self.members:
                        units.append(b)
                else:
                    still.append(f)
            pending = still
            if not units:
                return
            self._add_units(units)


# -------------------------------------------------------- unprovable side

class _Library:
    def __init__(self, l: Logic, universe: list, names: tuple, bound: int,
                 models: int, seed: int):
        rng = np.random.default_rng(seed)
        self.logic = l
        self.indices = [f for f in universe if f.size <= bound - 1]
        self.index_pos = {f: i for i, f in enumerate(self.indices)}
        n_idx, M = len(self.indices), models
        # densities vary from model to model so that both sparse and dense
        # relations appear
        density = rng.uniform(0.05, 0.95, size=M)
        bits = rng.random((n_idx, M, 9)) < density[None, :, None]
        weights = (1 << np.arange(9)).astype(np.uint16)
        rel = (bits * weights).sum(axis=2).astype(np.uint16)
        # a slice of reflexive-only and total frames for good measure
        k = max(1, M // 20)
        rel[:, :k] = _ID
        rel[:, k:2 * k] = 511
        self.rel = rel
        if l.has_p:
            self._serial(self.index_pos[BOT], rng)
        if l.has_d:
            self._nd(rng)
        if l.has_4:
            self._transitive()
        weights3 = 1 << np.arange(WORLDS)
        self.val = {v: ((rng.random((M, WORLDS)) < 0.5) * weights3).sum(axis=1).astype(np.uint8)
                    for v in names}
        self.truth = self._evaluate(universe, M)
        self._check_frames()

    def _serial(self, i: int, rng) -> None:
        r = self.rel[i]
        for x in range(WORLDS):
            empty = ((r >> (3 * x)) & 7) == 0
            pick = rng.integers(0, WORLDS, size=r.shape)
            r |= np.where(empty, (1 << (3 * x + pick)), 0).astype(np.uint16)

    def _nd(self, rng) -> None:
        pos = self.index_pos
        for c in self.indices:
            i = pos[c]
            j = pos.get(Not(c))
            if j is None:
                # the partner index falls back to the identity relation
                self.rel[i] |= _ID
                continue
            a, b = self.rel[i], self.rel[j]
            for x in range(WORLDS):
                empty = ((a & b) >> (3 * x) & 7) == 0
                pick = rng.integers(0, WORLDS, size=a.shape)
                add = np.where(empty, (1 << (3 * x + pick)), 0).astype(np.uint16)
                a |= add
                b |= add

    def _transitive(self) -> None:
        comp = _compose_table()
        pos = self.index_pos
        for f in reversed(self.indices):
            if not isinstance(f, Box):
                continue
            outer, inner = self.rel[pos[f]], self.rel[pos[f.arg]]
            for _ in range(WORLDS):
                inner |= comp[outer, inner]

    def _evaluate(self, universe: list, M: int) -> dict:
        truth: dict = {}
        full = np.uint8(7)
        pos = self.index_pos
        for f in universe:
            if isinstance(f, Var):
                v = self.val[f.name]
            elif f is BOT:
                v = np.zeros(M, dtype=np.uint8)
            elif f is TOP:
                v = np.full(M, 7, dtype=np.uint8)
            elif isinstance(f, Not):
                v = full & ~truth[f.arg]
            elif isinstance(f, And):
                v = truth[f.left] & truth[f.right]
            elif isinstance(f, Or):
                v = truth[f.left] | truth[f.right]
            elif isinstance(f, Imp):
                v = (full & ~truth[f.left]) | truth[f.right]
            else:
                r = self.rel[pos[f.arg]]
                bad = (full & ~truth[f.arg]).astype(np.uint16)
                v = np.zeros(M, dtype=np.uint8)
                for x in range(WORLDS):
                    v |= np.where(((r >> (3 * x)) & 7 & bad) == 0, 1 << x, 0).astype(np.uint8)
            truth[f] = v
        return truth

    def _check_frames(self) -> None:
        """Assert the repaired library really lies in the frame class."""
        pos, rel = self.index_pos, self.rel
        rows = lambda r, x: (r >> (3 * x)) & 7  # noqa: E731
        if self.logic.has_p:
            r = rel[pos[BOT]]
            assert all((rows(r, x) != 0).all() for x in range(WORLDS))
        if self.logic.has_d:
            for c, i in pos.items():
                j = pos.get(Not(c))
                other = rel[j] if j is not None else np.uint16(_ID)
                both = rel[i] & other
                assert all((rows(both, x) != 0).all() for x in range(WORLDS)), c
        if self.logic.has_4:
            comp = _compose_table()
            for f, i in pos.items():
                if isinstance(f, Box):
                    inner = rel[pos[f.arg]]
                    assert ((comp[rel[i], inner] & ~inner) == 0).all(), f

    def find(self, f: Formula):
        v = self.truth[f]
        hits = np.nonzero(v != 7)[0]
        if len(hits) == 0:
            return None
        k = int(hits[0])
        w = next(x for x in range(WORLDS) if not (int(v[k]) >> x) & 1)
        return k, w

    def relevant_indices(self, f: Formula) -> list:
        """Indices whose library relations a frame-class check of f's boxes can see."""
        pos = self.index_pos
        seen = set()
        stack = [s.arg for s in _boxes(f)]
        while stack:
            c = stack.pop()
            if c in seen or c not in pos:
                continue
            seen.add(c)
            stack.append(Not(c))
            stack.append(Box(c))
            if isinstance(c, Not):
                stack.append(c.arg)
            if isinstance(c, Box):
                stack.append(c.arg)
        return sorted(seen, key=lambda g: g.gn)

    def model(self, k: int, f: Formula, names) -> Model:
        explicit = {}
        for c in self.relevant_indices(f):
            code = int(self.rel[self.index_pos[c], k])
            explicit[c] = np.array([[code >> (3 * x + y) & 1 for y in range(WORLDS)]
                                    for x in range(WORLDS)], dtype=bool)
        frame = FrameSpec(tuple(range(WORLDS)), explicit, Policy.IDENTITY)
        valuation = {}
        for x in range(WORLDS):
            valuation[x] = [v for v in names if self._truth_of(Var(v), k, x)]
        return Model(frame, valuation)

    def _truth_of(self, f: Formula, k: int, x: int) -> bool:
        return bool(int(self.truth[f][k]) >> x & 1)


def _boxes(f: Formula) -> list:
    out, stack = [], [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Box):
            out.append(g)
            stack.append(g.arg)
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, (And, Or, Imp)):
            stack.extend((g.left, g.right))
    return out


# ----------------------------------------------------------------- façade

class SaturationOracle:
    """Both searches for one logic over all formulas of size <= bound."""

    def __init__(self, l: Logic, names: tuple = ("p",), bound: int = 7,
                 models: int = DEFAULT_MODELS, seed: int = 0):
        universe = formulas_up_to(bound, tuple(names))
        if len(universe) > MAX_UNIVERSE:
            raise ValueError(f"universe of {len(universe)} formulas exceeds {MAX_UNIVERSE}")
        self.logic, self.names, self.bound = l, tuple(names), bound
        self._saturation = _Saturation(l, universe)
        self._library = _Library(l, universe, self.names, bound, models, seed)
        self._members = self._saturation.members

    def covers(self, a: Formula) -> bool:
        return a in self._members

    def status(self, a: Formula) -> OracleStatus:
        if a not in self._members:
            return OracleStatus.UNKNOWN
        proved = a in self._saturation.theorems
        refuted = self._library.find(a) is not None
        if proved and refuted:
            raise AssertionError(f"oracle is unsound on {a}")
        if proved:
            return OracleStatus.PROVABLE
        return OracleStatus.UNPROVABLE if refuted else OracleStatus.UNKNOWN

    def query(self, a: Formula) -> OracleResult:
        st = self.status(a)
        if st is not OracleStatus.UNPROVABLE:
            return OracleResult(st)
        k, w = self._library.find(a)
        return OracleResult(st, self._library.model(k, a, self.names), w)


_ORACLES: dict = {}


def saturation_oracle(l: Logic, a: Formula, bound: int | None = None) -> OracleResult:
    """Classify a as provable, unprovable or unknown in l."""
    names = tuple(sorted(variables(a))) or ("p",)
    bound = max(a.size, bound or 0)
    key = (l, names, bound)
    o = _ORACLES.get(key)
    if o is None:
        try:
            o = _ORACLES[key] = SaturationOracle(l, names, bound)
        except ValueError:
            return OracleResult(OracleStatus.UNKNOWN)
    return o.query(a)
