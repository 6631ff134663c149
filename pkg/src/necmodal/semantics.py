"""Finite N-frames and N-models.

A frame has one accessibility relation per modal formula.  Finitely many of them
are stored explicitly as boolean matrices (row = source world, column = target
world, positions follow ``frame.worlds``).  Every other index uses the frame's
default policy: the identity relation, the total relation or the empty one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .closure import sub_star
from .formula import (BOT, TOP, And, Box, Formula, Imp, Not, Or, Var, parse,
                      strip_negations, subformulas, to_text, iterated_neg)
from .logics import Logic

__all__ = [
    "Policy", "FrameSpec", "Model", "FrameClass", "FrameCheck", "UndecidableConfigurationError",
    "forces", "forces_vector", "valid", "check_frame_class", "check_frame_classes",
    "frame_classes", "repair_transitive", "random_frame", "random_model",
    "model_to_json", "model_from_json", "frame_to_json", "frame_from_json", "to_dot",
]


class UndecidableConfigurationError(ValueError):
    """An Empty default policy was combined with a class quantifying over all formulas."""


class Policy(Enum):
    IDENTITY = "identity"
    TOTAL = "total"
    EMPTY = "empty"


def _freeze(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=bool, copy=True)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class FrameSpec:
    worlds: tuple
    explicit: Mapping[Formula, np.ndarray]
    default: Policy = Policy.IDENTITY
    _pos: dict = field(default=None, repr=False)

    def __post_init__(self):
        if not self.worlds:
            raise ValueError("a frame needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise ValueError("duplicate world ids")
        n = len(self.worlds)
        frozen = {}
        for b, m in self.explicit.items():
            m = np.asarray(m, dtype=bool)
            if m.shape != (n, n):
                raise ValueError(f"relation for {b} has shape {m.shape}, expected {(n, n)}")
            frozen[b] = m if not m.flags.writeable else _freeze(m)
        object.__setattr__(self, "explicit", frozen)
        object.__setattr__(self, "_pos", {w: i for i, w in enumerate(self.worlds)})

    @classmethod
    def from_pairs(cls, worlds: Iterable, relations: Mapping[Formula, Iterable],
                   default: Policy = Policy.IDENTITY) -> "FrameSpec":
        worlds = tuple(worlds)
        pos = {w: i for i, w in enumerate(worlds)}
        explicit = {}
        for b, pairs in relations.items():
            m = np.zeros((len(worlds), len(worlds)), dtype=bool)
            for x, y in pairs:
                m[pos[x], pos[y]] = True
            explicit[b] = m
        return cls(worlds, explicit, default)

    @property
    def size(self) -> int:
        return len(self.worlds)

    def index_of(self, w) -> int:
        return self._pos[w]

    def default_matrix(self) -> np.ndarray:
        n = len(self.worlds)
        if self.default is Policy.IDENTITY:
            return np.eye(n, dtype=bool)
        if self.default is Policy.TOTAL:
            return np.ones((n, n), dtype=bool)
        return np.zeros((n, n), dtype=bool)

    def relation(self, b: Formula) -> np.ndarray:
        m = self.explicit.get(b)
        return m if m is not None else self.default_matrix()

    def pairs(self, b: Formula) -> list:
        m = self.relation(b)
        return [(self.worlds[i], self.worlds[j]) for i, j in zip(*np.nonzero(m))]


@dataclass(frozen=True, eq=False)
class Model:
    frame: FrameSpec
    valuation: Mapping

    def __post_init__(self):
        val = {w: frozenset(self.valuation.get(w, ())) for w in self.frame.worlds}
        extra = set(self.valuation) - set(self.frame.worlds)
        if extra:
            raise ValueError(f"valuation mentions unknown worlds {sorted(extra)}")
        object.__setattr__(self, "valuation", val)

    def var_vector(self, name: str) -> np.ndarray:
        return np.fromiter((name in self.valuation[w] for w in self.frame.worlds),
                           dtype=bool, count=self.frame.size)


def forces_vector(m: Model, a: Formula, cache: dict | None = None) -> np.ndarray:
    """Truth of a at every world, in the order of ``m.frame.worlds``."""
    if cache is None:
        cache = {}
    hit = cache.get(a)
    if hit is not None:
        return hit
    n = m.frame.size
    if isinstance(a, Var):
        v = m.var_vector(a.name)
    elif a is BOT:
        v = np.zeros(n, dtype=bool)
    elif a is TOP:
        v = np.ones(n, dtype=bool)
    elif isinstance(a, Not):
        v = ~forces_vector(m, a.arg, cache)
    elif isinstance(a, And):
        v = forces_vector(m, a.left, cache) & forces_vector(m, a.right, cache)
    elif isinstance(a, Or):
        v = forces_vector(m, a.left, cache) | forces_vector(m, a.right, cache)
    elif isinstance(a, Imp):
        v = ~forces_vector(m, a.left, cache) | forces_vector(m, a.right, cache)
    else:
        inner = forces_vector(m, a.arg, cache)
        rel = m.frame.relation(a.arg)
        v = ~(rel & ~inner[None, :]).any(axis=1)
    cache[a] = v
    return v


def forces(m: Model, w, a: Formula) -> bool:
    return bool(forces_vector(m, a)[m.frame.index_of(w)])


def valid(m: Model, a: Formula) -> bool:
    return bool(forces_vector(m, a).all())


# ------------------------------------------------------------ frame classes

@dataclass(frozen=True)
class FrameClass:
    tag: str
    gamma: frozenset = frozenset()

    TAGS = ("N", "NP", "ND", "Serial", "Transitive", "GammaTransitive")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown frame class {self.tag!r}")

    def __str__(self) -> str:
        return self.tag

    @classmethod
    def parse(cls, name: str) -> "FrameClass":
        for t in cls.TAGS[:-1]:
            if name.lower() == t.lower():
                return cls(t)
        raise ValueError(f"unknown frame class {name!r}")


N_CLASS, NP_CLASS, ND_CLASS = FrameClass("N"), FrameClass("NP"), FrameClass("ND")
SERIAL, TRANSITIVE = FrameClass("Serial"), FrameClass("Transitive")


def gamma_transitive(gamma: Iterable[Formula]) -> FrameClass:
    return FrameClass("GammaTransitive", frozenset(gamma))


def frame_classes(l: Logic) -> tuple:
    out = []
    if l.has_p:
        out.append(NP_CLASS)
    if l.has_d:
        out.append(ND_CLASS)
    if l.has_4:
        out.append(TRANSITIVE)
    return tuple(out) or (N_CLASS,)


@dataclass(frozen=True)
class FrameCheck:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def _ids(f: FrameSpec, idx) -> list:
    return [f.worlds[int(i)] for i in np.atleast_1d(idx)]


def _check_existence(f: FrameSpec, b: Formula, rel: np.ndarray, what: str) -> FrameCheck:
    empty_rows = np.nonzero(~rel.any(axis=1))[0]
    if len(empty_rows):
        return FrameCheck(False, {"index": to_text(b), "world": _ids(f, empty_rows[0])[0],
                                  "reason": what})
    return FrameCheck(True)


def _transitive_pair(f: FrameSpec, c: Formula) -> FrameCheck:
    outer = f.relation(Box(c)).astype(np.int64)
    inner = f.relation(c)
    comp = (outer @ inner.astype(np.int64)) > 0
    bad = np.argwhere(comp & ~inner)
    if len(bad):
        x, z = bad[0]
        ys = np.nonzero(f.relation(Box(c))[x] & f.relation(c)[:, z])[0]
        return FrameCheck(False, {
            "index": to_text(c), "outer_index": to_text(Box(c)),
            "worlds": [f.worlds[x], f.worlds[int(ys[0])], f.worlds[z]],
            "reason": "x <_[]C y and y <_C z but not x <_C z"})
    return FrameCheck(True)


def check_frame_class(f: FrameSpec, c: FrameClass) -> FrameCheck:
    """Check f against c; on failure the witness names the index and worlds."""
    if c.tag == "N":
        return FrameCheck(True)
    if c.tag == "NP":
        return _check_existence(f, BOT, f.relation(BOT), "no successor under the false-index")
    if c.tag == "GammaTransitive":
        for g in sorted(c.gamma, key=lambda x: x.gn):
            if isinstance(g, Box) and isinstance(g.arg, Box):
                r = _transitive_pair(f, g.arg.arg)
                if not r:
                    return r
        return FrameCheck(True)
    if f.default is Policy.EMPTY:
        raise UndecidableConfigurationError(
            f"class {c.tag} quantifies over all formulas; use an identity or total default")
    explicit = sorted(f.explicit, key=lambda x: x.gn)
    if c.tag == "Serial":
        for b in explicit:
            r = _check_existence(f, b, f.explicit[b], "no successor")
            if not r:
                return r
        return FrameCheck(True)
    if c.tag == "ND":
        seen = set()
        for b in explicit:
            pairs = [(b, Not(b))]
            if isinstance(b, Not):
                pairs.append((b.arg, b))
            for pos, neg in pairs:
                if (pos, neg) in seen:
                    continue
                seen.add((pos, neg))
                both = f.relation(pos) & f.relation(neg)
                rows = np.nonzero(~both.any(axis=1))[0]
                if len(rows):
                    return FrameCheck(False, {
                        "index": to_text(pos), "partner": to_text(neg),
                        "world": f.worlds[int(rows[0])],
                        "reason": "no common successor for the index pair"})
        return FrameCheck(True)
    # Transitive: every C such that C or []C is explicit
    cands = set()
    for b in explicit:
        cands.add(b)
        if isinstance(b, Box):
            cands.add(b.arg)
    for cc in sorted(cands, key=lambda x: x.gn):
        r = _transitive_pair(f, cc)
        if not r:
            return r
    return FrameCheck(True)


def check_frame_classes(f: FrameSpec, classes: Iterable[FrameClass]) -> FrameCheck:
    for c in classes:
        r = check_frame_class(f, c)
        if not r:
            return FrameCheck(False, {"class": c.tag, **(r.witness or {})})
    return FrameCheck(True)


# ------------------------------------------------------------ repair

def repair_transitive(f: FrameSpec, a: Formula) -> FrameSpec:
    """The repaired relations of the completeness proof for the 4-logics.

    The relation of B is kept when []B is in Sub*(a), or when B is ~^k C with
    k > 0 and []C in Sub(a).  Every other index becomes the identity.  Kept
    negation indices that are not explicit in f are materialized with f's
    relation for as many negation levels as are needed to reach an index pair
    whose members are both left to the default; past that level the frame's
    old relation and the identity are interchangeable for every check.
    """
    star = sub_star(a)
    explicit = {}
    for s in star:
        if isinstance(s, Box):
            explicit[s.arg] = f.relation(s.arg)
    for b, m in f.explicit.items():
        if Box(b) in star:
            explicit[b] = m
    max_neg = max((strip_negations(b)[0] for b in f.explicit), default=0)
    for s in subformulas(a):
        if not isinstance(s, Box):
            continue
        depth = 0
        b = s.arg
        for k in range(1, max_neg + 1):
            b = Not(b)
            if b in f.explicit:
                depth = k
        for k in range(1, depth + 2):
            b = iterated_neg(k, s.arg)
            if b not in explicit:
                explicit[b] = f.relation(b)
    return FrameSpec(f.worlds, explicit, Policy.IDENTITY)


# ------------------------------------------------------------ random frames

def _repair_nd(rel: dict, n: int, rng) -> bool:
    changed = False
    for b in sorted(rel, key=lambda x: x.gn):
        partners = [Not(b)]
        if isinstance(b, Not):
            partners.append(b.arg)
        for p in partners:
            r1 = rel[b]
            r2 = rel.get(p)
            for x in range(n):
                if r2 is None:
                    if not r1[x, x]:
                        r1[x, x] = True
                        changed = True
                elif not (r1[x] & r2[x]).any():
                    y = int(rng.integers(n))
                    r1[x, y] = True
                    r2[x, y] = True
                    changed = True
    return changed


def _repair_trans(rel: dict, n: int, pairs: list) -> bool:
    changed = False
    for c in pairs:
        outer = rel.get(Box(c))
        if outer is None:
            continue
        if c not in rel:
            rel[c] = np.eye(n, dtype=bool)
            changed = True
        inner = rel[c]
        while True:
            comp = (outer.astype(np.int64) @ inner.astype(np.int64)) > 0
            new = comp & ~inner
            if not new.any():
                break
            inner |= new
            changed = True
    return changed


def random_frame(c, size: int, indices: Iterable[Formula], seed) -> FrameSpec:
    """A random frame of class c (a FrameClass or a sequence of them), identity default.

    Relations over ``indices`` are drawn at random and then repaired until the
    class check passes.  Transitivity repair may add explicit entries for
    indices C whose box []C is explicit.
    """
    classes = (c,) if isinstance(c, FrameClass) else tuple(c)
    if size < 1:
        raise ValueError("size must be at least 1")
    rng = np.random.default_rng(seed)
    n = size
    indices = sorted(set(indices), key=lambda x: x.gn)
    rel = {}
    for b in indices:
        density = rng.uniform(0.15, 0.75)
        rel[b] = rng.random((n, n)) < density
    tags = {k.tag for k in classes}
    gamma_targets = set()
    for k in classes:
        if k.tag == "GammaTransitive":
            gamma_targets |= {g.arg.arg for g in k.gamma
                              if isinstance(g, Box) and isinstance(g.arg, Box)}
    for _ in range(200):
        if "NP" in tags and BOT in rel:
            for x in range(n):
                if not rel[BOT][x].any():
                    rel[BOT][x, int(rng.integers(n))] = True
        if "Serial" in tags:
            for b in rel:
                for x in range(n):
                    if not rel[b][x].any():
                        rel[b][x, int(rng.integers(n))] = True
        changed = False
        if "ND" in tags:
            changed |= _repair_nd(rel, n, rng)
        targets = set(gamma_targets)
        if "Transitive" in tags:
            targets |= {b.arg for b in rel if isinstance(b, Box)}
        if targets:
            changed |= _repair_trans(rel, n, sorted(targets, key=lambda x: -x.size))
        frame = FrameSpec(tuple(range(n)), {b: m.copy() for b, m in rel.items()}, Policy.IDENTITY)
        if not changed and check_frame_classes(frame, classes):
            return frame
    raise RuntimeError("random frame repair did not converge")  # pragma: no cover


def random_model(frame: FrameSpec, variables: Iterable[str], seed) -> Model:
    rng = np.random.default_rng(seed)
    variables = sorted(set(variables))
    val = {w: {v for v in variables if rng.random() < 0.5} for w in frame.worlds}
    return Model(frame, val)


# ------------------------------------------------------------ serialization

def frame_to_json(f: FrameSpec) -> dict:
    rels = {}
    for b in sorted(f.explicit, key=lambda x: x.gn):
        rels[to_text(b)] = [[x, y] for x, y in f.pairs(b)]
    return {"worlds": list(f.worlds), "default": f.default.value, "relations": rels}


def model_to_json(m: Model) -> dict:
    out = frame_to_json(m.frame)
    out["valuation"] = {str(w): sorted(m.valuation[w]) for w in m.frame.worlds}
    return out


def _world_key(raw, worlds):
    if raw in worlds:
        return raw
    for w in worlds:
        if str(w) == str(raw):
            return w
    raise ValueError(f"unknown world {raw!r}")


def frame_from_json(data: Mapping) -> FrameSpec:
    worlds = tuple(data["worlds"])
    default = Policy(data.get("default", "identity"))
    rels = {}
    for text, pairs in data.get("relations", {}).items():
        rels[parse(text)] = [(_world_key(x, worlds), _world_key(y, worlds)) for x, y in pairs]
    return FrameSpec.from_pairs(worlds, rels, default)


def model_from_json(data: Mapping) -> Model:
    frame = frame_from_json(data)
    val = {_world_key(w, frame.worlds): set(vs) for w, vs in data.get("valuation", {}).items()}
    return Model(frame, val)


def to_dot(f: FrameSpec) -> str:
    """One digraph per explicit index; edges labelled with the index formula."""
    chunks = []
    for k, b in enumerate(sorted(f.explicit, key=lambda x: x.gn)):
        label = to_text(b).replace('"', '\\"')
        lines = [f'digraph index{k} {{', f'  label="{label}";']
        lines += [f'  "{w}";' for w in f.worlds]
        lines += [f'  "{x}" -> "{y}" [label="{label}"];' for x, y in f.pairs(b)]
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
