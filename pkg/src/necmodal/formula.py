"""Modal formulas: AST, surface syntax, syntactic operators and Goedel numbering.

Formulas are hash-consed.  Two structurally equal formulas are always the same
Python object, so equality is identity and hashing is cheap.  Every node carries
its Goedel number ``gn`` and its node count ``size``.

Goedel coding
-------------
Each node is coded as ``9 * payload + tag``::

    tag  constructor  payload
    1    Top          0
    2    Bottom       0
    3    Var(name)    ident_index(name)
    4    Not(a)       gn(a)
    5    Box(a)       gn(a)
    6    And(a, b)    cantor(gn(a), gn(b))
    7    Or(a, b)     cantor(gn(a), gn(b))
    8    Imp(a, b)    cantor(gn(a), gn(b))

with ``cantor(x, y) = (x + y) * (x + y + 1) // 2 + y``.  Identifiers are
numbered bijectively, shortest first and then lexicographically, over the first
alphabet ``a..z A..Z`` and the continuation alphabet ``a..z A..Z 0..9 _``.
So ``a`` is 0, ``b`` is 1 and ``p`` is 15, giving ``gn(p) = 138``.

Codes with tag 0, and constants with a nonzero payload, are not formulas.
In particular 0 is never a formula code.  The coding is injective, and every
code exceeds the codes of its proper subformulas because ``9 * g + t > g`` and
``cantor(x, y) >= max(x, y)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import isqrt
from typing import Iterator

__all__ = [
    "Formula", "Bottom", "Top", "Var", "Not", "Box", "And", "Or", "Imp",
    "BOT", "TOP", "FormulaSyntaxError", "parse", "to_text",
    "neg_companion", "iterated_neg", "star_normal", "neg_depth", "strip_negations",
    "gn", "decode_gn", "enumerate_formulas", "ident_index", "ident_from_index",
    "cantor", "cantor_inverse", "subformulas", "variables", "iff", "modal_depth",
]

TAG_TOP, TAG_BOT, TAG_VAR, TAG_NOT, TAG_BOX, TAG_AND, TAG_OR, TAG_IMP = range(1, 9)

_TABLE: dict = {}


def cantor(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def cantor_inverse(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


_FIRST = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
_REST = _FIRST + "0123456789_"
_FIRST_POS = {c: i for i, c in enumerate(_FIRST)}
_REST_POS = {c: i for i, c in enumerate(_REST)}
_IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def ident_index(name: str) -> int:
    """Bijective index of an identifier: by length, then lexicographically."""
    if not _IDENT_RE.match(name):
        raise ValueError(f"not an identifier: {name!r}")
    n = len(name)
    offset = 0
    for length in range(1, n):
        offset += len(_FIRST) * len(_REST) ** (length - 1)
    rank = _FIRST_POS[name[0]]
    for c in name[1:]:
        rank = rank * len(_REST) + _REST_POS[c]
    return offset + rank


def ident_from_index(idx: int) -> str:
    length = 1
    while True:
        count = len(_FIRST) * len(_REST) ** (length - 1)
        if idx < count:
            break
        idx -= count
        length += 1
    chars = []
    for _ in range(length - 1):
        idx, d = divmod(idx, len(_REST))
        chars.append(_REST[d])
    chars.append(_FIRST[idx])
    return "".join(reversed(chars))


class Formula:
    """Base class of modal formulas.  Instances are interned and immutable."""

    __slots__ = ("gn", "size", "__weakref__")

    def __setattr__(self, key, value):
        raise AttributeError("formulas are immutable")

    def __lt__(self, other: "Formula") -> bool:
        return self.gn < other.gn

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"parse({to_text(self)!r})"

    @property
    def is_pa(self) -> bool:
        """Propositionally atomic: a variable or a box formula."""
        return isinstance(self, (Var, Box))


def _make(cls, key, fields, gn_value, size):
    obj = object.__new__(cls)
    for name, value in fields:
        object.__setattr__(obj, name, value)
    object.__setattr__(obj, "gn", gn_value)
    object.__setattr__(obj, "size", size)
    _TABLE[key] = obj
    return obj


class Bottom(Formula):
    __slots__ = ()
    __match_args__ = ()

    def __new__(cls):
        obj = _TABLE.get(cls)
        return obj if obj is not None else _make(cls, cls, (), TAG_BOT, 1)

    def __reduce__(self):
        return (Bottom, ())


class Top(Formula):
    __slots__ = ()
    __match_args__ = ()

    def __new__(cls):
        obj = _TABLE.get(cls)
        return obj if obj is not None else _make(cls, cls, (), TAG_TOP, 1)

    def __reduce__(self):
        return (Top, ())


class Var(Formula):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __new__(cls, name: str):
        key = (cls, name)
        obj = _TABLE.get(key)
        if obj is None:
            obj = _make(cls, key, (("name", name),), 9 * ident_index(name) + TAG_VAR, 1)
        return obj

    def __reduce__(self):
        return (Var, (self.name,))


class _Unary(Formula):
    __slots__ = ("arg",)
    __match_args__ = ("arg",)
    _tag = 0

    def __new__(cls, arg: Formula):
        key = (cls, arg)
        obj = _TABLE.get(key)
        if obj is None:
            if not isinstance(arg, Formula):
                raise TypeError(f"expected a Formula, got {type(arg).__name__}")
            obj = _make(cls, key, (("arg", arg),), 9 * arg.gn + cls._tag, arg.size + 1)
        return obj

    def __reduce__(self):
        return (type(self), (self.arg,))


class Not(_Unary):
    __slots__ = ()
    _tag = TAG_NOT


class Box(_Unary):
    __slots__ = ()
    _tag = TAG_BOX


class _Binary(Formula):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")
    _tag = 0

    def __new__(cls, left: Formula, right: Formula):
        key = (cls, left, right)
        obj = _TABLE.get(key)
        if obj is None:
            if not isinstance(left, Formula) or not isinstance(right, Formula):
                raise TypeError("expected Formula operands")
            obj = _make(cls, key, (("left", left), ("right", right)),
                        9 * cantor(left.gn, right.gn) + cls._tag,
                        left.size + right.size + 1)
        return obj

    def __reduce__(self):
        return (type(self), (self.left, self.right))


class And(_Binary):
    __slots__ = ()
    _tag = TAG_AND


class Or(_Binary):
    __slots__ = ()
    _tag = TAG_OR


class Imp(_Binary):
    __slots__ = ()
    _tag = TAG_IMP


BOT = Bottom()
TOP = Top()


def iff(a: Formula, b: Formula) -> Formula:
    """The surface ``a <-> b``, which abbreviates ``(a -> b) & (b -> a)``."""
    return And(Imp(a, b), Imp(b, a))


# ---------------------------------------------------------------- syntax

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.text = text
        self.pos = pos


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<or>\|)
  | (?P<and>&)
  | (?P<neg>[~!])
  | (?P<box>\[\]|box(?=\s))
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<ident>[a-zA-Z][a-zA-Z0-9_]*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.imp()
        while self.peek() == "iff":
            self.i += 1
            left = iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "imp":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "or":
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "and":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "neg":
            self.i += 1
            return Not(self.unary())
        if kind == "box":
            self.i += 1
            return Box(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.toks[self.i]
        if kind == "lp":
            self.i += 1
            inner = self.formula()
            self.take("rp")
            return inner
        if kind == "ident":
            self.i += 1
            if value == "false":
                return BOT
            if value == "true":
                return TOP
            return Var(value)
        what = "end of input" if kind == "end" else repr(value)
        raise FormulaSyntaxError(f"expected a formula, found {what}", self.text, pos)


def parse(text: str) -> Formula:
    """Parse the surface syntax; raises FormulaSyntaxError with a position."""
    p = _Parser(text)
    result = p.formula()
    p.take("end")
    return result


def to_text(f: Formula) -> str:
    """Print with minimal parentheses; ``parse(to_text(f)) is f``."""
    return _print(f, 0)


def _print(f: Formula, level: int) -> str:
    # levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary
    if isinstance(f, Var):
        return f.name
    if f is BOT:
        return "false"
    if f is TOP:
        return "true"
    if isinstance(f, Not):
        return "~" + _print(f.arg, 3)
    if isinstance(f, Box):
        return "[]" + _print(f.arg, 3)
    if isinstance(f, Imp):
        s, need = f"{_print(f.left, 1)} -> {_print(f.right, 0)}", 0
    elif isinstance(f, Or):
        s, need = f"{_print(f.left, 1)} | {_print(f.right, 2)}", 1
    else:
        s, need = f"{_print(f.left, 2)} & {_print(f.right, 3)}", 2
    return f"({s})" if level > need else s


# ---------------------------------------------------------------- operators

def neg_companion(a: Formula) -> Formula:
    """The companion ~A: B when A is Not(B), and Not(A) otherwise."""
    return a.arg if isinstance(a, Not) else Not(a)


def iterated_neg(k: int, a: Formula) -> Formula:
    for _ in range(k):
        a = Not(a)
    return a


def strip_negations(a: Formula) -> tuple[int, Formula]:
    """Write a as Not^n(psi) with psi not a negation; return (n, psi)."""
    n = 0
    while isinstance(a, Not):
        a = a.arg
        n += 1
    return n, a


def neg_depth(a: Formula) -> int:
    return strip_negations(a)[0]


def star_normal(a: Formula) -> Formula:
    n, core = strip_negations(a)
    return core if n % 2 == 0 else Not(core)


def gn(a: Formula) -> int:
    return a.gn


@lru_cache(maxsize=None)
def subformulas(a: Formula) -> frozenset:
    if isinstance(a, _Unary):
        return subformulas(a.arg) | {a}
    if isinstance(a, _Binary):
        return subformulas(a.left) | subformulas(a.right) | {a}
    return frozenset((a,))


@lru_cache(maxsize=None)
def modal_depth(a: Formula) -> int:
    """Maximal nesting of boxes."""
    if isinstance(a, Box):
        return modal_depth(a.arg) + 1
    if isinstance(a, _Unary):
        return modal_depth(a.arg)
    if isinstance(a, _Binary):
        return max(modal_depth(a.left), modal_depth(a.right))
    return 0


def variables(a: Formula) -> frozenset:
    return frozenset(b.name for b in subformulas(a) if isinstance(b, Var))


# ---------------------------------------------------------------- decoding

def decode_gn(code: int) -> Formula | None:
    """The formula with Goedel number ``code``, or None if no formula has it."""
    if code <= 0:
        return None
    payload, tag = divmod(code, 9)
    if tag == TAG_BOT:
        return BOT if payload == 0 else None
    if tag == TAG_TOP:
        return TOP if payload == 0 else None
    if tag == TAG_VAR:
        return Var(ident_from_index(payload))
    if tag in (TAG_NOT, TAG_BOX):
        inner = decode_gn(payload)
        if inner is None:
            return None
        return Not(inner) if tag == TAG_NOT else Box(inner)
    if tag in (TAG_AND, TAG_OR, TAG_IMP):
        x, y = cantor_inverse(payload)
        left = decode_gn(x)
        if left is None:
            return None
        right = decode_gn(y)
        if right is None:
            return None
        return (And, Or, Imp)[tag - TAG_AND](left, right)
    return None


def enumerate_formulas(max_code: int | None = None, start: int = 1) -> Iterator[Formula]:
    """The enumeration of all formulas in ascending Goedel-number order."""
    code = max(start, 1)
    while max_code is None or code <= max_code:
        f = decode_gn(code)
        if f is not None:
            yield f
        code += 1
