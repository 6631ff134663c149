"""Symbolic stand-ins for arithmetical sentences.

An SFormula is built from opaque atoms, falsum, the connectives, provability
literals ``PrLit(kind, code)`` and marker atoms for the bookkeeping sentences
of the staged construction.  Instances are interned, so ``==`` is identity and
the Goedel number doubles as the hash.

Goedel coding
-------------
``gn(x) = 9 * payload + tag`` with

===  ==========  =====================================================
tag  node        payload
===  ==========  =====================================================
1    Bot         0
2    Atom(tok)   n, where tok is the bijective base-94 numeral n + 1
3    Neg(x)      gn(x)
4    And(x, y)   cantor(gn(x), gn(y))
5    Or(x, y)    cantor(gn(x), gn(y))
6    Imp(x, y)   cantor(gn(x), gn(y))
7    PrLit       4 * code + kind   (Prf = 0, R = 1, A = 2, Dagger = 3)
8    Marker      5 * inner + variant
===  ==========  =====================================================

Marker variants: Lambda(j) = 0 with inner j; AlphaAll(B) = 1 and
BetaAll(B) = 3 with inner gn(B); Alpha(B, j) = 2 and Beta(B, j) = 4 with
inner cantor(gn(B), j).  Here B is a modal formula and gn(B) its own code.

Token digits run over the printable characters 33..126 in the order
``0-9``, ``a-z``, ``A-Z``, then the remaining punctuation in ASCII order.
Every payload is strictly larger than the codes it mentions, so a code
always exceeds the codes of its parts and 0 is never a code.
"""

from __future__ import annotations

import string
from enum import IntEnum
from functools import lru_cache

from ..formula import Formula as ModalFormula, cantor, cantor_inverse, decode_gn

__all__ = [
    "SFormula", "Bot", "Atom", "Neg", "And", "Or", "Imp", "PrLit", "Marker",
    "PrKind", "MarkerKind", "SBOT", "Lambda", "AlphaAll", "Alpha", "BetaAll", "Beta",
    "sdecode", "star", "neg_dot", "xi", "xi_index", "token_value", "token_from_value",
    "satoms",
]

_DIGITS = (string.digits + string.ascii_lowercase + string.ascii_uppercase
           + "".join(c for c in map(chr, range(33, 127)) if not c.isalnum()))
assert len(_DIGITS) == 94
_DIGIT_POS = {c: i for i, c in enumerate(_DIGITS)}

TAG_BOT, TAG_ATOM, TAG_NEG, TAG_AND, TAG_OR, TAG_IMP, TAG_PR, TAG_MARKER = range(1, 9)


def token_value(tok: str) -> int:
    """Bijective base-94 value (>= 1) of a nonempty token."""
    if not tok:
        raise ValueError("atom tokens are nonempty")
    v = 0
    for c in tok:
        try:
            v = v * 94 + _DIGIT_POS[c] + 1
        except KeyError:
            raise ValueError(f"character {c!r} is not allowed in atom tokens") from None
    return v


def token_from_value(v: int) -> str:
    if v < 1:
        raise ValueError("token values start at 1")
    out = []
    while v:
        v, d = divmod(v - 1, 94)
        out.append(_DIGITS[d])
    return "".join(reversed(out))


class PrKind(IntEnum):
    PRF = 0
    R = 1
    A = 2
    DAGGER = 3


class MarkerKind(IntEnum):
    LAMBDA = 0
    ALPHA_ALL = 1
    ALPHA = 2
    BETA_ALL = 3
    BETA = 4


_TABLE: dict = {}


class SFormula:
    __slots__ = ("gn", "__weakref__")

    def __setattr__(self, key, value):
        raise AttributeError("SFormulas are immutable")

    def __hash__(self) -> int:
        return self.gn

    def __lt__(self, other: "SFormula") -> bool:
        return self.gn < other.gn

    def __reduce__(self):
        return (sdecode, (self.gn,))

    def __repr__(self) -> str:
        return f"SFormula({self})"

    def __str__(self) -> str:
        from .scenario import to_sexpr
        return to_sexpr(self)

    @property
    def is_atomic(self) -> bool:
        """Atoms, provability literals and markers are propositionally atomic."""
        return isinstance(self, (Atom, PrLit, Marker))


def _intern(cls, gn_value: int, **fields):
    obj = _TABLE.get(gn_value)
    if obj is None:
        obj = object.__new__(cls)
        for k, v in fields.items():
            object.__setattr__(obj, k, v)
        object.__setattr__(obj, "gn", gn_value)
        _TABLE[gn_value] = obj
    return obj


class Bot(SFormula):
    __slots__ = ()

    def __new__(cls):
        return _intern(cls, TAG_BOT)


class Atom(SFormula):
    __slots__ = ("token",)

    def __new__(cls, token: str):
        return _intern(cls, 9 * (token_value(token) - 1) + TAG_ATOM, token=token)


class Neg(SFormula):
    __slots__ = ("arg",)

    def __new__(cls, arg: SFormula):
        return _intern(cls, 9 * arg.gn + TAG_NEG, arg=arg)


class _Bin(SFormula):
    __slots__ = ("left", "right")
    _tag = 0

    def __new__(cls, left: SFormula, right: SFormula):
        return _intern(cls, 9 * cantor(left.gn, right.gn) + cls._tag, left=left, right=right)


class And(_Bin):
    __slots__ = ()
    _tag = TAG_AND


class Or(_Bin):
    __slots__ = ()
    _tag = TAG_OR


class Imp(_Bin):
    __slots__ = ()
    _tag = TAG_IMP


class PrLit(SFormula):
    """A provability literal ``Pr_kind(code)`` about the SFormula with that code."""

    __slots__ = ("kind", "code")

    def __new__(cls, kind: PrKind, code: int):
        if sdecode(code) is None:
            raise ValueError(f"{code} is not the code of an SFormula")
        kind = PrKind(kind)
        return _intern(cls, 9 * (4 * code + kind) + TAG_PR, kind=kind, code=code)

    @property
    def target(self) -> SFormula:
        return sdecode(self.code)


class Marker(SFormula):
    __slots__ = ("kind", "formula", "j")

    def __new__(cls, kind: MarkerKind, formula: ModalFormula | None = None, j: int | None = None):
        kind = MarkerKind(kind)
        if kind is MarkerKind.LAMBDA:
            if j is None or j < 0 or formula is not None:
                raise ValueError("Lambda markers take a natural number only")
            inner = j
        elif kind in (MarkerKind.ALPHA_ALL, MarkerKind.BETA_ALL):
            if formula is None or j is not None:
                raise ValueError(f"{kind.name} markers take a modal formula only")
            inner = formula.gn
        else:
            if formula is None or j is None or j < 0:
                raise ValueError(f"{kind.name} markers take a modal formula and a number")
            inner = cantor(formula.gn, j)
        return _intern(cls, 9 * (5 * inner + kind) + TAG_MARKER, kind=kind, formula=formula, j=j)


SBOT = Bot()


def Lambda(j: int) -> Marker:
    return Marker(MarkerKind.LAMBDA, None, j)


def AlphaAll(b: ModalFormula) -> Marker:
    return Marker(MarkerKind.ALPHA_ALL, b)


def Alpha(b: ModalFormula, j: int) -> Marker:
    return Marker(MarkerKind.ALPHA, b, j)


def BetaAll(b: ModalFormula) -> Marker:
    return Marker(MarkerKind.BETA_ALL, b)


def Beta(b: ModalFormula, j: int) -> Marker:
    return Marker(MarkerKind.BETA, b, j)


@lru_cache(maxsize=1 << 16)
def sdecode(code: int) -> SFormula | None:
    """The SFormula with Goedel number ``code``, or None."""
    if code <= 0:
        return None
    payload, tag = divmod(code, 9)
    if tag == TAG_BOT:
        return SBOT if payload == 0 else None
    if tag == TAG_ATOM:
        return Atom(token_from_value(payload + 1))
    if tag == TAG_NEG:
        x = sdecode(payload)
        return None if x is None else Neg(x)
    if tag in (TAG_AND, TAG_OR, TAG_IMP):
        a, b = cantor_inverse(payload)
        x, y = sdecode(a), sdecode(b)
        if x is None or y is None:
            return None
        return (And, Or, Imp)[tag - TAG_AND](x, y)
    if tag == TAG_PR:
        inner, kind = divmod(payload, 4)
        return None if sdecode(inner) is None else PrLit(PrKind(kind), inner)
    if tag == TAG_MARKER:
        inner, variant = divmod(payload, 5)
        kind = MarkerKind(variant)
        if kind is MarkerKind.LAMBDA:
            return Lambda(inner)
        if kind in (MarkerKind.ALPHA_ALL, MarkerKind.BETA_ALL):
            b = decode_gn(inner)
            return None if b is None else Marker(kind, b)
        g, j = cantor_inverse(inner)
        b = decode_gn(g)
        return None if b is None else Marker(kind, b, j)
    return None


def neg_dot(x: SFormula) -> SFormula:
    """The syntactic negation used by the witness comparisons."""
    return Neg(x)


def star(x: SFormula) -> SFormula:
    """Strip negations by parity: an even count vanishes, an odd count leaves one."""
    n = 0
    while isinstance(x, Neg):
        x = x.arg
        n += 1
    return Neg(x) if n % 2 else x


def satoms(x: SFormula, out: set | None = None) -> set:
    """Propositionally atomic parts of x."""
    if out is None:
        out = set()
    stack = [x]
    while stack:
        y = stack.pop()
        if isinstance(y, Neg):
            stack.append(y.arg)
        elif isinstance(y, _Bin):
            stack.extend((y.left, y.right))
        elif y is not SBOT:
            out.add(y)
    return out


class _Xi:
    """The repetition-free enumeration of all SFormulas in ascending code order."""

    def __init__(self):
        self.items: list = []
        self.pos: dict = {}
        self.next_code = 1

    def extend_to(self, t: int) -> None:
        while len(self.items) <= t:
            x = sdecode(self.next_code)
            self.next_code += 1
            if x is not None:
                self.pos[x] = len(self.items)
                self.items.append(x)

    def index(self, x: SFormula) -> int:
        while self.next_code <= x.gn:
            self.extend_to(len(self.items))
        return self.pos[x]


_XI = _Xi()


def xi(t: int) -> SFormula:
    """The t-th SFormula in ascending Goedel-number order."""
    _XI.extend_to(t)
    return _XI.items[t]


def xi_index(x: SFormula) -> int:
    """The position of x in the enumeration ``xi``."""
    return _XI.index(x)
