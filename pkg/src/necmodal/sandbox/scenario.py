"""Text and JSON formats for SFormulas, scenarios and traces.

SFormulas are written as s-expressions::

    bot                      falsum
    p   "0=0"                atoms (quote tokens that are not plain words)
    (not X) (and X Y) (or X Y) (imp X Y)
    (pr prf|r|a|dagger X)    provability literal about X
    (lambda J)
    (alpha-all "B") (alpha "B" J) (beta-all "B") (beta "B" J)

Here B is a modal formula in the usual surface syntax.  Two more forms are
accepted on input only: ``(f "B")`` is the image of B under the scenario's
interpretation and ``(code N)`` is the SFormula with code N.

A scenario file is JSON::

    {"logic": "ND4", "horizon": 500, "library": 3,
     "stream": {"background": "tautologies", "outputs": [[4, "(not (lambda 1))"]]}}

``background`` is ``"tautologies"`` (stage s emits ``a or not a`` for the
s-th atom) or ``"skip"`` (nothing).  Listed outputs override it.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Mapping

from ..formula import parse, to_text
from ..logics import Logic, parse_logic
from .interpretation import Interpretation, interpretation_for
from .library import CountermodelLibrary
from .sformula import (SBOT, And, Atom, Imp, Marker, MarkerKind, Neg, Or, PrKind, PrLit,
                       SFormula, sdecode)
from .staged import JTrigger, PhiTrigger, StagedTrace, TheoryStream, run, tautology_stream

__all__ = ["ScenarioError", "Scenario", "to_sexpr", "parse_sexpr", "load_scenario",
           "scenario_from_json", "trace_to_json"]


class ScenarioError(ValueError):
    """Malformed s-expression or scenario file."""


_BARE = re.compile(r"[^\s()\"]+\Z")
_KEYWORDS = {"bot"}
_KIND_NAMES = {PrKind.PRF: "prf", PrKind.R: "r", PrKind.A: "a", PrKind.DAGGER: "dagger"}
_KINDS = {v: k for k, v in _KIND_NAMES.items()}
_MARKER_NAMES = {MarkerKind.LAMBDA: "lambda", MarkerKind.ALPHA_ALL: "alpha-all",
                 MarkerKind.ALPHA: "alpha", MarkerKind.BETA_ALL: "beta-all",
                 MarkerKind.BETA: "beta"}
_MARKERS = {v: k for k, v in _MARKER_NAMES.items()}
_BINARY = {"and": And, "or": Or, "imp": Imp}
_BINARY_NAMES = {And: "and", Or: "or", Imp: "imp"}


def _token(tok: str) -> str:
    if _BARE.match(tok) and tok not in _KEYWORDS:
        return tok
    return json.dumps(tok)


def to_sexpr(x: SFormula) -> str:
    if x is SBOT:
        return "bot"
    if isinstance(x, Atom):
        return _token(x.token)
    if isinstance(x, Neg):
        return f"(not {to_sexpr(x.arg)})"
    if isinstance(x, PrLit):
        return f"(pr {_KIND_NAMES[x.kind]} {to_sexpr(x.target)})"
    if isinstance(x, Marker):
        name = _MARKER_NAMES[x.kind]
        if x.kind is MarkerKind.LAMBDA:
            return f"(lambda {x.j})"
        b = json.dumps(to_text(x.formula))
        return f"({name} {b})" if x.j is None else f"({name} {b} {x.j})"
    return f"({_BINARY_NAMES[type(x)]} {to_sexpr(x.left)} {to_sexpr(x.right)})"


_LEX = re.compile(r'\s*(?:(\()|(\))|("(?:[^"\\]|\\.)*")|([^\s()"]+))')


def _lex(text: str) -> list:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m:
            raise ScenarioError(f"unexpected character at offset {pos}")
        if m.group(1):
            out.append(("(", None))
        elif m.group(2):
            out.append((")", None))
        elif m.group(3):
            out.append(("str", json.loads(m.group(3))))
        else:
            out.append(("word", m.group(4)))
        pos = m.end()
    return out


def _tree(tokens: list, pos: int):
    if pos >= len(tokens):
        raise ScenarioError("unexpected end of s-expression")
    kind, val = tokens[pos]
    if kind == ")":
        raise ScenarioError("unbalanced ')'")
    if kind != "(":
        return (kind, val), pos + 1
    items, pos = [], pos + 1
    while True:
        if pos >= len(tokens):
            raise ScenarioError("missing ')'")
        if tokens[pos][0] == ")":
            return items, pos + 1
        item, pos = _tree(tokens, pos)
        items.append(item)


def _int(node) -> int:
    if isinstance(node, tuple) and node[0] == "word" and node[1].isdigit():
        return int(node[1])
    raise ScenarioError(f"expected a natural number, got {node!r}")


def _modal(node):
    if isinstance(node, tuple) and node[0] == "str":
        try:
            return parse(node[1])
        except ValueError as exc:
            raise ScenarioError(f"bad modal formula {node[1]!r}: {exc}") from None
    raise ScenarioError("modal formulas are written as quoted strings")


def _build(node, interp: Interpretation | None) -> SFormula:
    if isinstance(node, tuple):
        kind, val = node
        if kind == "word" and val == "bot":
            return SBOT
        try:
            return Atom(val)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
    if not node or not isinstance(node[0], tuple) or node[0][0] != "word":
        raise ScenarioError("expected an operator after '('")
    op, args = node[0][1], node[1:]

    def arity(n: int) -> None:
        if len(args) != n:
            raise ScenarioError(f"{op} takes {n} argument(s), got {len(args)}")

    if op == "not":
        arity(1)
        return Neg(_build(args[0], interp))
    if op in _BINARY:
        arity(2)
        return _BINARY[op](_build(args[0], interp), _build(args[1], interp))
    if op == "pr":
        arity(2)
        if not isinstance(args[0], tuple) or args[0][1] not in _KINDS:
            raise ScenarioError("pr kind must be prf, r, a or dagger")
        return PrLit(_KINDS[args[0][1]], _build(args[1], interp).gn)
    if op == "lambda":
        arity(1)
        return Marker(MarkerKind.LAMBDA, None, _int(args[0]))
    if op in ("alpha-all", "beta-all"):
        arity(1)
        return Marker(_MARKERS[op], _modal(args[0]))
    if op in ("alpha", "beta"):
        arity(2)
        return Marker(_MARKERS[op], _modal(args[0]), _int(args[1]))
    if op == "f":
        arity(1)
        if interp is None:
            raise ScenarioError("(f ...) needs the scenario's logic")
        return interp(_modal(args[0]))
    if op == "code":
        arity(1)
        x = sdecode(_int(args[0]))
        if x is None:
            raise ScenarioError(f"{_int(args[0])} is not an SFormula code")
        return x
    raise ScenarioError(f"unknown operator {op!r}")


def parse_sexpr(text: str, interp: Interpretation | None = None) -> SFormula:
    """Parse one s-expression; ``interp`` resolves ``(f "B")``."""
    tokens = _lex(text)
    node, pos = _tree(tokens, 0)
    if pos != len(tokens):
        raise ScenarioError("trailing input after s-expression")
    return _build(node, interp)


@dataclass
class Scenario:
    logic: Logic
    horizon: int
    library: CountermodelLibrary
    stream: TheoryStream

    def run(self) -> StagedTrace:
        return run(self.logic, self.stream, self.library, self.horizon)


def scenario_from_json(data: Mapping, horizon: int | None = None) -> Scenario:
    """Build a scenario; ``horizon`` overrides the file's value."""
    try:
        logic = parse_logic(str(data["logic"]))
        interp = interpretation_for(logic)
        horizon = int(horizon if horizon is not None else data.get("horizon", 100))
        size = int(data.get("library", 3))
        spec = data.get("stream", {})
        outputs = {}
        for item in spec.get("outputs", []):
            stage, text = item
            outputs[int(stage)] = parse_sexpr(text, interp)
        background = spec.get("background", "tautologies")
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad scenario: {exc}") from None
    if horizon < 0 or size < 1:
        raise ScenarioError("horizon must be >= 0 and library >= 1")
    if background == "tautologies":
        stream = tautology_stream(outputs)
    elif background == "skip":
        stream = TheoryStream(outputs)
    else:
        raise ScenarioError(f"unknown stream background {background!r}")
    library = CountermodelLibrary.generate(logic, size)
    return Scenario(logic, horizon, library, stream)


def load_scenario(path, horizon: int | None = None) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid JSON: {exc}") from None
    return scenario_from_json(data, horizon)


def _trigger_json(t: StagedTrace):
    if isinstance(t.trigger, PhiTrigger):
        w = t.trigger.witness
        return {"type": "phi", "psi": to_sexpr(w.psi), "r": w.r,
                "iteration": [to_sexpr(x) for x in w.sigmas]}
    if isinstance(t.trigger, JTrigger):
        return {"type": "J", "world": t.trigger.world, "model": t.trigger.model_index}
    return None


def trace_to_json(t: StagedTrace, assertions: list | None = None) -> dict:
    """Trace JSON; outputs are SFormula codes with 0 for a skipped stage."""
    out = {"horizon": t.horizon}
    if t.switch_stage is not None:
        out["switchStage"] = t.switch_stage
        out["trigger"] = _trigger_json(t)
        if t.entry is not None:
            out["formula"] = to_text(t.entry.formula)
    out["h"] = list(t.h)
    out["g"] = [0 if x == 0 else x.gn for x in t.g]
    out["assertions"] = list(assertions or [])
    return out
