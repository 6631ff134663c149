"""Command-line front end.

Output is JSON on standard output unless ``--pretty`` is given.  Exit codes:
0 success, 1 negative answer (failed check, countermodel world forces the
formula, failed trace assertion), 2 usage or input error, 3 internal
completeness error.  Errors are printed to standard error as a single JSON
line ``{"error": kind, "reason": text}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .closure import overline_closure, sub, sub_star
from .corpus import formulas_up_to
from .formula import FormulaSyntaxError, parse, to_text, variables
from .logics import Logic, UnsupportedLogicError, parse_logic
from .prover import (DEFAULT_DEPTH, InternalCompletenessError, decide, verdict_from_json,
                     verdict_to_json, verify_certificate, verify_countermodel)
from .semantics import (FrameClass, check_frame_classes, forces, frame_classes, frame_from_json,
                        frame_to_json, model_from_json, repair_transitive, to_dot,
                        UndecidableConfigurationError)

__all__ = ["main", "UsageError"]

# the oracle's universe grows too quickly beyond this
CROSS_CHECK_MAX_SIZE = 7


class UsageError(Exception):
    def __init__(self, kind: str, reason: str):
        super().__init__(reason)
        self.kind = kind
        self.reason = reason


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line machine-readable usage errors
        raise UsageError("usage", message)


def _formula(text: str):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise UsageError("syntax", str(exc)) from None


def _logic(name: str) -> Logic:
    try:
        return parse_logic(name)
    except UnsupportedLogicError as exc:
        raise UsageError("logic", str(exc)) from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError("file", f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError("file", f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _frame_classes_for(name: str) -> tuple:
    key = name.strip().upper()
    if key == "NR":
        return (FrameClass("Serial"),)
    if key == "NR4":
        return (FrameClass("Serial"), FrameClass("Transitive"))
    if key in ("N4", "NP4", "ND4"):
        return frame_classes(Logic(key))
    try:
        return (FrameClass.parse(name),)
    except ValueError as exc:
        raise UsageError("class", str(exc)) from None


# ------------------------------------------------------------ commands

def cmd_decide(args) -> tuple:
    if len(args.items) == 2:
        logic_name, text = args.items
    elif len(args.items) == 1 and args.logic:
        logic_name, text = args.logic, args.items[0]
    else:
        raise UsageError("usage", "decide takes LOGIC FORMULA (or --logic and FORMULA)")
    l, a = _logic(logic_name), _formula(text)
    v = decide(l, a, args.oracle_depth)
    out = verdict_to_json(v)
    if args.cross_check:
        from .oracle import OracleStatus, SaturationOracle
        names = tuple(sorted(variables(a))) or ("p",)
        status = OracleStatus.UNKNOWN
        if a.size <= CROSS_CHECK_MAX_SIZE and len(names) == 1:
            status = SaturationOracle(l, names, a.size, seed=args.seed).status(a)
        out["oracle"] = status.value
        if status is not OracleStatus.UNKNOWN and (status is OracleStatus.PROVABLE) != v.provable:
            raise InternalCompletenessError(f"oracle says {status.value} for {text}")
    pretty = f"{l}: {to_text(a)} is {v.label}"
    if not v.provable:
        pretty += f" (falsified at world {v.world} of a {v.model.frame.size}-world model)"
    if args.dot and not v.provable:
        Path(args.dot).write_text(to_dot(v.model.frame), encoding="utf-8")
    return out, pretty, 0


def cmd_closure(args) -> tuple:
    a = _formula(args.formula)
    g = overline_closure(a)
    out = {
        "formula": to_text(a),
        "sub": [to_text(x) for x in sorted(sub(a), key=lambda f: f.gn)],
        "subStar": [to_text(x) for x in sorted(sub_star(a), key=lambda f: f.gn)],
        "closure": [to_text(x) for x in g.members],
    }
    pretty = "\n".join([f"closure of {to_text(a)} ({len(g)} members):"]
                       + [f"  {x}" for x in out["closure"]])
    return out, pretty, 0


def cmd_check_model(args) -> tuple:
    data = _load_json(args.model_file)
    world = args.world
    text = args.formula
    if "model" in data and "verdict" in data:  # a saved verdict
        text = text if text is not None else data["formula"]
        world = world if world is not None else data.get("world")
        data = data["model"]
    if text is None or world is None:
        raise UsageError("usage", "check-model needs FORMULA and WORLD unless given a verdict file")
    try:
        model = model_from_json(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError("file", f"bad model file: {exc}") from None
    a = _formula(text)
    match = [w for w in model.frame.worlds if str(w) == str(world)]
    if not match:
        raise UsageError("world", f"world {world} is not in the model")
    result = forces(model, match[0], a)
    out = {"formula": to_text(a), "world": match[0], "forced": result}
    pretty = f"world {match[0]} {'forces' if result else 'does not force'} {to_text(a)}"
    return out, pretty, 0 if result else 1


def _read_frame(path: str):
    data = _load_json(path)
    if "model" in data:
        data = data["model"]
    try:
        return frame_from_json(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError("file", f"bad frame file: {exc}") from None


def cmd_check_frame(args) -> tuple:
    frame = _read_frame(args.frame_file)
    classes = _frame_classes_for(args.frame_class)
    try:
        r = check_frame_classes(frame, classes)
    except UndecidableConfigurationError as exc:
        raise UsageError("configuration", str(exc)) from None
    out = {"classes": [str(c) for c in classes], "ok": r.ok}
    if not r.ok:
        out["witness"] = r.witness
    pretty = "frame is in " + "+".join(map(str, classes)) if r.ok else f"frame fails: {r.witness}"
    return out, pretty, 0 if r.ok else 1


def cmd_repair(args) -> tuple:
    frame = _read_frame(args.frame_file)
    a = _formula(args.formula)
    repaired = repair_transitive(frame, a)
    if args.dot:
        Path(args.dot).write_text(to_dot(repaired), encoding="utf-8")
    out = frame_to_json(repaired)
    pretty = f"repaired frame keeps {len(repaired.explicit)} explicit relations"
    return out, pretty, 0


def cmd_certify(args) -> tuple:
    data = _load_json(args.verdict_file)
    try:
        v = verdict_from_json(data)
    except (KeyError, ValueError, TypeError, FormulaSyntaxError) as exc:
        raise UsageError("file", f"bad verdict file: {exc}") from None
    ok = verify_certificate(v.logic, v.certificate) if v.provable else verify_countermodel(v.logic, v)
    if v.provable and ok and v.certificate.goal is not v.formula:
        ok = False
    out = {"logic": v.logic.value, "formula": to_text(v.formula), "verdict": v.label, "valid": ok}
    pretty = f"{v.label} verdict for {to_text(v.formula)}: {'verified' if ok else 'REJECTED'}"
    return out, pretty, 0 if ok else 1


def cmd_simulate(args) -> tuple:
    from .sandbox import LibraryExhausted, ScenarioError, assert_trace_claims, load_scenario, trace_to_json
    try:
        sc = load_scenario(args.scenario_file, args.horizon)
        trace = sc.run()
    except FileNotFoundError:
        raise UsageError("file", f"no such file: {args.scenario_file}") from None
    except ScenarioError as exc:
        raise UsageError("scenario", str(exc)) from None
    except UnsupportedLogicError as exc:
        raise UsageError("logic", str(exc)) from None
    except LibraryExhausted as exc:
        raise UsageError("library-exhausted", str(exc)) from None
    except ValueError as exc:
        raise UsageError("scenario", str(exc)) from None
    report = assert_trace_claims(trace)
    out = trace_to_json(trace, report.to_json())
    lines = [f"{sc.logic} run, horizon {trace.horizon}: "
             + (f"switch at stage {trace.switch_stage}" if trace.switch_stage is not None
                else "no switch")]
    lines += [f"  {r.claim}: {r.status}" for r in report.results]
    return out, "\n".join(lines), 0 if report.ok else 1


def cmd_enumerate(args, emit) -> int:
    if len(args.items) == 2:
        logic_name, size = args.items
    elif len(args.items) == 1 and args.logic:
        logic_name, size = args.logic, args.items[0]
    else:
        raise UsageError("usage", "enumerate takes LOGIC MAX_SIZE (or --logic and MAX_SIZE)")
    l = _logic(logic_name)
    try:
        n = int(size)
    except ValueError:
        raise UsageError("usage", f"MAX_SIZE must be an integer, got {size!r}") from None
    if not 1 <= n <= 7:
        raise UsageError("usage", "MAX_SIZE must lie between 1 and 7")
    for a in sorted(formulas_up_to(n), key=lambda f: f.gn):
        v = decide(l, a, args.oracle_depth)
        emit({"formula": to_text(a), "gn": a.gn, "verdict": v.label},
             f"{a.gn}\t{v.label}\t{to_text(a)}")
    return 0


# ------------------------------------------------------------ driver

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--logic", help="logic for commands that take one")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized cross-checks")
    common.add_argument("--oracle-depth", type=int, default=DEFAULT_DEPTH,
                        help="premise-universe depth of the prover")
    common.add_argument("--horizon", type=int, help="override the scenario horizon")
    common.add_argument("--out", help="also write the JSON result to this file")
    common.add_argument("--dot", help="write a DOT rendering of the frame to this file")

    p = _Parser(prog="necmodal", description="Decision procedures for the logics N, NP, ND "
                "and their 4-extensions, plus a finite-stage sandbox.", parents=[common])
    sp = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sp.add_parser("decide", parents=[common], help="decide a formula")
    d.add_argument("items", nargs="+", metavar="[LOGIC] FORMULA")
    d.add_argument("--cross-check", action="store_true",
                   help="also run the saturation oracle and compare")
    c = sp.add_parser("closure", parents=[common], help="Sub, Sub* and the overline closure")
    c.add_argument("formula")
    m = sp.add_parser("check-model", parents=[common], help="evaluate a formula at a world")
    m.add_argument("model_file")
    m.add_argument("formula", nargs="?")
    m.add_argument("world", nargs="?")
    f = sp.add_parser("check-frame", parents=[common], help="check a frame against a class")
    f.add_argument("frame_file")
    f.add_argument("frame_class", metavar="CLASS")
    r = sp.add_parser("repair", parents=[common], help="transitivity repair for a formula")
    r.add_argument("frame_file")
    r.add_argument("formula")
    ce = sp.add_parser("certify", parents=[common], help="re-verify a saved verdict")
    ce.add_argument("verdict_file")
    s = sp.add_parser("simulate", parents=[common], help="run a sandbox scenario")
    s.add_argument("scenario_file")
    e = sp.add_parser("enumerate", parents=[common], help="verdicts in code order")
    e.add_argument("items", nargs="+", metavar="[LOGIC] MAX_SIZE")
    return p


_COMMANDS = {
    "decide": cmd_decide, "closure": cmd_closure, "check-model": cmd_check_model,
    "check-frame": cmd_check_frame, "repair": cmd_repair, "certify": cmd_certify,
    "simulate": cmd_simulate,
}


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2) if pretty else json.dumps(obj, separators=(",", ":"))


def _fail(kind: str, reason: str, code: int, err) -> int:
    err.write(json.dumps({"error": kind, "reason": " ".join(str(reason).split())}) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "enumerate":
            lines = []

            def emit(obj, text):
                line = text if args.pretty else json.dumps(obj, separators=(",", ":"))
                out.write(line + "\n")
                lines.append(json.dumps(obj))
            code = cmd_enumerate(args, emit)
            if args.out:
                Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
            return code
        obj, pretty, code = _COMMANDS[args.command](args)
        out.write((pretty if args.pretty else _dump(obj, False)) + "\n")
        if args.out:
            Path(args.out).write_text(_dump(obj, True) + "\n", encoding="utf-8")
        return code
    except UsageError as exc:
        return _fail(exc.kind, exc.reason, 2, err)
    except InternalCompletenessError as exc:
        return _fail("internal-completeness", str(exc), 3, err)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
