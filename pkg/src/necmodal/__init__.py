"""Decision procedures for the modal logics N, NP, ND and their 4-extensions.

The package exposes formula syntax and Goedel coding, Sub/Sub* closures,
N-frame semantics, a certified decision procedure with countermodel
extraction, an independent saturation oracle, and a finite-stage sandbox of
the staged arithmetical constructions.
"""

from .formula import (BOT, TOP, And, Box, Formula, FormulaSyntaxError, Imp, Not, Or, Var, gn,
                      parse, to_text)
from .logics import Logic, UnsupportedLogicError, parse_logic
from .prover import InternalCompletenessError, Verdict, decide, verify_certificate, verify_countermodel
from .semantics import FrameSpec, Model, forces

__version__ = "0.1.0"

__all__ = [
    "BOT", "TOP", "And", "Box", "Formula", "FormulaSyntaxError", "Imp", "Not", "Or", "Var", "gn",
    "parse", "to_text", "Logic", "UnsupportedLogicError", "parse_logic",
    "InternalCompletenessError", "Verdict", "decide", "verify_certificate", "verify_countermodel",
    "FrameSpec", "Model", "forces",
]
